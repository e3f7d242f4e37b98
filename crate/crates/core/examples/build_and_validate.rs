//! Builds the standard families, validates them, and shows a mutation being rejected.

use rlw::algebra::{boolean, goedel_chain, lukasiewicz_chain, product, validate, Op};

fn main() {
    let g3 = goedel_chain(3);
    let l3 = lukasiewicz_chain(3);
    let b4 = boolean(2);
    for (name, a) in [("G3", &g3), ("L3", &l3), ("B4", &b4), ("G3 x L3", &product(&g3, &l3))] {
        println!("{name:<8} size {} validate: {}", a.size(), validate(&a.to_data()));
    }

    let mut broken = l3.to_data();
    broken.table_mut(Op::Mono)[1][1] = 1;
    println!("L3 with 1*1 := 1: {}", validate(&broken));
    println!("{}", g3.to_json());
}
