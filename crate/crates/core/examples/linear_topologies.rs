//! Topologies from systems of filters, separation, and every linear topology of G4.

use rlw::algebra::goedel_chain;
use rlw::filters::FilterSet;
use rlw::topology::{check_topological_algebra, enumerate_zltrl, induce_topology, SystemOfFilters};

fn main() -> rlw::Result<()> {
    let g4 = goedel_chain(4);
    let f = FilterSet::from_elements(&g4, &[2, 3])?;
    let g = FilterSet::from_elements(&g4, &[1, 2, 3])?;
    let t = induce_topology(&g4, &SystemOfFilters::new(vec![f, g])?)?;
    println!("neighbourhoods {:?}", t.min_nbhds());
    println!("separation {:?}", t.separation_by_open_sets());
    println!("continuous: {}", check_topological_algebra(&g4, &t).is_ok());

    for (k, t) in enumerate_zltrl(&g4)?.iter().enumerate() {
        println!("t{k}: {} open sets, discrete {}", t.open_sets().len(), t.is_discrete());
    }
    print!("{}", t.specialization_dot());
    Ok(())
}
