//! Structure reports, and the five-element algebra on which the
//! indecomposability characterizations split.

use rlw::algebra::{boolean, goedel_chain, ResiduatedLattice};
use rlw::analysis::{indecomposability_report, structure_report};

fn main() -> rlw::Result<()> {
    let diamond = ResiduatedLattice::from_json(include_str!("data/diamond_over_bottom.json"))?;
    for (name, a) in [("G3", goedel_chain(3)), ("B4", boolean(2)), ("1+(2x2)", diamond)] {
        let s = structure_report(&a)?;
        let r = indecomposability_report(&a)?;
        println!(
            "{name:<8} SI {:<5} DI {:<5} dim {} verdicts {:?} agree {}",
            s.is_subdirectly_irreducible,
            s.is_directly_indecomposable,
            s.dimension,
            r.verdicts(),
            r.agree()
        );
        if let Some(p) = &r.factor_pair {
            println!("         factor pair {} / {}", p.left, p.right);
        }
    }
    Ok(())
}
