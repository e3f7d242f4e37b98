//! An inverse system read from JSON, its limit, a cofinal restriction, and
//! the completion of the three-element Łukasiewicz chain.

use rlw::algebra::{are_isomorphic, lukasiewicz_chain};
use rlw::limits::{cofinal_restrict, inverse_limit, profinite_completion, InverseSystem};

fn main() -> rlw::Result<()> {
    let text = include_str!("data/system_chain.json");
    let s = InverseSystem::from_json(text)?;
    let lim = inverse_limit(&s)?;
    println!("threads: {:?}", lim.threads);

    let top = s.poset().maximum();
    let r = cofinal_restrict(&s, &[top])?;
    println!("restricted to the maximum: isomorphic = {}", are_isomorphic(&inverse_limit(&r)?.algebra, &lim.algebra));

    let c = profinite_completion(&lukasiewicz_chain(3))?;
    println!(
        "completion of L3 over {} filters: map {:?}, bijective {}",
        c.system.poset().len(),
        c.embedding.map,
        c.embedding.is_bijective()
    );
    Ok(())
}
