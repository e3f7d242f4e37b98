//! Generates the catalog up to a size (default 5) and prints per-size counts.

use rlw::catalog::AlgebraCatalog;

fn main() -> rlw::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let cat = AlgebraCatalog::generate(n)?;
    for s in &cat.stats {
        println!("size {}: {} lattices, {} algebras", s.size, s.lattices, s.algebras);
    }
    let chains = cat.entries.iter().filter(|e| e.structure.tags.contains(&"chain")).count();
    println!("{} algebras, {chains} chains", cat.len());
    Ok(())
}
