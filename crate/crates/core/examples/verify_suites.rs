//! Runs every suite over the catalog up to a size (default 4) and prints the matrix.

use rlw::analysis::suites::{verify, Suite, VerifyOptions};
use rlw::catalog::AlgebraCatalog;

fn main() -> rlw::Result<()> {
    let size_max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let cat = AlgebraCatalog::generate(size_max)?;
    let opts = VerifyOptions {
        size_max,
        jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        ..VerifyOptions::default()
    };
    let report = verify(&cat, &Suite::ALL, &opts)?;
    print!("{}", report.summary_table());
    Ok(())
}
