//! Filters, their congruences and quotients, and the filter lattice as DOT.

use rlw::algebra::boolean;
use rlw::filters::{congruence_of_filter, filter_lattice, prime_filters, quotient};

fn main() -> rlw::Result<()> {
    let b4 = boolean(2);
    let lat = filter_lattice(&b4);
    for f in &lat.filters {
        let theta = congruence_of_filter(&b4, f)?;
        let (q, _) = quotient(&b4, f)?;
        println!("{f:<10} blocks {:?} quotient size {}", theta.blocks(), q.size());
    }
    let primes: Vec<String> = prime_filters(&b4).iter().map(ToString::to_string).collect();
    println!("prime filters: {}", primes.join(" "));
    print!("{}", lat.to_dot());
    Ok(())
}
