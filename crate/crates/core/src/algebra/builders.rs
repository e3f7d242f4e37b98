//! Standard families used as fixtures throughout the workbench.

use super::ResiduatedLattice;
use crate::subset::MAX_CARRIER;

/// The `n`-element Goedel chain `0 < 1 < .. < n-1` with `x mono y = min(x, y)`
/// and `x -> y = 1` if `x <= y`, else `y`.
///
/// # Panics
/// If `n` is zero or exceeds the carrier limit.
pub fn goedel_chain(n: usize) -> ResiduatedLattice {
    assert!((1..=MAX_CARRIER).contains(&n), "chain length {n} out of range");
    let top = n - 1;
    ResiduatedLattice::from_fns(
        n,
        |x, y| x.min(y),
        |x, y| x.max(y),
        |x, y| x.min(y),
        |x, y| if x <= y { top } else { y },
    )
    .expect("Goedel chains are residuated lattices")
}

/// The `n`-element Lukasiewicz chain on `{0, 1/(n-1), .., 1}`, scaled to
/// integers: `x mono y = max(0, x + y - (n-1))`, `x -> y = min(n-1, n-1 - x + y)`.
///
/// # Panics
/// If `n` is zero or exceeds the carrier limit.
pub fn lukasiewicz_chain(n: usize) -> ResiduatedLattice {
    assert!((1..=MAX_CARRIER).contains(&n), "chain length {n} out of range");
    let top = n - 1;
    ResiduatedLattice::from_fns(
        n,
        |x, y| x.min(y),
        |x, y| x.max(y),
        |x, y| (x + y).saturating_sub(top),
        |x, y| (top - x + y).min(top),
    )
    .expect("Lukasiewicz chains are residuated lattices")
}

/// The Boolean algebra of subsets of a `k`-element set (`2^k` elements,
/// encoded as bitmasks).
///
/// # Panics
/// If `2^k` exceeds the carrier limit.
pub fn boolean(k: u32) -> ResiduatedLattice {
    let n = 1usize << k;
    assert!(n <= MAX_CARRIER, "Boolean algebra 2^{k} too large");
    let mask = n - 1;
    ResiduatedLattice::from_fns(
        n,
        |x, y| x & y,
        |x, y| x | y,
        |x, y| x & y,
        |x, y| (!x | y) & mask,
    )
    .expect("Boolean algebras are residuated lattices")
}

/// Direct product; the pair `(a, b)` is encoded as `a * |B| + b`.
///
/// # Panics
/// If `|A| * |B|` exceeds the carrier limit.
pub fn product(a: &ResiduatedLattice, b: &ResiduatedLattice) -> ResiduatedLattice {
    let (na, nb) = (a.size(), b.size());
    let n = na * nb;
    assert!(n <= MAX_CARRIER, "product of size {n} too large");
    let lift = |f: fn(&ResiduatedLattice, usize, usize) -> usize| {
        move |x: usize, y: usize| f(a, x / nb, y / nb) * nb + f(b, x % nb, y % nb)
    };
    ResiduatedLattice::from_fns(
        n,
        lift(ResiduatedLattice::meet),
        lift(ResiduatedLattice::join),
        lift(ResiduatedLattice::mono),
        lift(ResiduatedLattice::imp),
    )
    .expect("products of residuated lattices are residuated lattices")
}

/// Left-nested product of a list of factors; the empty product is trivial.
/// Element encoding is mixed-radix with the first factor most significant.
pub fn product_of(factors: &[ResiduatedLattice]) -> ResiduatedLattice {
    factors
        .iter()
        .fold(goedel_chain(1), |acc, f| product(&acc, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::are_isomorphic;

    #[test]
    fn two_element_algebras_coincide() {
        assert_eq!(goedel_chain(2), boolean(1));
        assert_eq!(lukasiewicz_chain(2), boolean(1));
    }

    #[test]
    fn lukasiewicz_middle_squares_to_bottom() {
        let l3 = lukasiewicz_chain(3);
        assert_eq!(l3.mono(1, 1), 0);
        assert_eq!(l3.imp(1, 0), 1);
    }

    #[test]
    fn product_of_two_chains_is_four_element_boolean() {
        let p = product(&goedel_chain(2), &goedel_chain(2));
        assert_eq!(p.size(), 4);
        assert_eq!(p, boolean(2));
        assert!(are_isomorphic(&product_of(&[boolean(1), boolean(1), boolean(1)]), &boolean(3)));
    }

    #[test]
    fn builders_validate_up_to_eight() {
        for n in 1..=8 {
            goedel_chain(n);
            lukasiewicz_chain(n);
        }
        for k in 0..=3 {
            boolean(k);
        }
    }
}
