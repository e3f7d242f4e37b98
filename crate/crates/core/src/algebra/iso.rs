//! Isomorphism testing and canonical forms.
//!
//! [`find_isomorphism`] is a plain backtracking search pruned by simple
//! per-element invariants. [`canonical_form`] is computed independently by
//! colour refinement with individualization, taking the lexicographically
//! least table encoding over all discrete colourings reached.

use std::sync::Arc;

use super::{Elem, Homomorphism, Op, ResiduatedLattice};

/// Cheap isomorphism invariant of a single element.
fn element_profile(a: &ResiduatedLattice, x: Elem) -> [usize; 6] {
    let bottoms = a.elements().filter(|&y| a.mono(x, y) == a.bottom()).count();
    let tops = a.elements().filter(|&y| a.imp(x, y) == a.top()).count();
    [
        a.down_set(x).len(),
        a.up_set(x).len(),
        a.is_idempotent(x) as usize,
        bottoms,
        tops,
        a.elements().filter(|&y| a.mono(y, y) == x).count(),
    ]
}

/// A bijective homomorphism `a -> b`, if one exists.
pub fn find_isomorphism(a: &ResiduatedLattice, b: &ResiduatedLattice) -> Option<Homomorphism> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let pa: Vec<_> = a.elements().map(|x| element_profile(a, x)).collect();
    let pb: Vec<_> = b.elements().map(|x| element_profile(b, x)).collect();
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }

    // Assign the constants first, then the rest in index order.
    let mut order = vec![a.bottom(), a.top()];
    order.extend((1..n.saturating_sub(1)).filter(|&x| x != a.top()));
    order.dedup();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(
        a: &ResiduatedLattice,
        b: &ResiduatedLattice,
        map: &[usize],
        assigned: &[Elem],
        x: Elem,
    ) -> bool {
        for &y in assigned {
            for op in Op::ALL {
                for (p, q) in [(x, y), (y, x)] {
                    let r = a.op(op, p, q);
                    if map[r] != usize::MAX && map[r] != b.op(op, map[p], map[q]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(
        a: &ResiduatedLattice,
        b: &ResiduatedLattice,
        pa: &[[usize; 6]],
        pb: &[[usize; 6]],
        order: &[Elem],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        let candidates: Vec<Elem> = if x == a.bottom() {
            vec![b.bottom()]
        } else if x == a.top() {
            vec![b.top()]
        } else {
            b.elements().filter(|&y| !used[y] && pb[y] == pa[x]).collect()
        };
        for y in candidates {
            if used[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(a, b, map, &order[..=depth], x)
                && search(a, b, pa, pb, order, depth + 1, map, used)
            {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    if !search(a, b, &pa, &pb, &order, 0, &mut map, &mut used) {
        return None;
    }
    let h = Homomorphism {
        source: Arc::new(a.clone()),
        target: Arc::new(b.clone()),
        map,
    };
    debug_assert!(h.is_homomorphism() && h.is_bijective());
    Some(h)
}

pub fn are_isomorphic(a: &ResiduatedLattice, b: &ResiduatedLattice) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Replaces colours by the rank of their signature; returns the number of classes.
fn rank<T: Ord + Clone>(sigs: &[T]) -> (Vec<usize>, usize) {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    let colors = sigs
        .iter()
        .map(|s| sorted.binary_search(s).unwrap())
        .collect();
    (colors, sorted.len())
}

fn refine(a: &ResiduatedLattice, mut colors: Vec<usize>) -> Vec<usize> {
    let mut classes = colors.iter().max().map_or(0, |m| m + 1);
    loop {
        let sigs: Vec<(usize, Vec<[usize; 6]>)> = a
            .elements()
            .map(|x| {
                let mut row: Vec<[usize; 6]> = a
                    .elements()
                    .map(|y| {
                        [
                            colors[y],
                            colors[a.meet(x, y)],
                            colors[a.join(x, y)],
                            colors[a.mono(x, y)],
                            colors[a.imp(x, y)],
                            colors[a.imp(y, x)],
                        ]
                    })
                    .collect();
                row.sort_unstable();
                (colors[x], row)
            })
            .collect();
        let (next, count) = rank(&sigs);
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

fn encode(a: &ResiduatedLattice, new_of_old: &[usize]) -> Vec<u8> {
    let r = a.relabel(new_of_old);
    let mut out = Vec::with_capacity(1 + 4 * a.size() * a.size());
    out.push(a.size() as u8);
    for op in Op::ALL {
        out.extend(r.flat(op).iter().map(|&v| v as u8));
    }
    out
}

fn canonize(a: &ResiduatedLattice, colors: Vec<usize>, best: &mut Option<Vec<u8>>) {
    let colors = refine(a, colors);
    let n = a.size();
    // First colour class with more than one member.
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
        let code = encode(a, &colors);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    for v in a.elements().filter(|&x| colors[x] == target) {
        let split: Vec<(usize, usize)> = a
            .elements()
            .map(|x| (colors[x], usize::from(colors[x] == target && x != v)))
            .collect();
        canonize(a, rank(&split).0, best);
    }
}

/// A byte string equal for two algebras exactly when they are isomorphic.
/// The first byte is the carrier size.
pub fn canonical_form(a: &ResiduatedLattice) -> Vec<u8> {
    let initial: Vec<(usize, usize, usize)> = a
        .elements()
        .map(|x| {
            let constant = if x == a.bottom() {
                0
            } else if x == a.top() {
                2
            } else {
                1
            };
            (constant, a.down_set(x).len(), a.up_set(x).len())
        })
        .collect();
    let mut best = None;
    canonize(a, rank(&initial).0, &mut best);
    best.expect("canonization visits at least one leaf")
}

/// Hex rendering of [`canonical_form`], used as catalog key.
pub fn canonical_key(a: &ResiduatedLattice) -> String {
    hex::encode(canonical_form(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{boolean, goedel_chain, lukasiewicz_chain, product};

    #[test]
    fn identity_is_found() {
        let a = lukasiewicz_chain(4);
        let h = find_isomorphism(&a, &a).unwrap();
        assert_eq!(h.map, vec![0, 1, 2, 3]);
    }

    #[test]
    fn goedel_and_lukasiewicz_three_chains_differ() {
        assert!(find_isomorphism(&goedel_chain(3), &lukasiewicz_chain(3)).is_none());
        assert_ne!(
            canonical_form(&goedel_chain(3)),
            canonical_form(&lukasiewicz_chain(3))
        );
    }

    #[test]
    fn product_of_chains_matches_boolean() {
        let p = product(&goedel_chain(2), &goedel_chain(2));
        let b = boolean(2);
        let h = find_isomorphism(&p, &b).unwrap();
        assert!(h.is_homomorphism() && h.is_bijective());
        assert_eq!(canonical_form(&p), canonical_form(&b));
    }

    #[test]
    fn canonical_form_is_relabelling_invariant() {
        let b3 = boolean(3);
        let perm = [0, 3, 1, 2, 4, 5, 6, 7];
        let c = b3.permuted(&perm).unwrap();
        assert_ne!(c, b3);
        assert_eq!(canonical_form(&c), canonical_form(&b3));
        assert!(are_isomorphic(&c, &b3));
        let b4 = boolean(4);
        assert_eq!(canonical_form(&b4)[0], 16);
    }
}
