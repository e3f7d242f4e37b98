//! Brute-force oracles shared by the integration tests. Everything here is
//! computed straight from the definitions, without the library's search code.
#![allow(dead_code)]

use rlw::algebra::{Op, ResiduatedLattice};
use rlw::subset::Subset;

pub fn subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0u128..1 << n).map(Subset::from_bits)
}

/// Set partitions of `0..n` as restricted growth strings.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == n {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            cur.push(b);
            go(k + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

pub fn is_congruence(a: &ResiduatedLattice, labels: &[usize]) -> bool {
    let n = a.size();
    for op in Op::ALL {
        for x in 0..n {
            for x2 in (0..n).filter(|&x2| labels[x2] == labels[x]) {
                for y in 0..n {
                    for y2 in (0..n).filter(|&y2| labels[y2] == labels[y]) {
                        if labels[a.op(op, x, y)] != labels[a.op(op, x2, y2)] {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

pub fn congruences(a: &ResiduatedLattice) -> Vec<Vec<usize>> {
    partitions(a.size()).into_iter().filter(|l| is_congruence(a, l)).collect()
}

pub fn is_filter(a: &ResiduatedLattice, s: Subset) -> bool {
    s.contains(a.top())
        && s.iter().all(|x| a.elements().all(|y| !a.leq(x, y) || s.contains(y)))
        && s.iter().all(|x| s.iter().all(|y| s.contains(a.mono(x, y))))
}

/// Filters ordered by their bit pattern.
pub fn filters(a: &ResiduatedLattice) -> Vec<Subset> {
    subsets(a.size()).filter(|&s| is_filter(a, s)).collect()
}

pub fn is_prime(a: &ResiduatedLattice, s: Subset) -> bool {
    s != a.carrier()
        && a.elements()
            .all(|x| a.elements().all(|y| !s.contains(a.join(x, y)) || s.contains(x) || s.contains(y)))
}

pub fn primes(a: &ResiduatedLattice) -> Vec<Subset> {
    filters(a).into_iter().filter(|&s| is_prime(a, s)).collect()
}

/// Smallest filter containing `s`.
pub fn generated(a: &ResiduatedLattice, s: Subset) -> Subset {
    filters(a)
        .into_iter()
        .filter(|f| s.is_subset(*f))
        .min_by_key(|f| f.len())
        .expect("the carrier is a filter")
}

/// Labels of `x ~ y` iff `(x → y) ⊙ (y → x) ∈ F`.
pub fn filter_labels(a: &ResiduatedLattice, f: Subset) -> Vec<usize> {
    let n = a.size();
    let mut labels = vec![usize::MAX; n];
    let mut next = 0;
    for x in 0..n {
        if labels[x] != usize::MAX {
            continue;
        }
        for y in 0..n {
            if f.contains(a.mono(a.imp(x, y), a.imp(y, x))) {
                labels[y] = next;
            }
        }
        next += 1;
    }
    labels
}

/// Open sets of the Alexandrov topology with minimal neighbourhoods `nbhd`.
pub fn open_sets(nbhd: &[Subset]) -> Vec<Subset> {
    subsets(nbhd.len())
        .filter(|u| u.iter().all(|x| nbhd[x].is_subset(*u)))
        .collect()
}

/// `(T0, T1, T2)` read off a list of open sets.
pub fn separation(n: usize, opens: &[Subset]) -> (bool, bool, bool) {
    let mut t0 = true;
    let mut t1 = true;
    let mut t2 = true;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let x_not_y = opens.iter().any(|u| u.contains(x) && !u.contains(y));
            let y_not_x = opens.iter().any(|u| u.contains(y) && !u.contains(x));
            t0 &= x_not_y || y_not_x;
            t1 &= x_not_y && y_not_x;
            t2 &= opens.iter().any(|u| {
                u.contains(x) && opens.iter().any(|v| v.contains(y) && u.is_disjoint(*v))
            });
        }
    }
    (t0, t1, t2)
}

/// Pairs of relations as successor sets, composed.
pub fn compose(r: &[Subset], s: &[Subset]) -> Vec<Subset> {
    r.iter()
        .map(|row| row.iter().fold(Subset::from_bits(0), |acc, y| acc.union(s[y])))
        .collect()
}

pub fn relation(labels: &[usize]) -> Vec<Subset> {
    labels
        .iter()
        .map(|&l| (0..labels.len()).filter(|&y| labels[y] == l).collect())
        .collect()
}

/// A pair of nontrivial congruences meeting in the identity and composing
/// to the total relation.
pub fn factor_congruences(a: &ResiduatedLattice) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = a.size();
    let cs = congruences(a);
    let identity: Vec<Subset> = (0..n).map(Subset::singleton).collect();
    let total = vec![a.carrier(); n];
    let nontrivial = |l: &Vec<usize>| {
        let r = relation(l);
        r != identity && r != total
    };
    for t in cs.iter().filter(|l| nontrivial(l)) {
        for s in cs.iter().filter(|l| nontrivial(l)) {
            let (rt, rs) = (relation(t), relation(s));
            let meet: Vec<Subset> = rt.iter().zip(&rs).map(|(p, q)| p.intersection(*q)).collect();
            if meet == identity && compose(&rt, &rs) == total {
                return Some((t.clone(), s.clone()));
            }
        }
    }
    None
}

/// Least nontrivial filter, if there is one.
pub fn monolith(a: &ResiduatedLattice) -> Option<Subset> {
    let trivial = Subset::singleton(a.top());
    let nt: Vec<Subset> = filters(a).into_iter().filter(|&f| f != trivial).collect();
    nt.iter().copied().find(|f| nt.iter().all(|g| f.is_subset(*g)))
}
