//! Linear topologies induced by systems of filters.
//!
//! Every topology on a finite set is Alexandrov, so a [`FiniteTopology`] is
//! stored as the map `x ↦ N(x)` to the smallest open set containing `x`.
//! A set is open iff it contains `N(x)` for each of its points.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, Op, ResiduatedLattice};
use crate::error::{Error, Result};
use crate::filters::{coset, enumerate_filters, is_filter, CongruenceRelation, FilterSet};
use crate::subset::Subset;

/// Carriers up to this size get the quantifier-level self test in [`induce_topology`].
const SELF_TEST_MAX: usize = 4;

/// Largest carrier for which [`enumerate_zltrl`] scans all set partitions.
pub const ZLTRL_MAX: usize = 11;

/// A nonempty, down-directed family of filters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemOfFilters {
    family: Vec<FilterSet>,
}

impl SystemOfFilters {
    /// Rejects empty families and, with a witness pair, families that are
    /// not down-directed.
    pub fn new(family: Vec<FilterSet>) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::precondition("a system of filters must be nonempty"));
        }
        for f in &family {
            for g in &family {
                let meet = f.intersection(g);
                if !family.iter().any(|h| h.is_subset(&meet)) {
                    return Err(Error::precondition(format!(
                        "family is not down-directed: nothing in it lies below {f} ∩ {g}"
                    )));
                }
            }
        }
        Ok(SystemOfFilters { family })
    }

    pub fn single(f: FilterSet) -> Self {
        SystemOfFilters { family: vec![f] }
    }

    pub fn family(&self) -> &[FilterSet] {
        &self.family
    }

    /// The least member. Exists because the family is finite and down-directed.
    pub fn minimum(&self) -> FilterSet {
        *self
            .family
            .iter()
            .find(|f| self.family.iter().all(|g| f.is_subset(g)))
            .expect("finite down-directed families have a minimum")
    }

    pub fn intersection(&self) -> Subset {
        self.family
            .iter()
            .fold(Subset::full(crate::subset::MAX_CARRIER), |acc, f| acc.intersection(f.members()))
    }
}

/// An Alexandrov topology on `0..n` given by minimal open neighbourhoods.
/// Serializes as `{ "n": n, "min_nbhd": [[...], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTopology")]
pub struct FiniteTopology {
    n: usize,
    min_nbhd: Vec<Subset>,
}

#[derive(Deserialize)]
struct RawTopology {
    n: usize,
    min_nbhd: Vec<Subset>,
}

impl TryFrom<RawTopology> for FiniteTopology {
    type Error = Error;

    fn try_from(raw: RawTopology) -> Result<Self> {
        FiniteTopology::new(raw.n, raw.min_nbhd)
    }
}

/// Which separation axioms hold, each decided on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationProfile {
    pub t0: bool,
    pub t1: bool,
    pub t2: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeparationClass {
    T2,
    T1,
    T0,
    None,
}

impl SeparationProfile {
    /// The strongest axiom that holds.
    pub fn class(&self) -> SeparationClass {
        if self.t2 {
            SeparationClass::T2
        } else if self.t1 {
            SeparationClass::T1
        } else if self.t0 {
            SeparationClass::T0
        } else {
            SeparationClass::None
        }
    }
}

impl FiniteTopology {
    pub fn new(n: usize, min_nbhd: Vec<Subset>) -> Result<Self> {
        if min_nbhd.len() != n {
            return Err(Error::Structural(format!(
                "{} neighbourhoods for {n} points",
                min_nbhd.len()
            )));
        }
        for (x, &nx) in min_nbhd.iter().enumerate() {
            if !nx.is_subset(Subset::full(n)) {
                return Err(Error::Structural(format!("N({x}) = {nx} leaves the carrier")));
            }
            if !nx.contains(x) {
                return Err(Error::Structural(format!("{x} is not in N({x}) = {nx}")));
            }
            for y in nx {
                if !min_nbhd[y].is_subset(nx) {
                    return Err(Error::Structural(format!(
                        "{y} ∈ N({x}) but N({y}) = {} ⊄ {nx}",
                        min_nbhd[y]
                    )));
                }
            }
        }
        Ok(FiniteTopology { n, min_nbhd })
    }

    pub fn discrete(n: usize) -> Self {
        FiniteTopology {
            n,
            min_nbhd: (0..n).map(Subset::singleton).collect(),
        }
    }

    pub fn antidiscrete(n: usize) -> Self {
        FiniteTopology {
            n,
            min_nbhd: vec![Subset::full(n); n],
        }
    }

    /// The topology whose open sets are unions of blocks.
    pub fn from_partition(theta: &CongruenceRelation) -> Self {
        FiniteTopology {
            n: theta.size(),
            min_nbhd: (0..theta.size()).map(|x| theta.block_of(x)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn nbhd(&self, x: Elem) -> Subset {
        self.min_nbhd[x]
    }

    pub fn min_nbhds(&self) -> &[Subset] {
        &self.min_nbhd
    }

    pub fn is_open(&self, u: Subset) -> bool {
        u.iter().all(|x| self.min_nbhd[x].is_subset(u))
    }

    pub fn is_closed(&self, u: Subset) -> bool {
        self.is_open(u.complement(self.n))
    }

    pub fn is_clopen(&self, u: Subset) -> bool {
        self.is_open(u) && self.is_closed(u)
    }

    /// All open sets, as the closure of the minimal neighbourhoods under union.
    pub fn open_sets(&self) -> Vec<Subset> {
        let mut opens = vec![Subset::EMPTY];
        for &nx in &self.min_nbhd {
            let fresh: Vec<Subset> = opens.iter().map(|u| u.union(nx)).collect();
            opens.extend(fresh);
            opens.sort_by_key(|s| s.bits());
            opens.dedup();
        }
        opens
    }

    pub fn is_discrete(&self) -> bool {
        self.min_nbhd.iter().all(|s| s.len() == 1)
    }

    pub fn is_antidiscrete(&self) -> bool {
        self.min_nbhd.iter().all(|&s| s == Subset::full(self.n))
    }

    /// A finite space is zero-dimensional iff its specialization preorder is
    /// symmetric, i.e. the minimal neighbourhoods partition the carrier.
    pub fn is_zero_dimensional(&self) -> bool {
        (0..self.n).all(|x| self.min_nbhd[x].iter().all(|y| self.min_nbhd[y].contains(x)))
    }

    /// Separation axioms, each decided from the minimal open sets (which are
    /// the smallest open sets around each point).
    pub fn separation(&self) -> SeparationProfile {
        let mut p = SeparationProfile {
            t0: true,
            t1: true,
            t2: true,
        };
        for x in 0..self.n {
            for y in x + 1..self.n {
                let (nx, ny) = (self.min_nbhd[x], self.min_nbhd[y]);
                p.t0 &= !ny.contains(x) || !nx.contains(y);
                p.t1 &= !ny.contains(x) && !nx.contains(y);
                p.t2 &= nx.is_disjoint(ny);
            }
        }
        p
    }

    /// The same axioms decided by quantifying over the full list of open
    /// sets, without using minimal neighbourhoods.
    pub fn separation_by_open_sets(&self) -> SeparationProfile {
        let opens = self.open_sets();
        let mut p = SeparationProfile {
            t0: true,
            t1: true,
            t2: true,
        };
        for x in 0..self.n {
            for y in x + 1..self.n {
                let only = |a: usize, b: usize| opens.iter().any(|u| u.contains(a) && !u.contains(b));
                p.t0 &= only(x, y) || only(y, x);
                p.t1 &= only(x, y) && only(y, x);
                p.t2 &= opens.iter().any(|u| {
                    u.contains(x)
                        && opens
                            .iter()
                            .any(|v| v.contains(y) && u.is_disjoint(*v))
                });
            }
        }
        p
    }

    /// Open-set inclusion: every open set of `self` is open in `other`.
    pub fn is_coarser_than(&self, other: &FiniteTopology) -> bool {
        self.n == other.n && (0..self.n).all(|x| other.min_nbhd[x].is_subset(self.min_nbhd[x]))
    }

    /// Specialization preorder (`x ⊑ y` iff `y ∈ N(x)`) in Graphviz DOT.
    pub fn specialization_dot(&self) -> String {
        let mut out = String::from("digraph specialization {\n  rankdir=BT;\n");
        for x in 0..self.n {
            let _ = writeln!(out, "  p{x} [label=\"{x}\"];");
        }
        for x in 0..self.n {
            for y in self.min_nbhd[x] {
                if y != x {
                    let _ = writeln!(out, "  p{x} -> p{y};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// `T_𝓕`: `N(x) = x/F_min` where `F_min` is the least member of the system.
pub fn induce_topology(a: &ResiduatedLattice, system: &SystemOfFilters) -> Result<FiniteTopology> {
    let fmin = system.minimum();
    let t = FiniteTopology {
        n: a.size(),
        min_nbhd: a.elements().map(|x| coset(a, &fmin, x)).collect(),
    };
    if a.size() <= SELF_TEST_MAX {
        let by_definition: Vec<Subset> = Subset::all_subsets(a.size())
            .filter(|&u| {
                u.iter().all(|x| {
                    system
                        .family()
                        .iter()
                        .any(|f| coset(a, f, x).is_subset(u))
                })
            })
            .collect();
        if by_definition != t.open_sets() {
            return Err(Error::violation(
                "the induced topology has the minimum-filter cosets as minimal opens",
                format!("system {:?}", system.family()),
            ));
        }
    }
    Ok(t)
}

/// `T_F = induce_topology([F])`.
pub fn simple_topology(a: &ResiduatedLattice, f: &FilterSet) -> FiniteTopology {
    FiniteTopology {
        n: a.size(),
        min_nbhd: a.elements().map(|x| coset(a, f, x)).collect(),
    }
}

pub fn separation_class(t: &FiniteTopology) -> SeparationClass {
    t.separation().class()
}

/// Whether `T_𝓕` is Hausdorff; also checks that T0, T1, T2 and
/// `∩𝓕 = {top}` all agree, reporting a violation otherwise.
pub fn is_hausdorff(a: &ResiduatedLattice, system: &SystemOfFilters) -> Result<bool> {
    let t = induce_topology(a, system)?;
    let p = t.separation();
    let trivial_meet = system.intersection() == Subset::singleton(a.top());
    if p.t0 != p.t1 || p.t1 != p.t2 || p.t2 != trivial_meet {
        return Err(Error::violation(
            "T0, T1, T2 and trivial intersection coincide for induced topologies",
            format!("system {:?}: {p:?}, trivial intersection {trivial_meet}", system.family()),
        ));
    }
    Ok(p.t2)
}

/// A failure of `op(N(a) × N(b)) ⊆ N(op(a, b))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuityDefect {
    pub op: Op,
    pub a: Elem,
    pub b: Elem,
    /// A pair from `N(a) × N(b)` whose image leaves `N(op(a, b))`.
    pub offending: (Elem, Elem),
}

impl std::fmt::Display for ContinuityDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} is discontinuous at ({}, {}): image of ({}, {}) escapes N({})",
            self.op, self.a, self.b, self.offending.0, self.offending.1, self.op
        )
    }
}

/// Continuity of all four operations. For Alexandrov topologies this is
/// exactly `op(N(a) × N(b)) ⊆ N(op(a, b))` for all `a, b`.
pub fn check_topological_algebra(
    a: &ResiduatedLattice,
    t: &FiniteTopology,
) -> std::result::Result<(), ContinuityDefect> {
    if t.size() != a.size() {
        panic!("topology and algebra have different carriers");
    }
    for op in Op::ALL {
        for x in a.elements() {
            for y in a.elements() {
                let target = t.nbhd(a.op(op, x, y));
                for p in t.nbhd(x) {
                    for q in t.nbhd(y) {
                        if !target.contains(a.op(op, p, q)) {
                            return Err(ContinuityDefect {
                                op,
                                a: x,
                                b: y,
                                offending: (p, q),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// All set partitions of `0..n` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(pos: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if pos == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            rec(pos + 1, n, cur, max.max(b), out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut cur = vec![0];
    rec(1, n, &mut cur, 0, &mut out);
    out
}

/// The zero-dimensional linear topologies making `a` a topological
/// residuated lattice, in the order of the filters they come from.
///
/// Zero-dimensional topologies on a finite set are exactly the partition
/// topologies, so every set partition is tried. A partition qualifies when
/// all operations are continuous and the block of top is a filter (the
/// linearity condition). Each survivor is checked to be the simple topology
/// of that filter, and the count is checked against the number of filters.
pub fn enumerate_zltrl(a: &ResiduatedLattice) -> Result<Vec<FiniteTopology>> {
    if a.size() > ZLTRL_MAX {
        return Err(Error::precondition(format!(
            "partition scan limited to {ZLTRL_MAX} elements, algebra has {}",
            a.size()
        )));
    }
    let mut found: Vec<(FilterSet, FiniteTopology)> = Vec::new();
    for labels in set_partitions(a.size()) {
        let theta = CongruenceRelation::from_labels(&labels);
        let t = FiniteTopology::from_partition(&theta);
        if check_topological_algebra(a, &t).is_err() {
            continue;
        }
        let top_block = t.nbhd(a.top());
        if !is_filter(a, top_block) {
            continue;
        }
        let f = FilterSet::new(a, top_block)?;
        if simple_topology(a, &f) != t {
            return Err(Error::violation(
                "every zero-dimensional linear topology is the simple topology of a filter",
                format!("partition {labels:?}"),
            ));
        }
        found.push((f, t));
    }
    let filters = enumerate_filters(a);
    if found.len() != filters.len() {
        return Err(Error::violation(
            "zero-dimensional linear topologies are equinumerous with filters",
            format!("{} topologies, {} filters", found.len(), filters.len()),
        ));
    }
    let mut out = Vec::with_capacity(found.len());
    for f in &filters {
        let hits: Vec<&FiniteTopology> =
            found.iter().filter(|(g, _)| g == f).map(|(_, t)| t).collect();
        if hits.len() != 1 {
            return Err(Error::violation(
                "each filter yields exactly one zero-dimensional linear topology",
                format!("filter {f} matched {} topologies", hits.len()),
            ));
        }
        out.push(hits[0].clone());
    }
    Ok(out)
}

pub fn is_open_filter(t: &FiniteTopology, f: &FilterSet) -> bool {
    t.is_open(f.members())
}

pub fn is_closed_filter(t: &FiniteTopology, f: &FilterSet) -> bool {
    t.is_closed(f.members())
}

/// Whether every coset `x/F` is open.
pub fn coset_openness(a: &ResiduatedLattice, t: &FiniteTopology, f: &FilterSet) -> bool {
    a.elements().all(|x| t.is_open(coset(a, f, x)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FilterOpenness {
    pub open: bool,
    pub closed: bool,
    pub cosets_open: bool,
    pub cosets_closed: bool,
}

/// Openness data for `F` in `T`. For zero-dimensional `T` the checks
/// "F open ⟺ all cosets open", "F closed ⟺ all cosets closed" and (finite
/// index being automatic) "F open ⟺ F closed" are enforced.
pub fn filter_openness(a: &ResiduatedLattice, t: &FiniteTopology, f: &FilterSet) -> Result<FilterOpenness> {
    let r = FilterOpenness {
        open: is_open_filter(t, f),
        closed: is_closed_filter(t, f),
        cosets_open: coset_openness(a, t, f),
        cosets_closed: a.elements().all(|x| t.is_closed(coset(a, f, x))),
    };
    if t.is_zero_dimensional()
        && check_topological_algebra(a, t).is_ok()
        && (r.open != r.cosets_open || r.closed != r.cosets_closed || r.open != r.closed)
    {
        return Err(Error::violation(
            "a filter is open iff its cosets are open iff it is closed of finite index",
            format!("filter {f}: {r:?}"),
        ));
    }
    Ok(r)
}

/// Filters that are open in `t`.
pub fn open_filters(a: &ResiduatedLattice, t: &FiniteTopology) -> Vec<FilterSet> {
    enumerate_filters(a)
        .into_iter()
        .filter(|f| is_open_filter(t, f))
        .collect()
}

/// Supremum (coarsest common refinement): `N(x) = ∩ N_i(x)`.
pub fn sup_topologies(ts: &[FiniteTopology]) -> Result<FiniteTopology> {
    let first = ts
        .first()
        .ok_or_else(|| Error::precondition("supremum of an empty list of topologies"))?;
    if ts.iter().any(|t| t.n != first.n) {
        return Err(Error::precondition("topologies live on different carriers"));
    }
    let min_nbhd = (0..first.n)
        .map(|x| {
            ts.iter()
                .fold(Subset::full(first.n), |acc, t| acc.intersection(t.min_nbhd[x]))
        })
        .collect();
    FiniteTopology::new(first.n, min_nbhd)
}

/// Mutual coinitiality. When the systems are equivalent their induced
/// topologies are checked to coincide.
pub fn systems_equivalent(
    a: &ResiduatedLattice,
    s1: &SystemOfFilters,
    s2: &SystemOfFilters,
) -> Result<bool> {
    let coinitial = |p: &SystemOfFilters, q: &SystemOfFilters| {
        p.family()
            .iter()
            .all(|f| q.family().iter().any(|g| g.is_subset(f)))
    };
    let equivalent = coinitial(s1, s2) && coinitial(s2, s1);
    if equivalent && induce_topology(a, s1)? != induce_topology(a, s2)? {
        return Err(Error::violation(
            "equivalent systems of filters induce the same topology",
            format!("{:?} vs {:?}", s1.family(), s2.family()),
        ));
    }
    Ok(equivalent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{boolean, goedel_chain};

    fn set(xs: &[usize]) -> Subset {
        xs.iter().copied().collect()
    }

    #[test]
    fn induce_examples() {
        let g3 = goedel_chain(3);
        let t = induce_topology(&g3, &SystemOfFilters::single(FilterSet::trivial(&g3))).unwrap();
        assert!(t.is_discrete());
        let t = induce_topology(&g3, &SystemOfFilters::single(FilterSet::improper(&g3))).unwrap();
        assert!(t.is_antidiscrete());
        let f = FilterSet::from_elements(&g3, &[1, 2]).unwrap();
        let t = induce_topology(&g3, &SystemOfFilters::single(f)).unwrap();
        assert_eq!(t.min_nbhds(), &[set(&[0]), set(&[1, 2]), set(&[1, 2])]);
    }

    #[test]
    fn non_directed_family_rejected() {
        // ↑a ∩ ↑b = {1} has nothing below it in the family.
        let b2 = boolean(2);
        let fa = FilterSet::from_elements(&b2, &[1, 3]).unwrap();
        let fb = FilterSet::from_elements(&b2, &[2, 3]).unwrap();
        let err = SystemOfFilters::new(vec![fa, fb]).unwrap_err();
        assert!(err.to_string().contains("down-directed"));
        assert!(SystemOfFilters::new(vec![]).is_err());
    }

    #[test]
    fn separation_examples() {
        assert_eq!(separation_class(&FiniteTopology::discrete(3)), SeparationClass::T2);
        let g3 = goedel_chain(3);
        let f = FilterSet::from_elements(&g3, &[1, 2]).unwrap();
        let sys = SystemOfFilters::single(f);
        assert_eq!(
            separation_class(&induce_topology(&g3, &sys).unwrap()),
            SeparationClass::None
        );
        assert!(!is_hausdorff(&g3, &sys).unwrap());

        let b2 = boolean(2);
        let fa = FilterSet::from_elements(&b2, &[1, 3]).unwrap();
        let fb = FilterSet::from_elements(&b2, &[2, 3]).unwrap();
        let sys = SystemOfFilters::new(vec![fa, fb, FilterSet::trivial(&b2)]).unwrap();
        assert!(is_hausdorff(&b2, &sys).unwrap());
    }

    #[test]
    fn continuity_examples() {
        let g3 = goedel_chain(3);
        assert!(check_topological_algebra(&g3, &FiniteTopology::discrete(3)).is_ok());
        let t = FiniteTopology::new(3, vec![set(&[0, 1]), set(&[1]), set(&[2])]).unwrap();
        let err = check_topological_algebra(&g3, &t).unwrap_err();
        assert!(err.to_string().contains("discontinuous"));
        assert_eq!(err.op, Op::Impl);
    }

    #[test]
    fn zltrl_examples() {
        assert_eq!(enumerate_zltrl(&goedel_chain(2)).unwrap().len(), 2);
        assert_eq!(enumerate_zltrl(&goedel_chain(3)).unwrap().len(), 3);
        assert_eq!(enumerate_zltrl(&boolean(2)).unwrap().len(), 4);
        assert_eq!(set_partitions(3).len(), 5);
        assert_eq!(set_partitions(4).len(), 15);
    }

    #[test]
    fn openness_examples() {
        let g3 = goedel_chain(3);
        let f = FilterSet::from_elements(&g3, &[1, 2]).unwrap();
        let t = simple_topology(&g3, &f);
        let r = filter_openness(&g3, &t, &f).unwrap();
        assert!(r.open && r.closed);
        let r = filter_openness(&g3, &t, &FilterSet::trivial(&g3)).unwrap();
        assert!(!r.open && !r.closed);
        let d = FiniteTopology::discrete(3);
        let r = filter_openness(&g3, &d, &FilterSet::trivial(&g3)).unwrap();
        assert!(r.open && r.closed);
    }

    #[test]
    fn sup_and_equivalence_examples() {
        let b2 = boolean(2);
        let fa = FilterSet::from_elements(&b2, &[1, 3]).unwrap();
        let fb = FilterSet::from_elements(&b2, &[2, 3]).unwrap();
        let ta = simple_topology(&b2, &fa);
        let sup = sup_topologies(&[ta.clone(), simple_topology(&b2, &fb)]).unwrap();
        assert!(sup.is_discrete());
        assert_eq!(sup, simple_topology(&b2, &fa.intersection(&fb)));
        assert_eq!(sup_topologies(&[ta.clone(), FiniteTopology::antidiscrete(4)]).unwrap(), ta);

        let s1 = SystemOfFilters::single(fa);
        let s2 = SystemOfFilters::new(vec![fa, FilterSet::improper(&b2)]).unwrap();
        assert!(systems_equivalent(&b2, &s1, &s2).unwrap());
    }

    #[test]
    fn malformed_topologies_rejected() {
        assert!(FiniteTopology::new(2, vec![set(&[1]), set(&[1])]).is_err());
        assert!(FiniteTopology::new(3, vec![set(&[0, 1]), set(&[1, 2]), set(&[2])]).is_err());
    }

    #[test]
    fn serde_shape() {
        let json = serde_json::to_string(&FiniteTopology::discrete(2)).unwrap();
        assert_eq!(json, r#"{"n":2,"min_nbhd":[[0],[1]]}"#);
        let back: FiniteTopology = serde_json::from_str(&json).unwrap();
        assert!(back.is_discrete());
        assert!(serde_json::from_str::<FiniteTopology>(r#"{"n":2,"min_nbhd":[[1],[1]]}"#).is_err());
    }
}
