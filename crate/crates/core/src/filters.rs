//! Filters, the congruences they determine, quotients, prime filters and the
//! filter lattice.
//!
//! In a finite residuated lattice every filter is principal, generated by an
//! idempotent element; [`enumerate_filters`] uses this, and the test suite
//! checks it against a scan of all subsets.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, Homomorphism, Op, ResiduatedLattice};
use crate::error::{Error, Result};
use crate::subset::Subset;

/// A filter of some algebra: contains top, closed under `mono`, upward closed.
///
/// A `FilterSet` does not carry its algebra; it is only constructed through
/// checks against one, and every operation takes the algebra explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FilterSet {
    members: Subset,
}

impl FilterSet {
    pub fn new(a: &ResiduatedLattice, members: Subset) -> Result<Self> {
        if !members.is_subset(a.carrier()) {
            return Err(Error::precondition(format!(
                "{members} is not a subset of a carrier of size {}",
                a.size()
            )));
        }
        match filter_defect(a, members) {
            None => Ok(FilterSet { members }),
            Some(why) => Err(Error::precondition(format!("{members} is not a filter: {why}"))),
        }
    }

    pub fn from_elements(a: &ResiduatedLattice, elems: &[Elem]) -> Result<Self> {
        Self::new(a, elems.iter().copied().collect())
    }

    pub(crate) fn unchecked(members: Subset) -> Self {
        FilterSet { members }
    }

    /// The trivial filter `{top}`.
    pub fn trivial(a: &ResiduatedLattice) -> Self {
        FilterSet {
            members: Subset::singleton(a.top()),
        }
    }

    /// The improper filter (the whole carrier).
    pub fn improper(a: &ResiduatedLattice) -> Self {
        FilterSet {
            members: a.carrier(),
        }
    }

    /// `↑e` for an idempotent `e`.
    pub fn principal(a: &ResiduatedLattice, e: Elem) -> Result<Self> {
        Self::new(a, a.up_set(e))
    }

    pub fn members(&self) -> Subset {
        self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_proper(&self, a: &ResiduatedLattice) -> bool {
        !self.members.contains(a.bottom())
    }

    pub fn is_trivial(&self, a: &ResiduatedLattice) -> bool {
        self.members == Subset::singleton(a.top())
    }

    pub fn intersection(&self, other: &FilterSet) -> FilterSet {
        FilterSet {
            members: self.members.intersection(other.members),
        }
    }

    pub fn is_subset(&self, other: &FilterSet) -> bool {
        self.members.is_subset(other.members)
    }

    /// The least element; filters of finite algebras are principal.
    pub fn generator(&self, a: &ResiduatedLattice) -> Elem {
        a.meet_all(self.members)
    }
}

impl std::fmt::Display for FilterSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.members.fmt(f)
    }
}

fn filter_defect(a: &ResiduatedLattice, s: Subset) -> Option<String> {
    if !s.contains(a.top()) {
        return Some("top is missing".into());
    }
    for x in s {
        for y in s {
            if !s.contains(a.mono(x, y)) {
                return Some(format!("not closed under mono at ({x}, {y})"));
            }
        }
        for y in a.elements() {
            if a.leq(x, y) && !s.contains(y) {
                return Some(format!("not upward closed: {x} <= {y}"));
            }
        }
    }
    None
}

/// Filter axioms: top, closure under `mono`, upward closure.
pub fn is_filter(a: &ResiduatedLattice, s: Subset) -> bool {
    s.is_subset(a.carrier()) && filter_defect(a, s).is_none()
}

/// Deductive-system axioms: top, and `x, x -> y ∈ S` implies `y ∈ S`.
pub fn is_deductive_system(a: &ResiduatedLattice, s: Subset) -> bool {
    s.contains(a.top())
        && s.iter()
            .all(|x| a.elements().all(|y| !s.contains(a.imp(x, y)) || s.contains(y)))
}

/// All filters, sorted by cardinality and then by sorted member list.
pub fn enumerate_filters(a: &ResiduatedLattice) -> Vec<FilterSet> {
    let mut out: Vec<FilterSet> = a
        .elements()
        .filter(|&e| a.is_idempotent(e))
        .map(|e| FilterSet::unchecked(a.up_set(e)))
        .collect();
    debug_assert!(out.iter().all(|f| is_filter(a, f.members)));
    sort_filters(&mut out);
    out
}

pub(crate) fn sort_filters(filters: &mut Vec<FilterSet>) {
    filters.sort_by_key(|f| f.members.canonical_key());
    filters.dedup();
}

/// Smallest filter containing `s`.
pub fn generated_filter(a: &ResiduatedLattice, s: Subset) -> FilterSet {
    let mut cur = s.intersection(a.carrier()).with(a.top());
    loop {
        let mut next = cur;
        for x in cur {
            for y in cur {
                next.insert(a.mono(x, y));
            }
            next = next.union(a.up_set(x));
        }
        if next == cur {
            return FilterSet::unchecked(cur);
        }
        cur = next;
    }
}

/// Join in the filter lattice.
pub fn filter_join(a: &ResiduatedLattice, f: &FilterSet, g: &FilterSet) -> FilterSet {
    generated_filter(a, f.members.union(g.members))
}

/// An equivalence relation on the carrier, stored as a block id per element.
/// Block ids are numbered by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CongruenceRelation {
    blocks: Vec<usize>,
}

impl CongruenceRelation {
    /// Normalizes an arbitrary labelling into first-occurrence block ids.
    /// Compatibility with the operations is not checked here.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut ids: Vec<(usize, usize)> = Vec::new();
        let blocks = labels
            .iter()
            .map(|&l| match ids.iter().find(|(k, _)| *k == l) {
                Some(&(_, id)) => id,
                None => {
                    let id = ids.len();
                    ids.push((l, id));
                    id
                }
            })
            .collect();
        CongruenceRelation { blocks }
    }

    pub fn from_blocks(n: usize, parts: &[Subset]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (k, part) in parts.iter().enumerate() {
            for x in *part {
                if x >= n || labels[x] != usize::MAX {
                    return Err(Error::precondition("blocks do not partition the carrier"));
                }
                labels[x] = k;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::precondition("blocks do not cover the carrier"));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn identity(n: usize) -> Self {
        CongruenceRelation {
            blocks: (0..n).collect(),
        }
    }

    pub fn all(n: usize) -> Self {
        CongruenceRelation { blocks: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.blocks
    }

    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.blocks[x] == self.blocks[y]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn block_of(&self, x: Elem) -> Subset {
        let b = self.blocks[x];
        (0..self.size()).filter(|&y| self.blocks[y] == b).collect()
    }

    pub fn blocks(&self) -> Vec<Subset> {
        let mut out = vec![Subset::EMPTY; self.block_count()];
        for (x, &b) in self.blocks.iter().enumerate() {
            out[b].insert(x);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.size()
    }

    pub fn is_all(&self) -> bool {
        self.block_count() <= 1
    }

    /// First `(op, x, y, x', y')` with `x ~ x'`, `y ~ y'` but
    /// `op(x, y)` not related to `op(x', y')`.
    pub fn compatibility_defect(&self, a: &ResiduatedLattice) -> Option<(Op, [Elem; 4])> {
        let n = a.size();
        for op in Op::ALL {
            for x in 0..n {
                for x2 in (0..n).filter(|&x2| self.related(x, x2)) {
                    for y in 0..n {
                        for y2 in (0..n).filter(|&y2| self.related(y, y2)) {
                            if !self.related(a.op(op, x, y), a.op(op, x2, y2)) {
                                return Some((op, [x, y, x2, y2]));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_congruence(&self, a: &ResiduatedLattice) -> bool {
        self.size() == a.size() && self.compatibility_defect(a).is_none()
    }

    pub fn intersection(&self, other: &CongruenceRelation) -> CongruenceRelation {
        let labels: Vec<usize> = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(&p, &q)| p * other.size() + q)
            .collect();
        Self::from_labels(&labels)
    }

    /// Smallest equivalence containing both (transitive closure of the union).
    pub fn join(&self, other: &CongruenceRelation) -> CongruenceRelation {
        let n = self.size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for rel in [self, other] {
            for x in 0..n {
                for y in x + 1..n {
                    if rel.related(x, y) {
                        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                        parent[rx.max(ry)] = rx.min(ry);
                    }
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        Self::from_labels(&labels)
    }

    /// Relation composite `self ∘ other = {(x, y) : ∃z. x self z, z other y}`,
    /// as an adjacency list of subsets.
    pub fn compose(&self, other: &CongruenceRelation) -> Vec<Subset> {
        let n = self.size();
        (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&z| self.related(x, z))
                    .fold(Subset::EMPTY, |acc, z| acc.union(other.block_of(z)))
            })
            .collect()
    }

    /// `self ∘ other = other ∘ self`.
    pub fn permutes_with(&self, other: &CongruenceRelation) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// The relation as a list of pairs.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let n = self.size();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.related(x, y))
            .collect()
    }
}

/// `θ_F = {(x, y) : (x -> y) mono (y -> x) ∈ F}`, verified to be a congruence.
pub fn congruence_of_filter(a: &ResiduatedLattice, f: &FilterSet) -> Result<CongruenceRelation> {
    let n = a.size();
    // Group by the pair relation; each element joins the block of the first
    // earlier element it is related to.
    let mut labels = vec![0usize; n];
    for x in 0..n {
        labels[x] = (0..x).find(|&y| f.contains(a.biresiduum(x, y))).map_or(x, |y| labels[y]);
    }
    let theta = CongruenceRelation::from_labels(&labels);
    for x in 0..n {
        for y in 0..n {
            if theta.related(x, y) != f.contains(a.biresiduum(x, y)) {
                return Err(Error::violation(
                    "filter congruence is an equivalence",
                    format!("filter {f}, pair ({x}, {y})"),
                ));
            }
        }
    }
    if let Some((op, w)) = theta.compatibility_defect(a) {
        return Err(Error::violation(
            "filter congruence is compatible with the operations",
            format!("filter {f}, {op} at {w:?}"),
        ));
    }
    Ok(theta)
}

/// `[1]_θ`; rejects partitions that are not congruences.
pub fn filter_of_congruence(a: &ResiduatedLattice, theta: &CongruenceRelation) -> Result<FilterSet> {
    if theta.size() != a.size() {
        return Err(Error::precondition("partition size differs from the carrier"));
    }
    if let Some((op, w)) = theta.compatibility_defect(a) {
        return Err(Error::precondition(format!(
            "partition is not a congruence: {op} at {w:?}"
        )));
    }
    FilterSet::new(a, theta.block_of(a.top()))
}

/// `x/F`, the block of `x` under `θ_F`.
pub fn coset(a: &ResiduatedLattice, f: &FilterSet, x: Elem) -> Subset {
    a.elements()
        .filter(|&y| f.contains(a.biresiduum(x, y)))
        .collect()
}

/// `L/F` together with the canonical surjection `x ↦ x/F`.
///
/// Classes are numbered by least member, except that the class of top is
/// always last.
pub fn quotient(a: &ResiduatedLattice, f: &FilterSet) -> Result<(Arc<ResiduatedLattice>, Homomorphism)> {
    let theta = congruence_of_filter(a, f)?;
    let mut classes = theta.blocks();
    classes.sort_by_key(|b| b.first());
    let top_pos = classes.iter().position(|b| b.contains(a.top())).unwrap();
    let top_class = classes.remove(top_pos);
    classes.push(top_class);

    let mut class_of = vec![0usize; a.size()];
    for (k, c) in classes.iter().enumerate() {
        for x in *c {
            class_of[x] = k;
        }
    }
    let reps: Vec<Elem> = classes.iter().map(|c| c.first().unwrap()).collect();
    let m = classes.len();
    let lift = |op: Op| {
        let reps = &reps;
        let class_of = &class_of;
        move |p: usize, q: usize| class_of[a.op(op, reps[p], reps[q])]
    };
    let algebra = ResiduatedLattice::from_fns(
        m,
        lift(Op::Meet),
        lift(Op::Join),
        lift(Op::Mono),
        lift(Op::Impl),
    )
    .map_err(|e| Error::violation("quotients are residuated lattices", format!("{f}: {e}")))?;
    let algebra = Arc::new(algebra);
    let map = Homomorphism::new(Arc::new(a.clone()), algebra.clone(), class_of)?;
    Ok((algebra, map))
}

/// Proper and `x ∨ y ∈ F ⇒ x ∈ F or y ∈ F`. The improper filter is never prime.
pub fn is_prime(a: &ResiduatedLattice, f: &FilterSet) -> bool {
    f.is_proper(a)
        && a.elements().all(|x| {
            a.elements()
                .all(|y| !f.contains(a.join(x, y)) || f.contains(x) || f.contains(y))
        })
}

pub fn prime_filters(a: &ResiduatedLattice) -> Vec<FilterSet> {
    enumerate_filters(a)
        .into_iter()
        .filter(|f| is_prime(a, f))
        .collect()
}

/// Intersection of a family of filters; the empty family gives the carrier.
pub fn intersect_all(a: &ResiduatedLattice, family: &[FilterSet]) -> FilterSet {
    FilterSet::unchecked(
        family
            .iter()
            .fold(a.carrier(), |acc, f| acc.intersection(f.members())),
    )
}

/// The lattice `(𝓕(L), ⊆)` with meet `∩` and join the generated filter of the union.
#[derive(Clone, Debug)]
pub struct FilterLattice {
    pub filters: Vec<FilterSet>,
    join: Vec<usize>,
    meet: Vec<usize>,
}

impl FilterLattice {
    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn index_of(&self, f: &FilterSet) -> Option<usize> {
        self.filters.iter().position(|g| g == f)
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.filters[i].is_subset(&self.filters[j])
    }

    /// `(lower, upper)` index pairs of the covering relation.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if i != j
                    && self.leq(i, j)
                    && !(0..k).any(|m| m != i && m != j && self.leq(i, m) && self.leq(m, j))
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Hasse diagram in Graphviz DOT, edges pointing upward.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph filters {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, f) in self.filters.iter().enumerate() {
            let _ = writeln!(out, "  f{i} [label=\"{f}\"];");
        }
        for (i, j) in self.covers() {
            let _ = writeln!(out, "  f{i} -> f{j};");
        }
        out.push_str("}\n");
        out
    }
}

pub fn filter_lattice(a: &ResiduatedLattice) -> FilterLattice {
    let filters = enumerate_filters(a);
    let k = filters.len();
    let mut join = vec![0; k * k];
    let mut meet = vec![0; k * k];
    let index = |f: &FilterSet| filters.iter().position(|g| g == f).expect("closed under lattice ops");
    for i in 0..k {
        for j in 0..k {
            join[i * k + j] = index(&filter_join(a, &filters[i], &filters[j]));
            meet[i * k + j] = index(&filters[i].intersection(&filters[j]));
        }
    }
    FilterLattice { filters, join, meet }
}

/// Filters other than `{top}` that are not the join of two strictly smaller filters.
pub fn join_irreducible_filters(a: &ResiduatedLattice) -> Vec<FilterSet> {
    let lat = filter_lattice(a);
    let k = lat.len();
    (0..k)
        .filter(|&i| !lat.filters[i].is_trivial(a))
        .filter(|&i| {
            let below: Vec<usize> = (0..k).filter(|&j| j != i && lat.leq(j, i)).collect();
            !below
                .iter()
                .any(|&p| below.iter().any(|&q| lat.join(p, q) == i))
        })
        .map(|i| lat.filters[i])
        .collect()
}

/// The irredundant join-irreducible decomposition of `f`: the maximal
/// join-irreducible filters below it. Rejects `{top}`.
pub fn irredundant_decomposition(a: &ResiduatedLattice, f: &FilterSet) -> Result<Vec<FilterSet>> {
    if f.is_trivial(a) {
        return Err(Error::precondition(
            "the trivial filter has no join-irreducible decomposition",
        ));
    }
    let below: Vec<FilterSet> = join_irreducible_filters(a)
        .into_iter()
        .filter(|j| j.is_subset(f))
        .collect();
    let parts: Vec<FilterSet> = below
        .iter()
        .filter(|j| !below.iter().any(|k| j.members().is_proper_subset(k.members())))
        .copied()
        .collect();
    let join_of = |fs: &[FilterSet]| {
        generated_filter(a, fs.iter().fold(Subset::EMPTY, |acc, g| acc.union(g.members())))
    };
    if join_of(&parts) != *f {
        return Err(Error::violation(
            "every filter is a join of join-irreducible filters",
            format!("filter {f}, maximal join-irreducibles below: {parts:?}"),
        ));
    }
    for skip in 0..parts.len() {
        let rest: Vec<FilterSet> = parts
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != skip)
            .map(|(_, g)| *g)
            .collect();
        if join_of(&rest) == *f {
            return Err(Error::violation(
                "join-irreducible decompositions are irredundant",
                format!("filter {f}, component {} is redundant", parts[skip]),
            ));
        }
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{are_isomorphic, boolean, goedel_chain, lukasiewicz_chain};

    fn set(xs: &[usize]) -> Subset {
        xs.iter().copied().collect()
    }

    fn brute_filters(a: &ResiduatedLattice) -> Vec<FilterSet> {
        let mut v: Vec<FilterSet> = Subset::all_subsets(a.size())
            .filter(|&s| is_filter(a, s))
            .map(FilterSet::unchecked)
            .collect();
        sort_filters(&mut v);
        v
    }

    #[test]
    fn enumeration_examples() {
        let two = goedel_chain(2);
        let got: Vec<_> = enumerate_filters(&two).iter().map(|f| f.members()).collect();
        assert_eq!(got, vec![set(&[1]), set(&[0, 1])]);

        let g3 = goedel_chain(3);
        let got: Vec<_> = enumerate_filters(&g3).iter().map(|f| f.members()).collect();
        assert_eq!(got, vec![set(&[2]), set(&[1, 2]), set(&[0, 1, 2])]);

        // Boolean {0, a=1, b=2, 1=3}
        let b2 = boolean(2);
        let got: Vec<_> = enumerate_filters(&b2).iter().map(|f| f.members()).collect();
        assert_eq!(got, vec![set(&[3]), set(&[1, 3]), set(&[2, 3]), set(&[0, 1, 2, 3])]);
    }

    #[test]
    fn principal_enumeration_matches_subset_scan() {
        for a in [goedel_chain(5), lukasiewicz_chain(5), boolean(3)] {
            assert_eq!(enumerate_filters(&a), brute_filters(&a));
            for s in Subset::all_subsets(a.size()) {
                assert_eq!(is_filter(&a, s), is_deductive_system(&a, s), "{s}");
            }
        }
    }

    #[test]
    fn generated_filter_examples() {
        let g3 = goedel_chain(3);
        let l3 = lukasiewicz_chain(3);
        assert_eq!(generated_filter(&g3, Subset::EMPTY).members(), set(&[2]));
        assert_eq!(generated_filter(&l3, set(&[1])).members(), set(&[0, 1, 2]));
        assert_eq!(generated_filter(&g3, set(&[1])).members(), set(&[1, 2]));
    }

    #[test]
    fn congruence_examples() {
        let g3 = goedel_chain(3);
        let t = FilterSet::trivial(&g3);
        assert!(congruence_of_filter(&g3, &t).unwrap().is_identity());
        let f = FilterSet::from_elements(&g3, &[1, 2]).unwrap();
        let theta = congruence_of_filter(&g3, &f).unwrap();
        assert_eq!(theta.blocks(), vec![set(&[0]), set(&[1, 2])]);
        assert_eq!(filter_of_congruence(&g3, &theta).unwrap(), f);

        let b2 = boolean(2);
        let up_a = FilterSet::from_elements(&b2, &[1, 3]).unwrap();
        let theta = congruence_of_filter(&b2, &up_a).unwrap();
        assert_eq!(theta.blocks(), vec![set(&[0, 2]), set(&[1, 3])]);
    }

    #[test]
    fn non_congruence_partition_rejected() {
        let g3 = goedel_chain(3);
        let bad = CongruenceRelation::from_blocks(3, &[set(&[0, 1]), set(&[2])]).unwrap();
        assert!(filter_of_congruence(&g3, &bad).is_err());
    }

    #[test]
    fn quotient_examples() {
        let g3 = goedel_chain(3);
        let (q, h) = quotient(&g3, &FilterSet::trivial(&g3)).unwrap();
        assert!(are_isomorphic(&q, &g3));
        assert!(h.is_homomorphism());

        let f = FilterSet::from_elements(&g3, &[1, 2]).unwrap();
        let (q, h) = quotient(&g3, &f).unwrap();
        assert!(are_isomorphic(&q, &goedel_chain(2)));
        assert!(h.is_surjective());
        assert_eq!(h.kernel().unwrap(), f);
        assert_eq!(coset(&g3, &f, 0), set(&[0]));
        assert_eq!(coset(&g3, &f, 1), set(&[1, 2]));

        let (q, _) = quotient(&g3, &FilterSet::improper(&g3)).unwrap();
        assert!(q.is_trivial());
    }

    #[test]
    fn prime_examples() {
        let g3 = goedel_chain(3);
        let primes: Vec<_> = prime_filters(&g3).iter().map(|f| f.members()).collect();
        assert_eq!(primes, vec![set(&[2]), set(&[1, 2])]);
        assert!(!is_prime(&g3, &FilterSet::improper(&g3)));

        let b2 = boolean(2);
        assert!(!is_prime(&b2, &FilterSet::trivial(&b2)));
        let primes: Vec<_> = prime_filters(&b2).iter().map(|f| f.members()).collect();
        assert_eq!(primes, vec![set(&[1, 3]), set(&[2, 3])]);

        let two = goedel_chain(2);
        assert_eq!(prime_filters(&two), vec![FilterSet::trivial(&two)]);
    }

    #[test]
    fn decomposition_examples() {
        let g4 = goedel_chain(4);
        let ji = join_irreducible_filters(&g4);
        assert_eq!(ji.len(), 3);
        for f in &ji {
            assert_eq!(irredundant_decomposition(&g4, f).unwrap(), vec![*f]);
        }

        let b2 = boolean(2);
        let up_a = FilterSet::from_elements(&b2, &[1, 3]).unwrap();
        let up_b = FilterSet::from_elements(&b2, &[2, 3]).unwrap();
        assert_eq!(join_irreducible_filters(&b2), vec![up_a, up_b]);
        assert_eq!(
            irredundant_decomposition(&b2, &FilterSet::improper(&b2)).unwrap(),
            vec![up_a, up_b]
        );
        assert_eq!(irredundant_decomposition(&b2, &up_a).unwrap(), vec![up_a]);
        assert!(irredundant_decomposition(&b2, &FilterSet::trivial(&b2)).is_err());
    }

    #[test]
    fn hasse_dot_of_boolean() {
        let dot = filter_lattice(&boolean(2)).to_dot();
        assert!(dot.starts_with("digraph filters {"));
        assert_eq!(dot.matches("->").count(), 4);
    }
}
