//! Structural classification of finite residuated lattices and the
//! verification suites built on top of it.

mod dcc;
pub mod suites;
mod uniform;

use serde::Serialize;

use crate::algebra::{canonical_key, find_isomorphism, product, ResiduatedLattice};
use crate::error::{Error, Result};
use crate::filters::{
    congruence_of_filter, enumerate_filters, prime_filters, quotient, CongruenceRelation, FilterSet,
};
use crate::subset::Subset;
use crate::topology::{enumerate_zltrl, induce_topology, FiniteTopology, SystemOfFilters};

pub use dcc::{dcc_exhaustive, dcc_report, DccReport, FamilyRecord};
pub use uniform::{
    nonpermuting_pair, permutability_check, uniform_base_check, BaseCondition, Relation,
    UniformBaseReport,
};

/// Filters other than `{top}`.
pub fn nontrivial_filters(a: &ResiduatedLattice) -> Vec<FilterSet> {
    enumerate_filters(a)
        .into_iter()
        .filter(|f| !f.is_trivial(a))
        .collect()
}

/// Subdirect irreducibility via the least nontrivial filter. The trivial
/// algebra counts as irreducible and has no monolith.
pub fn is_subdirectly_irreducible(a: &ResiduatedLattice) -> (bool, Option<FilterSet>) {
    if a.is_trivial() {
        return (true, None);
    }
    let nt = nontrivial_filters(a);
    let least = nt.iter().find(|f| nt.iter().all(|g| f.is_subset(g))).copied();
    (least.is_some(), least)
}

pub fn is_simple(a: &ResiduatedLattice) -> bool {
    !a.is_trivial() && enumerate_filters(a).len() == 2
}

/// A nontrivial factor-congruence pair, given by the two filters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorPair {
    pub left: FilterSet,
    pub right: FilterSet,
    pub left_blocks: Vec<Subset>,
    pub right_blocks: Vec<Subset>,
}

/// All pairs `(θ, θ*)` of congruences other than `Δ` and `∇` with
/// `θ ∩ θ* = Δ`, `θ ∨ θ* = ∇` and `θ ∘ θ* = θ* ∘ θ`. Each unordered pair is
/// listed once.
pub fn factor_pairs(a: &ResiduatedLattice) -> Result<Vec<FactorPair>> {
    let filters = enumerate_filters(a);
    let congs: Vec<CongruenceRelation> = filters
        .iter()
        .map(|f| congruence_of_filter(a, f))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in 0..congs.len() {
        for j in i + 1..congs.len() {
            let (t, s) = (&congs[i], &congs[j]);
            if t.is_identity() || t.is_all() || s.is_identity() || s.is_all() {
                continue;
            }
            if t.intersection(s).is_identity() && t.join(s).is_all() && t.permutes_with(s) {
                out.push(FactorPair {
                    left: filters[i],
                    right: filters[j],
                    left_blocks: t.blocks(),
                    right_blocks: s.blocks(),
                });
            }
        }
    }
    Ok(out)
}

/// The four characterizations of direct indecomposability, each computed
/// on its own:
///
/// 1. `𝓕(L) ∖ {{top}}` is down-directed;
/// 2. no finite intersection of nontrivial filters is `{top}`;
/// 3. there is no nontrivial factor-congruence pair;
/// 4. `L` is not isomorphic to a product of two nontrivial algebras.
///
/// On finite algebras 1 and 2 amount to subdirect irreducibility while 3
/// and 4 are direct indecomposability, so they can disagree; see
/// [`IndecomposabilityReport::agree`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndecomposabilityReport {
    pub global_system: bool,
    pub no_trivial_intersection: bool,
    pub no_factor_congruence: bool,
    pub no_product_decomposition: bool,
    /// Two nontrivial filters with no nontrivial filter below their meet.
    pub undirected_pair: Option<(FilterSet, FilterSet)>,
    /// Nontrivial filters meeting in `{top}`.
    pub trivial_intersection: Option<Vec<FilterSet>>,
    pub factor_pair: Option<FactorPair>,
    /// Filters `F, G` with `x ↦ (x/F, x/G)` an isomorphism onto `L/F × L/G`.
    pub product_split: Option<(FilterSet, FilterSet)>,
}

impl IndecomposabilityReport {
    pub fn verdicts(&self) -> [bool; 4] {
        [
            self.global_system,
            self.no_trivial_intersection,
            self.no_factor_congruence,
            self.no_product_decomposition,
        ]
    }

    pub fn agree(&self) -> bool {
        self.verdicts().iter().all(|&v| v == self.global_system)
    }
}

fn directedness_witness(a: &ResiduatedLattice) -> Option<(FilterSet, FilterSet)> {
    let nt = nontrivial_filters(a);
    for f in &nt {
        for g in &nt {
            let m = f.intersection(g);
            if !nt.iter().any(|h| h.is_subset(&m)) {
                return Some((*f, *g));
            }
        }
    }
    None
}

/// Closes the nontrivial filters under pairwise intersection, remembering
/// for each new set which filters produced it.
fn intersection_witness(a: &ResiduatedLattice) -> Option<Vec<FilterSet>> {
    let trivial = Subset::singleton(a.top());
    let mut seen: Vec<(Subset, Vec<FilterSet>)> = nontrivial_filters(a)
        .into_iter()
        .map(|f| (f.members(), vec![f]))
        .collect();
    let mut k = 0;
    while k < seen.len() {
        for j in 0..k {
            let m = seen[k].0.intersection(seen[j].0);
            if seen.iter().any(|(s, _)| *s == m) {
                continue;
            }
            let mut gens = seen[j].1.clone();
            for g in &seen[k].1 {
                if !gens.contains(g) {
                    gens.push(*g);
                }
            }
            if m == trivial {
                gens.sort_by_key(|x| x.members().canonical_key());
                return Some(gens);
            }
            seen.push((m, gens));
        }
        k += 1;
    }
    None
}

/// Searches filter pairs `F, G` for a splitting `L ≅ L/F × L/G` with both
/// factors nontrivial, confirmed by an isomorphism search.
fn product_witness(a: &ResiduatedLattice) -> Result<Option<(FilterSet, FilterSet)>> {
    let proper: Vec<FilterSet> = nontrivial_filters(a)
        .into_iter()
        .filter(|f| f.is_proper(a))
        .collect();
    for (i, f) in proper.iter().enumerate() {
        let (qf, hf) = quotient(a, f)?;
        for g in &proper[i + 1..] {
            let (qg, hg) = quotient(a, g)?;
            if qf.size() * qg.size() != a.size() {
                continue;
            }
            let p = product(&qf, &qg);
            let map: Vec<usize> = a
                .elements()
                .map(|x| hf.map[x] * qg.size() + hg.map[x])
                .collect();
            let mut image = map.clone();
            image.sort_unstable();
            image.dedup();
            if image.len() != a.size() {
                continue;
            }
            if find_isomorphism(a, &p).is_none() {
                return Err(Error::violation(
                    "a bijective product of quotient maps is an isomorphism",
                    format!("filters {f}, {g}"),
                ));
            }
            return Ok(Some((*f, *g)));
        }
    }
    Ok(None)
}

pub fn indecomposability_report(a: &ResiduatedLattice) -> Result<IndecomposabilityReport> {
    if a.is_trivial() {
        return Err(Error::precondition(
            "direct indecomposability is only defined for nontrivial algebras",
        ));
    }
    let undirected_pair = directedness_witness(a);
    let trivial_intersection = intersection_witness(a);
    let factor_pair = factor_pairs(a)?.into_iter().next();
    let product_split = product_witness(a)?;
    Ok(IndecomposabilityReport {
        global_system: undirected_pair.is_none(),
        no_trivial_intersection: trivial_intersection.is_none(),
        no_factor_congruence: factor_pair.is_none(),
        no_product_decomposition: product_split.is_none(),
        undirected_pair,
        trivial_intersection,
        factor_pair,
        product_split,
    })
}

/// The common verdict of the four characterizations; a disagreement is
/// reported as a violation carrying the full report.
pub fn is_directly_indecomposable(a: &ResiduatedLattice) -> Result<bool> {
    let r = indecomposability_report(a)?;
    if !r.agree() {
        return Err(Error::violation(
            "the four characterizations of direct indecomposability agree",
            serde_json::to_string(&r).expect("report serializes"),
        ));
    }
    Ok(r.global_system)
}

/// Direct indecomposability read off factor congruences alone.
pub fn has_no_factor_congruence(a: &ResiduatedLattice) -> Result<bool> {
    Ok(!a.is_trivial() && factor_pairs(a)?.is_empty())
}

/// Longest strictly increasing chain of prime filters, counted in steps.
/// Returns 0 when there are no prime filters at all (the trivial algebra).
pub fn dimension(a: &ResiduatedLattice) -> usize {
    let primes = prime_filters(a);
    // primes come sorted by size, so a strict superset always comes later
    let mut best = vec![0usize; primes.len()];
    for i in 0..primes.len() {
        for j in 0..i {
            if primes[j].members().is_proper_subset(primes[i].members()) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Extra equations an algebra satisfies.
pub fn variety_tags(a: &ResiduatedLattice) -> Vec<&'static str> {
    let all = |f: &dyn Fn(usize, usize) -> bool| a.elements().all(|x| a.elements().all(|y| f(x, y)));
    let chain = all(&|x, y| a.leq(x, y) || a.leq(y, x));
    let idempotent = a.elements().all(|x| a.is_idempotent(x));
    let prelinear = all(&|x, y| a.join(a.imp(x, y), a.imp(y, x)) == a.top());
    let divisible = all(&|x, y| a.meet(x, y) == a.mono(x, a.imp(x, y)));
    let involutive = a
        .elements()
        .all(|x| a.imp(a.imp(x, a.bottom()), a.bottom()) == x);
    let mut tags = Vec::new();
    if chain {
        tags.push("chain");
    }
    if idempotent {
        tags.push("heyting");
    }
    if prelinear {
        tags.push("mtl");
    }
    if prelinear && divisible {
        tags.push("bl");
    }
    if prelinear && divisible && involutive {
        tags.push("mv");
    }
    if prelinear && idempotent {
        tags.push("goedel");
    }
    if idempotent && involutive {
        tags.push("boolean");
    }
    tags
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub id: String,
    pub size: usize,
    pub filters: usize,
    pub is_simple: bool,
    pub is_subdirectly_irreducible: bool,
    /// Decided by factor congruences.
    pub is_directly_indecomposable: bool,
    pub monolith: Option<FilterSet>,
    pub dimension: usize,
    pub factor_pairs: Vec<FactorPair>,
    pub tags: Vec<&'static str>,
}

pub fn structure_report(a: &ResiduatedLattice) -> Result<StructureReport> {
    let (si, monolith) = is_subdirectly_irreducible(a);
    let factor_pairs = factor_pairs(a)?;
    let di = !a.is_trivial() && factor_pairs.is_empty();
    if si && !a.is_trivial() && !di {
        return Err(Error::violation(
            "subdirectly irreducible algebras are directly indecomposable",
            canonical_key(a),
        ));
    }
    Ok(StructureReport {
        id: canonical_key(a),
        size: a.size(),
        filters: enumerate_filters(a).len(),
        is_simple: is_simple(a),
        is_subdirectly_irreducible: si,
        is_directly_indecomposable: di,
        monolith,
        dimension: dimension(a),
        factor_pairs,
        tags: variety_tags(a),
    })
}

/// Outcome of relating subdirect irreducibility to the topology of the
/// global system of filters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalSystemVerdict {
    pub applicable: bool,
    pub note: Option<String>,
    pub subdirectly_irreducible: bool,
    /// Whether `𝓕(L) ∖ {{top}}` was itself down-directed; if not, its
    /// closure under finite intersections was used.
    pub family_directed: bool,
    pub topology: Option<FiniteTopology>,
    pub non_discrete: bool,
    /// Filter whose simple topology is the largest non-discrete member of ZLTRL.
    pub largest_non_discrete: Option<FilterSet>,
    pub maximal_non_discrete: usize,
}

fn not_applicable(note: &str) -> GlobalSystemVerdict {
    GlobalSystemVerdict {
        applicable: false,
        note: Some(note.to_string()),
        subdirectly_irreducible: false,
        family_directed: false,
        topology: None,
        non_discrete: false,
        largest_non_discrete: None,
        maximal_non_discrete: 0,
    }
}

/// For nontrivial directly indecomposable `a`: subdirectly irreducible ⟺
/// the global-system topology is non-discrete ⟺ ZLTRL has a largest
/// non-discrete member. Also checks `T_F ⊆ T_G ⟺ G ⊆ F` on all filter pairs.
pub fn global_system_topology_verdict(a: &ResiduatedLattice) -> Result<GlobalSystemVerdict> {
    if a.is_trivial() {
        return Ok(not_applicable("trivial algebra"));
    }
    if !has_no_factor_congruence(a)? {
        return Ok(not_applicable("not directly indecomposable"));
    }
    let (si, monolith) = is_subdirectly_irreducible(a);
    let nt = nontrivial_filters(a);
    let family_directed = directedness_witness(a).is_none();
    let family = if family_directed {
        nt.clone()
    } else {
        let mut closed: Vec<Subset> = nt.iter().map(|f| f.members()).collect();
        let mut k = 0;
        while k < closed.len() {
            for j in 0..k {
                let m = closed[k].intersection(closed[j]);
                if !closed.contains(&m) {
                    closed.push(m);
                }
            }
            k += 1;
        }
        closed
            .into_iter()
            .map(|s| FilterSet::new(a, s))
            .collect::<Result<_>>()?
    };
    let topology = induce_topology(a, &SystemOfFilters::new(family)?)?;
    let non_discrete = !topology.is_discrete();

    let filters = enumerate_filters(a);
    let zltrl = enumerate_zltrl(a)?;
    for (f, tf) in filters.iter().zip(&zltrl) {
        for (g, tg) in filters.iter().zip(&zltrl) {
            if tf.is_coarser_than(tg) != g.is_subset(f) {
                return Err(Error::violation(
                    "T_F is coarser than T_G iff G ⊆ F",
                    format!("F = {f}, G = {g}"),
                ));
            }
        }
    }
    let candidates: Vec<usize> = (0..zltrl.len()).filter(|&i| !zltrl[i].is_discrete()).collect();
    let largest = candidates
        .iter()
        .copied()
        .find(|&i| candidates.iter().all(|&j| zltrl[j].is_coarser_than(&zltrl[i])));
    let maximal_non_discrete = candidates
        .iter()
        .filter(|&&i| {
            !candidates
                .iter()
                .any(|&j| j != i && zltrl[i].is_coarser_than(&zltrl[j]))
        })
        .count();
    let largest_non_discrete = largest.map(|i| filters[i]);

    let consistent = si == non_discrete
        && non_discrete == largest.is_some()
        && (!si || largest_non_discrete == monolith)
        && (!si || topology == zltrl[largest.unwrap()]);
    if !consistent {
        return Err(Error::violation(
            "subdirectly irreducible ⟺ non-discrete global topology ⟺ a largest non-discrete linear topology exists",
            format!(
                "SI {si}, non-discrete {non_discrete}, largest {:?}, monolith {:?}",
                largest_non_discrete, monolith
            ),
        ));
    }
    Ok(GlobalSystemVerdict {
        applicable: true,
        note: (!family_directed)
            .then(|| "nontrivial filters are not down-directed; used their intersection closure".to_string()),
        subdirectly_irreducible: si,
        family_directed,
        topology: Some(topology),
        non_discrete,
        largest_non_discrete,
        maximal_non_discrete,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HausdorffVerdict {
    pub applicable: bool,
    pub note: Option<String>,
    /// Members of ZLTRL that are Hausdorff and neither discrete nor antidiscrete.
    pub nontrivial_hausdorff: usize,
    pub finite_index_discrete: bool,
    pub finite_index_hausdorff: bool,
}

/// No finite algebra carries a non-trivial Hausdorff zero-dimensional linear
/// topology, and its finite-index topology (all filters) is discrete.
pub fn hausdorff_existence_verdict(a: &ResiduatedLattice) -> Result<HausdorffVerdict> {
    if a.is_trivial() {
        return Ok(HausdorffVerdict {
            applicable: false,
            note: Some("trivial algebra: discrete and antidiscrete coincide".to_string()),
            nontrivial_hausdorff: 0,
            finite_index_discrete: true,
            finite_index_hausdorff: true,
        });
    }
    let zltrl = enumerate_zltrl(a)?;
    let nontrivial_hausdorff = zltrl
        .iter()
        .filter(|t| t.separation().t2 && !t.is_discrete() && !t.is_antidiscrete())
        .count();
    let all = SystemOfFilters::new(enumerate_filters(a))?;
    let fi = induce_topology(a, &all)?;
    let v = HausdorffVerdict {
        applicable: true,
        note: None,
        nontrivial_hausdorff,
        finite_index_discrete: fi.is_discrete(),
        finite_index_hausdorff: fi.separation().t2,
    };
    if v.nontrivial_hausdorff != 0 || !v.finite_index_discrete || !v.finite_index_hausdorff {
        return Err(Error::violation(
            "finite algebras have no non-trivial Hausdorff linear topology and a discrete finite-index topology",
            format!("{v:?}"),
        ));
    }
    Ok(v)
}

/// The simple topology of the monolith, for subdirectly irreducible `a`.
pub fn monolith_topology(a: &ResiduatedLattice) -> Option<FiniteTopology> {
    let (_, m) = is_subdirectly_irreducible(a);
    m.map(|f| crate::topology::simple_topology(a, &f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{boolean, goedel_chain, lukasiewicz_chain};

    /// A fresh bottom below the four-element Boolean algebra, with mono = meet.
    pub(crate) fn bottom_plus_diamond() -> ResiduatedLattice {
        // 0 < d < a, b < 1 with a, b incomparable
        let leq = |x: usize, y: usize| {
            x == y || x == 0 || y == 4 || (x == 1 && (y == 2 || y == 3))
        };
        let n = 5;
        let meet = |x: usize, y: usize| {
            (0..n)
                .filter(|&z| leq(z, x) && leq(z, y))
                .max_by_key(|&z| (0..n).filter(|&w| leq(w, z)).count())
                .unwrap()
        };
        let join = |x: usize, y: usize| {
            (0..n)
                .filter(|&z| leq(x, z) && leq(y, z))
                .min_by_key(|&z| (0..n).filter(|&w| leq(w, z)).count())
                .unwrap()
        };
        let imp = |x: usize, y: usize| {
            (0..n)
                .filter(|&z| leq(meet(z, x), y))
                .max_by_key(|&z| (0..n).filter(|&w| leq(w, z)).count())
                .unwrap()
        };
        ResiduatedLattice::from_fns(n, meet, join, meet, imp).unwrap()
    }

    #[test]
    fn subdirect_irreducibility_examples() {
        let (si, m) = is_subdirectly_irreducible(&lukasiewicz_chain(3));
        assert!(si);
        assert_eq!(m.unwrap().members(), Subset::full(3));
        let (si, m) = is_subdirectly_irreducible(&goedel_chain(3));
        assert!(si);
        assert_eq!(m.unwrap().members().to_vec(), vec![1, 2]);
        assert!(!is_subdirectly_irreducible(&boolean(2)).0);
    }

    #[test]
    fn indecomposability_examples() {
        assert!(is_directly_indecomposable(&goedel_chain(3)).unwrap());
        assert!(is_directly_indecomposable(&goedel_chain(2)).unwrap());
        let b2 = boolean(2);
        assert!(!is_directly_indecomposable(&b2).unwrap());
        let pair = factor_pairs(&b2).unwrap();
        assert_eq!(pair.len(), 1);
        assert_eq!(pair[0].left.members().to_vec(), vec![1, 3]);
        assert_eq!(pair[0].right.members().to_vec(), vec![2, 3]);
    }

    #[test]
    fn characterizations_split_on_five_elements() {
        let a = bottom_plus_diamond();
        let r = indecomposability_report(&a).unwrap();
        assert!(!r.global_system && !r.no_trivial_intersection);
        assert!(r.no_factor_congruence && r.no_product_decomposition);
        assert!(is_directly_indecomposable(&a).unwrap_err().is_violation());
        let v = global_system_topology_verdict(&a).unwrap();
        assert!(v.applicable && !v.family_directed && !v.non_discrete);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&goedel_chain(2)), 0);
        assert_eq!(dimension(&goedel_chain(4)), 2);
        assert_eq!(dimension(&boolean(2)), 0);
        assert_eq!(dimension(&lukasiewicz_chain(4)), 0);
        assert_eq!(dimension(&goedel_chain(1)), 0);
    }

    #[test]
    fn global_system_examples() {
        let g3 = goedel_chain(3);
        let v = global_system_topology_verdict(&g3).unwrap();
        assert!(v.subdirectly_irreducible && v.non_discrete);
        assert_eq!(v.largest_non_discrete.unwrap().members().to_vec(), vec![1, 2]);
        let v = global_system_topology_verdict(&lukasiewicz_chain(3)).unwrap();
        assert!(v.topology.unwrap().is_antidiscrete());
        assert!(!global_system_topology_verdict(&boolean(2)).unwrap().applicable);
    }

    #[test]
    fn hausdorff_examples() {
        let v = hausdorff_existence_verdict(&goedel_chain(3)).unwrap();
        assert_eq!(v.nontrivial_hausdorff, 0);
        assert!(v.finite_index_discrete);
        assert!(!hausdorff_existence_verdict(&goedel_chain(1)).unwrap().applicable);
    }

    #[test]
    fn structure_report_of_boolean() {
        let r = structure_report(&boolean(2)).unwrap();
        assert!(!r.is_subdirectly_irreducible && !r.is_directly_indecomposable);
        assert!(r.monolith.is_none());
        assert!(r.tags.contains(&"boolean"));
        let r = structure_report(&lukasiewicz_chain(3)).unwrap();
        assert!(r.is_simple && r.tags.contains(&"mv"));
    }
}
