//! Inverse systems of finite residuated lattices, their limits as thread
//! sets, cofinal restriction, profinite completions and profiniteness
//! certificates.
//!
//! A finite directed poset always has a greatest element, so every finite
//! inverse system has a limit isomorphic to the algebra at its top index.
//! Genuinely infinite towers are only handled as finite truncations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    all_homomorphisms, find_isomorphism, AlgebraData, Elem, Homomorphism, Op, ResiduatedLattice,
};
use crate::error::{Error, Result};
use crate::filters::{
    coset, enumerate_filters, intersect_all, join_irreducible_filters, quotient, FilterSet,
};
use crate::subset::{Subset, MAX_CARRIER};
use crate::topology::{check_topological_algebra, FiniteTopology};

/// Default cap on the number of candidate tuples considered by [`inverse_limit`].
pub const DEFAULT_TUPLE_BOUND: u128 = 1_000_000;

/// Products up to this many tuples are re-enumerated naively as a cross-check.
pub const NAIVE_CROSS_CHECK_BOUND: u128 = 10_000;

/// Largest product [`subdirect_embedding`] builds explicitly.
pub const MATERIALIZED_PRODUCT_MAX: usize = 32;

/// Index label as written in JSON: an integer or a string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexId {
    Num(u64),
    Name(String),
}

impl fmt::Display for IndexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexId::Num(n) => write!(f, "{n}"),
            IndexId::Name(s) => f.write_str(s),
        }
    }
}

impl From<&str> for IndexId {
    fn from(s: &str) -> Self {
        IndexId::Name(s.to_string())
    }
}

impl From<u64> for IndexId {
    fn from(n: u64) -> Self {
        IndexId::Num(n)
    }
}

/// A finite directed poset on positions `0..k`; `leq[i][j]` means `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedPoset {
    ids: Vec<IndexId>,
    leq: Vec<Vec<bool>>,
}

impl DirectedPoset {
    /// Takes the reflexive-transitive closure of `pairs` (each `(i, j)`
    /// meaning `i <= j`), then checks antisymmetry and directedness.
    pub fn new(ids: Vec<IndexId>, pairs: &[(usize, usize)]) -> Result<Self> {
        let k = ids.len();
        if k == 0 {
            return Err(Error::precondition("a directed poset must be nonempty"));
        }
        let mut leq = vec![vec![false; k]; k];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in pairs {
            if i >= k || j >= k {
                return Err(Error::Structural(format!("order pair ({i}, {j}) out of range")));
            }
            leq[i][j] = true;
        }
        for m in 0..k {
            for i in 0..k {
                if leq[i][m] {
                    for j in 0..k {
                        if leq[m][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::precondition(format!(
                        "order is not antisymmetric: {} and {} are mutually below each other",
                        ids[i], ids[j]
                    )));
                }
            }
        }
        let p = DirectedPoset { ids, leq };
        let all: Vec<usize> = (0..k).collect();
        if let Some((i, j)) = p.undirected_pair(&all) {
            return Err(Error::precondition(format!(
                "poset is not directed: {} and {} have no upper bound",
                p.ids[i], p.ids[j]
            )));
        }
        Ok(p)
    }

    /// A chain `0 <= 1 <= .. <= k-1` with integer ids.
    pub fn chain(k: usize) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        Self::new((0..k as u64).map(IndexId::Num).collect(), &pairs)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[IndexId] {
        &self.ids
    }

    pub fn position(&self, id: &IndexId) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// The greatest element.
    pub fn maximum(&self) -> usize {
        (0..self.len())
            .find(|&m| (0..self.len()).all(|i| self.leq[i][m]))
            .expect("finite directed posets have a maximum")
    }

    /// A pair in `subset` without an upper bound in `subset`.
    pub fn undirected_pair(&self, subset: &[usize]) -> Option<(usize, usize)> {
        for &i in subset {
            for &j in subset {
                if !subset.iter().any(|&u| self.leq[i][u] && self.leq[j][u]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// An element of the poset with nothing above it in `subset`.
    pub fn cofinality_gap(&self, subset: &[usize]) -> Option<usize> {
        (0..self.len()).find(|&i| !subset.iter().any(|&u| self.leq[i][u]))
    }

    /// Positions ordered so that every index comes before all indices below it.
    pub fn descending_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| ((0..self.len()).filter(|&j| self.leq[i][j]).count(), i));
        order
    }

    fn restrict(&self, subset: &[usize]) -> DirectedPoset {
        DirectedPoset {
            ids: subset.iter().map(|&i| self.ids[i].clone()).collect(),
            leq: subset
                .iter()
                .map(|&i| subset.iter().map(|&j| self.leq[i][j]).collect())
                .collect(),
        }
    }
}

/// A thread picks one element per index, compatible with all transitions.
pub type Thread = Vec<Elem>;

/// Algebras indexed by a directed poset with transition homomorphisms
/// `π_ij: A_i -> A_j` for `j <= i`, satisfying `π_ii = id` and
/// `π_ik = π_jk ∘ π_ij`.
#[derive(Clone, Debug)]
pub struct InverseSystem {
    poset: DirectedPoset,
    algebras: Vec<Arc<ResiduatedLattice>>,
    transitions: BTreeMap<(usize, usize), Homomorphism>,
}

impl InverseSystem {
    /// `maps` holds `(from, to, map)` with `to <= from`. Identity transitions
    /// may be omitted; every other comparable pair must be present.
    pub fn new(
        poset: DirectedPoset,
        algebras: Vec<Arc<ResiduatedLattice>>,
        maps: Vec<(usize, usize, Vec<Elem>)>,
    ) -> Result<Self> {
        let k = poset.len();
        if algebras.len() != k {
            return Err(Error::Structural(format!(
                "{} algebras for {k} indices",
                algebras.len()
            )));
        }
        let mut transitions = BTreeMap::new();
        for (from, to, map) in maps {
            if from >= k || to >= k {
                return Err(Error::Structural(format!("transition {from} -> {to} out of range")));
            }
            if !poset.leq(to, from) {
                return Err(Error::precondition(format!(
                    "transition {} -> {} goes against the order",
                    poset.ids[from], poset.ids[to]
                )));
            }
            let h = Homomorphism::new(algebras[from].clone(), algebras[to].clone(), map)?;
            if transitions.insert((from, to), h).is_some() {
                return Err(Error::precondition(format!(
                    "duplicate transition {} -> {}",
                    poset.ids[from], poset.ids[to]
                )));
            }
        }
        for i in 0..k {
            transitions
                .entry((i, i))
                .or_insert_with(|| Homomorphism::identity(algebras[i].clone()));
        }
        let s = InverseSystem {
            poset,
            algebras,
            transitions,
        };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        let k = self.poset.len();
        let id = |i: usize| &self.poset.ids[i];
        for i in 0..k {
            for j in 0..k {
                if !self.poset.leq(j, i) {
                    continue;
                }
                let h = self.transitions.get(&(i, j)).ok_or_else(|| {
                    Error::precondition(format!("missing transition {} -> {}", id(i), id(j)))
                })?;
                if let Err(e) = h.check() {
                    return Err(Error::precondition(format!(
                        "transition {} -> {} is not a homomorphism: {e}",
                        id(i),
                        id(j)
                    )));
                }
                if i == j && h.map.iter().enumerate().any(|(x, &y)| x != y) {
                    return Err(Error::precondition(format!(
                        "transition {} -> {} must be the identity",
                        id(i),
                        id(i)
                    )));
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                for m in 0..k {
                    if self.poset.leq(m, j) && self.poset.leq(j, i) {
                        let direct = &self.transitions[&(i, m)];
                        let via = &self.transitions[&(i, j)].then(&self.transitions[&(j, m)])?;
                        if direct.map != via.map {
                            return Err(Error::precondition(format!(
                                "triangle {} -> {} -> {} does not commute",
                                id(i),
                                id(j),
                                id(m)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn poset(&self) -> &DirectedPoset {
        &self.poset
    }

    pub fn algebras(&self) -> &[Arc<ResiduatedLattice>] {
        &self.algebras
    }

    /// `π_ij` for `j <= i`.
    pub fn transition(&self, i: usize, j: usize) -> Option<&Homomorphism> {
        self.transitions.get(&(i, j))
    }

    /// Product of the algebra sizes, saturating.
    pub fn tuple_count(&self) -> u128 {
        self.algebras
            .iter()
            .fold(1u128, |acc, a| acc.saturating_mul(a.size() as u128))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SystemDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        doc.into_system()
    }

    pub fn to_json(&self) -> String {
        let ids = self.poset.ids();
        let mut leq = Vec::new();
        for i in 0..ids.len() {
            for j in 0..ids.len() {
                if i != j && self.poset.leq(i, j) {
                    leq.push((ids[i].clone(), ids[j].clone()));
                }
            }
        }
        let doc = SystemDoc {
            poset: PosetDoc {
                elements: ids.to_vec(),
                leq,
            },
            algebras: ids
                .iter()
                .zip(&self.algebras)
                .map(|(id, a)| (id.to_string(), a.to_data()))
                .collect(),
            transitions: self
                .transitions
                .iter()
                .filter(|((i, j), _)| i != j)
                .map(|(&(i, j), h)| TransitionDoc {
                    from: ids[i].clone(),
                    to: ids[j].clone(),
                    map: h.map.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("system serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct PosetDoc {
    elements: Vec<IndexId>,
    leq: Vec<(IndexId, IndexId)>,
}

#[derive(Serialize, Deserialize)]
struct TransitionDoc {
    from: IndexId,
    to: IndexId,
    map: Vec<Elem>,
}

/// The inverse-system JSON document.
#[derive(Serialize, Deserialize)]
struct SystemDoc {
    poset: PosetDoc,
    algebras: BTreeMap<String, AlgebraData>,
    transitions: Vec<TransitionDoc>,
}

impl SystemDoc {
    fn into_system(self) -> Result<InverseSystem> {
        let ids = self.poset.elements;
        let pos = |id: &IndexId| {
            ids.iter()
                .position(|x| x == id)
                .ok_or_else(|| Error::Structural(format!("unknown index {id}")))
        };
        let pairs = self
            .poset
            .leq
            .iter()
            .map(|(i, j)| Ok((pos(i)?, pos(j)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut algebras = Vec::with_capacity(ids.len());
        for id in &ids {
            let data = self
                .algebras
                .get(&id.to_string())
                .ok_or_else(|| Error::Structural(format!("no algebra for index {id}")))?;
            let a = ResiduatedLattice::from_data(data).map_err(|e| {
                Error::precondition(format!("algebra at index {id}: {e}"))
            })?;
            if data.bottom != 0 || data.top != data.size - 1 {
                return Err(Error::precondition(format!(
                    "algebra at index {id} must be normalized (bottom 0, top n-1) so maps stay meaningful"
                )));
            }
            algebras.push(Arc::new(a));
        }
        let maps = self
            .transitions
            .into_iter()
            .map(|t| Ok((pos(&t.from)?, pos(&t.to)?, t.map)))
            .collect::<Result<Vec<_>>>()?;
        let poset = DirectedPoset::new(ids, &pairs)?;
        InverseSystem::new(poset, algebras, maps)
    }
}

/// The limit algebra on the thread set, with its projections `φ_i`.
#[derive(Clone, Debug)]
pub struct InverseLimit {
    pub algebra: Arc<ResiduatedLattice>,
    /// Threads in lexicographic order; thread `k` is element `k` of `algebra`.
    pub threads: Vec<Thread>,
    pub projections: Vec<Homomorphism>,
}

#[derive(Serialize)]
struct LimitDoc<'a> {
    algebra: AlgebraData,
    index: &'a [IndexId],
    threads: &'a [Thread],
}

impl InverseLimit {
    pub fn position(&self, thread: &[Elem]) -> Option<usize> {
        self.threads.binary_search_by(|t| t.as_slice().cmp(thread)).ok()
    }

    /// The mediating map of a cone `(source, λ_i)`: `b ↦ (λ_i(b))_i`.
    pub fn mediate(&self, source: &Arc<ResiduatedLattice>, cone: &[Homomorphism]) -> Result<Homomorphism> {
        if cone.len() != self.projections.len() {
            return Err(Error::precondition("cone has the wrong number of legs"));
        }
        let map = source
            .elements()
            .map(|b| {
                let t: Thread = cone.iter().map(|l| l.map[b]).collect();
                self.position(&t)
                    .ok_or_else(|| Error::precondition(format!("cone is not compatible at {b}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Homomorphism::new(source.clone(), self.algebra.clone(), map)
    }

    /// Algebra JSON plus the index list and the thread table.
    pub fn to_json(&self, index: &[IndexId]) -> String {
        serde_json::to_string_pretty(&LimitDoc {
            algebra: self.algebra.to_data(),
            index,
            threads: &self.threads,
        })
        .expect("limit serializes")
    }
}

/// Threads by backtracking in descending index order, checking each new
/// coordinate against all assigned comparable coordinates.
pub fn enumerate_threads(s: &InverseSystem) -> Vec<Thread> {
    let order = s.poset.descending_order();
    let k = s.poset.len();
    let mut cur = vec![usize::MAX; k];
    let mut out = Vec::new();
    fn rec(s: &InverseSystem, order: &[usize], depth: usize, cur: &mut Vec<usize>, out: &mut Vec<Thread>) {
        if depth == order.len() {
            out.push(cur.clone());
            return;
        }
        let i = order[depth];
        for v in s.algebras[i].elements() {
            let ok = order[..depth].iter().all(|&m| {
                if s.poset.leq(i, m) {
                    s.transitions[&(m, i)].map[cur[m]] == v
                } else if s.poset.leq(m, i) {
                    s.transitions[&(i, m)].map[v] == cur[m]
                } else {
                    true
                }
            });
            if ok {
                cur[i] = v;
                rec(s, order, depth + 1, cur, out);
                cur[i] = usize::MAX;
            }
        }
    }
    rec(s, &order, 0, &mut cur, &mut out);
    out.sort();
    out
}

/// Threads by filtering the full product. Exponential; cross-check only.
pub fn enumerate_threads_naive(s: &InverseSystem) -> Vec<Thread> {
    let sizes: Vec<usize> = s.algebras.iter().map(|a| a.size()).collect();
    let total: usize = sizes.iter().product();
    let mut out = Vec::new();
    for code in 0..total {
        let mut t = vec![0; sizes.len()];
        let mut c = code;
        for i in (0..sizes.len()).rev() {
            t[i] = c % sizes[i];
            c /= sizes[i];
        }
        let compatible = s
            .transitions
            .iter()
            .all(|(&(i, j), h)| h.map[t[i]] == t[j]);
        if compatible {
            out.push(t);
        }
    }
    out
}

pub fn inverse_limit(s: &InverseSystem) -> Result<InverseLimit> {
    inverse_limit_bounded(s, DEFAULT_TUPLE_BOUND)
}

/// Limit as the subalgebra of threads in the product.
pub fn inverse_limit_bounded(s: &InverseSystem, bound: u128) -> Result<InverseLimit> {
    let needed = s.tuple_count();
    if needed > bound {
        return Err(Error::BoundExceeded { needed, bound });
    }
    let threads = enumerate_threads(s);
    if needed <= NAIVE_CROSS_CHECK_BOUND {
        let mut naive = enumerate_threads_naive(s);
        naive.sort();
        if naive != threads {
            return Err(Error::violation(
                "backtracking and naive thread enumeration agree",
                format!("{} vs {} threads", threads.len(), naive.len()),
            ));
        }
    }
    if threads.is_empty() {
        return Err(Error::violation("inverse limits of nonempty finite algebras are nonempty", ""));
    }
    if threads.len() > MAX_CARRIER {
        return Err(Error::BoundExceeded {
            needed: threads.len() as u128,
            bound: MAX_CARRIER as u128,
        });
    }
    let index: HashMap<&Thread, usize> = threads.iter().enumerate().map(|(p, t)| (t, p)).collect();
    let m = threads.len();
    let mut tables: Vec<Vec<Elem>> = vec![vec![0; m * m]; 4];
    for (oi, op) in Op::ALL.into_iter().enumerate() {
        for (p, tp) in threads.iter().enumerate() {
            for (q, tq) in threads.iter().enumerate() {
                let r: Thread = (0..tp.len())
                    .map(|i| s.algebras[i].op(op, tp[i], tq[i]))
                    .collect();
                let Some(&pos) = index.get(&r) else {
                    return Err(Error::violation(
                        "thread sets are closed under the operations",
                        format!("{op} of {tp:?} and {tq:?} gives {r:?}"),
                    ));
                };
                tables[oi][p * m + q] = pos;
            }
        }
    }
    let bottom: Thread = s.algebras.iter().map(|a| a.bottom()).collect();
    let top: Thread = s.algebras.iter().map(|a| a.top()).collect();
    if threads.first() != Some(&bottom) || threads.last() != Some(&top) {
        return Err(Error::violation(
            "thread sets contain the constant threads",
            format!("bottom {bottom:?}, top {top:?}"),
        ));
    }
    let imp = tables.pop().unwrap();
    let mono = tables.pop().unwrap();
    let join = tables.pop().unwrap();
    let meet = tables.pop().unwrap();
    let algebra = Arc::new(ResiduatedLattice::from_flat(m, meet, join, mono, imp).map_err(|e| {
        Error::violation("thread sets are residuated lattices", e.to_string())
    })?);
    let projections: Vec<Homomorphism> = (0..s.poset.len())
        .map(|i| Homomorphism {
            source: algebra.clone(),
            target: s.algebras[i].clone(),
            map: threads.iter().map(|t| t[i]).collect(),
        })
        .collect();
    for (i, p) in projections.iter().enumerate() {
        if let Err(e) = p.check() {
            return Err(Error::violation("limit projections are homomorphisms", format!("index {i}: {e}")));
        }
    }
    for (&(i, j), h) in &s.transitions {
        if projections[i].then(h)?.map != projections[j].map {
            return Err(Error::violation(
                "projections commute with transitions",
                format!("{} -> {}", s.poset.ids[i], s.poset.ids[j]),
            ));
        }
    }
    Ok(InverseLimit {
        algebra,
        threads,
        projections,
    })
}

/// Restriction to a directed cofinal subset of indices (positions).
pub fn cofinal_restrict(s: &InverseSystem, subset: &[usize]) -> Result<InverseSystem> {
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    if subset.is_empty() || subset.iter().any(|&i| i >= s.poset.len()) {
        return Err(Error::precondition("subset of indices is empty or out of range"));
    }
    if let Some(i) = s.poset.cofinality_gap(&subset) {
        return Err(Error::precondition(format!(
            "subset is not cofinal: {} has no upper bound in it",
            s.poset.ids[i]
        )));
    }
    if let Some((i, j)) = s.poset.undirected_pair(&subset) {
        return Err(Error::precondition(format!(
            "subset is not directed: {} and {} have no upper bound in it",
            s.poset.ids[i], s.poset.ids[j]
        )));
    }
    let poset = s.poset.restrict(&subset);
    let algebras = subset.iter().map(|&i| s.algebras[i].clone()).collect();
    let mut maps = Vec::new();
    for (a, &i) in subset.iter().enumerate() {
        for (b, &j) in subset.iter().enumerate() {
            if i != j && s.poset.leq(j, i) {
                maps.push((a, b, s.transitions[&(i, j)].map.clone()));
            }
        }
    }
    InverseSystem::new(poset, algebras, maps)
}

/// The inverse system of quotients `L/F` over the given filters, ordered by
/// reverse inclusion, with the canonical maps `x/F ↦ x/G` for `F ⊆ G`.
pub fn quotient_system(a: &ResiduatedLattice, filters: &[FilterSet]) -> Result<InverseSystem> {
    let k = filters.len();
    let ids: Vec<IndexId> = filters.iter().map(|f| IndexId::Name(f.to_string())).collect();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in 0..k {
            // i <= j iff F_i ⊇ F_j
            if i != j && filters[j].is_subset(&filters[i]) {
                pairs.push((i, j));
            }
        }
    }
    let poset = DirectedPoset::new(ids, &pairs)?;
    let quotients: Vec<(Arc<ResiduatedLattice>, Homomorphism)> = filters
        .iter()
        .map(|f| quotient(a, f))
        .collect::<Result<_>>()?;
    let mut maps = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j && poset.leq(j, i) {
                let (qi, hi) = (&quotients[i].0, &quotients[i].1);
                let hj = &quotients[j].1;
                let mut map = vec![usize::MAX; qi.size()];
                for x in a.elements() {
                    map[hi.map[x]] = hj.map[x];
                }
                maps.push((i, j, map));
            }
        }
    }
    InverseSystem::new(poset, quotients.into_iter().map(|(q, _)| q).collect(), maps)
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub system: InverseSystem,
    pub limit: InverseLimit,
    /// `e(a) = (a/F)_F`.
    pub embedding: Homomorphism,
    /// Limit over the join-irreducible filters together with `{top}`.
    pub cofinal_limit: InverseLimit,
}

/// Profinite completion over all filters. For a finite algebra `e` must be an
/// isomorphism and the join-irreducible subsystem must give an isomorphic
/// limit; both are checked.
pub fn profinite_completion(a: &ResiduatedLattice) -> Result<Completion> {
    let filters = enumerate_filters(a);
    let system = quotient_system(a, &filters)?;
    let limit = inverse_limit(&system)?;
    let source = Arc::new(a.clone());
    let quotient_maps: Vec<Homomorphism> = filters
        .iter()
        .map(|f| quotient(a, f).map(|(_, h)| h))
        .collect::<Result<_>>()?;
    let embedding = limit.mediate(&source, &quotient_maps)?;
    if let Err(e) = embedding.check() {
        return Err(Error::violation("the completion map is a homomorphism", e.to_string()));
    }
    if !embedding.is_bijective() {
        return Err(Error::violation(
            "the completion map of a finite algebra is an isomorphism",
            format!("image has {} of {} threads", embedding.image().len(), limit.threads.len()),
        ));
    }

    let mut sub: Vec<usize> = join_irreducible_filters(a)
        .iter()
        .filter_map(|f| filters.iter().position(|g| g == f))
        .collect();
    sub.push(filters.iter().position(|f| f.is_trivial(a)).unwrap());
    let restricted = cofinal_restrict(&system, &sub)?;
    let cofinal_limit = inverse_limit(&restricted)?;
    if find_isomorphism(&limit.algebra, &cofinal_limit.algebra).is_none() {
        return Err(Error::violation(
            "the join-irreducible subsystem has an isomorphic limit",
            format!("{} vs {} threads", limit.threads.len(), cofinal_limit.threads.len()),
        ));
    }
    Ok(Completion {
        system,
        limit,
        embedding,
        cofinal_limit,
    })
}

/// The componentwise quotient map `x ↦ (x/F_i)_i`.
#[derive(Clone, Debug)]
pub struct SubdirectEmbedding {
    pub factors: Vec<Arc<ResiduatedLattice>>,
    pub components: Vec<Homomorphism>,
    /// Image tuple of each element.
    pub tuples: Vec<Vec<Elem>>,
    pub injective: bool,
    /// The map into the materialized product, when it fits in a carrier.
    pub product_map: Option<Homomorphism>,
}

pub fn subdirect_embedding(a: &ResiduatedLattice, family: &[FilterSet]) -> Result<SubdirectEmbedding> {
    if family.is_empty() {
        return Err(Error::precondition("subdirect embedding needs a nonempty family"));
    }
    let mut factors = Vec::new();
    let mut components = Vec::new();
    for f in family {
        let (q, h) = quotient(a, f)?;
        if !h.is_surjective() {
            return Err(Error::violation("quotient maps are surjective", f.to_string()));
        }
        factors.push(q);
        components.push(h);
    }
    let tuples: Vec<Vec<Elem>> = a
        .elements()
        .map(|x| components.iter().map(|h| h.map[x]).collect())
        .collect();
    let mut sorted = tuples.clone();
    sorted.sort();
    sorted.dedup();
    let injective = sorted.len() == tuples.len();
    let meet_trivial = intersect_all(a, family).is_trivial(a);
    if injective != meet_trivial {
        return Err(Error::violation(
            "the subdirect map is injective iff the family meets in {top}",
            format!("family {family:?}"),
        ));
    }
    let product_size = factors
        .iter()
        .fold(1u128, |acc, q| acc.saturating_mul(q.size() as u128));
    let product_map = if product_size <= MATERIALIZED_PRODUCT_MAX as u128 {
        let factor_list: Vec<ResiduatedLattice> = factors.iter().map(|q| (**q).clone()).collect();
        let product = Arc::new(crate::algebra::product_of(&factor_list));
        let map = tuples
            .iter()
            .map(|t| t.iter().zip(&factors).fold(0, |acc, (&v, q)| acc * q.size() + v))
            .collect();
        let h = Homomorphism::new(Arc::new(a.clone()), product, map)?;
        if let Err(e) = h.check() {
            return Err(Error::violation("the subdirect map is a homomorphism", e.to_string()));
        }
        Some(h)
    } else {
        None
    };
    Ok(SubdirectEmbedding {
        factors,
        components,
        tuples,
        injective,
        product_map,
    })
}

/// Outcome of [`profiniteness_certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// A down-directed, point-separating family of clopen filters.
    Profinite { clopen_filters: Vec<FilterSet> },
    /// Two distinct points no clopen filter separates.
    Refuted { unseparated: (Elem, Elem) },
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfinitenessVerdict {
    pub certificate: Certificate,
    pub hausdorff: bool,
    pub discrete: bool,
    /// Whether `a` embeds subdirectly into its quotients by the clopen filters.
    pub subdirect: bool,
}

pub fn clopen_filters(a: &ResiduatedLattice, t: &FiniteTopology) -> Vec<FilterSet> {
    enumerate_filters(a)
        .into_iter()
        .filter(|f| t.is_clopen(f.members()))
        .collect()
}

/// Checks a proposed certificate: clopen filters, down-directed, separating points.
pub fn verify_certificate(a: &ResiduatedLattice, t: &FiniteTopology, family: &[FilterSet]) -> bool {
    !family.is_empty()
        && family.iter().all(|f| t.is_clopen(f.members()))
        && family.iter().all(|f| {
            family
                .iter()
                .all(|g| family.iter().any(|h| h.is_subset(&f.intersection(g))))
        })
        && unseparated_pair(a, family).is_none()
}

fn unseparated_pair(a: &ResiduatedLattice, family: &[FilterSet]) -> Option<(Elem, Elem)> {
    for x in a.elements() {
        for y in x + 1..a.size() {
            if family.iter().all(|f| coset(a, f, x).contains(y)) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Searches for a down-directed, point-separating family of clopen filters.
/// Since the clopen filters are closed under intersection, the family of
/// all of them is down-directed and separates points iff its least member
/// does; the certificate returned is that least member alone.
///
/// Also checks, on this finite instance, that a certificate exists iff the
/// topology is Hausdorff iff it is discrete iff the algebra is a subdirect
/// product of its quotients by the clopen filters.
pub fn profiniteness_certificate(a: &ResiduatedLattice, t: &FiniteTopology) -> Result<ProfinitenessVerdict> {
    if let Err(d) = check_topological_algebra(a, t) {
        return Err(Error::precondition(format!("not a topological residuated lattice: {d}")));
    }
    let clopen = clopen_filters(a, t);
    let least = intersect_all(a, &clopen);
    let certificate = match unseparated_pair(a, &clopen) {
        None => {
            let cert = vec![least];
            debug_assert!(verify_certificate(a, t, &cert));
            Certificate::Profinite { clopen_filters: cert }
        }
        Some(pair) => Certificate::Refuted { unseparated: pair },
    };
    let hausdorff = t.separation().t2;
    let discrete = t.is_discrete();
    let subdirect = subdirect_embedding(a, &clopen)?.injective;
    let certified = matches!(certificate, Certificate::Profinite { .. });
    if certified != hausdorff || hausdorff != discrete || discrete != subdirect {
        return Err(Error::violation(
            "certificate ⟺ Hausdorff ⟺ discrete ⟺ subdirect product (finite case)",
            format!("certified {certified}, Hausdorff {hausdorff}, discrete {discrete}, subdirect {subdirect}"),
        ));
    }
    Ok(ProfinitenessVerdict {
        certificate,
        hausdorff,
        discrete,
        subdirect,
    })
}

/// Kernels of the limit projections, as filters of the limit algebra.
pub fn projection_kernels(limit: &InverseLimit) -> Result<Vec<FilterSet>> {
    limit.projections.iter().map(Homomorphism::kernel).collect()
}

/// A random valid inverse system with at most `max_indices` indices whose
/// algebras are drawn from `pool`. The poset always has a maximum at
/// position 0; transitions are chosen among all homomorphisms, backtracking
/// until every triangle commutes.
pub fn random_inverse_system<R: Rng>(
    rng: &mut R,
    pool: &[Arc<ResiduatedLattice>],
    max_indices: usize,
) -> Result<InverseSystem> {
    if pool.is_empty() || max_indices == 0 {
        return Err(Error::precondition("need a nonempty pool and at least one index"));
    }
    for _attempt in 0..1000 {
        let k = rng.gen_range(1..=max_indices);
        let mut pairs = Vec::new();
        for j in 1..k {
            pairs.push((j, 0));
            for i in 1..j {
                if rng.gen_bool(0.5) {
                    pairs.push((j, i));
                }
            }
        }
        let poset = DirectedPoset::new((0..k as u64).map(IndexId::Num).collect(), &pairs)?;
        let algebras: Vec<Arc<ResiduatedLattice>> =
            (0..k).map(|_| pool.choose(rng).unwrap().clone()).collect();
        let comparable: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && poset.leq(j, i))
            .collect();
        let mut options = Vec::new();
        for &(i, j) in &comparable {
            let mut homs = all_homomorphisms(&algebras[i], &algebras[j], 1 << 16)?;
            homs.shuffle(rng);
            options.push(homs);
        }
        let mut chosen: Vec<usize> = Vec::new();
        if assign(&poset, &comparable, &options, &mut chosen) {
            let maps = comparable
                .iter()
                .zip(&chosen)
                .zip(&options)
                .map(|((&(i, j), &c), homs)| (i, j, homs[c].map.clone()))
                .collect();
            return InverseSystem::new(poset, algebras, maps);
        }
    }
    Err(Error::precondition("no valid random system found"))
}

fn assign(
    poset: &DirectedPoset,
    comparable: &[(usize, usize)],
    options: &[Vec<Homomorphism>],
    chosen: &mut Vec<usize>,
) -> bool {
    let d = chosen.len();
    if d == comparable.len() {
        return true;
    }
    let lookup = |chosen: &[usize], i: usize, j: usize| -> Option<Vec<Elem>> {
        if i == j {
            return None;
        }
        let pos = comparable.iter().position(|&p| p == (i, j))?;
        chosen.get(pos).map(|&c| options[pos][c].map.clone())
    };
    for c in 0..options[d].len() {
        chosen.push(c);
        let ok = comparable[..=d].iter().all(|&(i, m)| {
            (0..poset.len()).all(|j| {
                if j == i || j == m || !(poset.leq(m, j) && poset.leq(j, i)) {
                    return true;
                }
                match (lookup(chosen, i, j), lookup(chosen, j, m), lookup(chosen, i, m)) {
                    (Some(ij), Some(jm), Some(im)) => ij.iter().map(|&x| jm[x]).eq(im.iter().copied()),
                    _ => true,
                }
            })
        });
        if ok && assign(poset, comparable, options, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Positions of all subsets of indices that are directed and cofinal.
pub fn cofinal_subsets(poset: &DirectedPoset) -> Vec<Vec<usize>> {
    let k = poset.len();
    Subset::all_subsets(k)
        .filter(|s| !s.is_empty())
        .map(|s| s.to_vec())
        .filter(|s| poset.cofinality_gap(s).is_none() && poset.undirected_pair(s).is_none())
        .collect()
}
