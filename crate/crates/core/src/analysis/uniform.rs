use serde::Serialize;

use crate::algebra::ResiduatedLattice;
use crate::error::Result;
use crate::filters::{congruence_of_filter, enumerate_filters, CongruenceRelation, FilterSet};
use crate::subset::Subset;

/// A binary relation on `0..n`, stored as one successor set per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Relation {
    rows: Vec<Subset>,
}

impl Relation {
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut rows = vec![Subset::EMPTY; n];
        for &(x, y) in pairs {
            rows[x].insert(y);
        }
        Relation { rows }
    }

    pub fn from_congruence(theta: &CongruenceRelation) -> Self {
        Relation::from_pairs(theta.size(), &theta.pairs())
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(p, q)| p.is_subset(*q))
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        Relation {
            rows: self.rows.iter().zip(&other.rows).map(|(p, q)| p.intersection(*q)).collect(),
        }
    }

    pub fn inverse(&self) -> Relation {
        let n = self.size();
        let mut rows = vec![Subset::EMPTY; n];
        for x in 0..n {
            for y in self.rows[x] {
                rows[y].insert(x);
            }
        }
        Relation { rows }
    }

    /// `{(x, z) : x self y, y other z}`.
    pub fn compose(&self, other: &Relation) -> Relation {
        Relation {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().fold(Subset::EMPTY, |acc, y| acc.union(other.rows[y])))
                .collect(),
        }
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (x, r) in self.rows.iter().enumerate() {
            out.extend(r.iter().map(|y| (x, y)));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BaseCondition {
    /// (a) every member contains the diagonal.
    Diagonal,
    /// (b) below any two members lies a third.
    Intersection,
    /// (c) every member contains the inverse of some member.
    Symmetry,
    /// (d) every member contains `W ∘ W` for some member `W`.
    Composition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformBaseReport {
    pub relations: usize,
    pub failures: Vec<(BaseCondition, String)>,
}

impl UniformBaseReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, c: BaseCondition) -> bool {
        self.failures.iter().any(|(k, _)| *k == c)
    }
}

/// Checks the four base conditions of a uniformity on a family of
/// relations. Each failed condition keeps its first witness.
pub fn uniform_base_check(relations: &[Relation]) -> UniformBaseReport {
    let mut failures = Vec::new();
    if relations.is_empty() {
        failures.push((BaseCondition::Intersection, "empty family".to_string()));
        return UniformBaseReport { relations: 0, failures };
    }
    let n = relations[0].size();
    let show = |k: usize| format!("#{k} {:?}", relations[k].pairs());

    'a: for (k, v) in relations.iter().enumerate() {
        for x in 0..n {
            if !v.contains(x, x) {
                failures.push((BaseCondition::Diagonal, format!("{} misses ({x}, {x})", show(k))));
                break 'a;
            }
        }
    }
    'b: for (i, u) in relations.iter().enumerate() {
        for (j, v) in relations.iter().enumerate() {
            let m = u.intersection(v);
            if !relations.iter().any(|w| w.is_subset(&m)) {
                failures.push((
                    BaseCondition::Intersection,
                    format!("nothing below the meet of {} and {}", show(i), show(j)),
                ));
                break 'b;
            }
        }
    }
    for (k, v) in relations.iter().enumerate() {
        if !relations.iter().any(|w| w.inverse().is_subset(v)) {
            failures.push((BaseCondition::Symmetry, format!("no inverse inside {}", show(k))));
            break;
        }
    }
    for (k, v) in relations.iter().enumerate() {
        if !relations.iter().any(|w| w.compose(w).is_subset(v)) {
            failures.push((BaseCondition::Composition, format!("no square inside {}", show(k))));
            break;
        }
    }
    UniformBaseReport {
        relations: relations.len(),
        failures,
    }
}

/// Two filters whose congruences do not permute, if any.
pub fn nonpermuting_pair(a: &ResiduatedLattice) -> Result<Option<(FilterSet, FilterSet)>> {
    let filters = enumerate_filters(a);
    let rels: Vec<Relation> = filters
        .iter()
        .map(|f| congruence_of_filter(a, f).map(|t| Relation::from_congruence(&t)))
        .collect::<Result<_>>()?;
    for i in 0..rels.len() {
        for j in i + 1..rels.len() {
            if rels[i].compose(&rels[j]) != rels[j].compose(&rels[i]) {
                return Ok(Some((filters[i], filters[j])));
            }
        }
    }
    Ok(None)
}

/// `θ ∘ θ' = θ' ∘ θ` for all congruence pairs.
pub fn permutability_check(a: &ResiduatedLattice) -> Result<bool> {
    Ok(nonpermuting_pair(a)?.is_none())
}
