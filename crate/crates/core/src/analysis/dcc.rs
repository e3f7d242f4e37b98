use serde::Serialize;

use crate::algebra::ResiduatedLattice;
use crate::error::{Error, Result};
use crate::filters::{enumerate_filters, FilterSet};
use crate::subset::Subset;

/// What was found for one family of filters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRecord {
    pub members: usize,
    /// Length of the family read as a descending chain, when it is a chain.
    pub chain_length: Option<usize>,
    pub down_directed: bool,
    pub minimum: Option<FilterSet>,
    pub minimal: Vec<FilterSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DccReport {
    pub families: Vec<FamilyRecord>,
    /// Longest strictly descending chain seen.
    pub longest_chain: usize,
}

fn record(family: &[FilterSet]) -> FamilyRecord {
    let mut distinct: Vec<FilterSet> = family.to_vec();
    distinct.sort_by_key(|f| std::cmp::Reverse(f.members().canonical_key()));
    distinct.dedup();
    let chain = distinct
        .iter()
        .all(|f| distinct.iter().all(|g| f.is_subset(g) || g.is_subset(f)));
    let down_directed = distinct.iter().all(|f| {
        distinct.iter().all(|g| {
            let m = f.intersection(g);
            distinct.iter().any(|h| h.is_subset(&m))
        })
    });
    let minimum = distinct
        .iter()
        .find(|f| distinct.iter().all(|g| f.is_subset(g)))
        .copied();
    let minimal = distinct
        .iter()
        .filter(|f| !distinct.iter().any(|g| g.members().is_proper_subset(f.members())))
        .copied()
        .collect();
    FamilyRecord {
        members: distinct.len(),
        chain_length: chain.then_some(distinct.len()),
        down_directed,
        minimum,
        minimal,
    }
}

/// For each family: a chain must stop (it is finite, its length is
/// recorded), a down-directed family must have a minimum, and a nonempty
/// family must have minimal elements.
pub fn dcc_report(families: &[Vec<FilterSet>]) -> Result<DccReport> {
    let mut out = Vec::with_capacity(families.len());
    for fam in families {
        let r = record(fam);
        if !fam.is_empty() && r.minimal.is_empty() {
            return Err(Error::violation(
                "nonempty families of filters have minimal members",
                format!("{fam:?}"),
            ));
        }
        if !fam.is_empty() && r.down_directed && r.minimum.is_none() {
            return Err(Error::violation(
                "down-directed families of filters have a minimum",
                format!("{fam:?}"),
            ));
        }
        out.push(r);
    }
    let longest_chain = out.iter().filter_map(|r| r.chain_length).max().unwrap_or(0);
    Ok(DccReport {
        families: out,
        longest_chain,
    })
}

/// [`dcc_report`] over every nonempty subfamily of `𝓕(a)`; refused above
/// 16 filters.
pub fn dcc_exhaustive(a: &ResiduatedLattice) -> Result<DccReport> {
    let filters = enumerate_filters(a);
    if filters.len() > 16 {
        return Err(Error::BoundExceeded {
            needed: 1u128 << filters.len(),
            bound: 1 << 16,
        });
    }
    let families: Vec<Vec<FilterSet>> = Subset::all_subsets(filters.len())
        .filter(|s| !s.is_empty())
        .map(|s| s.iter().map(|i| filters[i]).collect())
        .collect();
    dcc_report(&families)
}
