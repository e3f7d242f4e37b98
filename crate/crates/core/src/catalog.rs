//! Exhaustive generation of finite residuated lattices up to isomorphism,
//! and the JSON-lines catalog file format.
//!
//! Generation works lattice by lattice. Bounded lattices on `n` points are
//! enumerated as naturally labelled orders (`x <= y` implies `x <= y` as
//! integers, bottom `0`, top `n - 1`) and deduplicated by brute-force
//! relabelling. On each lattice a backtracking search fills the `mono`
//! table cell by cell, keeping it commutative, top-unital, below `meet` and
//! monotone; complete tables must be associative and admit residuals
//! `impl(y, z) = max { x : mono(x, y) <= z }`. Survivors are validated from
//! scratch and deduplicated by [`canonical_key`].
//!
//! [`naive_generate`] is an independent cross-check for tiny sizes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{are_isomorphic, canonical_key, AlgebraData, ResiduatedLattice};
use crate::analysis::{structure_report, StructureReport};
use crate::error::{Error, Result};

pub const FORMAT: &str = "rlw-catalog";
pub const FORMAT_VERSION: u32 = 1;
pub const DEFAULT_MAX_SIZE: usize = 6;
/// Sizes above this are refused even when asked for explicitly.
pub const HARD_MAX_SIZE: usize = 8;
/// Largest size accepted by [`naive_generate`].
pub const NAIVE_MAX_SIZE: usize = 5;

/// Search statistics for one carrier size.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeStats {
    pub size: usize,
    /// Naturally labelled bounded orders examined.
    pub labelled_orders: u64,
    /// Lattices left after removing relabellings.
    pub lattices: u64,
    /// Nodes of the `mono` search.
    pub search_nodes: u64,
    /// Complete `mono` tables that were associative and residuated.
    pub residuated_tables: u64,
    pub algebras: u64,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub algebra: Arc<ResiduatedLattice>,
    pub structure: StructureReport,
}

#[derive(Clone, Debug)]
pub struct AlgebraCatalog {
    pub size_bound: usize,
    /// Ordered by size, then key.
    pub entries: Vec<CatalogEntry>,
    pub stats: Vec<SizeStats>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    size_bound: usize,
    entries: usize,
    stats: Vec<SizeStats>,
}

/// A bounded lattice as an order matrix, naturally labelled.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiniteLattice {
    n: usize,
    leq: Vec<bool>,
}

impl FiniteLattice {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    fn bound(&self, x: usize, y: usize, upper: bool) -> Option<usize> {
        let cands: Vec<usize> = (0..self.n)
            .filter(|&z| if upper { self.leq(x, z) && self.leq(y, z) } else { self.leq(z, x) && self.leq(z, y) })
            .collect();
        cands.iter().copied().find(|&z| {
            cands
                .iter()
                .all(|&w| if upper { self.leq(z, w) } else { self.leq(w, z) })
        })
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.bound(x, y, false).expect("lattice")
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.bound(x, y, true).expect("lattice")
    }

    fn is_lattice(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.bound(x, y, false).is_some() && self.bound(x, y, true).is_some()))
    }

    /// Least relabelled order matrix over permutations fixing the bounds.
    fn canonical(&self) -> Vec<bool> {
        let n = self.n;
        let inner: Vec<usize> = (1..n.saturating_sub(1)).collect();
        let mut best: Option<Vec<bool>> = None;
        permutations(&inner, &mut |perm| {
            // new index of old element
            let mut pos = vec![0; n];
            pos[n - 1] = n - 1;
            for (k, &old) in perm.iter().enumerate() {
                pos[old] = k + 1;
            }
            let mut m = vec![false; n * n];
            for x in 0..n {
                for y in 0..n {
                    m[pos[x] * n + pos[y]] = self.leq(x, y);
                }
            }
            if best.as_ref().is_none_or(|b| m < *b) {
                best = Some(m);
            }
        });
        best.unwrap_or_else(|| self.leq.clone())
    }
}

fn permutations(items: &[usize], f: &mut dyn FnMut(&[usize])) {
    fn rec(k: usize, v: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            rec(k + 1, v, f);
            v.swap(k, i);
        }
    }
    let mut v = items.to_vec();
    rec(0, &mut v, f);
}

/// Bounded lattices on `n` points up to isomorphism, plus the number of
/// naturally labelled bounded orders examined.
pub fn enumerate_lattices(n: usize) -> (Vec<FiniteLattice>, u64) {
    assert!(n >= 1);
    if n == 1 {
        return (vec![FiniteLattice { n: 1, leq: vec![true] }], 1);
    }
    let inner: Vec<(usize, usize)> = (1..n - 1)
        .flat_map(|i| (i + 1..n - 1).map(move |j| (i, j)))
        .collect();
    let mut seen: BTreeMap<Vec<bool>, FiniteLattice> = BTreeMap::new();
    let mut examined = 0u64;
    for mask in 0u64..(1u64 << inner.len()) {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
            leq[x] = true; // 0 <= x
            leq[x * n + n - 1] = true; // x <= top
        }
        for (k, &(i, j)) in inner.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|x| {
            (0..n).all(|y| !leq[x * n + y] || (0..n).all(|z| !leq[y * n + z] || leq[x * n + z]))
        });
        if !transitive {
            continue;
        }
        examined += 1;
        let l = FiniteLattice { n, leq };
        if !l.is_lattice() {
            continue;
        }
        seen.entry(l.canonical()).or_insert(l);
    }
    (seen.into_values().collect(), examined)
}

struct MonoSearch<'a> {
    l: &'a FiniteLattice,
    meet: Vec<usize>,
    join: Vec<usize>,
    cells: Vec<(usize, usize)>,
    mono: Vec<usize>,
    nodes: u64,
    found: Vec<Vec<usize>>,
}

impl MonoSearch<'_> {
    fn get(&self, x: usize, y: usize) -> usize {
        self.mono[x * self.l.n + y]
    }

    fn set(&mut self, x: usize, y: usize, v: usize) {
        let n = self.l.n;
        self.mono[x * n + y] = v;
        self.mono[y * n + x] = v;
    }

    /// Monotonicity against every already assigned cell.
    fn monotone_ok(&self, x: usize, y: usize, v: usize) -> bool {
        let n = self.l.n;
        for p in 0..n {
            for q in 0..n {
                let w = self.get(p, q);
                if w == usize::MAX || (p, q) == (x, y) || (p, q) == (y, x) {
                    continue;
                }
                if self.l.leq(p, x) && self.l.leq(q, y) && !self.l.leq(w, v) {
                    return false;
                }
                if self.l.leq(x, p) && self.l.leq(y, q) && !self.l.leq(v, w) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) {
        self.nodes += 1;
        if k == self.cells.len() {
            if self.complete_ok() {
                self.found.push(self.mono.clone());
            }
            return;
        }
        let (x, y) = self.cells[k];
        let n = self.l.n;
        let cap = self.meet[x * n + y];
        for v in 0..n {
            if !self.l.leq(v, cap) || !self.monotone_ok(x, y, v) {
                continue;
            }
            self.set(x, y, v);
            self.run(k + 1);
        }
        self.set(x, y, usize::MAX);
    }

    /// Associativity and distributivity over binary joins; together with
    /// `x mono 0 = 0` the latter is exactly residuation on a finite lattice.
    fn complete_ok(&self) -> bool {
        let n = self.l.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.get(self.get(x, y), z) != self.get(x, self.get(y, z)) {
                        return false;
                    }
                    if self.get(x, self.join[y * n + z])
                        != self.join[self.get(x, y) * n + self.get(x, z)]
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `impl(y, z) = max { x : mono(x, y) <= z }`, when every such maximum exists.
pub fn derive_residual(
    n: usize,
    leq: impl Fn(usize, usize) -> bool,
    mono: &[usize],
) -> Option<Vec<usize>> {
    let mut imp = vec![0; n * n];
    for y in 0..n {
        for z in 0..n {
            let below: Vec<usize> = (0..n).filter(|&x| leq(mono[x * n + y], z)).collect();
            let max = below.iter().copied().find(|&m| below.iter().all(|&x| leq(x, m)))?;
            imp[y * n + z] = max;
        }
    }
    Some(imp)
}

fn algebras_on(l: &FiniteLattice) -> (Vec<ResiduatedLattice>, u64, u64) {
    let n = l.n;
    let meet: Vec<usize> = (0..n * n).map(|k| l.meet(k / n, k % n)).collect();
    let join: Vec<usize> = (0..n * n).map(|k| l.join(k / n, k % n)).collect();
    let mut mono = vec![usize::MAX; n * n];
    for x in 0..n {
        mono[x] = 0;
        mono[x * n] = 0;
        mono[(n - 1) * n + x] = x;
        mono[x * n + n - 1] = x;
    }
    let cells: Vec<(usize, usize)> = (1..n.saturating_sub(1))
        .flat_map(|x| (x..n - 1).map(move |y| (x, y)))
        .collect();
    let mut s = MonoSearch {
        l,
        meet: meet.clone(),
        join: join.clone(),
        cells,
        mono,
        nodes: 0,
        found: Vec::new(),
    };
    s.run(0);
    let tables = s.found.len() as u64;
    let mut out = Vec::new();
    for mono in s.found {
        let Some(imp) = derive_residual(n, |x, y| l.leq(x, y), &mono) else {
            continue;
        };
        if let Ok(a) = ResiduatedLattice::from_flat(n, meet.clone(), join.clone(), mono, imp) {
            out.push(a);
        }
    }
    (out, s.nodes, tables)
}

/// All residuated lattices with exactly `n` elements, one per isomorphism class.
pub fn generate(n: usize) -> Result<(Vec<ResiduatedLattice>, SizeStats)> {
    generate_bounded(n, DEFAULT_MAX_SIZE)
}

pub fn generate_bounded(n: usize, max: usize) -> Result<(Vec<ResiduatedLattice>, SizeStats)> {
    if n == 0 || n > max.min(HARD_MAX_SIZE) {
        return Err(Error::precondition(format!(
            "catalog size must be between 1 and {}, got {n}",
            max.min(HARD_MAX_SIZE)
        )));
    }
    let (lattices, labelled) = enumerate_lattices(n);
    let per: Vec<(Vec<ResiduatedLattice>, u64, u64)> = lattices.par_iter().map(algebras_on).collect();
    let mut stats = SizeStats {
        size: n,
        labelled_orders: labelled,
        lattices: lattices.len() as u64,
        ..SizeStats::default()
    };
    let mut by_key: BTreeMap<String, ResiduatedLattice> = BTreeMap::new();
    for (algs, nodes, tables) in per {
        stats.search_nodes += nodes;
        stats.residuated_tables += tables;
        for a in algs {
            by_key.entry(canonical_key(&a)).or_insert(a);
        }
    }
    stats.algebras = by_key.len() as u64;
    Ok((by_key.into_values().collect(), stats))
}

/// Independent generator for tiny sizes: every partial order on the inner
/// points (not just natural labellings), every commutative unital `mono`
/// table, residuals derived, full validation, and pairwise isomorphism
/// filtering without canonical forms.
pub fn naive_generate(n: usize) -> Result<Vec<ResiduatedLattice>> {
    if n == 0 || n > NAIVE_MAX_SIZE {
        return Err(Error::precondition(format!(
            "naive generation is limited to sizes 1..={NAIVE_MAX_SIZE}"
        )));
    }
    if n == 1 {
        return Ok(vec![ResiduatedLattice::from_flat(1, vec![0], vec![0], vec![0], vec![0])?]);
    }
    let inner: Vec<usize> = (1..n - 1).collect();
    let pairs: Vec<(usize, usize)> = inner
        .iter()
        .flat_map(|&i| inner.iter().map(move |&j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    let cells: Vec<(usize, usize)> = inner
        .iter()
        .flat_map(|&i| inner.iter().filter(move |&&j| j >= i).map(move |&j| (i, j)))
        .collect();
    let mut reps: Vec<ResiduatedLattice> = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
            leq[x] = true;
            leq[x * n + n - 1] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let le = |x: usize, y: usize| leq[x * n + y];
        let order = (0..n).all(|x| {
            (0..n).all(|y| {
                (x == y || !(le(x, y) && le(y, x)))
                    && (0..n).all(|z| !(le(x, y) && le(y, z)) || le(x, z))
            })
        });
        if !order {
            continue;
        }
        let glb = |x: usize, y: usize| {
            let c: Vec<usize> = (0..n).filter(|&z| le(z, x) && le(z, y)).collect();
            c.iter().copied().find(|&z| c.iter().all(|&w| le(w, z)))
        };
        let lub = |x: usize, y: usize| {
            let c: Vec<usize> = (0..n).filter(|&z| le(x, z) && le(y, z)).collect();
            c.iter().copied().find(|&z| c.iter().all(|&w| le(z, w)))
        };
        let Some(meet) = (0..n * n).map(|k| glb(k / n, k % n)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let Some(join) = (0..n * n).map(|k| lub(k / n, k % n)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let total = (n as u64).pow(cells.len() as u32);
        for code in 0..total {
            let mut mono = vec![0; n * n];
            for x in 0..n {
                mono[(n - 1) * n + x] = x;
                mono[x * n + n - 1] = x;
            }
            let mut c = code;
            for &(i, j) in &cells {
                let v = (c % n as u64) as usize;
                c /= n as u64;
                mono[i * n + j] = v;
                mono[j * n + i] = v;
            }
            let Some(imp) = derive_residual(n, le, &mono) else {
                continue;
            };
            let Ok(a) = ResiduatedLattice::from_flat(n, meet.clone(), join.clone(), mono, imp) else {
                continue;
            };
            if !reps.iter().any(|r| are_isomorphic(r, &a)) {
                reps.push(a);
            }
        }
    }
    Ok(reps)
}

impl AlgebraCatalog {
    /// Every algebra of size `1..=size_bound`.
    pub fn generate(size_bound: usize) -> Result<Self> {
        Self::generate_with_max(size_bound, DEFAULT_MAX_SIZE)
    }

    pub fn generate_with_max(size_bound: usize, max: usize) -> Result<Self> {
        let mut entries = Vec::new();
        let mut stats = Vec::new();
        for n in 1..=size_bound {
            let (algs, st) = generate_bounded(n, max)?;
            let mut batch: Vec<CatalogEntry> = algs
                .into_par_iter()
                .map(|a| {
                    Ok(CatalogEntry {
                        key: canonical_key(&a),
                        structure: structure_report(&a)?,
                        algebra: Arc::new(a),
                    })
                })
                .collect::<Result<_>>()?;
            entries.append(&mut batch);
            stats.push(st);
        }
        let mut c = AlgebraCatalog {
            size_bound,
            entries,
            stats,
        };
        c.sort();
        Ok(c)
    }

    fn sort(&mut self) {
        self.entries
            .sort_by(|a, b| (a.algebra.size(), &a.key).cmp(&(b.algebra.size(), &b.key)));
        self.stats.sort_by_key(|s| s.size);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries with at most `max` elements.
    pub fn up_to(&self, max: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.algebra.size() <= max)
    }

    pub fn count_by_size(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for e in &self.entries {
            *m.entry(e.algebra.size()).or_insert(0) += 1;
        }
        m
    }

    pub fn find(&self, key: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn to_jsonl(&self) -> String {
        let header = Header {
            format: FORMAT.to_string(),
            version: FORMAT_VERSION,
            size_bound: self.size_bound,
            entries: self.entries.len(),
            stats: self.stats.clone(),
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for e in &self.entries {
            out.push_str(&entry_line(e));
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_jsonl()).map_err(|source| Error::Io {
            context: format!("writing {}", path.display()),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            context: format!("reading {}", path.display()),
            source,
        })?;
        Self::from_jsonl(&text)
    }

    /// Parses and re-checks a catalog: every entry is validated, its key and
    /// structure report are recomputed and must match what is stored.
    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let parse_err = |line: usize, e: serde_json::Error| Error::Parse {
            location: format!("line {}, column {}", line + 1, e.column()),
            message: e.to_string(),
        };
        let (_, first) = lines.next().ok_or_else(|| Error::Parse {
            location: "line 1".into(),
            message: "empty catalog file".into(),
        })?;
        let header: Header = serde_json::from_str(first).map_err(|e| parse_err(0, e))?;
        if header.format != FORMAT || header.version != FORMAT_VERSION {
            return Err(Error::Parse {
                location: "line 1".into(),
                message: format!("unsupported format {} v{}", header.format, header.version),
            });
        }
        let mut entries = Vec::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let value: Value = serde_json::from_str(line).map_err(|e| parse_err(i, e))?;
            let key = value
                .get("key")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse {
                    location: format!("line {}", i + 1),
                    message: "entry has no key".into(),
                })?
                .to_string();
            let data: AlgebraData = serde_json::from_value(value.clone()).map_err(|e| Error::Parse {
                location: format!("line {}", i + 1),
                message: format!("entry {key}: {e}"),
            })?;
            let a = ResiduatedLattice::from_data(&data).map_err(|e| Error::Parse {
                location: format!("line {}", i + 1),
                message: format!("entry {key}: {e}"),
            })?;
            if canonical_key(&a) != key {
                return Err(Error::Parse {
                    location: format!("line {}", i + 1),
                    message: format!("entry {key}: stored key does not match the tables"),
                });
            }
            let structure = structure_report(&a)?;
            if Some(serde_json::to_value(&structure).expect("report serializes")) != value.get("structure").cloned() {
                return Err(Error::Parse {
                    location: format!("line {}", i + 1),
                    message: format!("entry {key}: stored structure report is stale"),
                });
            }
            entries.push(CatalogEntry {
                key,
                algebra: Arc::new(a),
                structure,
            });
        }
        if entries.len() != header.entries {
            return Err(Error::Parse {
                location: "line 1".into(),
                message: format!("header announces {} entries, found {}", header.entries, entries.len()),
            });
        }
        for w in entries.windows(2) {
            if (w[0].algebra.size(), &w[0].key) >= (w[1].algebra.size(), &w[1].key) {
                return Err(Error::Parse {
                    location: format!("entry {}", w[1].key),
                    message: "entries out of canonical order or duplicated".into(),
                });
            }
        }
        Ok(AlgebraCatalog {
            size_bound: header.size_bound,
            entries,
            stats: header.stats,
        })
    }

    /// Union of two catalogs; a key present in both must carry the same algebra.
    pub fn merge(&self, other: &AlgebraCatalog) -> Result<AlgebraCatalog> {
        let mut by_key: BTreeMap<String, CatalogEntry> = BTreeMap::new();
        for e in self.entries.iter().chain(&other.entries) {
            if let Some(prev) = by_key.get(&e.key) {
                if prev.algebra != e.algebra {
                    return Err(Error::precondition(format!("conflicting entries for key {}", e.key)));
                }
                continue;
            }
            by_key.insert(e.key.clone(), e.clone());
        }
        let mut stats: BTreeMap<usize, SizeStats> = BTreeMap::new();
        for s in self.stats.iter().chain(&other.stats) {
            stats.entry(s.size).or_insert_with(|| s.clone());
        }
        let mut c = AlgebraCatalog {
            size_bound: self.size_bound.max(other.size_bound),
            entries: by_key.into_values().collect(),
            stats: stats.into_values().collect(),
        };
        c.sort();
        Ok(c)
    }
}

fn entry_line(e: &CatalogEntry) -> String {
    let data = e.algebra.to_data();
    let mut obj = serde_json::Map::new();
    obj.insert("key".into(), Value::String(e.key.clone()));
    if let Value::Object(fields) = serde_json::to_value(&data).expect("algebra serializes") {
        obj.extend(fields);
    }
    obj.insert(
        "structure".into(),
        serde_json::to_value(&e.structure).expect("report serializes"),
    );
    serde_json::to_string(&Value::Object(obj)).expect("entry serializes")
}

/// Catalog directory from `RLW_CATALOG_DIR`, if set.
pub fn default_catalog_dir() -> Option<std::path::PathBuf> {
    std::env::var_os("RLW_CATALOG_DIR").map(Into::into)
}

/// Conventional file name for a catalog of sizes `1..=n`.
pub fn catalog_file_name(n: usize) -> String {
    format!("catalog-{n}.jsonl")
}
