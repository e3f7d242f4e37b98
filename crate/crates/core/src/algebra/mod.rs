//! Finite residuated lattices: representation, axiom checking, standard
//! families, homomorphisms and isomorphism testing.
//!
//! Every [`ResiduatedLattice`] is normalized so that its carrier is `0..n`,
//! the bottom is `0` and the top is `n - 1`. Input tables may use any
//! bottom/top indices; [`ResiduatedLattice::from_data`] relabels them.

mod builders;
mod hom;
mod iso;
mod validate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::Subset;

pub use builders::{boolean, goedel_chain, lukasiewicz_chain, product, product_of};
pub use hom::{all_homomorphisms, Homomorphism, HomomorphismError};
pub use iso::{are_isomorphic, canonical_form, canonical_key, find_isomorphism};
pub use validate::{validate, Axiom, AxiomViolation, ValidationReport};

/// Element of a carrier.
pub type Elem = usize;

/// The four binary operations of the signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Meet,
    Join,
    Mono,
    Impl,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::Meet, Op::Join, Op::Mono, Op::Impl];

    pub fn name(self) -> &'static str {
        match self {
            Op::Meet => "meet",
            Op::Join => "join",
            Op::Mono => "mono",
            Op::Impl => "impl",
        }
    }
}

impl std::fmt::Display for Op {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Interchange form of an algebra: row-major `n x n` tables plus the
/// indices of the two constants. This is the JSON algebra format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraData {
    pub size: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub mono: Vec<Vec<usize>>,
    #[serde(rename = "impl")]
    pub imp: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
}

impl AlgebraData {
    pub fn table(&self, op: Op) -> &Vec<Vec<usize>> {
        match op {
            Op::Meet => &self.meet,
            Op::Join => &self.join,
            Op::Mono => &self.mono,
            Op::Impl => &self.imp,
        }
    }

    pub fn table_mut(&mut self, op: Op) -> &mut Vec<Vec<usize>> {
        match op {
            Op::Meet => &mut self.meet,
            Op::Join => &mut self.join,
            Op::Mono => &mut self.mono,
            Op::Impl => &mut self.imp,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }
}

/// A validated, normalized finite residuated lattice
/// `(L, meet, join, mono, impl, 0, 1)` with bottom `0` and top `n - 1`.
///
/// Values are immutable once constructed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResiduatedLattice {
    n: usize,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    mono: Vec<Elem>,
    imp: Vec<Elem>,
}

impl std::fmt::Debug for ResiduatedLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ResiduatedLattice")
            .field("size", &self.n)
            .field("mono", &self.rows(Op::Mono))
            .field("impl", &self.rows(Op::Impl))
            .finish_non_exhaustive()
    }
}

impl ResiduatedLattice {
    /// Validates `data`, then relabels it so bottom is `0` and top is `n - 1`.
    pub fn from_data(data: &AlgebraData) -> Result<Self> {
        let report = validate(data);
        if let Some(msg) = report.structural.first() {
            return Err(Error::Structural(msg.clone()));
        }
        if !report.is_ok() {
            return Err(Error::Invalid(Box::new(report)));
        }
        let n = data.size;
        let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().copied().collect::<Vec<_>>();
        let raw = ResiduatedLattice {
            n,
            meet: flat(&data.meet),
            join: flat(&data.join),
            mono: flat(&data.mono),
            imp: flat(&data.imp),
        };
        // arrangement[new] = old
        let mut arrangement: Vec<usize> = (0..n).collect();
        arrangement.swap(0, data.bottom);
        let top_pos = arrangement.iter().position(|&o| o == data.top).unwrap();
        arrangement.swap(n - 1, top_pos);
        let mut new_of_old = vec![0; n];
        for (new, &old) in arrangement.iter().enumerate() {
            new_of_old[old] = new;
        }
        Ok(raw.relabel(&new_of_old))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_data(&AlgebraData::from_json(text)?)
    }

    /// Builds from flat tables already in normalized form and validates.
    pub(crate) fn from_flat(
        n: usize,
        meet: Vec<Elem>,
        join: Vec<Elem>,
        mono: Vec<Elem>,
        imp: Vec<Elem>,
    ) -> Result<Self> {
        let a = ResiduatedLattice { n, meet, join, mono, imp };
        let report = validate(&a.to_data());
        if let Some(msg) = report.structural.first() {
            return Err(Error::Structural(msg.clone()));
        }
        if !report.is_ok() {
            return Err(Error::Invalid(Box::new(report)));
        }
        Ok(a)
    }

    /// Builds normalized tables from closures, deriving nothing. Validates.
    pub(crate) fn from_fns(
        n: usize,
        meet: impl Fn(Elem, Elem) -> Elem,
        join: impl Fn(Elem, Elem) -> Elem,
        mono: impl Fn(Elem, Elem) -> Elem,
        imp: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let tab = |f: &dyn Fn(Elem, Elem) -> Elem| {
            (0..n * n).map(|k| f(k / n, k % n)).collect::<Vec<_>>()
        };
        Self::from_flat(n, tab(&meet), tab(&join), tab(&mono), tab(&imp))
    }

    pub fn to_data(&self) -> AlgebraData {
        AlgebraData {
            size: self.n,
            meet: self.rows(Op::Meet),
            join: self.rows(Op::Join),
            mono: self.rows(Op::Mono),
            imp: self.rows(Op::Impl),
            bottom: self.bottom(),
            top: self.top(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_data()).expect("algebra data serializes")
    }

    fn rows(&self, op: Op) -> Vec<Vec<usize>> {
        self.flat(op).chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub(crate) fn flat(&self, op: Op) -> &[Elem] {
        match op {
            Op::Meet => &self.meet,
            Op::Join => &self.join,
            Op::Mono => &self.mono,
            Op::Impl => &self.imp,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    pub fn bottom(&self) -> Elem {
        0
    }

    pub fn top(&self) -> Elem {
        self.n - 1
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.n)
    }

    #[inline]
    pub fn op(&self, op: Op, x: Elem, y: Elem) -> Elem {
        self.flat(op)[x * self.n + y]
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.n + y]
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.n + y]
    }

    #[inline]
    pub fn mono(&self, x: Elem, y: Elem) -> Elem {
        self.mono[x * self.n + y]
    }

    #[inline]
    pub fn imp(&self, x: Elem, y: Elem) -> Elem {
        self.imp[x * self.n + y]
    }

    /// Lattice order, derived from the meet table.
    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.meet(x, y) == x
    }

    /// `x^k` under `mono`, with `x^0 = top`.
    pub fn power(&self, x: Elem, k: u32) -> Elem {
        (0..k).fold(self.top(), |acc, _| self.mono(acc, x))
    }

    pub fn is_idempotent(&self, x: Elem) -> bool {
        self.mono(x, x) == x
    }

    /// `{ y : x <= y }`.
    pub fn up_set(&self, x: Elem) -> Subset {
        self.elements().filter(|&y| self.leq(x, y)).collect()
    }

    /// `{ y : y <= x }`.
    pub fn down_set(&self, x: Elem) -> Subset {
        self.elements().filter(|&y| self.leq(y, x)).collect()
    }

    /// Meet of a nonempty subset (top for the empty set).
    pub fn meet_all(&self, s: Subset) -> Elem {
        s.iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// `(x -> y) mono (y -> x)`, the distance used by filter congruences.
    pub fn biresiduum(&self, x: Elem, y: Elem) -> Elem {
        self.mono(self.imp(x, y), self.imp(y, x))
    }

    /// Applies `new_of_old` to every element and table entry.
    pub(crate) fn relabel(&self, new_of_old: &[usize]) -> ResiduatedLattice {
        let n = self.n;
        let mut out = ResiduatedLattice {
            n,
            meet: vec![0; n * n],
            join: vec![0; n * n],
            mono: vec![0; n * n],
            imp: vec![0; n * n],
        };
        for x in 0..n {
            for y in 0..n {
                let (nx, ny) = (new_of_old[x], new_of_old[y]);
                out.meet[nx * n + ny] = new_of_old[self.meet(x, y)];
                out.join[nx * n + ny] = new_of_old[self.join(x, y)];
                out.mono[nx * n + ny] = new_of_old[self.mono(x, y)];
                out.imp[nx * n + ny] = new_of_old[self.imp(x, y)];
            }
        }
        out
    }

    /// Relabels and re-validates; `new_of_old` must fix bottom and top.
    pub fn permuted(&self, new_of_old: &[usize]) -> Result<ResiduatedLattice> {
        let mut seen = Subset::EMPTY;
        for &v in new_of_old {
            if v >= self.n || seen.contains(v) {
                return Err(Error::precondition("relabelling is not a permutation"));
            }
            seen.insert(v);
        }
        if new_of_old.len() != self.n
            || new_of_old[self.bottom()] != self.bottom()
            || new_of_old[self.top()] != self.top()
        {
            return Err(Error::precondition(
                "relabelling must be a permutation fixing bottom and top",
            ));
        }
        Ok(self.relabel(new_of_old))
    }
}
