use std::fmt;
use std::sync::Arc;

use super::{Elem, Op, ResiduatedLattice};
use crate::error::{Error, Result};
use crate::filters::FilterSet;
use crate::subset::Subset;

/// A map between carriers, claimed to be a homomorphism. Use
/// [`Homomorphism::is_homomorphism`] or [`Homomorphism::check`] to verify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: Arc<ResiduatedLattice>,
    pub target: Arc<ResiduatedLattice>,
    pub map: Vec<Elem>,
}

/// First failed preservation equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomomorphismError {
    Bottom,
    Top,
    Operation { op: Op, x: Elem, y: Elem },
}

impl fmt::Display for HomomorphismError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomomorphismError::Bottom => write!(f, "bottom is not preserved"),
            HomomorphismError::Top => write!(f, "top is not preserved"),
            HomomorphismError::Operation { op, x, y } => {
                write!(f, "{op} is not preserved at ({x}, {y})")
            }
        }
    }
}

impl Homomorphism {
    /// Checks only the shape of `map`; preservation is checked separately.
    pub fn new(
        source: Arc<ResiduatedLattice>,
        target: Arc<ResiduatedLattice>,
        map: Vec<Elem>,
    ) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::Structural(format!(
                "map has {} entries, source has {} elements",
                map.len(),
                source.size()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.size()) {
            return Err(Error::Structural(format!(
                "map value {v} outside target of size {}",
                target.size()
            )));
        }
        Ok(Homomorphism { source, target, map })
    }

    pub fn identity(a: Arc<ResiduatedLattice>) -> Self {
        let map = a.elements().collect();
        Homomorphism {
            source: a.clone(),
            target: a,
            map,
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn check(&self) -> Result<(), HomomorphismError> {
        let (s, t) = (&*self.source, &*self.target);
        if self.map[s.bottom()] != t.bottom() {
            return Err(HomomorphismError::Bottom);
        }
        if self.map[s.top()] != t.top() {
            return Err(HomomorphismError::Top);
        }
        for op in Op::ALL {
            for x in s.elements() {
                for y in s.elements() {
                    if self.map[s.op(op, x, y)] != t.op(op, self.map[x], self.map[y]) {
                        return Err(HomomorphismError::Operation { op, x, y });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_homomorphism(&self) -> bool {
        self.check().is_ok()
    }

    /// `{ x : h(x) = top }`, only for genuine homomorphisms.
    pub fn kernel(&self) -> Result<FilterSet> {
        self.check().map_err(|e| {
            Error::precondition(format!("kernel of a non-homomorphism requested: {e}"))
        })?;
        let top = self.target.top();
        let members: Subset = self.source.elements().filter(|&x| self.map[x] == top).collect();
        FilterSet::new(&self.source, members)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if *self.target != *next.source {
            return Err(Error::precondition("composition of non-composable maps"));
        }
        Ok(Homomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        })
    }

    pub fn image(&self) -> Subset {
        self.map.iter().copied().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.map.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.size()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<Homomorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Homomorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }
}

/// Every homomorphism `source -> target`, found by scanning all maps that
/// fix the constants. Refuses scans above `bound` candidate maps.
pub fn all_homomorphisms(
    source: &Arc<ResiduatedLattice>,
    target: &Arc<ResiduatedLattice>,
    bound: u128,
) -> Result<Vec<Homomorphism>> {
    let (n, m) = (source.size(), target.size());
    let free = n.saturating_sub(2) as u32;
    let needed = (m as u128).saturating_pow(free);
    if needed > bound {
        return Err(Error::BoundExceeded { needed, bound });
    }
    if n == 1 && m != 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    map[source.top()] = target.top();
    map[source.bottom()] = target.bottom();
    fn rec(
        pos: usize,
        n: usize,
        m: usize,
        map: &mut Vec<usize>,
        s: &Arc<ResiduatedLattice>,
        t: &Arc<ResiduatedLattice>,
        out: &mut Vec<Homomorphism>,
    ) {
        if pos + 1 >= n {
            let h = Homomorphism {
                source: s.clone(),
                target: t.clone(),
                map: map.clone(),
            };
            if h.is_homomorphism() {
                out.push(h);
            }
            return;
        }
        for v in 0..m {
            map[pos] = v;
            rec(pos + 1, n, m, map, s, t, out);
        }
    }
    rec(1, n, m, &mut map, source, target, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::goedel_chain;

    #[test]
    fn identity_has_trivial_kernel() {
        let g3 = Arc::new(goedel_chain(3));
        let id = Homomorphism::identity(g3.clone());
        assert!(id.is_homomorphism());
        assert_eq!(id.kernel().unwrap().members().to_vec(), vec![2]);
    }

    #[test]
    fn collapsing_quotient_of_g3() {
        let g3 = Arc::new(goedel_chain(3));
        let g2 = Arc::new(goedel_chain(2));
        let h = Homomorphism::new(g3, g2, vec![0, 1, 1]).unwrap();
        assert!(h.is_homomorphism());
        assert_eq!(h.kernel().unwrap().members().to_vec(), vec![1, 2]);
    }

    #[test]
    fn sending_middle_to_bottom_breaks_mono() {
        let g3 = Arc::new(goedel_chain(3));
        let g2 = Arc::new(goedel_chain(2));
        let h = Homomorphism::new(g3, g2, vec![0, 0, 1]).unwrap();
        assert!(!h.is_homomorphism());
        assert!(h.kernel().is_err());
    }

    #[test]
    fn homomorphism_scan() {
        let g3 = Arc::new(goedel_chain(3));
        let g2 = Arc::new(goedel_chain(2));
        let homs = all_homomorphisms(&g3, &g2, 1000).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].map, vec![0, 1, 1]);
        // identity, and the collapse onto the subalgebra {0, 2}
        assert_eq!(all_homomorphisms(&g3, &g3, 1000).unwrap().len(), 2);
        let one = Arc::new(goedel_chain(1));
        assert_eq!(all_homomorphisms(&g3, &one, 1000).unwrap().len(), 1);
        assert!(all_homomorphisms(&one, &g3, 1000).unwrap().is_empty());
    }

    #[test]
    fn shape_errors() {
        let g3 = Arc::new(goedel_chain(3));
        let g2 = Arc::new(goedel_chain(2));
        assert!(Homomorphism::new(g3.clone(), g2.clone(), vec![0, 1]).is_err());
        assert!(Homomorphism::new(g3, g2, vec![0, 1, 2]).is_err());
    }
}
