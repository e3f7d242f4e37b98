//! Fixed-width bitsets over a carrier of at most [`MAX_CARRIER`] elements.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest carrier a [`Subset`] can address.
pub const MAX_CARRIER: usize = 128;

/// A subset of `0..n` stored as a 128-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u128);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u128) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// The full carrier `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_CARRIER, "carrier of {n} elements exceeds {MAX_CARRIER}");
        if n == MAX_CARRIER {
            Subset(u128::MAX)
        } else {
            Subset((1u128 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        Subset(1u128 << x)
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_CARRIER && self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u128 << x;
    }

    pub fn remove(&mut self, x: usize) {
        self.0 &= !(1u128 << x);
    }

    pub fn with(mut self, x: usize) -> Self {
        self.insert(x);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Complement relative to the carrier `0..n`.
    pub fn complement(self, n: usize) -> Subset {
        Subset::full(n).difference(self)
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Subset) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `0..n`, in increasing bitmask order. Only sensible for small `n`.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < 64, "refusing to enumerate 2^{n} subsets");
        (0u128..(1u128 << n)).map(Subset)
    }

    /// Sort key used for canonical orderings: cardinality, then the sorted
    /// member list compared lexicographically.
    pub fn canonical_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.to_vec())
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Subset::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

pub struct SubsetIter(u128);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = SubsetIter;

    fn into_iter(self) -> SubsetIter {
        self.iter()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Subsets serialize as sorted index arrays.
impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = items.iter().find(|&&x| x >= MAX_CARRIER) {
            return Err(serde::de::Error::custom(format!(
                "element {bad} exceeds the carrier limit {MAX_CARRIER}"
            )));
        }
        Ok(items.into_iter().collect())
    }
}
