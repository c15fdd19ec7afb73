use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A set of atoms stored as a bitmask over 0-based atom indices.
///
/// Externally (CLI, JSON, display) atoms are numbered from 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AtomSet(pub u64);

/// Highest supported rank; atom sets are 64-bit masks.
pub const MAX_RANK: usize = 64;

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn full(rank: usize) -> Self {
        if rank >= 64 {
            AtomSet(u64::MAX)
        } else {
            AtomSet((1u64 << rank) - 1)
        }
    }

    pub fn single(atom: usize) -> Self {
        AtomSet(1 << atom)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        AtomSet(it.into_iter().fold(0, |m, a| m | (1 << a)))
    }

    /// Builds a set from 1-based atom labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        Self::from_indices(labels.iter().map(|&l| l - 1))
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    pub fn insert(&mut self, atom: usize) {
        self.0 |= 1 << atom;
    }

    pub fn with(self, atom: usize) -> Self {
        AtomSet(self.0 | 1 << atom)
    }

    pub fn without(self, atom: usize) -> Self {
        AtomSet(self.0 & !(1 << atom))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: AtomSet) -> Self {
        AtomSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AtomSet) -> Self {
        AtomSet(self.0 & other.0)
    }

    pub fn difference(self, other: AtomSet) -> Self {
        AtomSet(self.0 & !other.0)
    }

    /// Smallest atom index, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let a = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(a)
            }
        })
    }

    /// Sorted 1-based labels.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|a| a + 1).collect()
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = AtomSet> {
        let full = self.0;
        let mut sub: u64 = 0;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = AtomSet(sub);
            if sub == full {
                done = true;
            } else {
                sub = (sub.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for AtomSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AtomSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        if labels.iter().any(|&l| l == 0 || l > MAX_RANK) {
            return Err(serde::de::Error::custom("atom labels must be in 1..=64"));
        }
        Ok(AtomSet::from_labels(&labels))
    }
}
