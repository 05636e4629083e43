use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A subset of the coordinate indices `{0, .., dim-1}` (stored 0-based,
/// rendered and serialized 1-based as in the usual mathematical notation).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(u8);

impl IndexSet {
    pub const fn empty() -> IndexSet {
        IndexSet(0)
    }

    pub fn full(dim: usize) -> IndexSet {
        IndexSet(((1u16 << dim) - 1) as u8)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> IndexSet {
        let mut set = IndexSet::empty();
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds a set from 1-based coordinate labels.
    pub fn from_one_based(labels: impl IntoIterator<Item = usize>) -> IndexSet {
        IndexSet::from_indices(labels.into_iter().map(|l| l - 1))
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < 8, "coordinate index out of range");
        self.0 |= 1 << index;
    }

    pub fn remove(&mut self, index: usize) {
        self.0 &= !(1 << index);
    }

    pub fn contains(&self, index: usize) -> bool {
        index < 8 && self.0 & (1 << index) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn complement(&self, dim: usize) -> IndexSet {
        IndexSet(!self.0 & IndexSet::full(dim).0)
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0 & other.0)
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..8).filter(move |i| self.contains(*i))
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.to_one_based().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<IndexSet, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        if labels.iter().any(|&l| l == 0 || l > 8) {
            return Err(serde::de::Error::custom("coordinate labels are 1-based and at most 8"));
        }
        Ok(IndexSet::from_one_based(labels))
    }
}
