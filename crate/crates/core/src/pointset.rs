//! Subsets of a finite space, stored as bitsets over point indices.

use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of the points of a finite space, addressed by point index.
///
/// Every set built for one space carries that space's size as its capacity, so
/// equality and hashing are meaningful between sets of the same space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(capacity: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(capacity),
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(capacity);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(capacity: usize, indices: I) -> Self {
        let mut set = Self::empty(capacity);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds the subset whose members are the set bits of `mask` (bit `i` is point `i`).
    pub fn from_mask(capacity: usize, mask: u64) -> Self {
        debug_assert!(capacity <= 64);
        Self::from_indices(capacity, (0..capacity).filter(|i| mask >> i & 1 == 1))
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, index: usize) {
        if index >= self.bits.len() {
            self.bits.grow(index + 1);
        }
        self.bits.insert(index);
    }

    pub fn remove(&mut self, index: usize) {
        if index < self.bits.len() {
            self.bits.set(index, false);
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.contains(index)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
