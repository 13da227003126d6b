//! Compact fixed-capacity bit set backing the solver's constraint engine.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A set of `usize` values below a fixed capacity, stored as 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    words: Vec<u64>,
    capacity: usize,
}

impl BitSet {
    /// Empty set able to hold values in `0..capacity`.
    pub fn new(capacity: usize) -> Self {
        BitSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    /// Builds a set from an iterator of values, all below `capacity`.
    pub fn from_iter(capacity: usize, values: impl IntoIterator<Item = usize>) -> Self {
        let mut s = BitSet::new(capacity);
        for v in values {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, value: usize) {
        debug_assert!(value < self.capacity);
        self.words[value / 64] |= 1u64 << (value % 64);
    }

    pub fn remove(&mut self, value: usize) {
        debug_assert!(value < self.capacity);
        self.words[value / 64] &= !(1u64 << (value % 64));
    }

    pub fn contains(&self, value: usize) -> bool {
        value < self.capacity && self.words[value / 64] >> (value % 64) & 1 == 1
    }

    /// Number of elements (population count).
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Ascending iterator over the elements.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut word = w;
            core::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(i * 64 + bit)
            })
        })
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == 0)
    }

    /// Size of the intersection with `other`.
    pub fn intersection_len(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Removes every element of `other` from `self`.
    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Adds every element of `other` to `self`.
    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Keeps only the elements also in `other`.
    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn insert_remove_contains() {
        let mut s = BitSet::new(130);
        assert!(s.is_empty());
        for v in [0, 63, 64, 65, 129] {
            s.insert(v);
        }
        assert_eq!(s.len(), 5);
        assert!(s.contains(64));
        assert!(!s.contains(66));
        assert!(!s.contains(1000));
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.to_vec(), vec![0, 63, 65, 129]);
        assert_eq!(s.first(), Some(0));
    }

    #[test]
    fn set_algebra() {
        let a = BitSet::from_iter(100, [1, 5, 70, 99]);
        let b = BitSet::from_iter(100, [5, 70]);
        let c = BitSet::from_iter(100, [2, 3]);
        assert_eq!(a.intersection_len(&b), 2);
        assert!(a.is_disjoint(&c));
        assert!(!a.is_disjoint(&b));
        let mut d = a.clone();
        d.difference_with(&b);
        assert_eq!(d.to_vec(), vec![1, 99]);
        d.union_with(&c);
        assert_eq!(d.to_vec(), vec![1, 2, 3, 99]);
        d.intersect_with(&a);
        assert_eq!(d.to_vec(), vec![1, 99]);
    }

    #[test]
    fn iter_is_ascending() {
        let s = BitSet::from_iter(200, [150, 3, 64, 127, 128]);
        let got: Vec<usize> = s.iter().collect();
        assert_eq!(got, vec![3, 64, 127, 128, 150]);
    }
}
