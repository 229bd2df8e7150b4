use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::table::Element;

/// A set of elements of one fixed table, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for e in 0..universe {
            set.insert(e);
        }
        set
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(universe: usize, elements: I) -> Self {
        let mut set = Self::empty(universe);
        for e in elements {
            set.insert(e);
        }
        set
    }

    /// Size of the underlying table, not of the set.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Inserts `e`, returning `true` if it was not already present.
    pub fn insert(&mut self, e: Element) -> bool {
        assert!(
            e < self.universe,
            "element {e} outside universe {}",
            self.universe
        );
        let (w, b) = (e / 64, e % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, e: Element) {
        if e < self.universe {
            self.words[e / 64] &= !(1 << (e % 64));
        }
    }

    pub fn contains(&self, e: Element) -> bool {
        e < self.universe && self.words[e / 64] & (1 << (e % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.universe == other.universe
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        assert_eq!(self.universe, other.universe);
        ElementSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        assert_eq!(self.universe, other.universe);
        ElementSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.universe).filter(move |&e| self.contains(e))
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = ElementSet::empty(130);
        assert!(s.is_empty());
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert_eq!(s.len(), 2);
        assert!(s.contains(129) && !s.contains(64));
        assert_eq!(s.to_vec(), vec![0, 129]);
        s.remove(0);
        assert_eq!(s.to_vec(), vec![129]);
    }

    #[test]
    fn subset_union_intersection() {
        let a = ElementSet::from_elements(5, [1, 2]);
        let b = ElementSet::from_elements(5, [2, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 2, 3]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(ElementSet::full(3).len(), 3);
    }
}
