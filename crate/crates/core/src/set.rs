//! Fixed-width subsets of a lattice's element indices.

use std::fmt;

use crate::lattice::Elem;

/// A subset of element indices `0..128`.
///
/// Every algorithm that enumerates subsets of a carrier (hull construction,
/// closure, the powerset side of the dynamics) works on lattices far below
/// this width, so a single machine word pair is enough.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ElemSet(u128);

impl ElemSet {
    pub const CAPACITY: usize = 128;

    pub const fn empty() -> Self {
        ElemSet(0)
    }

    pub const fn from_bits(bits: u128) -> Self {
        ElemSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "ElemSet holds at most 128 elements");
        if n == Self::CAPACITY {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(e: Elem) -> Self {
        let mut s = Self::empty();
        s.insert(e);
        s
    }

    pub fn contains(self, e: Elem) -> bool {
        e < Self::CAPACITY && self.0 & (1u128 << e) != 0
    }

    pub fn insert(&mut self, e: Elem) {
        assert!(e < Self::CAPACITY, "element index {e} out of ElemSet range");
        self.0 |= 1u128 << e;
    }

    pub fn remove(&mut self, e: Elem) {
        if e < Self::CAPACITY {
            self.0 &= !(1u128 << e);
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every subset of `self`, starting with `self` and ending with the
    /// empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(self.0),
        }
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        let mut s = ElemSet::empty();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl IntoIterator for ElemSet {
    type Item = Elem;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of an [`ElemSet`].
#[derive(Clone)]
pub struct Iter(u128);

impl Iterator for Iter {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Submask enumeration, descending in numeric order.
pub struct Subsets {
    mask: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = ElemSet;

    fn next(&mut self) -> Option<ElemSet> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.mask)
        };
        Some(ElemSet(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn subsets_of_three_elements() {
        let s: ElemSet = [0, 2, 5].into_iter().collect();
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all.first(), Some(&s));
        assert_eq!(all.last(), Some(&ElemSet::empty()));
        assert!(all.iter().all(|t| t.is_subset(s)));
    }

    #[test]
    fn full_at_capacity() {
        assert_eq!(ElemSet::full(128).len(), 128);
        assert_eq!(ElemSet::full(0), ElemSet::empty());
    }

    proptest! {
        #[test]
        fn iter_collect_roundtrip(bits in any::<u128>()) {
            let s = ElemSet::from_bits(bits);
            let back: ElemSet = s.iter().collect();
            prop_assert_eq!(s, back);
            prop_assert_eq!(s.iter().count(), s.len());
        }

        #[test]
        fn set_algebra(a in any::<u128>(), b in any::<u128>()) {
            let (a, b) = (ElemSet::from_bits(a), ElemSet::from_bits(b));
            prop_assert!(a.intersection(b).is_subset(a));
            prop_assert!(a.is_subset(a.union(b)));
            prop_assert!(a.difference(b).intersection(b).is_empty());
        }
    }
}
