//! Small fixed-width bitsets over element indices.

use std::fmt;

/// Maximum number of elements a single carrier may have.
pub const MAX_ELEMENTS: usize = 64;

/// A set of element indices `< 64`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(i: usize) -> Self {
        ElemSet(1u64 << i)
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(ElemSet::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        ElemSet(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElemSet::from_indices(iter)
    }
}

impl IntoIterator for ElemSet {
    type Item = usize;
    type IntoIter = Bits;
    fn into_iter(self) -> Bits {
        self.iter()
    }
}

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Debug)]
pub struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Bits {}
