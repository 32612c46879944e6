use std::fmt;
use std::ops::{BitOr, BitOrAssign};

/// Largest carrier size an [`ElementSet`] can index.
pub const MAX_ORDER: usize = 64;

/// A subset of carrier indices `0..n`, `n <= 64`, as a membership mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub const fn from_mask(mask: u64) -> Self {
        ElementSet(mask)
    }

    #[inline]
    pub const fn singleton(x: usize) -> Self {
        ElementSet(1 << x)
    }

    /// The whole carrier `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn contains(self, x: usize) -> bool {
        x < 64 && self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize) {
        self.0 |= 1 << x;
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest member plus one, i.e. the smallest carrier this set fits in.
    #[inline]
    pub const fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Image of the set under an index map.
    #[inline]
    pub fn map(self, f: impl Fn(usize) -> usize) -> ElementSet {
        self.iter().map(f).collect()
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn bitor(self, rhs: ElementSet) -> ElementSet {
        self.union(rhs)
    }
}

impl BitOrAssign for ElementSet {
    #[inline]
    fn bitor_assign(&mut self, rhs: ElementSet) {
        self.0 |= rhs.0;
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Ascending iterator over the members of an [`ElementSet`].
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
