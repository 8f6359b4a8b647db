use std::fmt;

/// Largest poset the bitset representation supports.
pub const MAX_ELEMENTS: usize = 64;

/// A set of poset elements, stored as a bitmask over element indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    #[inline]
    pub fn singleton(i: usize) -> Self {
        ElemSet(1u64 << i)
    }

    /// `{0, 1, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        ElemSet(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
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
    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Indices in increasing order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All nonempty subsets, in increasing order of their bitmask.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = ElemSet> {
        let mask = self.0;
        let mut sub: u64 = 0;
        let mut done = mask == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            // next submask in increasing numeric order
            sub = (sub.wrapping_sub(mask)) & mask;
            if sub == mask {
                done = true;
            }
            Some(ElemSet(sub))
        })
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}
