//! Dense bit-indexed sets.
//!
//! [`ElemSet`] holds subsets of an algebra's carrier (at most 64 elements),
//! [`PointSet`] holds subsets of a finite space's points (at most 32 points).
//! Both order by their raw mask, which is the deterministic order used for
//! every enumeration in the crate.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

macro_rules! bitset {
    ($(#[$meta:meta])* $name:ident, $word:ty, $iter:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
        pub struct $name($word);

        impl $name {
            pub const CAPACITY: usize = <$word>::BITS as usize;

            pub const fn empty() -> Self {
                Self(0)
            }

            /// `{0, …, n−1}`.
            pub fn full(n: usize) -> Self {
                assert!(n <= Self::CAPACITY, "bitset width exceeded");
                if n == Self::CAPACITY {
                    Self(<$word>::MAX)
                } else {
                    Self(((1 as $word) << n) - 1)
                }
            }

            pub fn singleton(i: usize) -> Self {
                assert!(i < Self::CAPACITY, "bitset index out of range");
                Self((1 as $word) << i)
            }

            pub const fn from_bits(bits: $word) -> Self {
                Self(bits)
            }

            pub const fn bits(self) -> $word {
                self.0
            }

            pub fn contains(self, i: usize) -> bool {
                i < Self::CAPACITY && (self.0 >> i) & 1 == 1
            }

            #[must_use]
            pub fn with(self, i: usize) -> Self {
                self | Self::singleton(i)
            }

            #[must_use]
            pub fn without(self, i: usize) -> Self {
                Self(self.0 & !((1 as $word) << i))
            }

            pub fn insert(&mut self, i: usize) {
                *self = self.with(i);
            }

            pub const fn is_empty(self) -> bool {
                self.0 == 0
            }

            pub const fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            pub const fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            pub const fn intersects(self, other: Self) -> bool {
                self.0 & other.0 != 0
            }

            /// Complement relative to `{0, …, n−1}`.
            #[must_use]
            pub fn complement(self, n: usize) -> Self {
                Self(!self.0) & Self::full(n)
            }

            /// Largest member plus one; zero for the empty set.
            pub const fn span(self) -> usize {
                (<$word>::BITS - self.0.leading_zeros()) as usize
            }

            pub fn min(self) -> Option<usize> {
                if self.0 == 0 {
                    None
                } else {
                    Some(self.0.trailing_zeros() as usize)
                }
            }

            pub fn iter(self) -> $iter {
                $iter(self.0)
            }
        }

        impl BitOr for $name {
            type Output = Self;
            fn bitor(self, rhs: Self) -> Self {
                Self(self.0 | rhs.0)
            }
        }

        impl BitAnd for $name {
            type Output = Self;
            fn bitand(self, rhs: Self) -> Self {
                Self(self.0 & rhs.0)
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                Self(self.0 & !rhs.0)
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                iter.into_iter().fold(Self::empty(), |s, i| s.with(i))
            }
        }

        impl IntoIterator for $name {
            type Item = usize;
            type IntoIter = $iter;
            fn into_iter(self) -> $iter {
                self.iter()
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }

        /// Members in ascending order.
        #[derive(Clone)]
        pub struct $iter($word);

        impl Iterator for $iter {
            type Item = usize;
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

        impl ExactSizeIterator for $iter {}
    };
}

bitset!(
    /// A subset of a finite carrier.
    ElemSet,
    u64,
    ElemIter
);

bitset!(
    /// A subset of the points of a finite space.
    PointSet,
    u32,
    PointIter
);

/// All subsets of `{0, …, n−1}` in ascending mask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = ElemSet> {
    assert!(n < 64, "cannot enumerate 2^{n} subsets");
    (0u64..(1u64 << n)).map(ElemSet::from_bits)
}

/// All subsets of a point set, ascending (carry-rippler enumeration).
pub fn point_subsets(set: PointSet) -> impl Iterator<Item = PointSet> {
    let mask = set.bits();
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        let succ = cur.wrapping_sub(mask) & mask;
        next = if succ == 0 { None } else { Some(succ) };
        Some(PointSet::from_bits(cur))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn iterates_members_in_order() {
        let s: ElemSet = [5, 0, 3].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(format!("{s:?}"), "{0, 3, 5}");
        assert_eq!(s.span(), 6);
    }

    #[test]
    fn full_handles_word_width() {
        assert_eq!(ElemSet::full(64).len(), 64);
        assert_eq!(PointSet::full(32).len(), 32);
        assert!(ElemSet::full(0).is_empty());
    }

    #[test]
    fn point_subsets_covers_every_submask() {
        let set = PointSet::from_bits(0b1011);
        let subs: Vec<_> = point_subsets(set).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(set)));
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
    }

    proptest! {
        #[test]
        fn complement_partitions(bits in any::<u64>(), n in 0usize..=64) {
            let s = ElemSet::from_bits(bits) & ElemSet::full(n);
            let c = s.complement(n);
            prop_assert!(!s.intersects(c));
            prop_assert_eq!(s | c, ElemSet::full(n));
        }
    }
}
