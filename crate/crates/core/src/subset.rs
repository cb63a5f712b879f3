use std::fmt;

use serde::{Serialize, Serializer};

/// Largest carrier size representable by a [`Subset`].
pub const MAX_ORDER: usize = 64;

/// A subset of the carrier `{0, …, n-1}`, stored as a bit mask.
///
/// The carrier size is not stored; callers that need it (complement, full
/// set, range checks) pass it explicitly. The empty set is representable.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole carrier of size `n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        if n == MAX_ORDER {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        assert!(x < MAX_ORDER, "element {x} exceeds {MAX_ORDER}");
        Subset(1u64 << x)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_ORDER && self.0 & (1u64 << x) != 0
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < MAX_ORDER, "element {x} exceeds {MAX_ORDER}");
        self.0 |= 1u64 << x;
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// True iff every member is below `n`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset_of(Subset::full(n))
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All nonempty subsets of an `n`-element carrier, in ascending mask order.
    pub fn nonempty_subsets(n: usize) -> impl Iterator<Item = Subset> + Clone {
        assert!(n < MAX_ORDER, "cannot enumerate subsets of order {n}");
        (1u64..(1u64 << n)).map(Subset)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Subset::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[derive(Clone, Debug)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_edges() {
        assert_eq!(Subset::full(0), Subset::EMPTY);
        assert_eq!(Subset::full(3).bits(), 0b111);
        assert_eq!(Subset::full(64).len(), 64);
        assert!(Subset::singleton(5).within(6));
        assert!(!Subset::singleton(5).within(5));
    }

    #[test]
    fn iteration_is_ascending() {
        let s: Subset = [4, 0, 2].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.to_string(), "{0,2,4}");
    }

    #[test]
    fn nonempty_subsets_in_mask_order() {
        let all: Vec<_> = Subset::nonempty_subsets(2).collect();
        assert_eq!(
            all,
            vec![Subset::singleton(0), Subset::singleton(1), Subset::full(2)]
        );
    }
}
