//! Sets of vertex labels packed into a single machine word.

use core::cmp::Ordering;
use core::fmt;

use crate::graph::{Vertex, MAX_ORDER};

/// A set of vertex labels drawn from `1..=64`.
///
/// Label `v` is stored in bit `v - 1`. Ordering is lexicographic on the
/// sorted member lists, so a proper prefix sorts first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The contiguous range `1..=n`.
    pub fn prefix(n: usize) -> Self {
        debug_assert!(n <= MAX_ORDER);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: Vertex) -> Self {
        debug_assert!((1..=MAX_ORDER).contains(&v));
        VertexSet(1u64 << (v - 1))
    }

    /// Builds a set from arbitrary labels; `None` if a label is outside `1..=64`.
    pub fn try_from_labels<I: IntoIterator<Item = Vertex>>(labels: I) -> Option<Self> {
        let mut bits = 0u64;
        for v in labels {
            if !(1..=MAX_ORDER).contains(&v) {
                return None;
            }
            bits |= 1u64 << (v - 1);
        }
        Some(VertexSet(bits))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: Vertex) -> bool {
        (1..=MAX_ORDER).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn with(self, v: Vertex) -> Self {
        VertexSet(self.0 | Self::singleton(v).0)
    }

    pub fn without(self, v: Vertex) -> Self {
        VertexSet(self.0 & !Self::singleton(v).0)
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        VertexSet(self.0 ^ other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<Vertex> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Both lists agree below the lowest differing label `d`. The set
        // holding `d` is smaller unless the other one ends right there.
        let low = diff.trailing_zeros();
        let self_holds = self.0 >> low & 1 == 1;
        let rest = if self_holds { other.0 } else { self.0 };
        let rest_continues = low < 63 && rest >> (low + 1) != 0;
        if self_holds == rest_continues {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

#[derive(Clone, Debug)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}
