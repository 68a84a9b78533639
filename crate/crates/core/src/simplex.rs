//! Vertex sets and simplices over the ground set `{1, ..., n}`.
//!
//! A [`Simplex`] is stored as a 64-bit mask (bit `i - 1` holds label `i`), so
//! labels range over `1..=64`. Ordering is lexicographic on the sorted label
//! sequence, which is the canonical order used for all JSON output.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest vertex label a [`Simplex`] can hold.
pub const MAX_LABEL: usize = 64;

/// The ambient ground set `{1, ..., n}` of a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
}

impl VertexSet {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_LABEL {
            return Err(Error::LabelOutOfRange { label: n, max: MAX_LABEL });
        }
        Ok(Self { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// The full simplex on all labels.
    pub fn full(&self) -> Simplex {
        Simplex::from_mask(low_bits(self.n))
    }

    pub fn contains(&self, sigma: Simplex) -> bool {
        sigma.mask() & !low_bits(self.n) == 0
    }
}

pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A finite set of vertex labels; dimension is `|vertices| - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Simplex(u64);

impl Simplex {
    pub const EMPTY: Simplex = Simplex(0);

    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Result<Self> {
        let mut mask = 0u64;
        for label in labels {
            if label == 0 || label > MAX_LABEL {
                return Err(Error::LabelOutOfRange { label, max: MAX_LABEL });
            }
            mask |= 1u64 << (label - 1);
        }
        Ok(Simplex(mask))
    }

    pub const fn from_mask(mask: u64) -> Self {
        Simplex(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `dim ∅ = -1`.
    pub fn dim(self) -> i64 {
        self.len() as i64 - 1
    }

    pub fn contains(self, label: usize) -> bool {
        (1..=MAX_LABEL).contains(&label) && self.0 & (1u64 << (label - 1)) != 0
    }

    pub fn is_subset_of(self, other: Simplex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Simplex) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Simplex) -> Simplex {
        Simplex(self.0 | other.0)
    }

    pub fn intersection(self, other: Simplex) -> Simplex {
        Simplex(self.0 & other.0)
    }

    pub fn without(self, label: usize) -> Simplex {
        Simplex(self.0 & !(1u64 << (label - 1)))
    }

    pub fn with(self, label: usize) -> Simplex {
        Simplex(self.0 | (1u64 << (label - 1)))
    }

    /// Smallest label, `None` for the empty simplex.
    pub fn min_label(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max_label(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Labels in increasing order.
    pub fn labels(self) -> Labels {
        Labels(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.labels().collect()
    }

    /// Shift every label up by `offset`.
    pub fn shifted(self, offset: usize) -> Result<Simplex> {
        Simplex::from_labels(self.labels().map(|l| l + offset))
    }

    /// All subsets, including the empty one and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets { full: self.0, next: Some(0) }
    }
}

pub struct Labels(u64);

impl Iterator for Labels {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let bit = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(bit + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Labels {}

/// Submask enumeration in increasing numeric order.
pub struct Subsets {
    full: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Simplex;

    fn next(&mut self) -> Option<Simplex> {
        let cur = self.next?;
        self.next = if cur == self.full {
            None
        } else {
            Some((cur.wrapping_sub(self.full)) & self.full)
        };
        Some(Simplex(cur))
    }
}

/// All `k`-subsets of `{1..n}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Simplex> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(Simplex::from_labels(idx.iter().copied()).expect("labels within 1..=n"));
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.labels().cmp(other.labels())
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.labels().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Simplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.labels())
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        Simplex::from_labels(labels).map_err(serde::de::Error::custom)
    }
}
