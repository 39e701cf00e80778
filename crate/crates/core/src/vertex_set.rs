//! Fixed-width vertex sets over the `2^n` labels of an `n`-dimensional graph.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A processor label. Bit `i` of the integer is the label bit `u_i`, so the
/// label prints most significant bit first as `u_{n-1} ... u_1 u_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn label(self) -> u32 {
        self.0
    }

    pub fn bit(self, i: u32) -> bool {
        (self.0 >> i) & 1 == 1
    }

    /// Fixed-width binary string, most significant bit first.
    pub fn to_binary(self, n: u32) -> String {
        format!("{:0width$b}", self.0, width = n as usize)
    }

    /// Parses an `n`-bit binary string.
    pub fn parse_binary(s: &str, n: u32) -> Result<Self> {
        let s = s.trim();
        if s.len() != n as usize {
            return Err(Error::WidthMismatch {
                expected: n,
                found: s.len() as u32,
            });
        }
        if !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::Parse(format!("'{s}' is not a binary label")));
        }
        u32::from_str_radix(s, 2)
            .map(VertexId)
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Membership map over `[0, 2^n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: u32,
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(n: u32) -> Self {
        VertexSet {
            n,
            bits: FixedBitSet::with_capacity(1usize << n),
        }
    }

    pub fn full(n: u32) -> Self {
        let mut s = Self::empty(n);
        s.bits.insert_range(..);
        s
    }

    pub fn from_ids<I: IntoIterator<Item = VertexId>>(n: u32, ids: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in ids {
            s.try_insert(v)?;
        }
        Ok(s)
    }

    /// Builds a set from raw labels; panics on labels outside `[0, 2^n)`.
    pub fn from_labels<I: IntoIterator<Item = u32>>(n: u32, labels: I) -> Self {
        let mut s = Self::empty(n);
        for l in labels {
            s.insert(VertexId(l));
        }
        s
    }

    /// Parses binary-string labels such as `["0001", "0010"]`.
    pub fn from_binary<S: AsRef<str>>(n: u32, labels: &[S]) -> Result<Self> {
        let mut s = Self::empty(n);
        for l in labels {
            s.insert(VertexId::parse_binary(l.as_ref(), n)?);
        }
        Ok(s)
    }

    /// Fault-set file format: one `n`-bit label per line. Blank lines are skipped.
    pub fn parse_lines(n: u32, text: &str) -> Result<Self> {
        let mut s = Self::empty(n);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let v = VertexId::parse_binary(line, n).map_err(|e| match e {
                Error::Parse(msg) => Error::Parse(format!("line {}: {msg}", lineno + 1)),
                other => other,
            })?;
            s.insert(v);
        }
        Ok(s)
    }

    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for l in self.to_binary_labels() {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }

    /// Low-dimension fast path: bit `v` of the mask is membership of vertex `v`.
    pub fn from_mask(n: u32, mask: u64) -> Self {
        assert!(n <= 6, "mask form needs n <= 6");
        let mut s = Self::empty(n);
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros();
            s.bits.insert(v as usize);
            m &= m - 1;
        }
        s
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.n <= 6, "mask form needs n <= 6");
        self.bits.ones().fold(0u64, |m, v| m | (1u64 << v))
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn universe(&self) -> usize {
        1usize << self.n
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.bits.contains(v.0 as usize)
    }

    pub fn insert(&mut self, v: VertexId) {
        assert!(
            (v.0 as usize) < self.universe(),
            "vertex {} outside LTQ_{}",
            v.0,
            self.n
        );
        self.bits.insert(v.0 as usize);
    }

    pub fn try_insert(&mut self, v: VertexId) -> Result<()> {
        if (v.0 as usize) >= self.universe() {
            return Err(Error::InvalidVertex {
                label: v.0 as u64,
                n: self.n,
            });
        }
        self.bits.insert(v.0 as usize);
        Ok(())
    }

    pub fn remove(&mut self, v: VertexId) {
        self.bits.set(v.0 as usize, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bits.ones().map(|v| VertexId(v as u32))
    }

    pub fn first(&self) -> Option<VertexId> {
        self.iter().next()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_width(other);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        VertexSet { n: self.n, bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_width(other);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        VertexSet { n: self.n, bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_width(other);
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        VertexSet { n: self.n, bits }
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.check_width(other);
        let mut bits = self.bits.clone();
        bits.symmetric_difference_with(&other.bits);
        VertexSet { n: self.n, bits }
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet { n: self.n, bits }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn to_binary_labels(&self) -> Vec<String> {
        self.iter().map(|v| v.to_binary(self.n)).collect()
    }

    fn check_width(&self, other: &Self) {
        assert_eq!(self.n, other.n, "vertex sets of different dimensions");
    }
}

impl Ord for VertexSet {
    /// Canonical order: by dimension, then cardinality, then the ascending
    /// member lists compared lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.to_binary_labels()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_binary_labels().join(","))
    }
}
