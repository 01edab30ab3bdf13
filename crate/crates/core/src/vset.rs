//! Fixed-universe vertex sets over the labels `1..=n`.

use std::cmp::Ordering;
use std::fmt;

/// A set of vertices drawn from `1..=n`, stored as a bitset.
///
/// Ordering is lexicographic on the ascending vertex sequence, so
/// `{1,4} < {2,3}` and `{1} < {1,2}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 1..=n {
            s.insert(v);
        }
        s
    }

    /// Builds a set from labels, panicking on labels outside `1..=n`.
    /// Use [`crate::Graph::vertex_set`] for checked construction.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Self {
        let mut s = Self::empty(n);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    /// Size of the universe this set lives in.
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v >= 1 && v <= self.n && self.words[(v - 1) / 64] >> ((v - 1) % 64) & 1 == 1
    }

    /// Returns true when `v` was not already present.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v >= 1 && v <= self.n, "vertex {v} outside 1..={}", self.n);
        let (w, b) = ((v - 1) / 64, (v - 1) % 64);
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if !self.contains(v) {
            return false;
        }
        self.words[(v - 1) / 64] &= !(1 << ((v - 1) % 64));
        true
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::full(self.n).difference(self)
    }

    fn zip_words(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Vertices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b + 1)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
