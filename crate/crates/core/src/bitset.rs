//! Packed bitsets over vertex indices.
//!
//! A [`VertexSet`] is the universal currency of this crate: candidate
//! solutions, search states, GA individuals, and geodesic intervals are all
//! sets of vertices of a fixed-width universe `0..n`.

use std::cmp::Ordering;
use std::fmt;

const WORD_BITS: usize = 64;

/// Number of `u64` words needed for a universe of `n` vertices.
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Returns true if the two word slices share a set bit.
pub(crate) fn words_intersect(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

/// A fixed-width set of vertices, packed 64 per word.
///
/// All bits above index `n - 1` are kept at zero, so equality, ordering and
/// popcounts can work on whole words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    /// The empty set over a universe of `n` vertices.
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; words_for(n)],
        }
    }

    /// The full set `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in 0..words_for(n) {
            s.words[w] = u64::MAX;
        }
        s.clear_tail();
        s
    }

    /// Builds a set from explicit members.
    ///
    /// # Panics
    /// Panics if any index is out of range.
    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut s = Self::empty(n);
        for &i in indices {
            s.insert(i);
        }
        s
    }

    /// Width of the universe this set ranges over.
    pub fn width(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < self.n);
        self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 != 0
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range for width {}", self.n);
        self.words[v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v / WORD_BITS] &= !(1u64 << (v % WORD_BITS));
    }

    /// Flips membership of `v`.
    pub fn toggle(&mut self, v: usize) {
        assert!(v < self.n);
        self.words[v / WORD_BITS] ^= 1u64 << (v % WORD_BITS);
    }

    /// Exchanges the bits at positions `i` and `j`.
    pub fn swap_bits(&mut self, i: usize, j: usize) {
        let bi = self.contains(i);
        let bj = self.contains(j);
        if bi != bj {
            self.toggle(i);
            self.toggle(j);
        }
    }

    /// Cardinality of the set.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Raw words, for intersection tests against oracle-owned bit rows.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// True if `self` shares a member with the given word slice.
    pub fn intersects_words(&self, other: &[u64]) -> bool {
        words_intersect(&self.words, other)
    }

    /// True if every member of `self` is in `other`.
    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Set union; both operands must have the same width.
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n, "width mismatch in union");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        VertexSet { n: self.n, words }
    }

    pub(crate) fn union_words_in_place(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a |= b;
        }
    }

    /// Iterates members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    /// Members as an ascending `Vec`.
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn clear_tail(&mut self) {
        let used = self.n % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        if self.n == 0 {
            self.words.clear();
        }
    }
}

/// Orders sets by their ascending member lists, compared lexicographically:
/// `{0,3} < {1,2}` and `{0} < {0,1}` (a proper prefix sorts first).
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        for (i, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let diff = a ^ b;
            if diff == 0 {
                continue;
            }
            // Members below the lowest differing vertex m are shared, so the
            // lists agree up to there. The owner of m sorts first unless the
            // other list already ended (making it a proper prefix).
            let low = diff.trailing_zeros();
            let above = if low == 63 { 0 } else { !0u64 << (low + 1) };
            let m_in_self = a >> low & 1 == 1;
            let tail = |words: &[u64], word: u64| {
                word & above != 0 || words[i + 1..].iter().any(|&w| w != 0)
            };
            return if m_in_self {
                if tail(&other.words, *b) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            } else if tail(&self.words, *a) {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        Ordering::Equal
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
