//! Permutations, sub-permutations and pattern statistics.
//!
//! A [`Permutation`] of size `n` is a rearrangement of the ranks `1..=n`.
//! The empty permutation is allowed. Sub-permutations are keyed by the
//! generating *value* `k`; [`Permutation::sub_permutation_at`] offers the
//! position-based view.

mod enumerate;
mod pattern;
mod stats;
mod twoline;

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

pub use enumerate::{all_permutations, enumerate_class, enumerate_class_bounded, ClassIter, DEFAULT_ORACLE_CEILING};
pub use pattern::{contains_pattern, contains_pattern_capped, naive_contains, PatternMatcher};
pub use stats::{gamma, gamma_u, is_decreasing, is_increasing, is_odd_alternating, ClassTest};
pub use twoline::{append_right, two_line, Line, TwoLineRepr};

/// A permutation of `1..=n`, stored as its one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Validates that `entries` is a rearrangement of `1..=entries.len()`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &e in &entries {
            if e == 0 || e as usize > n {
                return invalid(format!("entry {e} out of range 1..={n}"));
            }
            if std::mem::replace(&mut seen[e as usize - 1], true) {
                return invalid(format!("entry {e} repeated"));
            }
        }
        Ok(Permutation(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation(entries)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    /// Position (0-based) of each value: `inverse()[v - 1]` is where `v` sits.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v as usize - 1] = i;
        }
        pos
    }

    pub fn position_of(&self, value: u32) -> Option<usize> {
        self.0.iter().position(|&v| v == value)
    }

    /// The sub-permutation generated by the value `k`.
    pub fn sub_permutation(&self, k: u32) -> Result<SubPermutation> {
        sub_permutation(self, k)
    }

    /// The sub-permutation generated by the entry at 0-based position `i`.
    pub fn sub_permutation_at(&self, i: usize) -> Result<SubPermutation> {
        match self.0.get(i) {
            Some(&k) => sub_permutation(self, k),
            None => invalid(format!("position {i} out of range for size {}", self.len())),
        }
    }

    pub fn contains(&self, pattern: &Permutation) -> Result<bool> {
        contains_pattern(self, pattern)
    }

    pub fn avoids(&self, pattern: &Permutation) -> Result<bool> {
        contains_pattern(self, pattern).map(|c| !c)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses the one-line text format: whitespace separated ranks, e.g. `"4 5 3 1 2 6 8 7"`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split_whitespace()
            .map(|tok| tok.parse::<u32>().map_err(|_| Error::InvalidInput(format!("not a rank: {tok:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(entries)
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Permutation::new(v)
    }
}

/// Order-isomorphic image of a word of distinct values onto `1..=len`.
pub fn standardize<T: Ord>(word: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by(|&a, &b| word[a].cmp(&word[b]));
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return invalid("word has repeated entries");
    }
    let mut out = vec![0u32; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    Ok(Permutation(out))
}

/// The sub-permutation generated by a value: the maximal window around it
/// whose entries are all at least that value, together with its standardization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPermutation {
    pub generator: u32,
    /// First position of the window (0-based, inclusive).
    pub lo: usize,
    /// Last position of the window (0-based, inclusive).
    pub hi: usize,
    pub pattern: Permutation,
}

impl SubPermutation {
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Window starting at the first position of the host.
    pub fn is_prefix(&self) -> bool {
        self.lo == 0
    }
}

/// Window bounds `(lo, hi)` of the sub-permutation generated by `k`.
pub(crate) fn window(entries: &[u32], k: u32) -> Option<(usize, usize)> {
    let p = entries.iter().position(|&v| v == k)?;
    let mut lo = p;
    while lo > 0 && entries[lo - 1] >= k {
        lo -= 1;
    }
    let mut hi = p;
    while hi + 1 < entries.len() && entries[hi + 1] >= k {
        hi += 1;
    }
    Some((lo, hi))
}

pub fn sub_permutation(host: &Permutation, k: u32) -> Result<SubPermutation> {
    if k == 0 || k as usize > host.len() {
        return invalid(format!("generator {k} out of range 1..={}", host.len()));
    }
    let (lo, hi) = window(&host.0, k).expect("value present in a valid permutation");
    let pattern = standardize(&host.0[lo..=hi])?;
    Ok(SubPermutation { generator: k, lo, hi, pattern })
}

/// One record per value `k = 1..=n`, in increasing order of `k`.
pub fn all_sub_permutations(host: &Permutation) -> Vec<SubPermutation> {
    (1..=host.len() as u32).map(|k| sub_permutation(host, k).expect("k in range")).collect()
}
