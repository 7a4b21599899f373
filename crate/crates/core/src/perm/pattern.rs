//! Classical pattern containment.
//!
//! Patterns of length at most 3 use a direct quadratic scan. Longer patterns
//! use backtracking over pattern positions, placed left to right, pruned by
//! the remaining text length and by the value gap to the already placed
//! nearest-rank neighbours.

use super::Permutation;
use crate::error::{invalid, Result};

/// Precomputed search plan for one pattern. Works on any word of distinct values.
#[derive(Debug, Clone)]
pub struct PatternMatcher {
    pattern: Vec<u32>,
    // For pattern index i: earlier index with the largest smaller value, and
    // the number of pattern ranks strictly between the two.
    lower: Vec<Option<(usize, u32)>>,
    upper: Vec<Option<(usize, u32)>>,
}

impl PatternMatcher {
    pub fn new(pattern: &Permutation) -> Result<Self> {
        if pattern.is_empty() {
            return invalid("empty pattern");
        }
        let p = pattern.entries().to_vec();
        let mut lower = Vec::with_capacity(p.len());
        let mut upper = Vec::with_capacity(p.len());
        for i in 0..p.len() {
            let lo = (0..i).filter(|&j| p[j] < p[i]).max_by_key(|&j| p[j]);
            let hi = (0..i).filter(|&j| p[j] > p[i]).min_by_key(|&j| p[j]);
            lower.push(lo.map(|j| (j, p[i] - p[j] - 1)));
            upper.push(hi.map(|j| (j, p[j] - p[i] - 1)));
        }
        Ok(PatternMatcher { pattern: p, lower, upper })
    }

    pub fn pattern_len(&self) -> usize {
        self.pattern.len()
    }

    pub fn matches(&self, text: &[u32]) -> bool {
        self.matches_capped(text, u64::MAX).expect("unbounded search always finishes")
    }

    /// `None` when the backtracking search needs more than `cap` node expansions.
    pub fn matches_capped(&self, text: &[u32], cap: u64) -> Option<bool> {
        match self.pattern.len() {
            1 => Some(!text.is_empty()),
            2 => Some(scan2(text, self.pattern[0] < self.pattern[1])),
            3 => Some(scan3(text, &self.pattern)),
            _ => self.backtrack(text, cap),
        }
    }

    fn fits(&self, depth: usize, v: u32, chosen: &[usize], text: &[u32]) -> bool {
        if let Some((j, gap)) = self.lower[depth] {
            let w = text[chosen[j]];
            if v <= w || v - w - 1 < gap {
                return false;
            }
        }
        if let Some((j, gap)) = self.upper[depth] {
            let w = text[chosen[j]];
            if v >= w || w - v - 1 < gap {
                return false;
            }
        }
        true
    }

    fn backtrack(&self, text: &[u32], cap: u64) -> Option<bool> {
        let k = self.pattern.len();
        let n = text.len();
        if k > n {
            return Some(false);
        }
        let mut budget = cap;
        let mut chosen = vec![0usize; k];
        let mut depth = 0;
        let mut next = 0;
        loop {
            let last = n - (k - depth);
            let mut placed = None;
            let mut t = next;
            while t <= last {
                if budget == 0 {
                    return None;
                }
                budget -= 1;
                if self.fits(depth, text[t], &chosen, text) {
                    placed = Some(t);
                    break;
                }
                t += 1;
            }
            match placed {
                Some(t) => {
                    chosen[depth] = t;
                    if depth + 1 == k {
                        return Some(true);
                    }
                    depth += 1;
                    next = t + 1;
                }
                None => {
                    if depth == 0 {
                        return Some(false);
                    }
                    depth -= 1;
                    next = chosen[depth] + 1;
                }
            }
        }
    }
}

fn scan2(text: &[u32], ascending: bool) -> bool {
    let Some(&first) = text.first() else {
        return false;
    };
    let mut extreme = first;
    for &v in &text[1..] {
        if ascending && v > extreme || !ascending && v < extreme {
            return true;
        }
        extreme = if ascending { extreme.min(v) } else { extreme.max(v) };
    }
    false
}

fn scan3(text: &[u32], p: &[u32]) -> bool {
    let left_below = p[0] < p[1];
    let right_below = p[2] < p[1];
    let left_under_right = p[0] < p[2];
    for j in 1..text.len().saturating_sub(1) {
        let y = text[j];
        let side = |x: u32, below: bool| if below { x < y } else { x > y };
        let mut left = text[..j].iter().copied().filter(|&x| side(x, left_below));
        let Some(first) = left.next() else { continue };
        let (lmin, lmax) = left.fold((first, first), |(a, b), x| (a.min(x), b.max(x)));
        let mut right = text[j + 1..].iter().copied().filter(|&z| side(z, right_below));
        let Some(first) = right.next() else { continue };
        let (rmin, rmax) = right.fold((first, first), |(a, b), z| (a.min(z), b.max(z)));
        if left_under_right && lmin < rmax || !left_under_right && lmax > rmin {
            return true;
        }
    }
    false
}

/// True iff some subsequence of `text` is order-isomorphic to `pattern`.
pub fn contains_pattern(text: &Permutation, pattern: &Permutation) -> Result<bool> {
    Ok(PatternMatcher::new(pattern)?.matches(text.entries()))
}

/// As [`contains_pattern`], giving up (returning `Ok(None)`) after `cap` node expansions.
pub fn contains_pattern_capped(text: &Permutation, pattern: &Permutation, cap: u64) -> Result<Option<bool>> {
    Ok(PatternMatcher::new(pattern)?.matches_capped(text.entries(), cap))
}

/// Exhaustive check over all `C(n, k)` subsequences. Only meant as a test oracle.
pub fn naive_contains(text: &[u32], pattern: &[u32]) -> bool {
    fn rec(text: &[u32], pattern: &[u32], start: usize, picked: &mut Vec<u32>) -> bool {
        if picked.len() == pattern.len() {
            return (0..pattern.len())
                .all(|a| (0..pattern.len()).all(|b| (picked[a] < picked[b]) == (pattern[a] < pattern[b])));
        }
        for i in start..text.len() {
            picked.push(text[i]);
            if rec(text, pattern, i + 1, picked) {
                return true;
            }
            picked.pop();
        }
        false
    }
    rec(text, pattern, 0, &mut Vec::new())
}
