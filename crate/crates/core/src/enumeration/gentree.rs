//! The succession rule `(l) ⇝ (1), (2), …, (l+1)` for 123-avoiders and the
//! matching first-return construction of Dyck paths.
//!
//! Level `n` of the generating tree holds the 123-avoiders of size `n`; the
//! root `(0)` at level 0 is the empty permutation. A child with label `l + 1`
//! appends a new left-to-right minimum (a point on `D`); the children with
//! labels `1..=l` append a point on `U`. The streak counts consecutive `U`
//! placements, which is the length of the current run of `U` points.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::tables::{CoefficientTable, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratingTreeState {
    pub label: usize,
    pub streak: usize,
}

impl GeneratingTreeState {
    pub const ROOT: GeneratingTreeState = GeneratingTreeState { label: 0, streak: 0 };

    /// Children under a streak bound (`None` for the unrestricted rule).
    pub fn children(self, bound: Option<usize>) -> impl Iterator<Item = GeneratingTreeState> {
        let grow = GeneratingTreeState { label: self.label + 1, streak: 0 };
        let streak = self.streak + 1;
        let allowed = bound.is_none_or(|j| streak <= j);
        let shrink = (1..=self.label).filter(move |_| allowed).map(move |label| GeneratingTreeState { label, streak });
        shrink.chain(std::iter::once(grow))
    }
}

/// Node counts per level `0..=n_max` under an optional streak bound.
pub fn level_counts(n_max: usize, bound: Option<usize>) -> Vec<BigUint> {
    let mut level: HashMap<GeneratingTreeState, BigUint> = HashMap::new();
    level.insert(GeneratingTreeState::ROOT, BigUint::one());
    let mut out = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        out.push(level.values().sum());
        let mut next: HashMap<GeneratingTreeState, BigUint> = HashMap::new();
        for (state, count) in &level {
            // Streak is irrelevant without a bound; collapse it to keep the table small.
            for mut child in state.children(bound) {
                if bound.is_none() {
                    child.streak = 0;
                }
                *next.entry(child).or_insert_with(BigUint::zero) += count;
            }
        }
        level = next;
    }
    out
}

/// `|{π ∈ Av_n(123) : γ^U_π ≤ j}|`.
pub fn gamma_u_bounded_count(n: usize, j: usize) -> BigUint {
    level_counts(n, Some(j)).pop().expect("non-empty")
}

pub fn gamma_u_bounded_table(j: usize, n_max: usize) -> CoefficientTable {
    CoefficientTable { family: Family::GammaUBounded(j), coefficients: level_counts(n_max, Some(j)) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Option<Self> {
        let mut h: i64 = 0;
        for s in &steps {
            h += if *s == Step::Up { 1 } else { -1 };
            if h < 0 {
                return None;
            }
        }
        (h == 0).then_some(DyckPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Minimal factors that start and end at height 0.
    pub fn blocks(&self) -> Vec<&[Step]> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut h = 0i64;
        for (i, s) in self.steps.iter().enumerate() {
            h += if *s == Step::Up { 1 } else { -1 };
            if h == 0 {
                out.push(&self.steps[start..=i]);
                start = i + 1;
            }
        }
        out
    }

    /// First-return children: `UD·p`, and `U b1…bi D b_{i+1}…bk` for each `i`.
    pub fn children(&self) -> Vec<DyckPath> {
        let blocks = self.blocks();
        let mut out = Vec::with_capacity(blocks.len() + 1);
        let mut first = vec![Step::Up, Step::Down];
        first.extend(&self.steps);
        out.push(DyckPath { steps: first });
        for i in 1..=blocks.len() {
            let mut s = vec![Step::Up];
            for b in &blocks[..i] {
                s.extend(*b);
            }
            s.push(Step::Down);
            for b in &blocks[i..] {
                s.extend(*b);
            }
            out.push(DyckPath { steps: s });
        }
        out
    }

    /// Whether `U^{j+2} D` occurs as a factor.
    pub fn contains_long_ascent(&self, j: usize) -> bool {
        let mut run = 0;
        for s in &self.steps {
            match s {
                Step::Up => run += 1,
                Step::Down => {
                    if run >= j + 2 {
                        return true;
                    }
                    run = 0;
                }
            }
        }
        false
    }
}

/// All Dyck paths of the given semilength, by repeated first-return expansion.
pub fn all_dyck_paths(n: usize) -> Vec<DyckPath> {
    let mut level = vec![DyckPath { steps: Vec::new() }];
    for _ in 0..n {
        level = level.iter().flat_map(|p| p.children()).collect();
    }
    level
}

/// Dyck paths of semilength `n` avoiding the factor `U^{j+2} D`, i.e. with every
/// maximal ascent of length at most `j + 1`. DP over (height, current ascent length).
pub fn dyck_avoiding_count(n: usize, j: usize) -> BigUint {
    let max_run = j + 1;
    // state[h][r]
    let mut state = vec![vec![BigUint::zero(); max_run + 1]; n + 2];
    state[0][0] = BigUint::one();
    for _ in 0..2 * n {
        let mut next = vec![vec![BigUint::zero(); max_run + 1]; n + 2];
        for h in 0..=n {
            for r in 0..=max_run {
                if state[h][r].is_zero() {
                    continue;
                }
                let c = &state[h][r];
                if r < max_run && h < n {
                    next[h + 1][r + 1] += c;
                }
                if h > 0 {
                    next[h - 1][0] += c;
                }
            }
        }
        state = next;
    }
    state[0].iter().sum()
}

pub fn dyck_avoiding_table(j: usize, n_max: usize) -> CoefficientTable {
    CoefficientTable {
        family: Family::DyckAvoid(j),
        coefficients: (0..=n_max).map(|n| dyck_avoiding_count(n, j)).collect(),
    }
}
