use super::{standardize, window, PatternMatcher, Permutation};
use crate::error::{Error, Result};

/// Membership test for a permutation class.
#[derive(Debug, Clone)]
pub enum ClassTest {
    /// `Av(σ)` for a classical pattern `σ`.
    Avoiding(PatternMatcher),
    /// Odd alternating permutations `π1 > π2 < π3 > … < πn`, plus sizes 0 and 1.
    OddAlternating,
}

impl ClassTest {
    pub fn avoiding(pattern: &Permutation) -> Result<Self> {
        PatternMatcher::new(pattern).map(ClassTest::Avoiding)
    }

    pub fn accepts(&self, p: &Permutation) -> bool {
        match self {
            ClassTest::Avoiding(m) => !m.matches(p.entries()),
            ClassTest::OddAlternating => is_odd_alternating(p),
        }
    }
}

pub fn is_increasing(p: &Permutation) -> bool {
    p.entries().windows(2).all(|w| w[0] < w[1])
}

pub fn is_decreasing(p: &Permutation) -> bool {
    p.entries().windows(2).all(|w| w[0] > w[1])
}

pub fn is_odd_alternating(p: &Permutation) -> bool {
    let e = p.entries();
    if e.len() <= 1 {
        return true;
    }
    e.len() % 2 == 1 && e.windows(2).enumerate().all(|(i, w)| if i % 2 == 0 { w[0] > w[1] } else { w[0] < w[1] })
}

/// Size of the largest sub-permutation of `host` accepted by `class_test`, or 0.
pub fn gamma(host: &Permutation, class_test: impl Fn(&Permutation) -> bool) -> usize {
    let e = host.entries();
    (1..=e.len() as u32)
        .filter_map(|k| {
            let (lo, hi) = window(e, k)?;
            let pattern = standardize(&e[lo..=hi]).expect("distinct");
            class_test(&pattern).then_some(hi - lo + 1)
        })
        .max()
        .unwrap_or(0)
}

/// Size of the largest decreasing sub-permutation of a 123-avoider whose window
/// is not a prefix of the host; 0 when there is none.
pub fn gamma_u(host: &Permutation) -> Result<usize> {
    let m = PatternMatcher::new(&Permutation::identity(3))?;
    if m.matches(host.entries()) {
        return Err(Error::UnsupportedInput(format!("{host} contains 123")));
    }
    let e = host.entries();
    Ok((1..=e.len() as u32)
        .filter_map(|k| {
            let (lo, hi) = window(e, k)?;
            (lo > 0 && e[lo..=hi].windows(2).all(|w| w[0] > w[1])).then_some(hi - lo + 1)
        })
        .max()
        .unwrap_or(0))
}
