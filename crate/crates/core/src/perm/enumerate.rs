//! Exhaustive generators used as oracles.

use super::{PatternMatcher, Permutation};
use crate::error::{invalid, Error, Result};

/// Largest size `enumerate_class` accepts unless a ceiling is passed explicitly.
pub const DEFAULT_ORACLE_CEILING: usize = 11;

/// All permutations of size `n` in lexicographic order (no ceiling).
pub fn all_permutations(n: usize) -> ClassIter {
    ClassIter::new(n, None)
}

/// Permutations of size `n`, optionally avoiding `avoided`, in lexicographic order.
pub fn enumerate_class(n: usize, avoided: Option<&Permutation>) -> Result<ClassIter> {
    enumerate_class_bounded(n, avoided, DEFAULT_ORACLE_CEILING)
}

pub fn enumerate_class_bounded(n: usize, avoided: Option<&Permutation>, ceiling: usize) -> Result<ClassIter> {
    if n > ceiling {
        return Err(Error::ResourceLimit(format!("size {n} exceeds oracle ceiling {ceiling}")));
    }
    let matcher = avoided.map(PatternMatcher::new).transpose()?;
    Ok(ClassIter::new(n, matcher))
}

/// Depth-first, lexicographic walk over prefixes. A prefix that already
/// contains the avoided pattern is pruned, since containment is inherited by
/// every completion.
#[derive(Debug, Clone)]
pub struct ClassIter {
    n: usize,
    matcher: Option<PatternMatcher>,
    prefix: Vec<u32>,
    used: Vec<bool>,
    floor: usize,
    // Smallest value to try next at depth `prefix.len()`.
    next: u32,
    done: bool,
}

impl ClassIter {
    fn new(n: usize, matcher: Option<PatternMatcher>) -> Self {
        ClassIter {
            n,
            matcher,
            prefix: Vec::with_capacity(n),
            used: vec![false; n + 1],
            floor: 0,
            next: 1,
            done: false,
        }
    }

    /// Restricts the walk to completions of `prefix`. Independent iterators over
    /// distinct prefixes partition the class, so callers can split work this way.
    pub fn with_prefix(mut self, prefix: &[u32]) -> Result<Self> {
        for &v in prefix {
            if v == 0 || v as usize > self.n || self.used[v as usize] {
                return invalid(format!("prefix value {v} invalid for size {}", self.n));
            }
            self.used[v as usize] = true;
            self.prefix.push(v);
        }
        if let Some(m) = &self.matcher {
            if m.matches(&self.prefix) {
                self.done = true;
            }
        }
        self.floor = prefix.len();
        Ok(self)
    }

    fn accepts(&self) -> bool {
        self.matcher.as_ref().is_none_or(|m| !m.matches(&self.prefix))
    }
}

impl Iterator for ClassIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        loop {
            if self.prefix.len() == self.n {
                let out = Permutation::from_vec_unchecked(self.prefix.clone());
                self.backtrack();
                return Some(out);
            }
            let candidate = (self.next..=self.n as u32).find(|&v| !self.used[v as usize]);
            match candidate {
                Some(v) => {
                    self.prefix.push(v);
                    self.used[v as usize] = true;
                    if self.accepts() {
                        self.next = 1;
                    } else {
                        self.prefix.pop();
                        self.used[v as usize] = false;
                        self.next = v + 1;
                    }
                }
                None => {
                    if !self.backtrack() {
                        return None;
                    }
                }
            }
        }
    }
}

impl ClassIter {
    // Pops the last value and arranges to try its successor. False when exhausted.
    fn backtrack(&mut self) -> bool {
        if self.prefix.len() <= self.floor {
            self.done = true;
            return false;
        }
        let v = self.prefix.pop().expect("non-empty");
        self.used[v as usize] = false;
        self.next = v + 1;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(all_permutations(0).collect::<Vec<_>>(), vec![Permutation::empty()]);
        assert_eq!(all_permutations(5).count(), 120);
        assert_eq!(enumerate_class(4, Some(&p("3 1 2"))).unwrap().count(), 14);
        assert_eq!(enumerate_class(7, Some(&p("1 2 3"))).unwrap().count(), 429);
        assert_eq!(enumerate_class(0, Some(&p("1 2 3"))).unwrap().count(), 1);
    }

    #[test]
    fn lexicographic_and_distinct() {
        let all: Vec<_> = all_permutations(5).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let av: Vec<_> = enumerate_class(6, Some(&p("2 1 3"))).unwrap().collect();
        assert!(av.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(av.len(), 132);
    }

    #[test]
    fn ceiling() {
        assert!(matches!(enumerate_class(12, None), Err(Error::ResourceLimit(_))));
        assert!(enumerate_class_bounded(12, None, 12).is_ok());
    }

    #[test]
    fn prefixes_partition_the_class() {
        let pat = p("1 3 2");
        let whole: Vec<_> = enumerate_class(6, Some(&pat)).unwrap().collect();
        let mut parts = Vec::new();
        for first in 1..=6 {
            let it = enumerate_class(6, Some(&pat)).unwrap().with_prefix(&[first]).unwrap();
            parts.extend(it);
        }
        assert_eq!(whole, parts);
        assert!(enumerate_class(3, None).unwrap().with_prefix(&[4]).is_err());
    }
}
