//! Two-line drawing of 123-avoiders.
//!
//! Every entry sits on the lower line `D` or the upper line `U`; an entry is on
//! `U` exactly when it lies right of and above some entry of `D`. Equivalently
//! `D` is the set of left-to-right minima.

use super::{PatternMatcher, Permutation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLineRepr {
    pub lines: Vec<Line>,
    /// Generating-tree label: `D`-entries below the rightmost `U`-entry, or
    /// `|D|` when `U` is empty.
    pub l: usize,
    /// `U`-entries covering the rightmost `D`-entry.
    pub v: usize,
}

impl TwoLineRepr {
    pub fn upper_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.lines.iter().enumerate().filter(|(_, &l)| l == Line::Upper).map(|(i, _)| i)
    }
}

pub fn two_line(host: &Permutation) -> Result<TwoLineRepr> {
    let e = host.entries();
    if PatternMatcher::new(&Permutation::identity(3))?.matches(e) {
        return Err(Error::UnsupportedInput(format!("{host} contains 123")));
    }
    let mut lines = Vec::with_capacity(e.len());
    let mut min = u32::MAX;
    for &x in e {
        if x < min {
            min = x;
            lines.push(Line::Lower);
        } else {
            lines.push(Line::Upper);
        }
    }
    let lower_values = || e.iter().zip(&lines).filter(|(_, &l)| l == Line::Lower).map(|(&x, _)| x);
    let l = match lines.iter().rposition(|&l| l == Line::Upper) {
        Some(i) => lower_values().filter(|&x| x < e[i]).count(),
        None => lower_values().count(),
    };
    let v = match lines.iter().rposition(|&l| l == Line::Lower) {
        Some(d) => lines[d + 1..].iter().filter(|&&l| l == Line::Upper).count(),
        None => 0,
    };
    Ok(TwoLineRepr { lines, l, v })
}

/// Appends a new rightmost entry of rank `rank` (1..=n+1), shifting larger entries up.
pub fn append_right(host: &Permutation, rank: u32) -> Permutation {
    debug_assert!(rank >= 1 && rank as usize <= host.len() + 1);
    let mut e: Vec<u32> = host.entries().iter().map(|&x| if x >= rank { x + 1 } else { x }).collect();
    e.push(rank);
    Permutation::from_vec_unchecked(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_class;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn figure_three_host() {
        let host = p("11 10 8 7 9 4 3 6 5 2 1");
        let t = two_line(&host).unwrap();
        let upper: Vec<u32> = t.upper_positions().map(|i| host.entries()[i]).collect();
        assert_eq!(upper, vec![9, 6, 5]);
        assert_eq!(t.v, 0);
    }

    #[test]
    fn small_examples() {
        let t = two_line(&p("1")).unwrap();
        assert_eq!(t.lines, vec![Line::Lower]);
        assert_eq!(t.l, 1);
        assert_eq!(two_line(&p("4 5 2 3 1")).unwrap().l, 2);
        assert_eq!(two_line(&Permutation::empty()).unwrap().l, 0);
        assert!(two_line(&p("2 3 4 1")).is_err());
    }

    #[test]
    fn covering_rule() {
        for n in 1..=8 {
            for host in enumerate_class(n, Some(&p("1 2 3"))).unwrap() {
                let t = two_line(&host).unwrap();
                let e = host.entries();
                for (i, &line) in t.lines.iter().enumerate() {
                    let covers = (0..i).any(|j| t.lines[j] == Line::Lower && e[j] < e[i]);
                    assert_eq!(line == Line::Upper, covers, "{host} at {i}");
                }
            }
        }
    }

    // Right-entry insertion realizes (l) -> (1), (2), ..., (l+1).
    #[test]
    fn succession_rule() {
        let avoid = p("1 2 3");
        let m = PatternMatcher::new(&avoid).unwrap();
        for n in 0..=7 {
            for host in enumerate_class(n, Some(&avoid)).unwrap() {
                let l = two_line(&host).unwrap().l;
                let mut labels: Vec<usize> = (1..=n as u32 + 1)
                    .map(|r| append_right(&host, r))
                    .filter(|c| !m.matches(c.entries()))
                    .map(|c| two_line(&c).unwrap().l)
                    .collect();
                labels.sort_unstable();
                assert_eq!(labels, (1..=l + 1).collect::<Vec<_>>(), "{host}");
            }
        }
    }

    // Non-trivial decreasing sub-permutations lie on U, trivial ones are prefixes on D.
    #[test]
    fn decreasing_sub_permutations_by_line() {
        for n in 1..=8 {
            for host in enumerate_class(n, Some(&p("1 2 3"))).unwrap() {
                let t = two_line(&host).unwrap();
                for sp in crate::perm::all_sub_permutations(&host) {
                    if !crate::perm::is_decreasing(&sp.pattern) {
                        continue;
                    }
                    let want = if sp.is_prefix() { Line::Lower } else { Line::Upper };
                    assert!(t.lines[sp.lo..=sp.hi].iter().all(|&l| l == want), "{host}");
                }
            }
        }
    }
}
