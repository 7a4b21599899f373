//! Exhaustive cross-checks between the fast routines and brute force.
//!
//! Each check walks every object up to `min(ceiling, cap)`, where the cap keeps
//! the cost of that particular check reasonable. A check that covers no size at
//! the requested ceiling is left out of the report.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;

use crate::enumeration::{dyck_avoiding_count, gamma_u_bounded_count, lj_complement, m2_count, pj_coefficients};
use crate::error::{invalid, Error, Result};
use crate::perm::{
    all_sub_permutations, append_right, enumerate_class_bounded, gamma, gamma_u, is_increasing, is_odd_alternating,
    naive_contains, standardize, two_line, ClassIter, PatternMatcher, Permutation,
};
use crate::probability::{not_av_213_2_closed_form, not_av_213_2_count, subperm_size_law};
use crate::trees::{
    all_increasing_trees, all_planar_trees, is_caterpillar, max_subtree_size, phi, phi_inverse, psi, psi_inverse,
    subtree_at,
};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub group: &'static str,
    /// Largest size covered.
    pub n_max: usize,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAIL" };
        write!(f, "{status} {} n<={} {}/{} passed", self.name, self.n_max, self.cases - self.failures, self.cases)?;
        if let Some(d) = &self.first_failure {
            write!(f, " (first failure: {d})")?;
        }
        Ok(())
    }
}

struct Tally {
    cases: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: 0, first: None }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(detail());
            }
        }
    }
}

type CheckFn = fn(usize, &mut Tally) -> Result<()>;

struct Check {
    name: &'static str,
    group: &'static str,
    /// Smallest size the check looks at.
    n_min: usize,
    cap: usize,
    run: CheckFn,
}

const CHECKS: &[Check] = &[
    Check { name: "phi-round-trip", group: "bijections", n_min: 1, cap: 8, run: phi_round_trip },
    Check { name: "psi-round-trip", group: "bijections", n_min: 1, cap: 8, run: psi_round_trip },
    Check { name: "subtree-commutes", group: "bijections", n_min: 1, cap: 8, run: subtree_commutes },
    Check { name: "caterpillar-gamma", group: "bijections", n_min: 1, cap: 8, run: caterpillar_gamma },
    Check { name: "pj-table", group: "counts", n_min: 1, cap: 10, run: pj_table },
    Check { name: "lj-complement-table", group: "counts", n_min: 1, cap: 10, run: lj_table },
    Check { name: "m2-table", group: "counts", n_min: 3, cap: 10, run: m2_table },
    Check { name: "gamma-u-dyck", group: "counts", n_min: 1, cap: 12, run: gamma_u_dyck },
    Check { name: "av213-2-count", group: "counts", n_min: 3, cap: 10, run: av213_2 },
    Check { name: "two-line-rule", group: "structure", n_min: 1, cap: 8, run: two_line_rule },
    Check { name: "size-law", group: "structure", n_min: 2, cap: 8, run: size_law },
    Check { name: "pattern-search", group: "structure", n_min: 1, cap: 7, run: pattern_search },
];

pub const GROUPS: &[&str] = &["all", "bijections", "counts", "structure"];

/// Names of all checks, in report order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

/// Runs the checks selected by `selection` (a group name, a check name or "all")
/// at sizes up to `ceiling`. Ceilings above `max_ceiling` are refused.
pub fn run_suite(selection: &str, ceiling: usize, max_ceiling: usize) -> Result<Vec<CheckReport>> {
    if ceiling > max_ceiling {
        return Err(Error::ResourceLimit(format!(
            "oracle ceiling {ceiling} exceeds the configured maximum {max_ceiling}"
        )));
    }
    let chosen: Vec<&Check> =
        CHECKS.iter().filter(|c| selection == "all" || c.group == selection || c.name == selection).collect();
    if chosen.is_empty() {
        return invalid(format!("unknown check or group {selection:?}"));
    }
    let mut out = Vec::new();
    for c in chosen {
        let n_max = ceiling.min(c.cap);
        if n_max < c.n_min {
            continue;
        }
        let mut t = Tally::new();
        (c.run)(n_max, &mut t)?;
        out.push(CheckReport {
            name: c.name,
            group: c.group,
            n_max,
            cases: t.cases,
            failures: t.failures,
            first_failure: t.first,
        });
    }
    Ok(out)
}

fn class(n: usize, avoided: &str) -> Result<ClassIter> {
    enumerate_class_bounded(n, Some(&avoided.parse()?), n)
}

fn everything(n: usize) -> Result<ClassIter> {
    enumerate_class_bounded(n, None, n)
}

fn phi_round_trip(n_max: usize, t: &mut Tally) -> Result<()> {
    for n in 1..=n_max {
        for p in everything(n)? {
            let back = phi(&phi_inverse(&p)?)?;
            t.check(back == p, || format!("phi(phi^-1({p})) = {back}"));
        }
        let trees = all_increasing_trees(n);
        let images: HashSet<Permutation> = trees.iter().map(phi).collect::<Result<_>>()?;
        t.check(images.len() == trees.len() && trees.len() == (1..=n).product::<usize>(), || {
            format!("phi on {} trees of size {n} gives {} images", trees.len(), images.len())
        });
    }
    Ok(())
}

fn psi_round_trip(n_max: usize, t: &mut Tally) -> Result<()> {
    let p312 = "3 1 2".parse()?;
    for n in 1..=n_max {
        for p in class(n, "3 1 2")? {
            let back = psi(&psi_inverse(&p)?)?;
            t.check(back == p, || format!("psi(psi^-1({p})) = {back}"));
        }
        let trees = all_planar_trees(n);
        let images: HashSet<Permutation> = trees.iter().map(psi).collect::<Result<_>>()?;
        let avoiding = images.iter().all(|p| !p.contains(&p312).unwrap_or(true));
        let count = BigUint::from(class(n, "3 1 2")?.count());
        t.check(avoiding && images.len() == trees.len() && BigUint::from(images.len()) == count, || {
            format!("psi on {} trees of size {n} gives {} images", trees.len(), images.len())
        });
    }
    Ok(())
}

fn subtree_commutes(n_max: usize, t: &mut Tally) -> Result<()> {
    for n in 1..=n_max {
        for p in everything(n)? {
            let tree = phi_inverse(&p)?;
            for s in all_sub_permutations(&p) {
                let image = phi(&subtree_at(&tree, s.generator)?)?;
                let size = tree.descendant_count(s.generator)?;
                t.check(image == s.pattern && size == s.len(), || {
                    format!("host {p}, label {}: subtree gives {image}", s.generator)
                });
            }
        }
    }
    Ok(())
}

fn caterpillar_gamma(n_max: usize, t: &mut Tally) -> Result<()> {
    let m213 = PatternMatcher::new(&"2 1 3".parse()?)?;
    for n in 1..=n_max {
        for p in class(n, "3 1 2")? {
            let g = gamma(&p, |q| !m213.matches(q.entries()));
            let tree = psi_inverse(&p)?;
            let c = max_subtree_size(&tree, |s| is_caterpillar(s).unwrap_or(false))?;
            t.check(g == c, || format!("{p}: gamma {g}, caterpillar {c}"));
        }
    }
    Ok(())
}

fn pj_table(n_max: usize, t: &mut Tally) -> Result<()> {
    let m213 = PatternMatcher::new(&"2 1 3".parse()?)?;
    let tables: Vec<_> = (1..=5).map(|j| pj_coefficients(j, n_max)).collect::<Result<_>>()?;
    for n in 1..=n_max {
        let gammas: Vec<usize> = class(n, "3 1 2")?.map(|p| gamma(&p, |q| !m213.matches(q.entries()))).collect();
        for (j, table) in (1..=5).zip(&tables) {
            let brute = BigUint::from(gammas.iter().filter(|&&g| g <= j).count());
            let v = &table.coefficients[n];
            t.check(&brute == v, || format!("v_{{{j},{n}}} = {v}, exhaustive {brute}"));
        }
    }
    Ok(())
}

fn lj_table(n_max: usize, t: &mut Tally) -> Result<()> {
    for m in 0..=2 {
        let size = 2 * m + 1;
        let table = lj_complement(m, n_max);
        for n in 1..=n_max {
            let brute = class(n, "3 1 2")?
                .filter(|p| !all_sub_permutations(p).iter().any(|s| s.len() == size && is_odd_alternating(&s.pattern)))
                .count();
            let v = &table.coefficients[n];
            t.check(BigUint::from(brute) == *v, || format!("m={m} n={n}: table {v}, exhaustive {brute}"));
        }
    }
    Ok(())
}

fn m2_table(n_max: usize, t: &mut Tally) -> Result<()> {
    let p231: Permutation = "2 3 1".parse()?;
    for n in 3..=n_max {
        let mut head = 0usize;
        let mut pair = 0usize;
        for p in class(n, "1 2 3")? {
            if standardize(&p.entries()[..3])? == p231 {
                head += 1;
            }
            if gamma(&p, is_increasing) == 2 {
                pair += 1;
            }
        }
        let a = m2_count(n)?;
        t.check(BigUint::from(head) == a && BigUint::from(pair) == a, || {
            format!("a_{n} = {a}, first-three 231: {head}, increasing pair: {pair}")
        });
    }
    Ok(())
}

fn gamma_u_dyck(n_max: usize, t: &mut Tally) -> Result<()> {
    for n in 1..=n_max {
        let stats: Vec<usize> = class(n, "1 2 3")?.map(|p| gamma_u(&p)).collect::<Result<_>>()?;
        for j in 1..=4 {
            let brute = BigUint::from(stats.iter().filter(|&&g| g <= j).count());
            let tree = gamma_u_bounded_count(n, j);
            let dyck = dyck_avoiding_count(n, j);
            t.check(brute == tree && tree == dyck, || {
                format!("n={n} j={j}: exhaustive {brute}, generating tree {tree}, Dyck {dyck}")
            });
        }
    }
    Ok(())
}

fn av213_2(n_max: usize, t: &mut Tally) -> Result<()> {
    let m = PatternMatcher::new(&"2 1 3".parse()?)?;
    for n in 3..=n_max {
        let mut brute = 0u64;
        for p in everything(n)? {
            let s = p.sub_permutation(2)?;
            if !m.matches(&p.entries()[s.lo..=s.hi]) && m.matches(p.entries()) {
                brute += 1;
            }
        }
        let closed = not_av_213_2_closed_form(n)?;
        let cases = not_av_213_2_count(n)?.total();
        t.check(BigUint::from(brute) == closed && closed == cases, || {
            format!("n={n}: exhaustive {brute}, closed form {closed}, case sum {cases}")
        });
    }
    Ok(())
}

fn two_line_rule(n_max: usize, t: &mut Tally) -> Result<()> {
    let m123 = PatternMatcher::new(&Permutation::identity(3))?;
    for n in 0..n_max {
        for p in class(n, "1 2 3")? {
            let l = two_line(&p)?.l;
            let mut labels: Vec<usize> = (1..=n as u32 + 1)
                .map(|r| append_right(&p, r))
                .filter(|c| !m123.matches(c.entries()))
                .map(|c| two_line(&c).map(|r| r.l))
                .collect::<Result<_>>()?;
            labels.sort_unstable();
            t.check(labels == (1..=l + 1).collect::<Vec<_>>(), || format!("{p} (l={l}) -> {labels:?}"));
        }
    }
    Ok(())
}

fn size_law(n_max: usize, t: &mut Tally) -> Result<()> {
    for n in 2..=n_max {
        let all: Vec<Permutation> = everything(n)?.collect();
        for k in 1..=n {
            let mut freq = vec![0u64; n + 1];
            for p in &all {
                freq[p.sub_permutation(k as u32)?.len()] += 1;
            }
            let law = subperm_size_law(n, k)?;
            let total = all.len() as u64;
            for (m, &f) in freq.iter().enumerate().skip(1) {
                let expected = law.mass(m) * num_bigint::BigInt::from(total);
                t.check(expected == num_rational::BigRational::from_integer(f.into()), || {
                    format!("n={n} k={k} m={m}: {f} of {total}")
                });
            }
        }
    }
    Ok(())
}

fn pattern_search(n_max: usize, t: &mut Tally) -> Result<()> {
    let patterns: Vec<Permutation> = (1..=4).flat_map(|len| everything(len).expect("small")).collect();
    let matchers: Vec<PatternMatcher> = patterns.iter().map(PatternMatcher::new).collect::<Result<_>>()?;
    for n in 1..=n_max {
        for text in everything(n)? {
            for (p, m) in patterns.iter().zip(&matchers) {
                let fast = m.matches(text.entries());
                let slow = naive_contains(text.entries(), p.entries());
                t.check(fast == slow, || format!("text {text}, pattern {p}: {fast} vs {slow}"));
            }
        }
    }
    Ok(())
}
