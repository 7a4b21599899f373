//! Dominant roots and coefficient asymptotics for the series
//! `(1 − √(1 − 4x + A x^D)) / 2x`, and the exact mean of the largest
//! Av(213) sub-permutation of a random 312-avoider.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::tables::{catalan, RadicalSeries};
use crate::error::{invalid, Error, Result};
use crate::numeric::{biguint_ratio_to_f64, ln_biguint};

/// Which trinomial `1 − 4x + A x^D` a root belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootFamily {
    /// `ρ_j`: `A = 2^{j+2}`, `D = j + 2`.
    Pj(usize),
    /// `a_m`: `A = 4 c_m`, `D = 2m + 2` (no odd alternating sub-permutation of size `2m + 1`).
    AlternatingFree(usize),
    /// `b_m = ρ_{2m}` (no Av(213) sub-permutation of size `2m + 1`).
    CaterpillarFree(usize),
}

impl RootFamily {
    pub fn index(self) -> usize {
        match self {
            RootFamily::Pj(i) | RootFamily::AlternatingFree(i) | RootFamily::CaterpillarFree(i) => i,
        }
    }

    /// `(ln A, D)`.
    fn trinomial(self) -> (f64, usize) {
        match self {
            RootFamily::Pj(j) => ((j + 2) as f64 * std::f64::consts::LN_2, j + 2),
            RootFamily::CaterpillarFree(m) => RootFamily::Pj(2 * m).trinomial(),
            RootFamily::AlternatingFree(m) => (ln_biguint(&(catalan(m) * 4u32)), 2 * m + 2),
        }
    }

    /// The matching exact series.
    pub fn series(self) -> RadicalSeries {
        match self {
            RootFamily::Pj(j) => RadicalSeries::pj(j),
            RootFamily::CaterpillarFree(m) => RadicalSeries::pj(2 * m),
            RootFamily::AlternatingFree(m) => RadicalSeries::lj_complement(m),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParams {
    pub family: RootFamily,
    pub index: usize,
    pub root: f64,
    /// `1 / root`, the exponential growth rate of the coefficients.
    pub growth_constant: f64,
    /// `|1 − 4ρ + A ρ^D|`.
    pub residual: f64,
}

const BRACKET: (f64, f64) = (0.25, 0.4);

/// Smallest positive root of the family's trinomial. The trinomial is convex on
/// `x > 0` and positive at 1/4, so a sign change on (1/4, 2/5) isolates it.
pub fn dominant_root(family: RootFamily) -> Result<AsymptoticParams> {
    if family.index() == 0 {
        return invalid("root index must be at least 1");
    }
    let (ln_a, d) = family.trinomial();
    let df = d as f64;
    let f = |x: f64| 1.0 - 4.0 * x + (ln_a + df * x.ln()).exp();
    let fprime = |x: f64| -4.0 + df * (ln_a + (df - 1.0) * x.ln()).exp();

    let (mut lo, mut hi) = BRACKET;
    if !(f(lo) > 0.0 && f(hi) < 0.0) {
        return Err(Error::NumericFailure(format!("no sign change on ({lo}, {hi}) for {family:?}")));
    }
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let step = f(x) / fprime(x);
        if !step.is_finite() {
            break;
        }
        let next = x - step;
        if next <= BRACKET.0 || next >= BRACKET.1 {
            break;
        }
        x = next;
    }
    let residual = f(x).abs();
    if residual >= 1e-12 {
        return Err(Error::NumericFailure(format!("residual {residual:e} at {x} for {family:?}")));
    }
    Ok(AsymptoticParams { family, index: family.index(), root: x, growth_constant: 1.0 / x, residual })
}

/// `ln` of `(1/4) √((4ρ − D A ρ^D) / (π n³)) ρ^{−(n+1)}`.
pub fn ln_asymptotic_coefficient(params: &AsymptoticParams, n: usize) -> f64 {
    let (ln_a, d) = params.family.trinomial();
    let rho = params.root;
    let nf = n as f64;
    let radicand = 4.0 * rho - d as f64 * (ln_a + d as f64 * rho.ln()).exp();
    -4f64.ln() + 0.5 * (radicand.ln() - std::f64::consts::PI.ln() - 3.0 * nf.ln()) - (nf + 1.0) * rho.ln()
}

/// The estimate itself; overflows to infinity for large `n`, where the log form is needed.
pub fn asymptotic_coefficient(params: &AsymptoticParams, n: usize) -> f64 {
    ln_asymptotic_coefficient(params, n).exp()
}

/// `estimate / exact − 1` for the `n`-th coefficient of the family's series.
pub fn asymptotic_relative_error(params: &AsymptoticParams, n: usize) -> f64 {
    let exact = params.family.series().coefficient(n);
    (ln_asymptotic_coefficient(params, n) - ln_biguint(&exact)).exp_m1()
}

/// Numerator and denominator of the caterpillar-free / alternating-free ratio:
/// `[x^n] P_{2m}` over `[x^n] (C − L_{2m+1})`.
pub fn exact_ratio_parts(m: usize, n: usize) -> (BigUint, BigUint) {
    (RadicalSeries::pj(2 * m).coefficient(n), RadicalSeries::lj_complement(m).coefficient(n))
}

pub fn exact_ratio(m: usize, n: usize) -> f64 {
    let (num, den) = exact_ratio_parts(m, n);
    biguint_ratio_to_f64(&num, &den)
}

/// `(−1 + 4^{−(m+1)}) / (−1 + c_m 4^{−(2m+1)})`, the large-`m` estimate of `a_m / b_m`.
pub fn root_ratio_estimate(m: usize) -> f64 {
    let cm = catalan(m);
    let tail = (ln_biguint(&cm) - (2 * m + 1) as f64 * 4f64.ln()).exp();
    (-1.0 + 0.25f64.powi(m as i32 + 1)) / (-1.0 + tail)
}

/// `k_m · (root_ratio_estimate(m))^{n+1}`.
pub fn ratio_estimate(m: usize, n: usize, k_m: f64) -> f64 {
    k_m * root_ratio_estimate(m).powf(n as f64 + 1.0)
}

/// `a_m / b_m` from the two dominant roots.
pub fn root_ratio(m: usize) -> Result<f64> {
    let a = dominant_root(RootFamily::AlternatingFree(m))?;
    let b = dominant_root(RootFamily::CaterpillarFree(m))?;
    Ok(a.root / b.root)
}

/// Exact mean of the largest Av(213) sub-permutation size over `Av_n(312)`:
/// `1 + Σ_{j=1}^{n−1} (c_n − v_{j,n}) / c_n`.
pub fn expected_gamma(n: usize) -> Result<BigRational> {
    if n == 0 {
        return invalid("expected_gamma needs n >= 1");
    }
    let cn = catalan(n);
    let mut tail = BigUint::zero();
    for j in 1..n {
        tail += &cn - RadicalSeries::pj(j).coefficient(n);
    }
    let one = BigRational::one();
    Ok(one + BigRational::new(tail.into(), cn.into()))
}
