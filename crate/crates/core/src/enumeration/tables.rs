//! Exact coefficient tables.
//!
//! Everything here is integer arithmetic. The convolution recurrences come
//! straight from the functional equations `P = 1 + xP² − 2^j x^{j+1}` and
//! `L = c_m x^j + xL² + 2xL(C − L)`. For long tables the closed forms
//! `(1 − √Q(x)) / 2x` with a trinomial `Q` are expanded through the linear
//! recurrence that `S = √Q` satisfies, `2 Q S' = Q' S`, which costs O(1)
//! big-integer operations per coefficient instead of O(n).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::numeric::binomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Catalan,
    /// 312-avoiders whose largest Av(213) sub-permutation has size at most `j`.
    Pj(usize),
    /// 312-avoiders with at least one odd alternating sub-permutation of size `2m + 1`.
    Lj {
        m: usize,
    },
    /// 312-avoiders with no odd alternating sub-permutation of size `2m + 1`.
    LjComplement {
        m: usize,
    },
    /// 123-avoiders having an increasing sub-permutation of size 2.
    M2,
    /// Dyck paths avoiding `U^{j+2} D`.
    DyckAvoid(usize),
    /// 123-avoiders with `γ^U ≤ j`.
    GammaUBounded(usize),
}

/// Exact coefficients `[x^n]` for `n = 0..=n_max` of one counting series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub family: Family,
    pub coefficients: Vec<BigUint>,
}

impl CoefficientTable {
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.coefficients.get(n)
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// `c_0..=c_{n_max}` via `c_{n+1} = c_n · 2(2n+1) / (n+2)`.
pub fn catalan_table(n_max: usize) -> CoefficientTable {
    let mut c = Vec::with_capacity(n_max + 1);
    let mut cur = BigUint::one();
    for n in 0..=n_max {
        c.push(cur.clone());
        cur = cur * (2 * (2 * n + 1)) / (n + 2);
    }
    CoefficientTable { family: Family::Catalan, coefficients: c }
}

fn to_unsigned(v: Vec<BigInt>) -> Vec<BigUint> {
    v.into_iter().map(|x| x.to_biguint().expect("counting coefficients are non-negative")).collect()
}

fn convolve_at(a: &[BigInt], b: &[BigInt], n: usize) -> BigInt {
    (0..n).map(|i| &a[i] * &b[n - 1 - i]).sum()
}

/// `v_{j,0..=n_max}` by `v_n = Σ_{a+b=n−1} v_a v_b − 2^j [n = j + 1]`.
pub fn pj_coefficients(j: usize, n_max: usize) -> Result<CoefficientTable> {
    if j == 0 {
        return invalid("P_j needs j >= 1");
    }
    let mut v: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    v.push(BigInt::one());
    for n in 1..=n_max {
        let mut x = convolve_at(&v, &v, n);
        if n == j + 1 {
            x -= BigInt::one() << j;
        }
        v.push(x);
    }
    Ok(CoefficientTable { family: Family::Pj(j), coefficients: to_unsigned(v) })
}

/// Counts of 312-avoiders with no Av(213) sub-permutation of size `j`; these are the `P_{j−1}` coefficients.
pub fn no_size_j_caterpillar(j: usize, n_max: usize) -> Result<CoefficientTable> {
    if j < 2 {
        return invalid("needs j >= 2");
    }
    pj_coefficients(j - 1, n_max)
}

/// `l_{0..=n_max}` for `j = 2m+1` by
/// `l_n = c_m [n = j] + 2 Σ c_a l_{n−1−a} − Σ l_a l_{n−1−a}`.
pub fn lj_coefficients(m: usize, n_max: usize) -> CoefficientTable {
    let j = 2 * m + 1;
    let c: Vec<BigInt> = catalan_table(n_max).coefficients.into_iter().map(BigInt::from).collect();
    let cm = BigInt::from(catalan(m));
    let mut l: Vec<BigInt> = vec![BigInt::zero()];
    for n in 1..=n_max {
        let mut x = 2 * convolve_at(&c, &l, n) - convolve_at(&l, &l, n);
        if n == j {
            x += &cm;
        }
        l.push(x);
    }
    CoefficientTable { family: Family::Lj { m }, coefficients: to_unsigned(l) }
}

/// `c_n − l_n`: 312-avoiders without an odd alternating sub-permutation of size `2m+1`.
pub fn lj_complement(m: usize, n_max: usize) -> CoefficientTable {
    let c = catalan_table(n_max).coefficients;
    let l = lj_coefficients(m, n_max).coefficients;
    let coefficients = c.into_iter().zip(l).map(|(c, l)| c - l).collect();
    CoefficientTable { family: Family::LjComplement { m }, coefficients }
}

/// Series `(1 − √(1 − 4x + a x^d)) / 2x`, the closed form shared by `C`, `P_j`
/// (`a = 2^{j+2}, d = j + 2`) and `C − L_{2m+1}` (`a = 4 c_m, d = 2m + 2`).
#[derive(Debug, Clone)]
pub struct RadicalSeries {
    a: BigInt,
    d: usize,
}

impl RadicalSeries {
    pub fn new(a: BigInt, d: usize) -> Self {
        assert!(d >= 2, "degree must exceed the linear term");
        RadicalSeries { a, d }
    }

    pub fn catalan() -> Self {
        RadicalSeries::new(BigInt::zero(), 2)
    }

    pub fn pj(j: usize) -> Self {
        RadicalSeries::new(BigInt::one() << (j + 2), j + 2)
    }

    pub fn lj_complement(m: usize) -> Self {
        RadicalSeries::new(BigInt::from(catalan(m)) * 4, 2 * m + 2)
    }

    /// Coefficients of `√Q` up to `x^{n_max}`:
    /// `2N s_N = 4(2N − 3) s_{N−1} − a (2N − 3d) s_{N−d}`.
    fn sqrt_coefficients(&self, n_max: usize) -> Vec<BigInt> {
        let mut s: Vec<BigInt> = Vec::with_capacity(n_max + 1);
        s.push(BigInt::one());
        for big_n in 1..=n_max {
            let mut acc = &s[big_n - 1] * BigInt::from(4 * (2 * big_n as i64 - 3));
            if big_n >= self.d && !self.a.is_zero() {
                let w = 2 * big_n as i64 - 3 * self.d as i64;
                acc -= &self.a * &s[big_n - self.d] * w;
            }
            let (q, r) = acc.div_rem(&BigInt::from(2 * big_n));
            debug_assert!(r.is_zero(), "square-root coefficients are integral");
            s.push(q);
        }
        s
    }

    pub fn coefficients(&self, n_max: usize) -> Vec<BigUint> {
        let s = self.sqrt_coefficients(n_max + 1);
        s.into_iter()
            .skip(1)
            .map(|x| {
                let (q, r) = (-x).div_rem(&BigInt::from(2));
                debug_assert!(r.is_zero());
                q.to_biguint().expect("non-negative")
            })
            .collect()
    }

    pub fn coefficient(&self, n: usize) -> BigUint {
        self.coefficients(n).pop().expect("non-empty")
    }
}

/// `a_n = 3 (2n − 4)! / ((n − 3)! n!)`: 123-avoiders with an increasing sub-permutation of size 2.
pub fn m2_count(n: usize) -> Result<BigUint> {
    if n < 3 {
        return invalid("m2_count needs n >= 3");
    }
    let f = crate::numeric::factorial;
    Ok(f(2 * n - 4) * 3u32 / (f(n - 3) * f(n)))
}

/// `(a_n, b_n)` with `b_n = c_n − a_n`.
pub fn increasing_split(n: usize) -> Result<(BigUint, BigUint)> {
    let a = m2_count(n)?;
    let b = catalan(n) - &a;
    Ok((a, b))
}
