//! Big-integer helpers shared by the counting and probability modules.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn factorial(n: usize) -> BigUint {
    (2..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C(a, b)`, zero when `b > a`.
pub fn binomial(a: usize, b: usize) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// `C(a, b)` with the convention that it vanishes for `b < 0` or `b > a`.
pub fn binomial_signed(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 || b > a {
        BigUint::zero()
    } else {
        binomial(a as usize, b as usize)
    }
}

/// Nearest `f64` to `num / den`, without overflow for huge operands.
pub fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    let negative = num.is_negative() != den.is_negative();
    let (a, b) = (num.magnitude(), den.magnitude());
    // Scale so the integer quotient carries about 64 significant bits.
    let shift = 64 + b.bits() as i64 - a.bits() as i64;
    let q = if shift >= 0 { (a << shift as u64) / b } else { a / (b << (-shift) as u64) };
    let mag = q.to_f64().expect("finite") * 2f64.powi(-shift as i32);
    if negative {
        -mag
    } else {
        mag
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    ratio_to_f64(r.numer(), r.denom())
}

pub fn biguint_ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    ratio_to_f64(&BigInt::from(num.clone()), &BigInt::from(den.clone()))
}

/// Natural logarithm of a positive integer of any size.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "logarithm of zero");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}
