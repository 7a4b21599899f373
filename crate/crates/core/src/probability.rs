//! Exact and approximate probabilities for pattern presence in sub-permutations.
//!
//! `Av(σ; k)` is the set of permutations `π` such that `σ ≺ π` implies
//! `σ ≺ g_π(k)`. The quantities here are about its complement: `σ` occurs in
//! `π` but not in the sub-permutation generated by `k`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::enumeration::catalan;
use crate::error::{invalid, Error, Result};
use crate::numeric::{binomial, binomial_signed, factorial, rational_to_f64};
use crate::perm::{enumerate_class_bounded, window, PatternMatcher, Permutation};

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Exact law of `|g_π(k)|` for a uniform random `π` of size `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeDistribution {
    pub n: usize,
    pub k: usize,
    /// `masses[m - 1] = P(|g_π(k)| = m)`.
    masses: Vec<BigRational>,
}

impl SizeDistribution {
    pub fn mass(&self, m: usize) -> BigRational {
        if m == 0 {
            return BigRational::zero();
        }
        self.masses.get(m - 1).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `(m, P(|g_π(k)| = m))` for `m = 1..=n`.
    pub fn masses(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.masses.iter().enumerate().map(|(i, p)| (i + 1, p))
    }

    pub fn total(&self) -> BigRational {
        self.masses.iter().sum()
    }

    pub fn mean(&self) -> BigRational {
        self.masses().map(|(m, p)| p * BigInt::from(m)).sum()
    }

    pub fn variance(&self) -> BigRational {
        let second: BigRational = self.masses().map(|(m, p)| p * BigInt::from(m * m)).sum();
        let mean = self.mean();
        second - &mean * &mean
    }
}

/// `(2n − k + 1) / (k + 1)`.
pub fn expected_size(n: usize, k: usize) -> BigRational {
    ratio(2 * n + 1 - k, k + 1)
}

/// `2(n + 1)(k − 1)(n − k) / ((k + 1)²(k + 2))`.
pub fn size_variance(n: usize, k: usize) -> BigRational {
    ratio(2 * (n + 1) * (k - 1) * (n - k), (k + 1) * (k + 1) * (k + 2))
}

/// `P(|g_π(k)| = m) = k m C(n−m−1, k−2) / (n C(n−1, k−1))`; `k = 1` is the point mass at `n`.
pub fn subperm_size_law(n: usize, k: usize) -> Result<SizeDistribution> {
    if k == 0 || k > n {
        return invalid(format!("need 1 <= k <= n, got n={n} k={k}"));
    }
    let mut masses = vec![BigRational::zero(); n];
    if k == 1 {
        masses[n - 1] = BigRational::one();
    } else {
        let den = BigInt::from(binomial(n - 1, k - 1) * n);
        for m in 1..=n - k + 1 {
            let num = binomial(n - m - 1, k - 2) * (k * m);
            masses[m - 1] = BigRational::new(num.into(), den.clone());
        }
    }
    Ok(SizeDistribution { n, k, masses })
}

/// `|S_n \ Av_n(213; 2)|` split by the position of 2 relative to 1 and by the
/// sub-permutation generated by the smallest entry outside `{1} ∪ s_π(2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcludedCount {
    pub n: usize,
    /// 2 left of 1, and some entry other than 1 lies outside the window of 2.
    pub two_left_of_one: BigUint,
    /// 2 right of 1, and the other sub-permutation contains 213.
    pub right_other_contains: BigUint,
    /// 2 right of 1, the other sub-permutation avoids 213, and 213 still occurs.
    pub right_other_avoids: BigUint,
}

impl ExcludedCount {
    pub fn total(&self) -> BigUint {
        &self.two_left_of_one + &self.right_other_contains + &self.right_other_avoids
    }

    /// `|Av_n(213; 2)| = n! − total`.
    pub fn complement(&self) -> BigUint {
        factorial(self.n) - self.total()
    }
}

pub fn not_av_213_2_count(n: usize) -> Result<ExcludedCount> {
    if n < 3 {
        return invalid("not_av_213_2_count needs n >= 3");
    }
    let c = |i: usize| catalan(i);
    let f = |i: usize| factorial(i);
    let mut left = BigUint::zero();
    let mut contains = BigUint::zero();
    let mut avoids = BigUint::zero();
    for i in 1..=n - 2 {
        let choose = binomial(n - 2, i - 1);
        let rest = n - i - 1;
        left += c(i) * f(rest) * &choose;
        if i + 4 <= n {
            contains += c(i) * (f(rest) - c(rest)) * &choose;
        }
        avoids += c(i) * c(rest) * (&choose - 1u32);
    }
    Ok(ExcludedCount { n, two_left_of_one: left, right_other_contains: contains, right_other_avoids: avoids })
}

/// The closed form `2(n−2)! Σ_{i=1}^{n−4} c_i/(i−1)! + 2(n−2)(n−3)c_{n−3} + 2(n−2)c_{n−2} − c_n + 2c_{n−1}`.
pub fn not_av_213_2_closed_form(n: usize) -> Result<BigUint> {
    if n < 3 {
        return invalid("not_av_213_2_closed_form needs n >= 3");
    }
    let mut sum = BigRational::zero();
    for i in 1..=n.saturating_sub(4) {
        sum += ratio(catalan(i), factorial(i - 1));
    }
    let head = sum * BigInt::from(factorial(n - 2) * 2u32);
    debug_assert!(head.is_integer());
    let mut total = head.to_integer();
    total += BigInt::from(catalan(n - 3) * (2 * (n - 2) * (n - 3)));
    total += BigInt::from(catalan(n - 2) * (2 * (n - 2)));
    total -= BigInt::from(catalan(n));
    total += BigInt::from(catalan(n - 1) * 2u32);
    total.to_biguint().ok_or_else(|| Error::NumericFailure("negative count".into()))
}

/// Number of `π ∈ S_n` with `σ ≺ π` and `σ ⊀ g_π(k)`, by exhaustion.
pub fn count_not_avsk_exhaustive(n: usize, sigma: &Permutation, k: usize, ceiling: usize) -> Result<u64> {
    if k == 0 || k > n {
        return invalid(format!("need 1 <= k <= n, got n={n} k={k}"));
    }
    let matcher = PatternMatcher::new(sigma)?;
    let mut count = 0;
    for pi in enumerate_class_bounded(n, None, ceiling)? {
        let (lo, hi) = window(pi.entries(), k as u32).expect("k in range");
        if !matcher.matches(&pi.entries()[lo..=hi]) && matcher.matches(pi.entries()) {
            count += 1;
        }
    }
    Ok(count)
}

/// Exact partial sum `Σ_{i=1}^{terms} c_i / (i−1)!`.
pub fn h_partial(terms: usize) -> BigRational {
    (1..=terms).map(|i| ratio(catalan(i), factorial(i - 1))).sum()
}

pub fn h_constant(terms: usize) -> f64 {
    rational_to_f64(&h_partial(terms))
}

/// Where a term of an [`AvoidanceSequence`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Counted by exhaustive enumeration.
    Oracle,
    /// Closed form (Catalan numbers for patterns of length 3).
    Formula,
    UserSupplied,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Oracle => "oracle",
            Provenance::Formula => "formula",
            Provenance::UserSupplied => "user-supplied",
        })
    }
}

/// `|Av_i(σ)|` for `i = 1..=len`, each term tagged with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoidanceSequence {
    pub pattern: Permutation,
    terms: Vec<BigUint>,
    provenance: Vec<Provenance>,
}

/// Largest size counted exhaustively for a pattern of the given length.
pub fn oracle_limit(pattern_len: usize) -> usize {
    if pattern_len <= 3 {
        11
    } else {
        10
    }
}

impl AvoidanceSequence {
    /// Exhaustive counts for `i = 1..=up_to`.
    pub fn from_oracle(pattern: &Permutation, up_to: usize) -> Result<Self> {
        let limit = oracle_limit(pattern.len());
        if up_to > limit {
            return Err(Error::ResourceLimit(format!(
                "exhaustive counting for a pattern of length {} stops at {limit}",
                pattern.len()
            )));
        }
        let terms = (1..=up_to)
            .map(|i| Ok(BigUint::from(enumerate_class_bounded(i, Some(pattern), limit)?.count())))
            .collect::<Result<Vec<_>>>()?;
        let provenance = vec![Provenance::Oracle; terms.len()];
        Ok(AvoidanceSequence { pattern: pattern.clone(), terms, provenance })
    }

    /// Catalan numbers; valid for every pattern of length 3.
    pub fn catalan(pattern: &Permutation, len: usize) -> Result<Self> {
        if pattern.len() != 3 {
            return invalid("Catalan terms only apply to patterns of length 3");
        }
        Ok(AvoidanceSequence {
            pattern: pattern.clone(),
            terms: (1..=len).map(catalan).collect(),
            provenance: vec![Provenance::Formula; len],
        })
    }

    /// Reads lines `i count` (`#` starts a comment). Indices must run `1, 2, …` without gaps.
    pub fn parse(pattern: &Permutation, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let (Some(i), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
                return invalid(format!("line {}: expected \"i count\"", lineno + 1));
            };
            let i: usize =
                i.parse().map_err(|_| Error::InvalidInput(format!("line {}: bad index {i:?}", lineno + 1)))?;
            let v = BigUint::from_str(v)
                .map_err(|_| Error::InvalidInput(format!("line {}: bad count {v:?}", lineno + 1)))?;
            if i != terms.len() + 1 {
                return invalid(format!("line {}: expected index {}, found {i}", lineno + 1, terms.len() + 1));
            }
            if v.is_zero() {
                return invalid(format!("line {}: counts must be positive", lineno + 1));
            }
            terms.push(v);
        }
        if terms.first().is_some_and(|t| !t.is_one()) {
            return invalid("the first term |Av_1| must be 1");
        }
        let provenance = vec![Provenance::UserSupplied; terms.len()];
        Ok(AvoidanceSequence { pattern: pattern.clone(), terms, provenance })
    }

    /// Recomputes every term up to `up_to` exhaustively, rejecting any disagreement.
    pub fn verify_with_oracle(&mut self, up_to: usize) -> Result<()> {
        let up_to = up_to.min(self.terms.len());
        let oracle = AvoidanceSequence::from_oracle(&self.pattern, up_to)?;
        for (i, t) in oracle.terms.iter().enumerate() {
            if &self.terms[i] != t {
                return invalid(format!("|Av_{}| supplied as {} but counted as {t}", i + 1, self.terms[i]));
            }
            if self.provenance[i] == Provenance::UserSupplied {
                self.provenance[i] = Provenance::Oracle;
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `|Av_i(σ)|` with the convention `|Av_0(σ)| = 1`.
    pub fn term(&self, i: usize) -> Option<BigUint> {
        if i == 0 {
            Some(BigUint::one())
        } else {
            self.terms.get(i - 1).cloned()
        }
    }

    pub fn provenance(&self, i: usize) -> Option<Provenance> {
        i.checked_sub(1).and_then(|i| self.provenance.get(i).copied())
    }

    /// Keeps only the first `len` terms.
    pub fn truncated(&self, len: usize) -> Self {
        let len = len.min(self.terms.len());
        AvoidanceSequence {
            pattern: self.pattern.clone(),
            terms: self.terms[..len].to_vec(),
            provenance: self.provenance[..len].to_vec(),
        }
    }

    fn term_over(&self, i: usize, f: usize) -> Option<BigRational> {
        self.term(i).map(|t| ratio(t, factorial(f)))
    }
}

/// Exact partial sum `Σ_{i=1}^{terms} |Av_i(σ)| / (i−1)!`.
pub fn h_sigma_partial(seq: &AvoidanceSequence, terms: usize) -> Result<BigRational> {
    if seq.len() < terms {
        return invalid(format!("{terms} terms requested, {} available", seq.len()));
    }
    Ok((1..=terms).map(|i| seq.term_over(i, i - 1).expect("checked")).sum())
}

pub fn h_sigma(seq: &AvoidanceSequence, terms: usize) -> Result<f64> {
    h_sigma_partial(seq, terms).map(|r| rational_to_f64(&r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exact,
    Asymptotic,
    /// The size-law average with every needed term available.
    Series,
    /// The size-law average cut short by missing sequence terms.
    TruncatedSeries,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Asymptotic => "asymptotic",
            Method::Series => "series",
            Method::TruncatedSeries => "truncated-series",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbEstimate {
    pub value: f64,
    pub method: Method,
    /// Number of sequence terms used, when a series was summed.
    pub truncation: Option<usize>,
}

impl ProbEstimate {
    fn new(value: f64, method: Method, truncation: Option<usize>) -> Self {
        ProbEstimate { value: value.clamp(0.0, 1.0), method, truncation }
    }
}

/// `Prob(π ∉ Av_n(213; 2))` from the exact count.
pub fn prob_not_av_213_2(n: usize) -> Result<ProbEstimate> {
    let count = not_av_213_2_closed_form(n)?;
    Ok(ProbEstimate::new(rational_to_f64(&ratio(count, factorial(n))), Method::Exact, None))
}

/// `2 h_σ / n²` with `h_σ` summed over `terms` terms.
pub fn prob_not_avsk_asymptotic(seq: &AvoidanceSequence, n: usize, terms: usize) -> Result<ProbEstimate> {
    if n < 3 {
        return invalid("the asymptotic estimate needs n >= 3");
    }
    let h = h_sigma(seq, terms)?;
    Ok(ProbEstimate::new(2.0 * h / (n * n) as f64, Method::Asymptotic, Some(terms)))
}

/// Lower and upper bounds on `|S_n \ Av_n(σ; 2)|`:
/// `2(n−2)! (h_σ ∓ Σ |Av_i|/(i−1)! · |Av_{n−i−1}|/(n−i−1)!)`, the lower sum over
/// `i ≤ n−1−|σ|` and the upper over `n−|σ| ≤ i ≤ n−1`. `h_σ` is the partial sum with `h_terms` terms.
pub fn excluded_count_bounds(seq: &AvoidanceSequence, n: usize, h_terms: usize) -> Result<(BigRational, BigRational)> {
    let s = seq.pattern.len();
    if n < 3 || n <= s {
        return invalid(format!("bounds need n > |σ| and n >= 3, got n={n}"));
    }
    if seq.len() < n - 1 {
        return invalid(format!("bounds at n={n} need {} sequence terms", n - 1));
    }
    let h = h_sigma_partial(seq, h_terms)?;
    let product =
        |i: usize| seq.term_over(i, i - 1).expect("checked") * seq.term_over(n - i - 1, n - i - 1).expect("checked");
    let low: BigRational = (1..n - s).map(product).sum();
    let high: BigRational = (n - s..n).map(product).sum();
    let scale = BigRational::from_integer(BigInt::from(factorial(n - 2) * 2u32));
    Ok((&scale * (&h - low), scale * (h + high)))
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        invalid(format!("need 1 <= k <= n, got n={n} k={k}"))
    } else {
        Ok(())
    }
}

/// `w_{σ,n,k} = Σ_{m=1}^{n−k+1} C(n−m−1, k−2)/C(n−2, k−2) · |Av_m(σ)|/(m−1)!`,
/// summed over the available terms, with the number of terms used.
pub fn w_sigma(seq: &AvoidanceSequence, n: usize, k: usize) -> Result<(BigRational, usize)> {
    check_nk(n, k)?;
    if k < 2 {
        return invalid("w is defined for k >= 2");
    }
    let used = (n - k + 1).min(seq.len());
    let den = BigInt::from(binomial(n - 2, k - 2));
    let w = (1..=used)
        .map(|m| {
            let weight = BigRational::new(binomial_signed(n as i64 - m as i64 - 1, k as i64 - 2).into(), den.clone());
            weight * seq.term_over(m, m - 1).expect("within length")
        })
        .sum();
    Ok((w, used))
}

/// Size-law average `(k/(n C(n−1,k−1))) Σ_m m C(n−m−1, k−2)/m! · |Av_m(σ)|` as an exact rational.
pub fn prob_not_avsk_rational(seq: &AvoidanceSequence, n: usize, k: usize) -> Result<(BigRational, usize)> {
    check_nk(n, k)?;
    if k == 1 {
        return Ok((BigRational::zero(), 0));
    }
    let law = subperm_size_law(n, k)?;
    let used = (n - k + 1).min(seq.len());
    let p = (1..=used).map(|m| law.mass(m) * seq.term_over(m, m).expect("within length")).sum();
    Ok((p, used))
}

/// The same average through `w_{σ,n,k} · k(k−1)/(n(n−1))`.
pub fn prob_not_avsk_w_form(seq: &AvoidanceSequence, n: usize, k: usize) -> Result<(BigRational, usize)> {
    check_nk(n, k)?;
    if k == 1 {
        return Ok((BigRational::zero(), 0));
    }
    let (w, used) = w_sigma(seq, n, k)?;
    Ok((w * ratio(k * (k - 1), n * (n - 1)), used))
}

/// `Prob(π ∉ Av_n(σ; k))` approximated by treating `g_π(k)` as a uniform
/// permutation of a random size drawn from the size law. `k = 1` is exactly 0.
pub fn prob_not_avsk(seq: &AvoidanceSequence, n: usize, k: usize) -> Result<ProbEstimate> {
    check_nk(n, k)?;
    if k == 1 {
        return Ok(ProbEstimate::new(0.0, Method::Exact, None));
    }
    let (p, used) = prob_not_avsk_rational(seq, n, k)?;
    let method = if used < n - k + 1 { Method::TruncatedSeries } else { Method::Series };
    Ok(ProbEstimate::new(rational_to_f64(&p), method, Some(used)))
}

/// How `Prob(g_π(k) ∈ Av(σ))` is approximated in the conditional presence ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DenominatorMethod {
    /// `|Av_K(σ)| / K!` with `K` the expected size rounded to the nearest integer.
    ExpectedSize,
    /// The full size-law average `Σ_m P(|g| = m) |Av_m(σ)| / m!`.
    SizeLaw,
}

impl fmt::Display for DenominatorMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DenominatorMethod::ExpectedSize => "expected-size",
            DenominatorMethod::SizeLaw => "size-law",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalEstimate {
    pub estimate: ProbEstimate,
    pub numerator: f64,
    pub denominator: f64,
    pub denominator_method: DenominatorMethod,
}

/// `Prob(σ ≺ π | σ ⊀ g_π(k)) = Prob(π ∉ Av(σ; k)) / Prob(g_π(k) ∈ Av(σ))`, clamped to `[0, 1]`.
pub fn conditional_presence(
    seq: &AvoidanceSequence,
    n: usize,
    k: usize,
    method: DenominatorMethod,
) -> Result<ConditionalEstimate> {
    let numerator = prob_not_avsk(seq, n, k)?;
    let denominator = if k == 1 {
        // g_π(1) = π, so the numerator vanishes identically.
        BigRational::one()
    } else {
        match method {
            DenominatorMethod::ExpectedSize => {
                let mean = expected_size(n, k);
                let rounded: BigInt = (mean + ratio(1u32, 2u32)).floor().to_integer();
                let big_k = rounded.to_usize().expect("small");
                match seq.term(big_k) {
                    Some(t) => ratio(t, factorial(big_k)),
                    None => return Err(Error::UndefinedConditional(format!("|Av_{big_k}| is not available"))),
                }
            }
            DenominatorMethod::SizeLaw => prob_not_avsk_rational(seq, n, k)?.0,
        }
    };
    if denominator.is_zero() {
        return Err(Error::UndefinedConditional("denominator estimate is 0".into()));
    }
    let den = rational_to_f64(&denominator);
    let value = if k == 1 { 0.0 } else { numerator.value / den };
    Ok(ConditionalEstimate {
        estimate: ProbEstimate::new(value, numerator.method, numerator.truncation),
        numerator: numerator.value,
        denominator: den,
        denominator_method: method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn law_identities() {
        for n in 2..=30 {
            for k in 1..=n {
                let law = subperm_size_law(n, k).unwrap();
                assert!(law.total().is_one(), "n={n} k={k}");
                assert_eq!(law.mean(), expected_size(n, k));
                assert_eq!(law.variance(), size_variance(n, k));
            }
        }
        assert!(subperm_size_law(3, 4).is_err());
        assert!(subperm_size_law(3, 0).is_err());
    }

    #[test]
    fn law_matches_exhaustive_frequencies() {
        for n in 2..=7 {
            let all: Vec<Permutation> = all_permutations(n).collect();
            for k in 1..=n {
                let law = subperm_size_law(n, k).unwrap();
                let mut freq = vec![0usize; n + 1];
                for pi in &all {
                    freq[pi.sub_permutation(k as u32).unwrap().len()] += 1;
                }
                for (m, &count) in freq.iter().enumerate().skip(1) {
                    assert_eq!(law.mass(m), ratio(count, all.len()), "n={n} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn law_examples() {
        assert_eq!(subperm_size_law(50, 1).unwrap().mass(50), BigRational::one());
        assert_eq!(expected_size(50, 3), ratio(49u32, 2u32));
        let law = subperm_size_law(3, 2).unwrap();
        assert_eq!(law.mass(1), ratio(1u32, 3u32));
        assert_eq!(law.mass(2), ratio(2u32, 3u32));
    }

    #[test]
    fn excluded_counts() {
        let expected = [5u64, 16, 68, 392, 2905, 25508, 251188, 2703440];
        for (n, &e) in (3..=10).zip(&expected) {
            let parts = not_av_213_2_count(n).unwrap();
            assert_eq!(parts.complement(), BigUint::from(e), "n={n}");
            assert_eq!(parts.total(), not_av_213_2_closed_form(n).unwrap());
        }
        let three = not_av_213_2_count(3).unwrap();
        assert_eq!(three.total(), BigUint::one());
        assert!(not_av_213_2_count(2).is_err());
    }

    #[test]
    fn excluded_counts_match_exhaustion() {
        let sigma = p("2 1 3");
        for n in 3..=8 {
            let brute = count_not_avsk_exhaustive(n, &sigma, 2, 11).unwrap();
            assert_eq!(BigUint::from(brute), not_av_213_2_closed_form(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn h_values() {
        assert_eq!(h_constant(1), 1.0);
        assert_eq!(format!("{:.5}", h_constant(46)), "11.75330");
        let diff = h_constant(60) - h_constant(59);
        assert!((0.0..1e-12).contains(&diff));
    }

    #[test]
    fn h_sigma_examples() {
        let s213 = AvoidanceSequence::catalan(&p("2 1 3"), 46).unwrap();
        assert_eq!(h_sigma_partial(&s213, 46).unwrap(), h_partial(46));
        let s12 = AvoidanceSequence::from_oracle(&p("1 2"), 11).unwrap();
        assert!((h_sigma(&s12, 11).unwrap() - std::f64::consts::E).abs() < 1e-6);
        assert!(h_sigma(&s12, 12).is_err());
    }

    #[test]
    fn sequence_file_format() {
        let text = "# |Av_i(1324)|\n1 1\n2 2\n\n3 6 # full\n4 23\n";
        let seq = AvoidanceSequence::parse(&p("1 3 2 4"), text).unwrap();
        assert_eq!(seq.len(), 4);
        assert_eq!(seq.term(4), Some(BigUint::from(23u32)));
        assert_eq!(seq.provenance(4), Some(Provenance::UserSupplied));
        assert!(AvoidanceSequence::parse(&p("1 2"), "1 1\n3 2\n").is_err());
        assert!(AvoidanceSequence::parse(&p("1 2"), "1 2\n").is_err());
        assert!(AvoidanceSequence::parse(&p("1 2"), "1 1 1\n").is_err());

        let mut good = seq.clone();
        good.verify_with_oracle(4).unwrap();
        assert_eq!(good.provenance(2), Some(Provenance::Oracle));
        let mut bad = AvoidanceSequence::parse(&p("1 3 2 4"), "1 1\n2 2\n3 6\n4 22\n").unwrap();
        assert!(bad.verify_with_oracle(4).is_err());
    }

    #[test]
    fn series_forms_agree() {
        let seq = AvoidanceSequence::catalan(&p("2 1 3"), 60).unwrap();
        for n in [5, 12, 30] {
            for k in 1..=n {
                assert_eq!(prob_not_avsk_rational(&seq, n, k).unwrap(), prob_not_avsk_w_form(&seq, n, k).unwrap());
            }
        }
    }

    #[test]
    fn series_behaviour() {
        let seq = AvoidanceSequence::catalan(&p("2 1 3"), 60).unwrap();
        assert_eq!(prob_not_avsk(&seq, 50, 1).unwrap().value, 0.0);
        assert!(prob_not_avsk(&seq, 50, 50).unwrap().value > 0.99);
        let curve: Vec<f64> = (1..=50).map(|k| prob_not_avsk(&seq, 50, k).unwrap().value).collect();
        assert!(curve.windows(2).all(|w| w[0] <= w[1] + 1e-15));
        let short = seq.truncated(20);
        let est = prob_not_avsk(&short, 50, 2).unwrap();
        assert_eq!(est.method, Method::TruncatedSeries);
        assert_eq!(est.truncation, Some(20));
    }

    #[test]
    fn asymptotic_estimate() {
        let seq = AvoidanceSequence::catalan(&p("2 1 3"), 60).unwrap();
        let a = prob_not_avsk_asymptotic(&seq, 40, 60).unwrap().value;
        let b = prob_not_avsk_asymptotic(&seq, 80, 60).unwrap().value;
        assert!((a / b - 4.0).abs() < 1e-12);
    }

    #[test]
    fn bounds_sandwich_exact_count() {
        let seq = AvoidanceSequence::catalan(&p("2 1 3"), 60).unwrap();
        for n in 10..=40 {
            let (lo, hi) = excluded_count_bounds(&seq, n, 60).unwrap();
            let exact = BigRational::from_integer(not_av_213_2_closed_form(n).unwrap().into());
            assert!(lo <= exact && exact <= hi, "n={n}");
            let series = prob_not_avsk_rational(&seq, n, 2).unwrap().0 * BigInt::from(factorial(n));
            assert!(lo <= series && series <= hi, "n={n}");
        }
    }

    #[test]
    fn exact_probability_decreases() {
        // It still rises from n = 5 (0.4333) to n = 6 (0.4556).
        let probs: Vec<f64> = (6..=40).map(|n| prob_not_av_213_2(n).unwrap().value).collect();
        assert!(probs.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn conditional_examples() {
        let seq = AvoidanceSequence::catalan(&p("2 1 3"), 60).unwrap();
        let c = conditional_presence(&seq, 50, 1, DenominatorMethod::ExpectedSize).unwrap();
        assert_eq!(c.estimate.value, 0.0);
        let c = conditional_presence(&seq, 50, 25, DenominatorMethod::ExpectedSize).unwrap();
        assert_eq!(c.denominator, 5.0 / 6.0);
        assert!((0.0..=1.0).contains(&c.estimate.value));
        let c = conditional_presence(&seq, 50, 25, DenominatorMethod::SizeLaw).unwrap();
        assert_eq!(c.estimate.value, 1.0);
        let short = seq.truncated(2);
        assert!(matches!(
            conditional_presence(&short, 50, 25, DenominatorMethod::ExpectedSize),
            Err(Error::UndefinedConditional(_))
        ));
    }
}
