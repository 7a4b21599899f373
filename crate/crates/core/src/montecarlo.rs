//! Seeded Monte Carlo estimates of `Prob(σ ≺ π and σ ⊀ g_π(k))`.
//!
//! Sampling is split into fixed chunks of [`CHUNK`] samples. Chunk `c` of grid
//! point `(n, k)` draws from `ChaCha8Rng::seed_from_u64(grid_key(seed, n, k))`
//! on stream `c`, so every sample is fixed by `(seed, n, k, index)` alone and
//! tallies are identical for any number of workers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::perm::{window, PatternMatcher, Permutation};

pub const CHUNK: u64 = 4096;
pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const DEFAULT_WORK_CAP: u64 = 10_000_000;
pub const DEFAULT_MAX_PATTERN_LEN: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McConfig {
    pub n: usize,
    pub pattern: Permutation,
    pub k: usize,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    /// Node expansions allowed per pattern search before a sample is set aside.
    pub work_cap: u64,
    pub max_pattern_len: usize,
}

impl McConfig {
    pub fn new(n: usize, pattern: Permutation, k: usize) -> Self {
        McConfig {
            n,
            pattern,
            k,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            workers: 1,
            work_cap: DEFAULT_WORK_CAP,
            max_pattern_len: DEFAULT_MAX_PATTERN_LEN,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return invalid("samples must be at least 1");
        }
        if self.k == 0 || self.k > self.n {
            return invalid(format!("need 1 <= k <= n, got n={} k={}", self.n, self.k));
        }
        if self.workers == 0 {
            return invalid("workers must be at least 1");
        }
        if self.pattern.is_empty() {
            return invalid("pattern must be non-empty");
        }
        if self.pattern.len() > self.max_pattern_len {
            return Err(Error::UnsupportedInput(format!(
                "pattern length {} exceeds the limit {}",
                self.pattern.len(),
                self.max_pattern_len
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub n: usize,
    pub k: usize,
    pub estimate: f64,
    /// `√(p̂(1 − p̂)/N)`.
    pub stderr: f64,
    /// Samples counted in the estimate (capped ones excluded).
    pub samples: u64,
    pub hits: u64,
    pub capped: u64,
    pub seed: u64,
}

/// Uniform permutation of size `n` by Fisher–Yates.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    v.shuffle(rng);
    Permutation::from_vec_unchecked(v)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the generator for grid point `(n, k)`.
pub fn grid_key(seed: u64, n: usize, k: usize) -> u64 {
    splitmix(splitmix(splitmix(seed) ^ n as u64) ^ k as u64)
}

fn chunk_rng(key: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(chunk);
    rng
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::ResourceLimit(format!("cannot start {workers} workers: {e}")))
}

/// Runs `per_sample` over `samples` draws in seeded chunks and sums the tallies.
fn tally<T, F>(workers: usize, key: u64, n: usize, samples: u64, zero: T, per_sample: F) -> Result<T>
where
    T: Send + Clone + Sync + std::ops::AddAssign,
    F: Fn(&mut [u32], &mut T) + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let run = |c: u64| {
        let mut rng = chunk_rng(key, c);
        let mut acc = zero.clone();
        let mut buf: Vec<u32> = (1..=n as u32).collect();
        let count = CHUNK.min(samples - c * CHUNK);
        for _ in 0..count {
            buf.shuffle(&mut rng);
            per_sample(&mut buf, &mut acc);
        }
        acc
    };
    let parts: Vec<T> = pool(workers)?.install(|| (0..chunks).into_par_iter().map(run).collect());
    let mut total = zero;
    for p in parts {
        total += p;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, Default)]
struct Counts {
    hits: u64,
    capped: u64,
}

impl std::ops::AddAssign for Counts {
    fn add_assign(&mut self, o: Counts) {
        self.hits += o.hits;
        self.capped += o.capped;
    }
}

/// Fraction of sampled `π` with `σ ≺ π` and `σ ⊀ g_π(k)`.
pub fn estimate_not_avsk(cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    let matcher = PatternMatcher::new(&cfg.pattern)?;
    let k = cfg.k as u32;
    let cap = cfg.work_cap;
    let counts =
        tally(cfg.workers, grid_key(cfg.seed, cfg.n, cfg.k), cfg.n, cfg.samples, Counts::default(), |pi, acc| {
            let (lo, hi) = window(pi, k).expect("k in range");
            // The event needs σ absent from g_π(k), which is the cheaper search.
            match matcher.matches_capped(&pi[lo..=hi], cap) {
                Some(true) => {}
                None => acc.capped += 1,
                Some(false) => match matcher.matches_capped(pi, cap) {
                    Some(true) => acc.hits += 1,
                    Some(false) => {}
                    None => acc.capped += 1,
                },
            }
        })?;
    let effective = cfg.samples - counts.capped;
    if effective == 0 {
        return Err(Error::ResourceLimit(format!("all {} samples exceeded the work cap", cfg.samples)));
    }
    let p = counts.hits as f64 / effective as f64;
    Ok(McEstimate {
        n: cfg.n,
        k: cfg.k,
        estimate: p,
        stderr: (p * (1.0 - p) / effective as f64).sqrt(),
        samples: effective,
        hits: counts.hits,
        capped: counts.capped,
        seed: cfg.seed,
    })
}

/// One estimate per `(n, k)` point, in the given order. `base` supplies the
/// pattern, sample count, seed, workers and caps.
pub fn sweep(base: &McConfig, points: &[(usize, usize)]) -> Result<Vec<McEstimate>> {
    points.iter().map(|&(n, k)| estimate_not_avsk(&McConfig { n, k, ..base.clone() })).collect()
}

/// `k = k_from..=k_to` at fixed `n`.
pub fn k_points(n: usize, k_from: usize, k_to: usize) -> Vec<(usize, usize)> {
    (k_from..=k_to).map(|k| (n, k)).collect()
}

/// Empirical counts of `|g_π(k)|`: entry `m` counts samples of size `m` (entry 0 unused).
pub fn sample_size_counts(n: usize, k: usize, samples: u64, seed: u64, workers: usize) -> Result<Vec<u64>> {
    if k == 0 || k > n {
        return invalid(format!("need 1 <= k <= n, got n={n} k={k}"));
    }
    struct Hist(Vec<u64>);
    impl Clone for Hist {
        fn clone(&self) -> Self {
            Hist(self.0.clone())
        }
    }
    impl std::ops::AddAssign for Hist {
        fn add_assign(&mut self, o: Hist) {
            for (a, b) in self.0.iter_mut().zip(o.0) {
                *a += b;
            }
        }
    }
    let kk = k as u32;
    let h = tally(workers, grid_key(seed, n, k), n, samples, Hist(vec![0; n + 1]), |pi, acc| {
        let (lo, hi) = window(pi, kk).expect("k in range");
        acc.0[hi - lo + 1] += 1;
    })?;
    Ok(h.0)
}
