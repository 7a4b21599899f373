//! Sub-permutations of permutations and their enumerative and probabilistic
//! properties.
//!
//! The sub-permutation of `π` generated by the value `k` is the standardized
//! maximal window of consecutive entries that contains `k` and has no entry
//! below `k`. Sub-permutations correspond to descendant sub-trees of binary
//! increasing trees, which is what the [`trees`] module makes concrete.
//!
//! * [`perm`]: permutations, pattern containment, sub-permutation extraction,
//!   the two-line drawing of 123-avoiders and exhaustive class generators.
//! * [`trees`]: binary increasing trees, planar full binary trees and the two
//!   bijections onto permutations.
//! * [`enumeration`]: exact coefficient tables, generating-tree and Dyck path
//!   counters, dominant roots and asymptotic estimates.
//! * [`probability`]: the law of `|g_π(k)|`, exact counts for `Av_n(213;2)`
//!   and the series approximations of `Prob(π ∉ Av_n(σ;k))`.
//! * [`montecarlo`]: seeded, worker-count independent sampling estimates.
//! * [`oracle`]: the exhaustive cross-validation suite.

pub mod enumeration;
pub mod error;
pub mod montecarlo;
pub mod numeric;
pub mod oracle;
pub mod perm;
pub mod probability;
pub mod trees;

pub use error::{Error, Result};
pub use perm::{Permutation, SubPermutation};
