//! Exact counting sequences, generating-tree and Dyck-path counters, and
//! numeric asymptotics.

mod asymptotics;
mod gentree;
mod tables;

pub use asymptotics::{
    asymptotic_coefficient, asymptotic_relative_error, dominant_root, exact_ratio, exact_ratio_parts, expected_gamma,
    ln_asymptotic_coefficient, ratio_estimate, root_ratio, root_ratio_estimate, AsymptoticParams, RootFamily,
};
pub use gentree::{
    all_dyck_paths, dyck_avoiding_count, dyck_avoiding_table, gamma_u_bounded_count, gamma_u_bounded_table,
    level_counts, DyckPath, GeneratingTreeState, Step,
};
pub use tables::{
    catalan, catalan_table, increasing_split, lj_coefficients, lj_complement, m2_count, no_size_j_caterpillar,
    pj_coefficients, CoefficientTable, Family, RadicalSeries,
};
