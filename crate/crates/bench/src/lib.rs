//! Shared fixtures for the benchmarks.

use jcmix_core::{evolve_branches, Branches, Complex64};

pub const ALPHA: f64 = 4.0;
pub const DIM: usize = 64;

/// Branches for alpha = 4 at `t`, inside the default truncation.
pub fn branches_at(t: f64) -> Branches {
    evolve_branches(Complex64::new(ALPHA, 0.0), t, DIM).expect("alpha = 4 fits in 64 levels")
}
