//! Resonant Jaynes-Cummings evolution in closed form.
//!
//! With the atom initially excited and the field in `|alpha>`, the joint
//! state at dimensionless time `t = lambda * t` is `|e>|c> + |g>|s>` with
//!
//! ```text
//! |c> = cos(t sqrt(a a^dag)) |alpha>
//! |s> = -i V^dag sin(t sqrt(a a^dag)) |alpha>
//! ```
//!
//! Both branches are left unnormalized. A field starting in the mixture
//! `P |alpha><alpha| + (1-P) |-alpha><-alpha|` evolves into branches
//! `Pi|c>` and `-Pi|s>` for the second component, so every mixed quantity
//! is assembled from `|c>`, `|s>` and the parity operator.

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::Result;
use crate::fock::{coherent_state_with_tol, FockOperator, FockVector, DEFAULT_TRUNCATION_TOL};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The two unnormalized field branches at one instant.
#[derive(Debug, Clone)]
pub struct Branches {
    /// Field branch paired with the excited atomic state.
    pub c: FockVector,
    /// Field branch paired with the ground atomic state.
    pub s: FockVector,
    /// Dimensionless time `lambda * t`.
    pub t: f64,
}

impl Branches {
    pub fn dim(&self) -> usize {
        self.c.dim()
    }

    /// `<c|c> + <s|s>`.
    pub fn total_norm(&self) -> f64 {
        self.c.norm_sqr() + self.s.norm_sqr()
    }
}

/// Evolves the atom-excited, field-coherent initial state to time `t`.
pub fn evolve_branches(alpha: Complex64, t: f64, dim: usize) -> Result<Branches> {
    evolve_branches_with_tol(alpha, t, dim, DEFAULT_TRUNCATION_TOL)
}

pub fn evolve_branches_with_tol(
    alpha: Complex64,
    t: f64,
    dim: usize,
    truncation_tol: f64,
) -> Result<Branches> {
    let coherent = coherent_state_with_tol(alpha, dim, truncation_tol)?;
    Ok(branches_from_state(&coherent, t))
}

/// Branches for an arbitrary (already truncated) initial field state.
pub fn branches_from_state(initial: &FockVector, t: f64) -> Branches {
    // sqrt(a a^dag) |n> = sqrt(n+1) |n>
    let c = initial.map_diagonal(|n| re((t * ((n + 1) as f64).sqrt()).cos()));
    let sine = initial.map_diagonal(|n| -I * (t * ((n + 1) as f64).sqrt()).sin());
    // The coherent-state truncation check already bounds the dropped amplitude.
    let s = sine.london_raise().state;
    Branches { c, s, t }
}

/// Reduced atomic density matrix in the `{|e>, |g>}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicMatrix {
    /// Excited-state population.
    pub rho11: f64,
    /// Ground-state population.
    pub rho22: f64,
    /// Coherence `<e|rho_A|g>`; `rho21` is its conjugate.
    pub rho12: Complex64,
}

impl AtomicMatrix {
    pub fn new(rho11: f64, rho22: f64, rho12: Complex64) -> Self {
        AtomicMatrix { rho11, rho22, rho12 }
    }

    pub fn rho21(&self) -> Complex64 {
        self.rho12.conj()
    }

    pub fn trace(&self) -> f64 {
        self.rho11 + self.rho22
    }

    /// `rho11 * rho22 - |rho12|^2`.
    pub fn determinant(&self) -> f64 {
        self.rho11 * self.rho22 - self.rho12.norm_sqr()
    }

    pub fn to_matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(re(self.rho11), self.rho12, self.rho21(), re(self.rho22))
    }

    /// `rho11 - rho22`, the atomic inversion `<sigma_z>`.
    pub fn inversion(&self) -> f64 {
        self.rho11 - self.rho22
    }
}

/// Traces the field out of the evolved state.
///
/// Diagonal entries are `<c|c>` and `<s|s>`; the coherence is
/// `(P - (1 - P)) <s|c>`, which vanishes for an equal mixture. `p_plus = 1`
/// is the pure coherent case.
pub fn atomic_density(b: &Branches, p_plus: f64) -> AtomicMatrix {
    let weight = 2.0 * p_plus - 1.0;
    AtomicMatrix {
        rho11: b.c.norm_sqr(),
        rho22: b.s.norm_sqr(),
        rho12: b.s.inner(&b.c) * weight,
    }
}

/// `|c><c| + |s><s|`.
pub fn field_density_pure(b: &Branches) -> FockOperator {
    let mut rho = FockOperator::zeros(b.dim());
    rho.add_outer(re(1.0), &b.c, &b.c);
    rho.add_outer(re(1.0), &b.s, &b.s);
    rho
}

/// `P (|c><c| + |s><s|) + (1-P) Pi (|c><c| + |s><s|) Pi`.
pub fn field_density_mixed(b: &Branches, p_plus: f64) -> FockOperator {
    let p_minus = 1.0 - p_plus;
    let pc = b.c.parity_apply();
    let ps = b.s.parity_apply();
    let mut rho = FockOperator::zeros(b.dim());
    rho.add_outer(re(p_plus), &b.c, &b.c);
    rho.add_outer(re(p_plus), &b.s, &b.s);
    rho.add_outer(re(p_minus), &pc, &pc);
    rho.add_outer(re(p_minus), &ps, &ps);
    rho
}

/// `W = <c|c> - <s|s>`; independent of the mixture weight.
pub fn atomic_inversion(b: &Branches) -> f64 {
    b.c.norm_sqr() - b.s.norm_sqr()
}

/// Overlaps `I_jk = <j|k>` and parity elements `Pi_jk = <j|Pi|k>` for
/// `j, k` in `{c, s}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchGram {
    pub i_cc: Complex64,
    pub i_ss: Complex64,
    pub i_cs: Complex64,
    pub i_sc: Complex64,
    pub p_cc: Complex64,
    pub p_ss: Complex64,
    pub p_cs: Complex64,
    pub p_sc: Complex64,
}

impl BranchGram {
    /// `max_jk |Pi_jk|`.
    pub fn max_parity(&self) -> f64 {
        [self.p_cc, self.p_ss, self.p_cs, self.p_sc]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

pub fn branch_gram(b: &Branches) -> BranchGram {
    BranchGram {
        i_cc: b.c.inner(&b.c),
        i_ss: b.s.inner(&b.s),
        i_cs: b.c.inner(&b.s),
        i_sc: b.s.inner(&b.c),
        p_cc: b.c.parity_inner(&b.c),
        p_ss: b.s.parity_inner(&b.s),
        p_cs: b.c.parity_inner(&b.s),
        p_sc: b.s.parity_inner(&b.c),
    }
}

/// `xi = 1 - Tr(rho^2)` for a Hermitian `rho`.
pub fn field_purity(rho: &FockOperator) -> f64 {
    1.0 - rho.frobenius_sqr()
}

/// `(rho_F^mix)^2` assembled term by term from the branch Gram scalars.
///
/// With `A = |c><c| + |s><s|` and `Q = 1 - P`,
///
/// ```text
/// rho^2 = sum_jk I_jk  (P^2 |j><k| + Q^2 Pi|j><k|Pi)
///       + sum_jk Pi_jk  P Q (Pi|j><k| + |j><k|Pi)
/// ```
///
/// The cross terms drop out whenever every `Pi_jk` is negligible.
pub fn rho_f_mix_squared_full(b: &Branches, p_plus: f64) -> FockOperator {
    let g = branch_gram(b);
    let p = p_plus;
    let q = 1.0 - p_plus;
    let pc = b.c.parity_apply();
    let ps = b.s.parity_apply();
    let terms = [
        (&b.c, &b.c, &pc, &pc, g.i_cc, g.p_cc),
        (&b.s, &b.s, &ps, &ps, g.i_ss, g.p_ss),
        (&b.c, &b.s, &pc, &ps, g.i_cs, g.p_cs),
        (&b.s, &b.c, &ps, &pc, g.i_sc, g.p_sc),
    ];
    let mut out = FockOperator::zeros(b.dim());
    for (j, k, pj, pk, overlap, parity) in terms {
        out.add_outer(overlap * (p * p), j, k);
        out.add_outer(overlap * (q * q), pj, pk);
        // Pi|j><k| and |j><k|Pi = |j><Pi k|
        out.add_outer(parity * (p * q), pj, k);
        out.add_outer(parity * (p * q), j, pk);
    }
    out
}

/// `rho_F^2` from the four-term expansion; the `p_plus = 1` case of
/// [`rho_f_mix_squared_full`].
pub fn rho_f_squared_pure(b: &Branches) -> FockOperator {
    let g = branch_gram(b);
    let mut out = FockOperator::zeros(b.dim());
    out.add_outer(g.i_cc, &b.c, &b.c);
    out.add_outer(g.i_ss, &b.s, &b.s);
    out.add_outer(g.i_cs, &b.c, &b.s);
    out.add_outer(g.i_sc, &b.s, &b.c);
    out
}
