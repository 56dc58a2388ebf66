//! Field and atomic entropies through the 2x2 atomic density matrix.
//!
//! Every power of a 2x2 density matrix with eigenvalues `1/2 +- eps` reduces
//! to a combination of the matrix and the identity:
//!
//! ```text
//! rho_A^n = G(n) rho_A - det(rho_A) G(n-1) 1
//! G(n)    = [(1/2 + eps)^n - (1/2 - eps)^n] / (2 eps)
//! ```
//!
//! Summing the logarithm's power series with this identity gives
//! `-ln rho_A = F1 rho_A + F2 1`. Because the joint atom-field state is pure,
//! `rho_F^{n+1} = Tr_A{rho rho_A^n}`, and the same two coefficients give the
//! field entropy operator
//!
//! ```text
//! S_F = (F1 + F2/det) rho_F - (F2/det) rho_F^2
//! ```
//!
//! without diagonalizing the field density matrix. For the two-component
//! mixture the entropy adds the mixing entropy of the weights, which holds
//! while the parity overlaps `<j|Pi|k>` vanish.
//!
//! [`oracle_entropy`] diagonalizes a density matrix directly and is the
//! independent check on all of the above.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::{atomic_density, branch_gram, field_density_pure, AtomicMatrix, Branches};
use crate::error::{JcError, Result};
use crate::fock::{hermitian_eig, FockOperator};

/// Distance of `eps` from 1/2 below which the atomic state counts as pure.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Below this `eps`, `G(n)` and `F1` switch to forms free of `0/0`.
pub const EPS_SWITCH: f64 = 1e-6;

/// Threshold for `G(n)`: the difference of powers loses about
/// `1e-16 / eps` relative accuracy, so small `eps` uses the odd-binomial sum.
const G_EXPANSION_SWITCH: f64 = 1e-3;

/// Oracle eigenvalues below this are treated as zero.
pub const EIG_FLOOR: f64 = 1e-14;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `-x ln x` with `0 ln 0 = 0`.
pub fn entropy_term(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln()
    }
}

/// Mixing entropy `-p ln p - (1-p) ln(1-p)`.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_term(p) + entropy_term(1.0 - p)
}

/// `rho_A = 1/2 + R` split into its traceless part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicDecomposition {
    /// `rho11 - rho22`.
    pub delta: f64,
    /// `sqrt(delta^2/4 + |rho12|^2)`; the eigenvalues are `1/2 +- epsilon`.
    pub epsilon: f64,
    /// `1/4 - epsilon^2`.
    pub det: f64,
    /// Traceless Hermitian part `R`.
    pub r_matrix: Matrix2<Complex64>,
}

impl AtomicDecomposition {
    /// `(1/2 + eps, 1/2 - eps)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        (0.5 + self.epsilon, 0.5 - self.epsilon)
    }

    pub fn is_degenerate(&self) -> bool {
        self.epsilon >= 0.5 - DEGENERACY_TOL
    }

    pub fn reconstruct(&self) -> Matrix2<Complex64> {
        Matrix2::identity() * re(0.5) + self.r_matrix
    }
}

pub fn decompose_atomic(rho: &AtomicMatrix) -> AtomicDecomposition {
    let delta = rho.rho11 - rho.rho22;
    let epsilon = (0.25 * delta * delta + rho.rho12.norm_sqr()).sqrt().min(0.5);
    let det = ((0.5 - epsilon) * (0.5 + epsilon)).max(0.0);
    let r_matrix = Matrix2::new(re(0.5 * delta), rho.rho12, rho.rho21(), re(-0.5 * delta));
    AtomicDecomposition {
        delta,
        epsilon,
        det,
        r_matrix,
    }
}

/// `G(n) = [(1/2 + eps)^n - (1/2 - eps)^n] / (2 eps)`.
///
/// For small `eps` the difference is expanded binomially,
/// `G(n) = sum_{k odd} C(n,k) (1/2)^{n-k} eps^{k-1}`, whose terms are all
/// positive; at `eps = 0` this is `n (1/2)^{n-1}`.
pub fn g_coefficient(n: u32, epsilon: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if epsilon < G_EXPANSION_SWITCH {
        let ratio_sq = (2.0 * epsilon).powi(2);
        // k = 1 term: n (1/2)^{n-1}
        let mut term = n as f64 * 0.5_f64.powi(n as i32 - 1);
        let mut sum = term;
        let mut k = 1u32;
        while k + 2 <= n {
            let kf = k as f64;
            let nf = n as f64;
            // C(n,k+2)/C(n,k) = (n-k)(n-k-1) / ((k+1)(k+2))
            term *= (nf - kf) * (nf - kf - 1.0) / ((kf + 1.0) * (kf + 2.0)) * ratio_sq;
            sum += term;
            if term < sum * 1e-18 {
                break;
            }
            k += 2;
        }
        return sum;
    }
    let up = (0.5 + epsilon).powi(n as i32);
    let down = (0.5 - epsilon).powi(n as i32);
    (up - down) / (2.0 * epsilon)
}

/// `rho_A^n = G(n) rho_A - det G(n-1) 1`.
pub fn atomic_power_ch(rho: &AtomicMatrix, n: u32) -> Matrix2<Complex64> {
    assert!(n >= 1, "power must be at least 1");
    let dec = decompose_atomic(rho);
    let g_n = g_coefficient(n, dec.epsilon);
    let g_prev = g_coefficient(n - 1, dec.epsilon);
    rho.to_matrix() * re(g_n) - Matrix2::identity() * re(dec.det * g_prev)
}

/// Chebyshev polynomial of the first kind by three-term recurrence.
///
/// For `x >= 1` this equals `cosh(n arccosh x)`.
pub fn chebyshev_t(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomial of the second kind; `U_{-1} = 0`.
///
/// For `x > 1` this equals `sinh((n+1) arccosh x) / sinh(arccosh x)`.
pub fn chebyshev_u(n: i32, x: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `rho_A^n = det^{n/2} [T_n(x) 1 + R/sqrt(det) U_{n-1}(x)]` with
/// `x = 1 / (2 sqrt(det)) >= 1`.
///
/// Verification path only; [`atomic_power_ch`] is the one used elsewhere.
pub fn atomic_power_chebyshev(rho: &AtomicMatrix, n: u32) -> Result<Matrix2<Complex64>> {
    assert!(n >= 1, "power must be at least 1");
    let dec = decompose_atomic(rho);
    if dec.det <= DEGENERACY_TOL {
        return Err(JcError::DegenerateDeterminant { det: dec.det });
    }
    let root = dec.det.sqrt();
    let x = 0.5 / root;
    let scale = dec.det.powf(0.5 * n as f64);
    let t = chebyshev_t(n, x);
    let u = chebyshev_u(n as i32 - 1, x);
    Ok(Matrix2::identity() * re(scale * t) + dec.r_matrix * re(scale * u / root))
}

/// Coefficients of `-ln rho_A = f1 rho_A + f2 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyCoefficients {
    pub f1: f64,
    pub f2: f64,
}

/// `f1 = ln((1 - 2 eps)/(1 + 2 eps)) / (2 eps)`, `f2 = -(ln det + f1) / 2`.
pub fn entropy_coefficients(dec: &AtomicDecomposition) -> Result<EntropyCoefficients> {
    let eps = dec.epsilon;
    if dec.is_degenerate() {
        return Err(JcError::DegenerateState { epsilon: eps });
    }
    // ln((1-u)/(1+u)) = -2 atanh(u)
    let f1 = if eps < EPS_SWITCH {
        let u2 = 4.0 * eps * eps;
        -2.0 * (1.0 + u2 / 3.0 + u2 * u2 / 5.0)
    } else {
        -(2.0 * eps).atanh() / eps
    };
    let f2 = -0.5 * (dec.det.ln() + f1);
    Ok(EntropyCoefficients { f1, f2 })
}

/// Von Neumann entropy of the atom, `-(1/2+eps) ln(1/2+eps) - (1/2-eps) ln(1/2-eps)`.
///
/// The small eigenvalue is clipped at [`EIG_FLOOR`], as in the oracle.
pub fn atomic_entropy(rho: &AtomicMatrix) -> f64 {
    let (hi, lo) = decompose_atomic(rho).eigenvalues();
    let lo = if lo < EIG_FLOOR { 0.0 } else { lo };
    entropy_term(hi) + entropy_term(lo)
}

/// `Tr(rho_A (f1 rho_A + f2)) = f1 Tr(rho_A^2) + f2`.
pub fn atomic_entropy_operator_form(rho: &AtomicMatrix) -> Result<f64> {
    let dec = decompose_atomic(rho);
    let coef = entropy_coefficients(&dec)?;
    let purity = 0.5 + 2.0 * dec.epsilon * dec.epsilon;
    Ok(coef.f1 * purity + coef.f2)
}

fn pure_coefficients(b: &Branches) -> Result<(AtomicDecomposition, EntropyCoefficients)> {
    let dec = decompose_atomic(&atomic_density(b, 1.0));
    let coef = entropy_coefficients(&dec)?;
    Ok((dec, coef))
}

/// Field entropy operator for an initially coherent field, assembled from
/// outer products of the branches:
///
/// ```text
/// S_F = (f1 + f2 <s|s>/det) |c><c| + (f1 + f2 <c|c>/det) |s><s|
///       - (f2/det) (<s|c> |s><c| + <c|s> |c><s|)
/// ```
pub fn field_entropy_operator(b: &Branches) -> Result<FockOperator> {
    let (dec, coef) = pure_coefficients(b)?;
    let g = branch_gram(b);
    let k = coef.f2 / dec.det;
    let mut op = FockOperator::zeros(b.dim());
    op.add_outer(re(coef.f1) + g.i_ss * k, &b.c, &b.c);
    op.add_outer(re(coef.f1) + g.i_cc * k, &b.s, &b.s);
    op.add_outer(-g.i_sc * k, &b.s, &b.c);
    op.add_outer(-g.i_cs * k, &b.c, &b.s);
    Ok(op)
}

/// `(f1 + f2/det) rho_F - (f2/det) rho_F^2`, using dense products.
pub fn field_entropy_operator_matrix_form(b: &Branches) -> Result<FockOperator> {
    let (dec, coef) = pure_coefficients(b)?;
    let k = coef.f2 / dec.det;
    let rho = field_density_pure(b);
    let rho_sq = &rho * &rho;
    Ok(&rho.scale_real(coef.f1 + k) - &rho_sq.scale_real(k))
}

/// `S_F = Tr(S_F rho_F)` for an initially coherent field.
///
/// Traces reduce to the 2x2 Gram matrix of `{|c>, |s>}`, since
/// `Tr rho_F^k = Tr Gram^k`. When the atom is numerically pure the entropy
/// operator is singular and the eigenvalue form is used instead.
pub fn field_entropy_pure(b: &Branches) -> f64 {
    let rho_a = atomic_density(b, 1.0);
    let dec = decompose_atomic(&rho_a);
    let coef = match entropy_coefficients(&dec) {
        Ok(c) => c,
        Err(_) => return atomic_entropy(&rho_a),
    };
    let g = branch_gram(b);
    let gram = Matrix2::new(g.i_cc, g.i_cs, g.i_sc, g.i_ss);
    let gram_sq = gram * gram;
    let tr2 = gram_sq.trace().re;
    let tr3 = (gram_sq * gram).trace().re;
    let k = coef.f2 / dec.det;
    (coef.f1 + k) * tr2 - k * tr3
}

/// Analytic entropy of the mixed-coherent field plus how trustworthy it is.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixedEntropy {
    /// `S_F - P ln P - (1-P) ln(1-P)`.
    pub value: f64,
    /// True while every `|<j|Pi|k>|` is below the threshold, or when the
    /// field is not actually mixed (`P` is 0 or 1).
    pub valid: bool,
    /// `max_jk |<j|Pi|k>|`.
    pub max_pi: f64,
}

/// Entropy of the field that started as `P|alpha><alpha| + (1-P)|-alpha><-alpha|`.
///
/// Always evaluated; `valid` reports whether the parity cross terms it
/// neglects are below `pi_tol`.
pub fn mixed_field_entropy(b: &Branches, p_plus: f64, pi_tol: f64) -> MixedEntropy {
    let max_pi = branch_gram(b).max_parity();
    let unmixed = p_plus == 0.0 || p_plus == 1.0;
    MixedEntropy {
        value: field_entropy_pure(b) + binary_entropy(p_plus),
        valid: unmixed || max_pi < pi_tol,
        max_pi,
    }
}

/// `-sum lambda ln lambda` over the eigenvalues of `rho`.
pub fn oracle_entropy(rho: &FockOperator) -> Result<f64> {
    oracle_entropy_with_floor(rho, EIG_FLOOR)
}

pub fn oracle_entropy_with_floor(rho: &FockOperator, eig_floor: f64) -> Result<f64> {
    let spec = hermitian_eig(rho)?;
    Ok(spec
        .eigenvalues
        .iter()
        .filter(|&&x| x >= eig_floor)
        .map(|&x| entropy_term(x))
        .sum())
}

/// Max elementwise deviation between `rho_F^{n+1}` and `Tr_A{rho rho_A^n}`
/// for the pure coherent case.
///
/// The joint state has blocks `rho_ij = |b_i><b_j|` with `b = (c, s)`, so
/// `Tr_A{rho (rho_A^n x 1)} = sum_ij (rho_A^n)_ji |b_i><b_j|`.
pub fn power_relation_check(b: &Branches, n: u32) -> f64 {
    let rho_a = atomic_density(b, 1.0);
    let power = if n == 0 {
        Matrix2::identity()
    } else {
        atomic_power_ch(&rho_a, n)
    };
    let branch = [&b.c, &b.s];
    let mut traced = FockOperator::zeros(b.dim());
    for (i, bi) in branch.iter().enumerate() {
        for (j, bj) in branch.iter().enumerate() {
            traced.add_outer(power[(j, i)], bi, bj);
        }
    }
    let direct = field_density_pure(b).pow(n + 1);
    traced.max_abs_diff(&direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve_branches, field_density_mixed};

    const LN2: f64 = std::f64::consts::LN_2;

    fn mat_pow(m: &Matrix2<Complex64>, n: u32) -> Matrix2<Complex64> {
        let mut out = Matrix2::identity();
        for _ in 0..n {
            out *= m;
        }
        out
    }

    fn max_diff(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn sample() -> AtomicMatrix {
        AtomicMatrix::new(0.7, 0.3, re(0.1))
    }

    #[test]
    fn decompose_examples() {
        let d = decompose_atomic(&AtomicMatrix::new(1.0, 0.0, re(0.0)));
        assert_eq!((d.delta, d.epsilon, d.det), (1.0, 0.5, 0.0));
        let d = decompose_atomic(&AtomicMatrix::new(0.5, 0.5, re(0.0)));
        assert_eq!((d.epsilon, d.det), (0.0, 0.25));
        let rho = sample();
        let d = decompose_atomic(&rho);
        assert!((d.epsilon - 0.05_f64.sqrt()).abs() < 1e-15);
        assert!((d.det - 0.2).abs() < 1e-15);
        assert!(max_diff(&d.reconstruct(), &rho.to_matrix()) < 1e-14);
    }

    #[test]
    fn g_small_values() {
        for eps in [0.0, 1e-8, 1e-4, 0.2, 0.49] {
            assert_eq!(g_coefficient(0, eps), 0.0);
            assert!((g_coefficient(1, eps) - 1.0).abs() < 1e-15);
            assert!((g_coefficient(2, eps) - 1.0).abs() < 1e-15);
        }
        assert_eq!(g_coefficient(5, 0.0), 0.3125);
    }

    #[test]
    fn g_branches_agree_at_switch() {
        let eps = G_EXPANSION_SWITCH;
        for n in 1..20 {
            let below = g_coefficient(n, eps * (1.0 - 1e-12));
            let above = g_coefficient(n, eps);
            assert!((below - above).abs() <= 1e-12 * above.abs(), "n={n}");
        }
    }

    #[test]
    fn cayley_hamilton_power_matches_products() {
        let rho = sample();
        assert!(max_diff(&atomic_power_ch(&rho, 1), &rho.to_matrix()) < 1e-15);
        let pure = AtomicMatrix::new(1.0, 0.0, re(0.0));
        assert!(max_diff(&atomic_power_ch(&pure, 2), &pure.to_matrix()) < 1e-15);
        let direct = mat_pow(&rho.to_matrix(), 6);
        assert!(max_diff(&atomic_power_ch(&rho, 6), &direct) < 1e-12);
    }

    #[test]
    fn chebyshev_polynomials() {
        assert_eq!(chebyshev_t(0, 3.0), 1.0);
        assert_eq!(chebyshev_u(-1, 3.0), 0.0);
        for n in 0..10u32 {
            assert!((chebyshev_t(n, 1.0) - 1.0).abs() < 1e-12);
            assert!((chebyshev_u(n as i32, 1.0) - (n + 1) as f64).abs() < 1e-12);
            let x: f64 = 1.7;
            let theta = x.acosh();
            let t = (n as f64 * theta).cosh();
            let u = ((n + 1) as f64 * theta).sinh() / theta.sinh();
            assert!((chebyshev_t(n, x) - t).abs() < 1e-10 * t);
            assert!((chebyshev_u(n as i32, x) - u).abs() < 1e-10 * u);
        }
        // inside [-1, 1] the recurrence is the trigonometric form
        assert!((chebyshev_t(3, 0.5) - (3.0 * 0.5_f64.acos()).cos()).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_power_matches_cayley_hamilton() {
        let rho = sample();
        assert!(max_diff(&atomic_power_chebyshev(&rho, 1).unwrap(), &rho.to_matrix()) < 1e-12);
        let half = AtomicMatrix::new(0.5, 0.5, re(0.0));
        let cube = atomic_power_chebyshev(&half, 3).unwrap();
        assert!(max_diff(&cube, &(Matrix2::identity() * re(0.125))) < 1e-15);
        for n in 1..=12 {
            let a = atomic_power_chebyshev(&rho, n).unwrap();
            assert!(max_diff(&a, &atomic_power_ch(&rho, n)) < 1e-10);
        }
        let pure = AtomicMatrix::new(1.0, 0.0, re(0.0));
        assert_eq!(
            atomic_power_chebyshev(&pure, 2).unwrap_err().category(),
            "degenerate-determinant"
        );
    }

    #[test]
    fn coefficients_at_maximal_mixing() {
        let d = decompose_atomic(&AtomicMatrix::new(0.5, 0.5, re(0.0)));
        let c = entropy_coefficients(&d).unwrap();
        assert_eq!(c.f1, -2.0);
        assert!((c.f2 - 1.693_147_180_559_945).abs() < 1e-12);
    }

    #[test]
    fn coefficients_reproduce_log_at_both_eigenvalues() {
        // eps = 0.25: rho11 = 0.75, rho22 = 0.25
        let d = decompose_atomic(&AtomicMatrix::new(0.75, 0.25, re(0.0)));
        let c = entropy_coefficients(&d).unwrap();
        assert!((c.f1 - 2.0 * (1.0_f64 / 3.0).ln()).abs() < 1e-14);
        assert!((d.det - 0.1875).abs() < 1e-15);
        for lam in [0.75_f64, 0.25] {
            assert!((-lam.ln() - (c.f1 * lam + c.f2)).abs() < 1e-10);
        }
        assert!(c.f1 <= -2.0);
    }

    #[test]
    fn coefficients_refuse_pure_state() {
        let eps = 0.5 - 0.5e-9;
        let d = decompose_atomic(&AtomicMatrix::new(0.5 + eps, 0.5 - eps, re(0.0)));
        assert_eq!(
            entropy_coefficients(&d).unwrap_err().category(),
            "degenerate-state"
        );
    }

    #[test]
    fn atomic_entropy_limits() {
        assert_eq!(atomic_entropy(&AtomicMatrix::new(1.0, 0.0, re(0.0))), 0.0);
        let half = AtomicMatrix::new(0.5, 0.5, re(0.0));
        assert!((atomic_entropy(&half) - LN2).abs() < 1e-15);
        let rho = sample();
        let op = atomic_entropy_operator_form(&rho).unwrap();
        assert!((op - atomic_entropy(&rho)).abs() < 1e-10);
    }

    #[test]
    fn atomic_entropy_of_equal_mixture_is_diagonal() {
        let b = evolve_branches(re(4.0), 10.0, 64).unwrap();
        let rho = atomic_density(&b, 0.5);
        let direct = entropy_term(rho.rho11) + entropy_term(rho.rho22);
        assert!((atomic_entropy(&rho) - direct).abs() < 1e-14);
    }

    #[test]
    fn field_entropy_operator_routes_agree() {
        let b = evolve_branches(re(4.0), 10.0, 64).unwrap();
        let four = field_entropy_operator(&b).unwrap();
        let dense = field_entropy_operator_matrix_form(&b).unwrap();
        assert!(four.max_abs_diff(&dense) < 1e-10);
        assert!(four.hermiticity_deviation() < 1e-12);

        let rho = field_density_pure(&b);
        let s_trace = (&four * &rho).trace();
        let s_a = atomic_entropy(&atomic_density(&b, 1.0));
        assert!((s_trace.re - s_a).abs() < 1e-8);
        assert!(s_trace.im.abs() < 1e-12);
        let oracle = oracle_entropy(&rho).unwrap();
        assert!((s_trace.re - oracle).abs() < 1e-8);
        assert!((field_entropy_pure(&b) - s_trace.re).abs() < 1e-10);
    }

    #[test]
    fn field_entropy_operator_is_singular_at_start() {
        let b = evolve_branches(re(4.0), 0.0, 64).unwrap();
        assert!(field_entropy_operator(&b).is_err());
        assert!(field_entropy_pure(&b).abs() < 1e-15);
    }

    #[test]
    fn mixed_entropy_at_start_and_pure_limit() {
        let b = evolve_branches(re(4.0), 0.0, 64).unwrap();
        let m = mixed_field_entropy(&b, 0.5, 1e-6);
        assert!((m.value - LN2).abs() < 1e-10);
        assert!(m.valid);
        let b = evolve_branches(re(4.0), 13.0, 64).unwrap();
        let m = mixed_field_entropy(&b, 1.0, 1e-6);
        assert_eq!(m.value, field_entropy_pure(&b));
        assert!(m.valid);
    }

    #[test]
    fn mixture_adds_binary_entropy() {
        let b = evolve_branches(re(4.0), 6.0, 64).unwrap();
        let pure = field_entropy_pure(&b);
        for p in [0.3, 0.5, 0.7] {
            let m = mixed_field_entropy(&b, p, 1e-6);
            let expect = -p * f64::ln(p) - (1.0 - p) * f64::ln(1.0 - p);
            assert!((m.value - pure - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn oracle_simple_states() {
        let v = crate::fock::coherent_state(re(1.0), 16).unwrap();
        assert!(oracle_entropy(&v.outer(&v)).unwrap().abs() < 1e-9);
        let a = crate::fock::FockVector::basis(0, 4);
        let z = crate::fock::FockVector::basis(3, 4);
        let mut rho = a.outer(&a).scale_real(0.5);
        rho.add_outer(re(0.5), &z, &z);
        assert!((oracle_entropy(&rho).unwrap() - LN2).abs() < 1e-9);
    }

    #[test]
    fn oracle_of_initial_mixture() {
        let b = evolve_branches(re(4.0), 0.0, 64).unwrap();
        let s = oracle_entropy(&field_density_mixed(&b, 0.5)).unwrap();
        // eigenvalues (1 +- e^-32)/2: S = ln 2 - O(e^-64)
        assert!((s - LN2).abs() < 1e-12);
    }

    #[test]
    fn power_relation_holds() {
        let b = evolve_branches(re(4.0), 2.0, 64).unwrap();
        assert!(power_relation_check(&b, 0) < 1e-12);
        let b = evolve_branches(re(4.0), 7.0, 64).unwrap();
        assert!(power_relation_check(&b, 1) < 1e-10);
        let b = evolve_branches(re(2.0), 3.0, 40).unwrap();
        assert!(power_relation_check(&b, 3) < 1e-10);
    }
}
