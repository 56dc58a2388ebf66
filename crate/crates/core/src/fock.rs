//! Linear algebra on the truncated photon-number basis `|0>, ..., |N-1>`.
//!
//! States are dense complex amplitude vectors and operators are dense complex
//! matrices. Only the handful of operators the entropy calculation needs are
//! provided: parity `(-1)^n`, the London phase shifts, and outer products.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{JcError, Result};

/// Default bound on the probability that may be lost to truncation.
pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-10;

/// Largest tolerated `max |M - M^H|` for input to [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Truncation size that keeps the coherent-state norm deficit below `1e-10`
/// for `|alpha| <= 6`: `ceil(|alpha|^2 + 8|alpha| + 10)`.
pub fn poisson_tail_dim(alpha: Complex64) -> usize {
    let r = alpha.norm();
    (r * r + 8.0 * r + 10.0).ceil() as usize
}

/// [`poisson_tail_dim`] rounded up to the next power of two.
pub fn default_dim(alpha: Complex64) -> usize {
    poisson_tail_dim(alpha).next_power_of_two()
}

/// Complex amplitude vector over the truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amp: DVector<Complex64>,
}

impl FockVector {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "Fock dimension must be positive");
        FockVector {
            amp: DVector::from_element(dim, ZERO),
        }
    }

    /// Number state `|n>`.
    pub fn basis(n: usize, dim: usize) -> Self {
        assert!(n < dim, "number state {n} outside dim {dim}");
        let mut v = Self::zeros(dim);
        v.amp[n] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn from_amplitudes(amp: Vec<Complex64>) -> Self {
        assert!(!amp.is_empty(), "Fock dimension must be positive");
        FockVector {
            amp: DVector::from_vec(amp),
        }
    }

    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amp.as_slice()
    }

    pub fn as_dvector(&self) -> &DVector<Complex64> {
        &self.amp
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product across dimensions");
        self.amp
            .iter()
            .zip(other.amp.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `<self| Pi |other>` without materializing the parity operator.
    pub fn parity_inner(&self, other: &FockVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product across dimensions");
        self.amp
            .iter()
            .zip(other.amp.iter())
            .enumerate()
            .map(|(n, (a, b))| {
                let term = a.conj() * b;
                if n % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    /// Expectation of the number operator divided by the squared norm.
    pub fn mean_photon_number(&self) -> f64 {
        let weighted: f64 = self
            .amp
            .iter()
            .enumerate()
            .map(|(n, a)| n as f64 * a.norm_sqr())
            .sum();
        weighted / self.norm_sqr()
    }

    pub fn scale(&self, k: Complex64) -> FockVector {
        FockVector { amp: &self.amp * k }
    }

    /// Multiplies amplitude `n` by `f(n)`; the way diagonal functions of `n` act.
    pub fn map_diagonal<F: Fn(usize) -> Complex64>(&self, f: F) -> FockVector {
        let amp = DVector::from_iterator(
            self.dim(),
            self.amp.iter().enumerate().map(|(n, a)| a * f(n)),
        );
        FockVector { amp }
    }

    /// `Pi |v>`: flips the sign of odd-n amplitudes.
    pub fn parity_apply(&self) -> FockVector {
        let amp = DVector::from_iterator(
            self.dim(),
            self.amp
                .iter()
                .enumerate()
                .map(|(n, a)| if n % 2 == 0 { *a } else { -a }),
        );
        FockVector { amp }
    }

    /// London phase lowering `V|n> = |n-1>`, `V|0> = 0`.
    pub fn london_lower(&self) -> FockVector {
        let n = self.dim();
        let mut out = Self::zeros(n);
        for k in 1..n {
            out.amp[k - 1] = self.amp[k];
        }
        out
    }

    /// London phase raising `V^dag |n> = |n+1>`. The amplitude pushed past the
    /// top of the truncation is returned alongside the shifted state.
    pub fn london_raise(&self) -> Raised {
        let n = self.dim();
        let mut out = Self::zeros(n);
        for k in 0..n - 1 {
            out.amp[k + 1] = self.amp[k];
        }
        Raised {
            state: out,
            dropped: self.amp[n - 1],
        }
    }

    /// `|self><other|`.
    pub fn outer(&self, other: &FockVector) -> FockOperator {
        assert_eq!(self.dim(), other.dim(), "outer product across dimensions");
        FockOperator {
            m: &self.amp * other.amp.adjoint(),
        }
    }

    pub fn max_abs_diff(&self, other: &FockVector) -> f64 {
        self.amp
            .iter()
            .zip(other.amp.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Result of [`FockVector::london_raise`].
#[derive(Debug, Clone)]
pub struct Raised {
    pub state: FockVector,
    /// Amplitude that was on `|N-1>` and fell off the truncated space.
    pub dropped: Complex64,
}

impl Raised {
    /// True when the discarded probability `|dropped|^2` exceeds `tol`.
    pub fn leaked(&self, tol: f64) -> bool {
        self.dropped.norm_sqr() > tol
    }
}

/// Coherent state `|alpha>` with the default truncation tolerance.
pub fn coherent_state(alpha: Complex64, dim: usize) -> Result<FockVector> {
    coherent_state_with_tol(alpha, dim, DEFAULT_TRUNCATION_TOL)
}

/// Coherent state `|alpha>` truncated to `dim` levels.
///
/// Amplitudes follow `c_{n+1} = c_n * alpha / sqrt(n+1)` from
/// `c_0 = exp(-|alpha|^2 / 2)`; no factorials are formed. Fails when the
/// truncated squared norm falls short of one by more than `tol`.
pub fn coherent_state_with_tol(alpha: Complex64, dim: usize, tol: f64) -> Result<FockVector> {
    assert!(dim >= 1, "Fock dimension must be positive");
    let mut amp = Vec::with_capacity(dim);
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..dim {
        amp.push(c);
        c = c * alpha / ((n + 1) as f64).sqrt();
    }
    let v = FockVector::from_amplitudes(amp);
    let deficit = 1.0 - v.norm_sqr();
    if !(deficit < tol) {
        return Err(JcError::TruncationInsufficient {
            alpha_abs: alpha.norm(),
            dim,
            deficit,
            tol,
        });
    }
    Ok(v)
}

/// Dense complex operator on the truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    m: DMatrix<Complex64>,
}

impl FockOperator {
    pub fn zeros(dim: usize) -> Self {
        FockOperator {
            m: DMatrix::from_element(dim, dim, ZERO),
        }
    }

    pub fn identity(dim: usize) -> Self {
        FockOperator {
            m: DMatrix::identity(dim, dim),
        }
    }

    pub fn from_matrix(m: DMatrix<Complex64>) -> Self {
        assert!(m.is_square(), "operator must be square");
        FockOperator { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator {
            m: self.m.adjoint(),
        }
    }

    /// `Tr(M M^H)`; equals `Tr(M^2)` for Hermitian `M`.
    pub fn frobenius_sqr(&self) -> f64 {
        self.m.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `max_ij |M_ij - conj(M_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.m[(i, j)] - self.m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &FockOperator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "operator dimension mismatch");
        self.m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, k: Complex64) -> FockOperator {
        FockOperator { m: &self.m * k }
    }

    pub fn scale_real(&self, k: f64) -> FockOperator {
        self.scale(Complex64::new(k, 0.0))
    }

    /// `M += k |u><v|` without allocating the outer product.
    pub fn add_outer(&mut self, k: Complex64, u: &FockVector, v: &FockVector) {
        assert_eq!(u.dim(), self.dim(), "outer product dimension mismatch");
        assert_eq!(v.dim(), self.dim(), "outer product dimension mismatch");
        self.m
            .gerc(k, u.as_dvector(), v.as_dvector(), Complex64::new(1.0, 0.0));
    }

    /// `Pi M Pi`: negates entries whose row and column parities differ.
    pub fn parity_conjugate(&self) -> FockOperator {
        let n = self.dim();
        let m = DMatrix::from_fn(n, n, |i, j| {
            if (i + j) % 2 == 0 {
                self.m[(i, j)]
            } else {
                -self.m[(i, j)]
            }
        });
        FockOperator { m }
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        FockVector {
            amp: &self.m * v.as_dvector(),
        }
    }

    pub fn pow(&self, k: u32) -> FockOperator {
        let mut out = FockOperator::identity(self.dim());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl<'a> Mul<&'a FockOperator> for &'a FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: &FockOperator) -> FockOperator {
        FockOperator { m: &self.m * &rhs.m }
    }
}

impl<'a> Add<&'a FockOperator> for &'a FockOperator {
    type Output = FockOperator;
    fn add(self, rhs: &FockOperator) -> FockOperator {
        FockOperator { m: &self.m + &rhs.m }
    }
}

impl<'a> Sub<&'a FockOperator> for &'a FockOperator {
    type Output = FockOperator;
    fn sub(self, rhs: &FockOperator) -> FockOperator {
        FockOperator { m: &self.m - &rhs.m }
    }
}

/// Parity `Pi = (-1)^{a^dag a}` as a diagonal matrix.
pub fn parity_operator(dim: usize) -> FockOperator {
    let diag = DVector::from_fn(dim, |n, _| {
        if n % 2 == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(-1.0, 0.0)
        }
    });
    FockOperator {
        m: DMatrix::from_diagonal(&diag),
    }
}

/// Eigendecomposition of a Hermitian operator.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal columns, paired with `eigenvalues`.
    pub eigenvectors: DMatrix<Complex64>,
}

impl Spectrum {
    /// `U diag(lambda) U^H`.
    pub fn reconstruct(&self) -> FockOperator {
        let u = &self.eigenvectors;
        let lam = DMatrix::from_diagonal(&DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&x| Complex64::new(x, 0.0)),
        ));
        FockOperator {
            m: u * lam * u.adjoint(),
        }
    }
}

/// Dense Hermitian eigendecomposition, eigenvalues sorted ascending.
pub fn hermitian_eig(op: &FockOperator) -> Result<Spectrum> {
    let deviation = op.hermiticity_deviation();
    if !(deviation <= HERMITIAN_TOL) {
        return Err(JcError::NonHermitian { deviation });
    }
    // Symmetrize so the solver sees an exactly Hermitian matrix.
    let h = (&op.m + op.m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let n = op.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}
