//! `R`, the kinetic matrices of the four bases, `H = E(R)` and
//! `V = H - T`.

use alloc::vec::Vec;

// shadowed by inherent methods whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{tridiag_eigen, tridiag_inverse_closed_form, Matrix, TridiagonalSymmetric};
use crate::ortho_poly::{cdh_diag, cdh_offdiag, gegenbauer_g};
use crate::params::PhysicalParams;
use crate::system::{QuantumSystem, SpectralMap, SystemKind};

/// Tolerance of the two independent `R⁻¹` evaluations, relative to
/// `max(1, ‖R⁻¹‖_max)`.
pub const INVERSE_CROSS_CHECK_TOL: f64 = 1e-8;
/// Largest asymmetry of `V` accepted before symmetrization, relative to
/// `‖V‖_max`.
pub const MAX_RELATIVE_ASYMMETRY: f64 = 1e-6;

/// The `N × N` tridiagonal matrix of the recursion coefficients `A_n`, `B_n`.
///
/// Unlike [`crate::ortho_poly::cdh_recursion`] a vanishing `B_n` is
/// accepted: the matrix then splits into decoupled blocks.
pub fn r_matrix(params: &PhysicalParams, n: usize) -> Result<TridiagonalSymmetric> {
    let (mu, a) = (params.mu, params.a);
    TridiagonalSymmetric::new(
        (0..n).map(|k| cdh_diag(mu, a, k)).collect(),
        (0..n.saturating_sub(1)).map(|k| cdh_offdiag(mu, a, k)).collect(),
    )
}

fn square_cropped(t: &TridiagonalSymmetric, n: usize) -> Matrix {
    t.to_dense().mul(&t.to_dense()).leading(n)
}

/// Kinetic matrix in the Laguerre basis `y = e^{-λx}`:
///
/// ```text
/// T = -λ²/2 [ ¼J² - (2(n+ν)² + ν(1-ν)) δ_{n,m}
///             + (n+ν-½)√(n(n+2ν-1)) δ_{n,m+1} + (n+ν+½)√((n+1)(n+2ν)) δ_{n,m-1} ]
/// ```
///
/// with `J` the Laguerre Jacobi matrix (diagonal `2(n+ν)`, off-diagonal
/// `-√((n+1)(n+2ν))`).
pub fn kinetic_morse(params: &PhysicalParams, n: usize) -> Result<Matrix> {
    let nu = params.nu;
    if !(nu > 0.0) {
        return Err(Error::Param("Laguerre basis requires nu > 0".into()));
    }
    // J² is built one size larger so that the cropped block is exact.
    let j = TridiagonalSymmetric::new(
        (0..=n).map(|k| 2.0 * (k as f64 + nu)).collect(),
        (0..n).map(|k| -((k as f64 + 1.0) * (k as f64 + 2.0 * nu)).sqrt()).collect(),
    )?;
    let j2 = square_cropped(&j, n);
    let scale = -0.5 * params.lambda * params.lambda;
    Ok(Matrix::from_fn(n, |r, c| {
        let k = r as f64 + nu;
        let mut v = 0.25 * j2[(r, c)];
        if r == c {
            v -= 2.0 * k * k + nu * (1.0 - nu);
        } else if r == c + 1 {
            v += (k - 0.5) * (r as f64 * (r as f64 + 2.0 * nu - 1.0)).sqrt();
        } else if r + 1 == c {
            v += (k + 0.5) * ((r as f64 + 1.0) * (r as f64 + 2.0 * nu)).sqrt();
        }
        scale * v
    }))
}

/// Kinetic matrix in the radial Laguerre basis, centrifugal term included:
/// `T = λ²/2 · tridiag(2n+ℓ+3/2, √((n+1)(n+ℓ+3/2)))`.
pub fn kinetic_radial(params: &PhysicalParams, n: usize) -> Result<Matrix> {
    let l = params.ell as f64;
    let scale = 0.5 * params.lambda * params.lambda;
    Ok(TridiagonalSymmetric::new(
        (0..n).map(|k| scale * (2.0 * k as f64 + l + 1.5)).collect(),
        (0..n.saturating_sub(1))
            .map(|k| scale * ((k as f64 + 1.0) * (k as f64 + l + 1.5)).sqrt())
            .collect(),
    )?
    .to_dense())
}

/// Kinetic matrix in the Hermite basis:
/// `T = λ²/4 [(2n+1)δ_{n,m} - √((n+1)(n+2)) (δ_{n,m-2} + δ_{m,n-2})]`.
pub fn kinetic_hermite(params: &PhysicalParams, n: usize) -> Result<Matrix> {
    let scale = 0.25 * params.lambda * params.lambda;
    Ok(Matrix::from_fn(n, |r, c| {
        let lo = r.min(c) as f64;
        if r == c {
            scale * (2.0 * lo + 1.0)
        } else if r.abs_diff(c) == 2 {
            -scale * ((lo + 1.0) * (lo + 2.0)).sqrt()
        } else {
            0.0
        }
    }))
}

/// Kinetic matrix in the Gegenbauer basis `y = tanh λx`,
///
/// ```text
/// 2T_{mn}/λ² = [n² + (2n+1)ν + ½] δ_{mn} - 2n G_n K_{m,n+1}
///              + 2(n+2ν) G_{n-1} K_{m,n-1} - [(n+ν)² + 2ν + ¾] (K²)_{mn}
/// ```
///
/// with `K` the orthonormal Gegenbauer Jacobi matrix. Returns the
/// symmetrized matrix and the asymmetry that was removed.
pub fn kinetic_gegenbauer(params: &PhysicalParams, n: usize) -> Result<(Matrix, f64)> {
    let nu = params.nu;
    if !(nu > -0.5) {
        return Err(Error::Param("Gegenbauer basis requires nu > -1/2".into()));
    }
    let big = n + 2;
    let k = TridiagonalSymmetric::new(vec_zeros(big), (0..big - 1).map(|i| gegenbauer_g(nu, i)).collect())?;
    let kd = k.to_dense();
    let k2 = square_cropped(&k, n);
    let scale = 0.5 * params.lambda * params.lambda;
    let mut t = Matrix::from_fn(n, |m, col| {
        let c = col as f64;
        let mut v = 0.0;
        if m == col {
            v += c * c + (2.0 * c + 1.0) * nu + 0.5;
        }
        v -= 2.0 * c * gegenbauer_g(nu, col) * kd[(m, col + 1)];
        if col > 0 {
            v += 2.0 * (c + 2.0 * nu) * gegenbauer_g(nu, col - 1) * kd[(m, col - 1)];
        }
        v -= ((c + nu) * (c + nu) + 2.0 * nu + 0.75) * k2[(m, col)];
        scale * v
    });
    let asymmetry = t.symmetrize();
    Ok((t, asymmetry))
}

fn vec_zeros(n: usize) -> Vec<f64> {
    alloc::vec![0.0; n]
}

/// Kinetic matrix of the basis used by `kind`, with the asymmetry removed
/// by symmetrization (zero except for the Gegenbauer basis).
pub fn kinetic(kind: SystemKind, params: &PhysicalParams, n: usize) -> Result<(Matrix, f64)> {
    match kind {
        SystemKind::Morse => Ok((kinetic_morse(params, n)?, 0.0)),
        SystemKind::Radial => Ok((kinetic_radial(params, n)?, 0.0)),
        SystemKind::ExpGauss => Ok((kinetic_hermite(params, n)?, 0.0)),
        SystemKind::Sinh => kinetic_gegenbauer(params, n),
    }
}

/// `R`, `T`, `H = E(R)` and `V = H - T` at truncation `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrices {
    pub r: TridiagonalSymmetric,
    pub t: Matrix,
    pub h: Matrix,
    pub v: Matrix,
    pub n: usize,
    pub kind: SystemKind,
    /// Eigenvalues of `R`, ascending.
    pub r_eigenvalues: Vec<f64>,
    /// Asymmetry removed from `T` (Gegenbauer basis only).
    pub t_asymmetry: f64,
    /// Asymmetry removed from `V`.
    pub v_asymmetry: f64,
}

impl OperatorMatrices {
    /// Eigenvalues of `H`, i.e. `E` applied to the eigenvalues of `R`, in
    /// the order of the `R` eigenvalues.
    pub fn energies(&self, map: &SpectralMap) -> Vec<f64> {
        self.r_eigenvalues.iter().map(|&x| map.forward(x)).collect()
    }
}

/// Builds the operator matrices of `kind` with energy map `map`.
///
/// `H = E(R)` is formed through the eigendecomposition of `R`, except for
/// affine maps where `c₀ + c₁R` is exact.
///
/// For the radial map the `α²R⁻¹` term is evaluated by the eigenvector
/// expansion and independently by the closed-form tridiagonal inverse; the
/// two must agree to [`INVERSE_CROSS_CHECK_TOL`].
pub fn assemble(kind: SystemKind, map: &SpectralMap, params: &PhysicalParams, n: usize) -> Result<OperatorMatrices> {
    params.validate()?;
    if n == 0 {
        return Err(Error::Param("truncation size must be at least 1".into()));
    }
    let r = r_matrix(params, n)?;
    let eig = tridiag_eigen(&r)?;
    if let SpectralMap::RadialInverse { alpha, .. } = map {
        if let Some(index) = eig.values.iter().position(|&x| x == 0.0) {
            return Err(Error::Singular { index });
        }
        if *alpha != 0.0 {
            let spectral = eig.apply(|x| 1.0 / x)?;
            let closed = tridiag_inverse_closed_form(&r)?;
            let discrepancy = spectral.sub(&closed).max_abs();
            if !(discrepancy <= INVERSE_CROSS_CHECK_TOL * closed.max_abs().max(1.0)) {
                return Err(Error::CrossCheck {
                    what: "tridiagonal inverse",
                    discrepancy,
                });
            }
        }
    }
    // an affine E(R) is formed directly: no eigenvector rounding enters H
    let h = match map.affine() {
        Some((c0, c1)) => Matrix::identity(n).scale(c0).add(&r.to_dense().scale(c1)),
        None => eig.apply(|x| map.forward(x))?,
    };
    let (t, t_asymmetry) = kinetic(kind, params, n)?;
    let mut v = h.sub(&t);
    let v_asymmetry = v.symmetrize();
    let scale = v.max_abs();
    if v_asymmetry > MAX_RELATIVE_ASYMMETRY * scale {
        return Err(Error::Asymmetry {
            max_asymmetry: v_asymmetry,
            scale,
        });
    }
    Ok(OperatorMatrices {
        r,
        t,
        h,
        v,
        n,
        kind,
        r_eigenvalues: eig.values,
        t_asymmetry,
        v_asymmetry,
    })
}

impl QuantumSystem {
    pub fn assemble(&self, n: usize) -> Result<OperatorMatrices> {
        assemble(self.kind, &self.map, &self.params, n)
    }
}
