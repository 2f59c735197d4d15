//! Three-term recursions, Jacobi matrices, Gauss nodes and the four
//! orthonormal basis families `φ_n(x) = W(y) Q_n(y)`, `y = g(x)`.
//!
//! All polynomial sequences are orthonormal with `Q_0 = 1` and satisfy
//! `y Q_n = a_n Q_n + b_n Q_{n+1} + b_{n-1} Q_{n-1}`. Signs of `b_n` follow the
//! classical polynomials (Laguerre `b_n < 0`, Hermite and Gegenbauer
//! `b_n > 0`), so `φ_n` agrees with the textbook normalization including sign.

use alloc::vec;
use alloc::vec::Vec;

// shadowed by inherent methods whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{tridiag_eigen, TridiagonalSymmetric};
use crate::params::PhysicalParams;
use crate::special::ln_gamma;

/// Recursion coefficients `a_n` (diagonal) and `b_n` (off-diagonal), both of
/// length `N`. `b_{N-1}` is kept so that `P_N` can be formed.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionCoefficients {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl RecursionCoefficients {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.len() != offdiag.len() {
            return Err(Error::Domain(alloc::format!(
                "recursion needs equal lengths, got {} and {}",
                diag.len(),
                offdiag.len()
            )));
        }
        Ok(Self { diag, offdiag })
    }

    fn from_fn(n: usize, a: impl Fn(usize) -> f64, b: impl Fn(usize) -> f64) -> Self {
        Self {
            diag: (0..n).map(&a).collect(),
            offdiag: (0..n).map(&b).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }
}

/// `[P_0(s), …, P_{n_max}(s)]` from `P_0 = 1`, `P_1 = (s - A_0)/B_0`.
pub fn eval_recursion(coeffs: &RecursionCoefficients, s: f64, n_max: usize) -> Result<Vec<f64>> {
    if n_max > coeffs.len() {
        return Err(Error::Domain(alloc::format!(
            "requested degree {n_max} exceeds {} recursion coefficients",
            coeffs.len()
        )));
    }
    let mut p = Vec::with_capacity(n_max + 1);
    p.push(1.0);
    for n in 0..n_max {
        let b = coeffs.offdiag[n];
        if b == 0.0 {
            return Err(Error::ZeroOffdiag { index: n });
        }
        let prev = if n == 0 { 0.0 } else { coeffs.offdiag[n - 1] * p[n - 1] };
        p.push(((s - coeffs.diag[n]) * p[n] - prev) / b);
    }
    Ok(p)
}

pub(crate) fn cdh_diag(mu: f64, a: f64, n: usize) -> f64 {
    let n = n as f64;
    let s = n + mu + a;
    s * s + n * (n + 2.0 * a - 1.0) - mu * mu
}

pub(crate) fn cdh_offdiag(mu: f64, a: f64, n: usize) -> f64 {
    let n = n as f64;
    -(n + mu + a) * ((n + 1.0) * (n + 2.0 * a)).sqrt()
}

/// Coefficients of the orthonormal continuous dual Hahn polynomials
/// `S_n^μ(z²; a, a)`:
///
/// ```text
/// A_n = (n+μ+a)² + n(n+2a-1) - μ²
/// B_n = -(n+μ+a) √((n+1)(n+2a))
/// ```
pub fn cdh_recursion(params: &PhysicalParams, n: usize) -> Result<RecursionCoefficients> {
    let (mu, a) = (params.mu, params.a);
    let coeffs = RecursionCoefficients::from_fn(n, |k| cdh_diag(mu, a, k), |k| cdh_offdiag(mu, a, k));
    let scale = coeffs.offdiag.iter().fold(1.0f64, |m, b| m.max(b.abs()));
    if let Some(index) = coeffs
        .offdiag
        .iter()
        .position(|b| b.abs() <= 64.0 * f64::EPSILON * scale)
    {
        return Err(Error::DegenerateRecursion { index });
    }
    Ok(coeffs)
}

/// Leading `n × n` Jacobi matrix of a recursion.
pub fn jacobi_matrix(coeffs: &RecursionCoefficients, n: usize) -> Result<TridiagonalSymmetric> {
    if n == 0 || n > coeffs.len() {
        return Err(Error::Domain(alloc::format!(
            "Jacobi matrix size {n} outside 1..={}",
            coeffs.len()
        )));
    }
    TridiagonalSymmetric::new(coeffs.diag[..n].to_vec(), coeffs.offdiag[..n - 1].to_vec())
}

/// Eigenvalues of a Jacobi matrix in ascending order (the Gauss nodes).
pub fn quadrature_nodes(j: &TridiagonalSymmetric) -> Result<Vec<f64>> {
    Ok(tridiag_eigen(j)?.values)
}

/// Gauss rule `(nodes, weights)` for the measure that makes the recursion
/// orthonormal with `Q_0 = 1` (unit total mass).
pub fn gauss_rule(coeffs: &RecursionCoefficients, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let eig = tridiag_eigen(&jacobi_matrix(coeffs, n)?)?;
    let weights = (0..n).map(|k| eig.vectors[(0, k)].powi(2)).collect();
    Ok((eig.values, weights))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFamily {
    /// `y = e^{-λx}`, `φ_n = C_n y^ν e^{-y/2} L_n^{2ν-1}(y)`.
    LaguerreMorse,
    /// `y = λ²r²`, `φ_n ∝ (λr)^{ℓ+1} e^{-y/2} L_n^{ℓ+1/2}(y)`, `r > 0`.
    RadialLaguerre,
    /// `y = λx`, `φ_n ∝ e^{-y²/2} H_n(y)`.
    Hermite,
    /// `y = tanh λx`, `φ_n ∝ (1-y²)^{(2ν+1)/4} C_n^ν(y)`.
    Gegenbauer,
}

/// One of the four orthonormal bases, with its coordinate map, weight and
/// polynomial recursion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSet {
    family: BasisFamily,
    lambda: f64,
    nu: f64,
    ell: u32,
    // ln of W's constant prefactor
    log_norm: f64,
}

impl BasisSet {
    pub fn laguerre_morse(lambda: f64, nu: f64) -> Result<Self> {
        check_lambda(lambda)?;
        if !(nu > 0.0) {
            return Err(Error::Param("Laguerre basis requires nu > 0".into()));
        }
        let log_norm = 0.5 * (lambda.ln() - ln_gamma(2.0 * nu)?);
        Ok(Self {
            family: BasisFamily::LaguerreMorse,
            lambda,
            nu,
            ell: 0,
            log_norm,
        })
    }

    pub fn radial_laguerre(lambda: f64, ell: u32) -> Result<Self> {
        check_lambda(lambda)?;
        let log_norm = 0.5 * ((2.0 * lambda).ln() - ln_gamma(ell as f64 + 1.5)?);
        Ok(Self {
            family: BasisFamily::RadialLaguerre,
            lambda,
            nu: ell as f64 + 0.5,
            ell,
            log_norm,
        })
    }

    pub fn hermite(lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        let log_norm = 0.5 * (lambda.ln() - 0.5 * core::f64::consts::PI.ln());
        Ok(Self {
            family: BasisFamily::Hermite,
            lambda,
            nu: 0.0,
            ell: 0,
            log_norm,
        })
    }

    pub fn gegenbauer(lambda: f64, nu: f64) -> Result<Self> {
        check_lambda(lambda)?;
        if !(nu > -0.5) {
            return Err(Error::Param("Gegenbauer basis requires nu > -1/2".into()));
        }
        // h_0 = ∫(1-y²)^{ν-1/2} dy = √π Γ(ν+1/2)/Γ(ν+1)
        let ln_h0 = 0.5 * core::f64::consts::PI.ln() + ln_gamma(nu + 0.5)? - ln_gamma(nu + 1.0)?;
        Ok(Self {
            family: BasisFamily::Gegenbauer,
            lambda,
            nu,
            ell: 0,
            log_norm: 0.5 * (lambda.ln() - ln_h0),
        })
    }

    pub fn family(&self) -> BasisFamily {
        self.family
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `ν` for the Laguerre-Morse and Gegenbauer families, `ℓ + 1/2` for the
    /// radial family, `0` for Hermite.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// `y = g(x)`.
    pub fn coordinate(&self, x: f64) -> Result<f64> {
        let l = self.lambda;
        match self.family {
            BasisFamily::LaguerreMorse => Ok((-l * x).exp()),
            BasisFamily::RadialLaguerre => {
                if x > 0.0 {
                    Ok(l * l * x * x)
                } else {
                    Err(Error::Domain(alloc::format!("radial coordinate r = {x} must be positive")))
                }
            }
            BasisFamily::Hermite => Ok(l * x),
            BasisFamily::Gegenbauer => Ok((l * x).tanh()),
        }
    }

    /// `x = g⁻¹(y)`, or `None` when `y` is outside the range of `g`.
    pub fn position(&self, y: f64) -> Option<f64> {
        let l = self.lambda;
        let x = match self.family {
            BasisFamily::LaguerreMorse if y > 0.0 => -y.ln() / l,
            BasisFamily::RadialLaguerre if y > 0.0 => y.sqrt() / l,
            BasisFamily::Hermite => y / l,
            BasisFamily::Gegenbauer if y > -1.0 && y < 1.0 => y.atanh() / l,
            _ => return None,
        };
        x.is_finite().then_some(x)
    }

    /// Whether `x` lies in the configuration space of the basis.
    pub fn contains(&self, x: f64) -> bool {
        x.is_finite() && (self.family != BasisFamily::RadialLaguerre || x > 0.0)
    }

    /// Orthonormal recursion for `Q_n`, `n < len`.
    pub fn recursion(&self, len: usize) -> RecursionCoefficients {
        match self.family {
            BasisFamily::LaguerreMorse | BasisFamily::RadialLaguerre => {
                // generalized Laguerre with α = 2ν - 1 (Morse) or ℓ + 1/2 (radial)
                let alpha = match self.family {
                    BasisFamily::LaguerreMorse => 2.0 * self.nu - 1.0,
                    _ => self.nu,
                };
                RecursionCoefficients::from_fn(
                    len,
                    |n| 2.0 * n as f64 + alpha + 1.0,
                    |n| -((n as f64 + 1.0) * (n as f64 + alpha + 1.0)).sqrt(),
                )
            }
            BasisFamily::Hermite => {
                RecursionCoefficients::from_fn(len, |_| 0.0, |n| ((n as f64 + 1.0) / 2.0).sqrt())
            }
            BasisFamily::Gegenbauer => {
                let nu = self.nu;
                RecursionCoefficients::from_fn(len, |_| 0.0, |n| gegenbauer_g(nu, n))
            }
        }
    }

    /// `ln W(g(x))`.
    pub fn log_weight(&self, x: f64) -> Result<f64> {
        let y = self.coordinate(x)?;
        let l = self.lambda;
        Ok(self.log_norm
            + match self.family {
                BasisFamily::LaguerreMorse => self.nu * (-l * x) - 0.5 * y,
                BasisFamily::RadialLaguerre => 0.5 * (self.ell as f64 + 1.0) * y.ln() - 0.5 * y,
                BasisFamily::Hermite => -0.5 * y * y,
                BasisFamily::Gegenbauer => {
                    // ln(1 - tanh²) = -2 ln cosh, evaluated without cancellation
                    let t = (l * x).abs();
                    let ln_cosh = t + (-2.0 * t).exp().ln_1p() - core::f64::consts::LN_2;
                    -0.5 * (2.0 * self.nu + 1.0) * ln_cosh
                }
            })
    }

    /// `Q_0(y), …, Q_{count-1}(y)`.
    pub fn polynomials(&self, y: f64, count: usize) -> Vec<f64> {
        if count == 0 {
            return Vec::new();
        }
        let coeffs = self.recursion(count);
        // b_n never vanishes for these families
        eval_recursion(&coeffs, y, count - 1).unwrap_or_else(|_| vec![f64::NAN; count])
    }

    /// `φ_0(x), …, φ_{count-1}(x)`.
    pub fn eval_all(&self, count: usize, x: f64) -> Result<Vec<f64>> {
        let y = self.coordinate(x)?;
        let w = self.log_weight(x)?.exp();
        Ok(self.polynomials(y, count).into_iter().map(|q| w * q).collect())
    }

    /// `φ_n(x)`, normalization included.
    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        Ok(self.eval_all(n + 1, x)?[n])
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::Param("lambda must be positive".into()))
    }
}

/// `G_n = ½ √((n+1)(n+2ν) / ((n+ν)(n+ν+1)))`, the orthonormal Gegenbauer
/// recursion coefficient; `G_0` is taken in the reduced form `½√(2/(ν+1))`
/// which stays finite at `ν = 0`.
pub fn gegenbauer_g(nu: f64, n: usize) -> f64 {
    if n == 0 {
        return 0.5 * (2.0 / (nu + 1.0)).sqrt();
    }
    let n = n as f64;
    0.5 * ((n + 1.0) * (n + 2.0 * nu) / ((n + nu) * (n + nu + 1.0))).sqrt()
}

/// Classical Gegenbauer polynomials `C_0^ν(y), …, C_{n_max}^ν(y)`.
pub fn gegenbauer_classical(nu: f64, n_max: usize, y: f64) -> Vec<f64> {
    let mut c = Vec::with_capacity(n_max + 1);
    c.push(1.0);
    if n_max >= 1 {
        c.push(2.0 * nu * y);
    }
    for n in 1..n_max {
        let nf = n as f64;
        let next = (2.0 * (nf + nu) * y * c[n] - (nf + 2.0 * nu - 1.0) * c[n - 1]) / (nf + 1.0);
        c.push(next);
    }
    c
}

/// Residual of `(1-y²) C_n' = [(n+2ν)(n+2ν-1) C_{n-1} - n(n+1) C_{n+1}] / (2(n+ν))`
/// with `C_n'` from a central difference of step `1e-5`.
pub fn gegenbauer_derivative_identity(nu: f64, n: usize, y: f64) -> f64 {
    let h = 1e-5;
    let hi = gegenbauer_classical(nu, n, y + h)[n];
    let lo = gegenbauer_classical(nu, n, y - h)[n];
    let derivative = (hi - lo) / (2.0 * h);
    let c = gegenbauer_classical(nu, n + 1, y);
    let nf = n as f64;
    let lower = if n == 0 { 0.0 } else { c[n - 1] };
    let rhs = 0.5 / (nf + nu)
        * ((nf + 2.0 * nu) * (nf + 2.0 * nu - 1.0) * lower - nf * (nf + 1.0) * c[n + 1]);
    ((1.0 - y * y) * derivative - rhs).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::integrate_pieces;
    use proptest::prelude::*;

    fn all_bases() -> [BasisSet; 4] {
        [
            BasisSet::laguerre_morse(1.3, 2.5).unwrap(),
            BasisSet::radial_laguerre(0.8, 1).unwrap(),
            BasisSet::hermite(1.1).unwrap(),
            BasisSet::gegenbauer(0.9, 3.2).unwrap(),
        ]
    }

    fn native_range(b: &BasisSet) -> (f64, f64) {
        match b.family() {
            BasisFamily::LaguerreMorse => (-4.0, 40.0),
            BasisFamily::RadialLaguerre => (1e-9, 12.0),
            BasisFamily::Hermite => (-12.0, 12.0),
            BasisFamily::Gegenbauer => (-40.0, 40.0),
        }
    }

    #[test]
    fn recursion_degree_zero() {
        let c = RecursionCoefficients::new(vec![2.0], vec![3.0]).unwrap();
        assert_eq!(eval_recursion(&c, 7.0, 0).unwrap(), vec![1.0]);
        assert_eq!(eval_recursion(&c, 5.0, 1).unwrap()[1], 1.0);
    }

    #[test]
    fn recursion_zero_offdiag() {
        let c = RecursionCoefficients::new(vec![1.0, 1.0], vec![0.5, 0.0]).unwrap();
        assert!(eval_recursion(&c, 0.3, 1).is_ok());
        assert_eq!(eval_recursion(&c, 0.3, 2), Err(Error::ZeroOffdiag { index: 1 }));
        assert!(eval_recursion(&c, 0.3, 3).is_err());
    }

    #[test]
    fn cdh_coefficients() {
        let p = PhysicalParams::new(-3.7, 2.5);
        let c = cdh_recursion(&p, 3).unwrap();
        assert!((c.diag()[0] + 12.25).abs() < 1e-12);
        assert!((c.offdiag()[0] - 1.2 * 5f64.sqrt()).abs() < 1e-12);
        assert!((c.offdiag()[0] - 2.683_282).abs() < 1e-6);
        assert!((c.diag()[1] + 8.65).abs() < 1e-12);
        let p1 = eval_recursion(&c, -12.25, 1).unwrap()[1];
        assert!(p1.abs() < 1e-15);
    }

    #[test]
    fn cdh_degenerate_when_a_equals_minus_mu() {
        let p = PhysicalParams::fig3();
        assert_eq!(cdh_recursion(&p, 5), Err(Error::DegenerateRecursion { index: 0 }));
    }

    #[test]
    fn jacobi_matrices() {
        let c = RecursionCoefficients::new(vec![4.0, 1.0], vec![2.0, 2.0]).unwrap();
        let j = jacobi_matrix(&c, 1).unwrap();
        assert_eq!(j.diag(), &[4.0]);
        let h = BasisSet::hermite(1.0).unwrap().recursion(4);
        let j = jacobi_matrix(&h, 2).unwrap();
        assert_eq!(j.diag(), &[0.0, 0.0]);
        assert!((j.offdiag()[0] - 0.5f64.sqrt()).abs() < 1e-15);
        let cdh = cdh_recursion(&PhysicalParams::new(-3.7, 2.5), 4).unwrap();
        let j = jacobi_matrix(&cdh, 2).unwrap();
        assert!((j.diag()[1] + 8.65).abs() < 1e-12);
        assert!(jacobi_matrix(&cdh, 5).is_err());
    }

    #[test]
    fn hermite_nodes() {
        let h = BasisSet::hermite(1.0).unwrap().recursion(4);
        let n1 = quadrature_nodes(&TridiagonalSymmetric::new(vec![2.5], vec![]).unwrap()).unwrap();
        assert_eq!(n1, vec![2.5]);
        let n2 = quadrature_nodes(&jacobi_matrix(&h, 2).unwrap()).unwrap();
        assert!((n2[0] + 0.5f64.sqrt()).abs() < 1e-15 && (n2[1] - 0.5f64.sqrt()).abs() < 1e-15);
        let n3 = quadrature_nodes(&jacobi_matrix(&h, 3).unwrap()).unwrap();
        let r = 1.5f64.sqrt();
        assert!((n3[0] + r).abs() < 1e-14 && n3[1].abs() < 1e-14 && (n3[2] - r).abs() < 1e-14);
    }

    #[test]
    fn nodes_strictly_increasing() {
        for b in all_bases() {
            let nodes = quadrature_nodes(&jacobi_matrix(&b.recursion(40), 40).unwrap()).unwrap();
            assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn gauss_rule_is_exact() {
        for b in all_bases() {
            let n = 8;
            let (nodes, weights) = gauss_rule(&b.recursion(n), n).unwrap();
            let q: Vec<Vec<f64>> = nodes.iter().map(|&y| b.polynomials(y, 2 * n)).collect();
            for i in 0..2 * n {
                for j in 0..2 * n - i {
                    let s: f64 = (0..n).map(|k| weights[k] * q[k][i] * q[k][j]).sum();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((s - expect).abs() < 1e-8, "{:?} {i} {j}: {s}", b.family());
                }
            }
        }
    }

    #[test]
    fn basis_is_orthonormal() {
        for b in all_bases() {
            let (lo, hi) = native_range(&b);
            for n in 0..=5 {
                for m in n..=5 {
                    let breaks: Vec<f64> = (0..=40).map(|k| lo + (hi - lo) * k as f64 / 40.0).collect();
                    let v = integrate_pieces(
                        |x| b.eval(n, x).unwrap() * b.eval(m, x).unwrap(),
                        &breaks,
                        1e-13,
                        1e-12,
                    )
                    .value;
                    let expect = if n == m { 1.0 } else { 0.0 };
                    assert!((v - expect).abs() < 1e-8, "{:?} <{n}|{m}> = {v}", b.family());
                }
            }
        }
    }

    #[test]
    fn basis_point_values() {
        let h = BasisSet::hermite(1.0).unwrap();
        assert!((h.eval(0, 0.0).unwrap() - 0.751_125_5).abs() < 1e-7);
        let g = BasisSet::gegenbauer(1.0, 1.7).unwrap();
        assert!(g.eval(1, 0.0).unwrap().abs() < 1e-15);
        // φ_0 = C_0 y^ν e^{-y/2} with C_0 = √(λ/Γ(2ν)); at y = 2ν, Γ(5) = 24
        let l = BasisSet::laguerre_morse(1.0, 2.5).unwrap();
        let y: f64 = 5.0;
        let x = -y.ln();
        let expect = (1.0f64 / 24.0).sqrt() * y.powf(2.5) * (-2.5f64).exp();
        assert!((l.eval(0, x).unwrap() - expect).abs() < 1e-14);
        // φ_0 peaks where y = 2ν
        assert!(l.eval(0, x).unwrap() > l.eval(0, x + 0.01).unwrap());
        assert!(l.eval(0, x).unwrap() > l.eval(0, x - 0.01).unwrap());
    }

    #[test]
    fn radial_basis_domain() {
        let r = BasisSet::radial_laguerre(1.0, 1).unwrap();
        assert!(matches!(r.eval(0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(r.eval(2, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn coordinate_round_trip() {
        for b in all_bases() {
            for x in [0.3, 1.7, 2.9] {
                let y = b.coordinate(x).unwrap();
                assert!((b.position(y).unwrap() - x).abs() < 1e-12);
            }
        }
        let g = BasisSet::gegenbauer(1.0, 2.0).unwrap();
        assert_eq!(g.position(1.0), None);
        assert_eq!(BasisSet::laguerre_morse(1.0, 2.0).unwrap().position(-0.1), None);
    }

    #[test]
    fn gegenbauer_identity() {
        assert!(gegenbauer_derivative_identity(1.5, 0, 0.4) < 1e-12);
        assert!(gegenbauer_derivative_identity(1.5, 2, 0.3) < 1e-6);
        assert!(gegenbauer_derivative_identity(2.5, 5, -0.7) < 1e-6);
    }

    #[test]
    fn gegenbauer_classical_matches_orthonormal() {
        // C_n^ν = Q_n √(h_n/h_0), h_n ∝ Γ(n+2ν)/(n!(n+ν))
        let nu = 3.2;
        let b = BasisSet::gegenbauer(1.0, nu).unwrap();
        let y = 0.37;
        let q = b.polynomials(y, 7);
        let c = gegenbauer_classical(nu, 6, y);
        for n in 0..7 {
            let nf = n as f64;
            let ratio = (ln_gamma(nf + 2.0 * nu).unwrap()
                - crate::special::ln_factorial(n)
                - (nf + nu).ln()
                - ln_gamma(2.0 * nu).unwrap()
                + nu.ln())
            .exp()
            .sqrt();
            assert!((c[n] - q[n] * ratio).abs() < 1e-12 * c[n].abs().max(1.0));
        }
    }

    proptest! {
        #[test]
        fn recursion_residual(s in -30.0f64..30.0, family in 0usize..5) {
            let coeffs = match family {
                4 => cdh_recursion(&PhysicalParams::new(-3.7, 2.5), 31).unwrap(),
                k => all_bases()[k].recursion(31),
            };
            let p = eval_recursion(&coeffs, s, 31).unwrap();
            let (a, b) = (coeffs.diag(), coeffs.offdiag());
            for n in 0..30 {
                let prev = if n == 0 { 0.0 } else { b[n - 1] * p[n - 1] };
                let r = s * p[n] - a[n] * p[n] - prev - b[n] * p[n + 1];
                let scale = p[n + 1].abs().max(1.0);
                prop_assert!(r.abs() <= 1e-10 * scale * (1.0 + s.abs() + a[n].abs()));
            }
        }
    }
}
