// shadowed by inherent methods whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Physical and basis parameters of one system.
///
/// `mu` and `a` fix the polynomial `S_n^μ(z²; a, a)`; `lambda` is the inverse
/// length scale; `alpha` is the extra constant of the non-conventional energy
/// maps; `nu` and `ell` parametrize the basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub mu: f64,
    pub a: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub nu: f64,
    pub ell: u32,
}

impl PhysicalParams {
    /// `λ = 1`, `α = 0`, `ν = a`, `ℓ = 0`.
    pub fn new(mu: f64, a: f64) -> Self {
        Self {
            mu,
            a,
            lambda: 1.0,
            alpha: 0.0,
            nu: a,
            ell: 0,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_nu(mut self, nu: f64) -> Self {
        self.nu = nu;
        self
    }

    pub fn with_ell(mut self, ell: u32) -> Self {
        self.ell = ell;
        self
    }

    /// Morse preset: `μ = -3.7`, `a = ν = 2.5`.
    pub fn fig1() -> Self {
        Self::new(-3.7, 2.5)
    }

    /// Radial set `{μ, a, ℓ, α} = {-7.7, -μ, 1, ℓ/2}`.
    pub fn fig2() -> Self {
        let mu = -7.7;
        Self::new(mu, -mu).with_ell(1).with_alpha(0.5)
    }

    /// Exponential-Gaussian set `{μ, a, α} = {-4.3, -μ, 0.2}`.
    pub fn fig3() -> Self {
        let mu = -4.3;
        Self::new(mu, -mu).with_alpha(0.2)
    }

    /// Hyperbolic-sine set `{μ, a, α} = {-3.2, -μ, 0.3}`, `ν = a`.
    pub fn fig4() -> Self {
        let mu = -3.2;
        Self::new(mu, -mu).with_alpha(0.3)
    }

    /// Checks the constraints shared by every system.
    pub fn validate(&self) -> Result<()> {
        let fields = [self.mu, self.a, self.lambda, self.alpha, self.nu];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(Error::Param("parameters must be finite".into()));
        }
        if !(self.mu < 0.0) || self.mu == self.mu.round() {
            return Err(Error::Param("mu must be negative non-integer".into()));
        }
        if !(self.a > 0.0) {
            return Err(Error::Param("a must be positive".into()));
        }
        if !(self.lambda > 0.0) {
            return Err(Error::Param("lambda must be positive".into()));
        }
        Ok(())
    }

    /// Highest bound-state index `⌊-μ⌋`.
    pub fn k_max(&self) -> usize {
        (-self.mu).floor() as usize
    }
}
