//! Energy maps `E(z²)`, bound spectra, phase shifts and the weight
//! functions of the continuous dual Hahn polynomials.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
// shadowed by inherent methods whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::ortho_poly::BasisSet;
use crate::params::PhysicalParams;
use crate::special::{ln_factorial, ln_gamma, log_gamma_complex, log_pochhammer};

/// The four built-in systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemKind {
    /// Morse potential, Laguerre basis in `e^{-λx}`.
    Morse,
    /// 3D radial problem with `E = ½λ²(z² - α²/z²)`, Laguerre basis in `λ²r²`.
    Radial,
    /// `E = ½λ²(e^{αz²} - 1)` on the whole line, Hermite basis.
    ExpGauss,
    /// `E = ½λ² sinh(αz²)` on the whole line, Gegenbauer basis in `tanh λx`.
    Sinh,
}

impl SystemKind {
    pub const ALL: [SystemKind; 4] = [Self::Morse, Self::Radial, Self::ExpGauss, Self::Sinh];

    pub fn name(self) -> &'static str {
        match self {
            Self::Morse => "morse",
            Self::Radial => "radial",
            Self::ExpGauss => "expgauss",
            Self::Sinh => "sinh",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `E(s)` with `s = z²`, together with the inverse on the continuum branch.
#[derive(Clone)]
pub enum SpectralMap {
    Morse { lambda: f64 },
    RadialInverse { lambda: f64, alpha: f64 },
    ExpGauss { lambda: f64, alpha: f64 },
    Sinh { lambda: f64, alpha: f64 },
    /// User-supplied map; `inverse` must return `s = z²` and should yield a
    /// non-positive value (or NaN) outside the continuum.
    Custom { forward: ScalarFn, inverse: ScalarFn },
}

impl fmt::Debug for SpectralMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Morse { lambda } => f.debug_struct("Morse").field("lambda", lambda).finish(),
            Self::RadialInverse { lambda, alpha } => f
                .debug_struct("RadialInverse")
                .field("lambda", lambda)
                .field("alpha", alpha)
                .finish(),
            Self::ExpGauss { lambda, alpha } => f
                .debug_struct("ExpGauss")
                .field("lambda", lambda)
                .field("alpha", alpha)
                .finish(),
            Self::Sinh { lambda, alpha } => f
                .debug_struct("Sinh")
                .field("lambda", lambda)
                .field("alpha", alpha)
                .finish(),
            Self::Custom { .. } => f.write_str("Custom"),
        }
    }
}

impl SpectralMap {
    /// The built-in map of `kind`, with `λ` and `α` taken from `params`.
    pub fn for_system(kind: SystemKind, params: &PhysicalParams) -> Result<Self> {
        let (lambda, alpha) = (params.lambda, params.alpha);
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Param("lambda must be positive".into()));
        }
        match kind {
            SystemKind::Morse => Ok(Self::Morse { lambda }),
            SystemKind::Radial if alpha >= 0.0 => Ok(Self::RadialInverse { lambda, alpha }),
            SystemKind::ExpGauss if alpha > 0.0 => Ok(Self::ExpGauss { lambda, alpha }),
            SystemKind::Sinh if alpha > 0.0 => Ok(Self::Sinh { lambda, alpha }),
            SystemKind::Radial => Err(Error::Param("alpha must be non-negative".into())),
            _ => Err(Error::Param("alpha must be positive".into())),
        }
    }

    pub fn custom(
        forward: impl Fn(f64) -> f64 + Send + Sync + 'static,
        inverse: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::Custom {
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
        }
    }

    /// `E(s)`.
    pub fn forward(&self, s: f64) -> f64 {
        match self {
            Self::Morse { lambda } => 0.5 * lambda * lambda * s,
            Self::RadialInverse { lambda, alpha } => 0.5 * lambda * lambda * (s - alpha * alpha / s),
            Self::ExpGauss { lambda, alpha } => 0.5 * lambda * lambda * (alpha * s).exp_m1(),
            Self::Sinh { lambda, alpha } => 0.5 * lambda * lambda * (alpha * s).sinh(),
            Self::Custom { forward, .. } => forward(s),
        }
    }

    /// `s = z²(E)` on the continuum branch; NaN where undefined.
    pub fn inverse(&self, energy: f64) -> f64 {
        match self {
            Self::Morse { lambda } => 2.0 * energy / (lambda * lambda),
            Self::RadialInverse { lambda, alpha } => {
                let e = energy / (lambda * lambda);
                let root = e.hypot(*alpha);
                if e >= 0.0 {
                    e + root
                } else {
                    alpha * alpha / (root - e)
                }
            }
            Self::ExpGauss { lambda, alpha } => (2.0 * energy / (lambda * lambda)).ln_1p() / alpha,
            Self::Sinh { lambda, alpha } => (2.0 * energy / (lambda * lambda)).asinh() / alpha,
            Self::Custom { inverse, .. } => inverse(energy),
        }
    }

    /// `(c₀, c₁)` when `E(s) = c₀ + c₁ s` exactly.
    pub fn affine(&self) -> Option<(f64, f64)> {
        match self {
            Self::Morse { lambda } => Some((0.0, 0.5 * lambda * lambda)),
            Self::RadialInverse { lambda, alpha } if *alpha == 0.0 => Some((0.0, 0.5 * lambda * lambda)),
            _ => None,
        }
    }

    /// Whether `energy` lies in the continuous spectrum, i.e. `z²(E) > 0`.
    pub fn in_continuum(&self, energy: f64) -> bool {
        let s = self.inverse(energy);
        energy.is_finite() && s.is_finite() && s > 0.0
    }

    /// `z(E) > 0` for `E` in the continuum.
    pub fn z_of_energy(&self, energy: f64) -> Result<f64> {
        let s = self.inverse(energy);
        if energy.is_finite() && s.is_finite() && s > 0.0 {
            Ok(s.sqrt())
        } else {
            Err(Error::Domain(alloc::format!("energy {energy} is outside the continuum")))
        }
    }
}

/// Bound-state energies with their discrete weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub energies: Vec<f64>,
    pub k_max: usize,
    pub omega: Vec<f64>,
    /// Indices `k` with `ω_k <= 0`. Reported, not corrected.
    pub nonpositive_weights: Vec<usize>,
}

impl SpectrumResult {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn omega_sum(&self) -> f64 {
        self.omega.iter().sum()
    }
}

fn check_mu(params: &PhysicalParams) -> Result<()> {
    let mu = params.mu;
    if !(mu < 0.0) || mu == mu.round() || !mu.is_finite() {
        return Err(Error::Param("mu must be negative non-integer".into()));
    }
    Ok(())
}

/// `E_k = E(-(k+μ)²)`, `k = 0…⌊-μ⌋`, with `ω_k`.
pub fn bound_spectrum(map: &SpectralMap, params: &PhysicalParams) -> Result<SpectrumResult> {
    check_mu(params)?;
    let k_max = params.k_max();
    let mut energies = Vec::with_capacity(k_max + 1);
    let mut omega = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let shift = k as f64 + params.mu;
        energies.push(map.forward(-shift * shift));
        omega.push(weight_omega(params, k)?);
    }
    let nonpositive_weights = omega
        .iter()
        .enumerate()
        .filter(|(_, w)| !(**w > 0.0))
        .map(|(k, _)| k)
        .collect();
    Ok(SpectrumResult {
        energies,
        k_max,
        omega,
        nonpositive_weights,
    })
}

/// `δ(E) = arg Γ(2iz) - arg Γ(μ+iz) - 2 arg Γ(a+iz)` with the phases taken
/// on the continuous branch, so `δ` is continuous in `E`.
pub fn phase_shift(map: &SpectralMap, params: &PhysicalParams, energy: f64) -> Result<f64> {
    let z = map.z_of_energy(energy)?;
    phase_shift_at(params, z)
}

/// [`phase_shift`] as a function of `z > 0`.
pub fn phase_shift_at(params: &PhysicalParams, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(alloc::format!("z = {z} must be positive")));
    }
    let arg = |re: f64, im: f64| log_gamma_complex(Complex64::new(re, im)).map(|r| r.argument);
    Ok(arg(0.0, 2.0 * z)? - arg(params.mu, z)? - 2.0 * arg(params.a, z)?)
}

/// `ln ρ(z)`.
///
/// `ρ(z) = |Γ(μ+iz)|² [Γ(a+iz)Γ(a-iz)]² / (|Γ(2iz)|² 2π Γ(2a) Γ²(μ+a))`.
pub fn log_weight_rho(params: &PhysicalParams, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(alloc::format!("z = {z} must be positive")));
    }
    let lm = |re: f64, im: f64| log_gamma_complex(Complex64::new(re, im)).map(|r| r.log_modulus);
    let (mu, a) = (params.mu, params.a);
    Ok(2.0 * lm(mu, z)? + 4.0 * lm(a, z)?
        - 2.0 * lm(0.0, 2.0 * z)?
        - (2.0 * core::f64::consts::PI).ln()
        - ln_gamma(2.0 * a)?
        - 2.0 * lm(mu + a, 0.0)?)
}

/// Continuous weight `ρ(z) ≥ 0`, `z > 0`.
pub fn weight_rho(params: &PhysicalParams, z: f64) -> Result<f64> {
    log_weight_rho(params, z).map(f64::exp)
}

/// Discrete weight
///
/// ```text
/// ω_k = (k+μ)/k! · 2(-1)^{k+1} (2μ)_k / (Γ(2a)Γ(1-2μ)) · [Γ(a-μ)(μ+a)_k / (μ-a+1)_k]²
/// ```
///
/// evaluated as a sum of logarithms with the sign tracked separately. A
/// vanishing `(μ+a)_k` or `(2μ)_k` gives `ω_k = 0`; a vanishing `(μ-a+1)_k`
/// is a pole.
pub fn weight_omega(params: &PhysicalParams, k: usize) -> Result<f64> {
    let (mu, a) = (params.mu, params.a);
    let (ln_den, sign_den) = log_pochhammer(mu - a + 1.0, k);
    if sign_den == 0.0 {
        return Err(Error::Pole { re: mu - a + 1.0, im: 0.0 });
    }
    let (ln_2mu, sign_2mu) = log_pochhammer(2.0 * mu, k);
    let (ln_num, sign_num) = log_pochhammer(mu + a, k);
    let shift = k as f64 + mu;
    if sign_2mu == 0.0 || sign_num == 0.0 || shift == 0.0 {
        return Ok(0.0);
    }
    let parity = if k % 2 == 0 { -1.0 } else { 1.0 };
    let sign = shift.signum() * parity * sign_2mu;
    let log_abs = shift.abs().ln() - ln_factorial(k) + core::f64::consts::LN_2 + ln_2mu
        - ln_gamma(2.0 * a)?
        - ln_gamma(1.0 - 2.0 * mu)?
        + 2.0 * (ln_gamma(a - mu)? + ln_num - ln_den);
    Ok(sign * log_abs.exp())
}

/// A designed system: parameters, energy map and basis.
#[derive(Debug, Clone)]
pub struct QuantumSystem {
    pub kind: SystemKind,
    pub params: PhysicalParams,
    pub map: SpectralMap,
    pub basis: BasisSet,
}

impl QuantumSystem {
    /// Built-in system: Morse uses the Laguerre basis with `ν`, radial the
    /// Laguerre basis with `ℓ`, ExpGauss the Hermite basis, Sinh the
    /// Gegenbauer basis with `ν`.
    pub fn new(kind: SystemKind, params: PhysicalParams) -> Result<Self> {
        params.validate()?;
        let map = SpectralMap::for_system(kind, &params)?;
        let basis = match kind {
            SystemKind::Morse => BasisSet::laguerre_morse(params.lambda, params.nu)?,
            SystemKind::Radial => BasisSet::radial_laguerre(params.lambda, params.ell)?,
            SystemKind::ExpGauss => BasisSet::hermite(params.lambda)?,
            SystemKind::Sinh => BasisSet::gegenbauer(params.lambda, params.nu)?,
        };
        Ok(Self {
            kind,
            params,
            map,
            basis,
        })
    }

    /// Replaces the energy map, e.g. by a [`SpectralMap::Custom`].
    pub fn with_map(mut self, map: SpectralMap) -> Self {
        self.map = map;
        self
    }

    pub fn spectrum(&self) -> Result<SpectrumResult> {
        bound_spectrum(&self.map, &self.params)
    }

    pub fn phase_shift(&self, energy: f64) -> Result<f64> {
        phase_shift(&self.map, &self.params, energy)
    }
}
