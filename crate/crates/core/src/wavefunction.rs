//! Bound and continuum components of the wavefunction,
//! `ψ(x) = √w Σ_n P_n(z²) φ_n(x)`, and the divergence diagnostic for
//! energies off the spectrum.

use alloc::vec::Vec;

use num_complex::Complex64;
// shadowed by inherent methods whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::ortho_poly::{cdh_recursion, eval_recursion};
use crate::system::{weight_omega, weight_rho, QuantumSystem};

/// One point of a truncated series.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionSample {
    pub x: f64,
    pub value: f64,
    /// Running maximum of `|partial sum|` at truncations `N/4, N/2, 3N/4, N`
    /// (each at least one term).
    pub partial_norms: Vec<f64>,
}

fn checkpoints(n: usize) -> [usize; 4] {
    [1, 2, 3, 4].map(|i| (i * n / 4).max(1))
}

/// `prefactor · Σ_{n<N} P_n(s) φ_n(x)` with its partial-sum record.
fn series(system: &QuantumSystem, s: f64, x: f64, n: usize, prefactor: f64) -> Result<WavefunctionSample> {
    if n == 0 {
        return Err(Error::Param("truncation size must be at least 1".into()));
    }
    let coeffs = cdh_recursion(&system.params, n)?;
    let p = eval_recursion(&coeffs, s, n - 1)?;
    let phi = system.basis.eval_all(n, x)?;
    let marks = checkpoints(n);
    let mut partial_norms = Vec::with_capacity(4);
    let (mut sum, mut running) = (0.0f64, 0.0f64);
    let mut next = 0;
    for m in 0..n {
        sum += p[m] * phi[m];
        running = running.max((prefactor * sum).abs());
        while next < 4 && marks[next] == m + 1 {
            partial_norms.push(running);
            next += 1;
        }
    }
    Ok(WavefunctionSample {
        x,
        value: prefactor * sum,
        partial_norms,
    })
}

/// `ψ_k(x) = √ω_k Σ_{n<N} P_n(-(k+μ)²) φ_n(x)`.
pub fn bound_component(system: &QuantumSystem, k: usize, x: f64, n: usize) -> Result<WavefunctionSample> {
    let k_max = system.params.k_max();
    if k > k_max {
        return Err(Error::Param(alloc::format!("level {k} exceeds the highest bound state {k_max}")));
    }
    let omega = weight_omega(&system.params, k)?;
    if !(omega > 0.0) {
        return Err(Error::Domain(alloc::format!("weight of level {k} is {omega}, not positive")));
    }
    let shift = k as f64 + system.params.mu;
    series(system, -shift * shift, x, n, omega.sqrt())
}

/// `ψ(x, E) = √ρ(z) Σ_{n<N} P_n(z²) φ_n(x)`, `E` in the continuum.
pub fn continuum_component(system: &QuantumSystem, energy: f64, x: f64, n: usize) -> Result<WavefunctionSample> {
    let z = system.map.z_of_energy(energy)?;
    let rho = weight_rho(&system.params, z)?;
    series(system, z * z, x, n, rho.sqrt())
}

/// Largest ratio `partial_norms[last] / partial_norms[first]` of the
/// unweighted series at `s = z²(E)` over `probes`.
///
/// A bounded ratio (about 1) means the series settles; a ratio well above
/// 10 signals an energy that is neither a bound level nor in the continuum.
/// NaN when `z²(E)` is undefined or no probe can be evaluated.
pub fn divergence_diagnostic(system: &QuantumSystem, energy: f64, probes: &[f64], n: usize) -> f64 {
    let s = system.map.inverse(energy);
    if !s.is_finite() {
        return f64::NAN;
    }
    probes
        .iter()
        .filter_map(|&x| series(system, s, x, n, 1.0).ok())
        .map(|w| {
            let first = w.partial_norms[0];
            let last = w.partial_norms[w.partial_norms.len() - 1];
            if first > 0.0 {
                last / first
            } else if last > 0.0 {
                f64::INFINITY
            } else {
                1.0
            }
        })
        .fold(f64::NAN, f64::max)
}

/// `Σ_k c_k e^{-iE_k t} ψ_k(x)` over the given `(k, c_k)`.
pub fn bound_superposition(
    system: &QuantumSystem,
    amplitudes: &[(usize, Complex64)],
    x: f64,
    t: f64,
    n: usize,
) -> Result<Complex64> {
    let spectrum = system.spectrum()?;
    let mut total = Complex64::new(0.0, 0.0);
    for &(k, c) in amplitudes {
        let psi = bound_component(system, k, x, n)?.value;
        let energy = *spectrum
            .energies
            .get(k)
            .ok_or_else(|| Error::Param(alloc::format!("level {k} out of range")))?;
        total += c * Complex64::from_polar(1.0, -energy * t) * psi;
    }
    Ok(total)
}

impl QuantumSystem {
    pub fn bound_component(&self, k: usize, x: f64, n: usize) -> Result<WavefunctionSample> {
        bound_component(self, k, x, n)
    }

    pub fn continuum_component(&self, energy: f64, x: f64, n: usize) -> Result<WavefunctionSample> {
        continuum_component(self, energy, x, n)
    }
}
