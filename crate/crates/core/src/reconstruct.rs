//! Local potential function `V(x)` from the potential matrix.
//!
//! Two routes are provided. [`Method::Series`] sums `V(x) ≅ Σ_m Q_m(y) V_{m,0}`
//! directly on the grid. [`Method::QuadFit`] evaluates the same sum only at
//! the Gauss nodes of the basis polynomials, where truncation oscillations
//! cross the true curve, and interpolates those samples with a Thiele
//! continued fraction.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

// shadowed by inherent methods whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hamiltonian::OperatorMatrices;
use crate::ortho_poly::{jacobi_matrix, quadrature_nodes, BasisSet};
use crate::params::PhysicalParams;
use crate::system::QuantumSystem;

/// Inverse-difference denominators below this fraction of their operands
/// are treated as zero.
pub const PIVOT_TOL: f64 = 1e-13;
/// Required agreement of a continued fraction with its own nodes, relative
/// to `max(1, max|V|)`.
pub const NODE_TOL: f64 = 1e-9;
/// The fraction stops growing once every remaining node is matched to this
/// fraction of `max(1, max|V|)`.
pub const FIT_TOL: f64 = 1e-12;
/// Extra truncation used for the convergence indicator.
pub const CONVERGENCE_STEP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Series,
    QuadFit,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::QuadFit => "quadfit",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "series" => Ok(Method::Series),
            "quadfit" => Ok(Method::QuadFit),
            _ => Err(Error::Param(alloc::format!("unknown method '{s}' (series|quadfit)"))),
        }
    }
}

/// `start:stop:step`; includes `start` and every `start + i·step <= stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) || !(step > 0.0) {
            return Err(Error::Param(alloc::format!(
                "grid needs finite bounds and a positive step, got {start}:{stop}:{step}"
            )));
        }
        Ok(Self { start, stop, step })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.stop < self.start {
            return Vec::new();
        }
        // slack absorbs rounding in (stop - start)/step
        let count = ((self.stop - self.start) / self.step * (1.0 + 1e-12) + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let bad = || Error::Param(alloc::format!("grid '{s}' is not start:stop:step"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
        Grid::new(num(parts[0])?, num(parts[1])?, num(parts[2])?)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

/// `V(x) ≅ Σ_m Q_m(g(x)) V_{m,0}`.
pub fn potential_series(mats: &OperatorMatrices, basis: &BasisSet, x: f64) -> Result<f64> {
    potential_series_column(mats, basis, x, 0)
}

/// `V(x) ≅ Σ_m Q_m(g(x)) V_{m,n} / Q_n(g(x))`; any column reproduces the
/// potential up to truncation error.
pub fn potential_series_column(mats: &OperatorMatrices, basis: &BasisSet, x: f64, column: usize) -> Result<f64> {
    if column >= mats.n {
        return Err(Error::Domain(alloc::format!("column {column} outside a {0}×{0} matrix", mats.n)));
    }
    let y = basis.coordinate(x)?;
    Ok(series_at(mats, basis, y, column))
}

fn series_at(mats: &OperatorMatrices, basis: &BasisSet, y: f64, column: usize) -> f64 {
    let q = basis.polynomials(y, mats.n);
    let sum: f64 = q.iter().enumerate().map(|(m, qm)| qm * mats.v[(m, column)]).sum();
    sum / q[column]
}

/// Samples of the series at the Gauss nodes of the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSamples {
    /// `(x_n, V(x_n))`, `x` increasing.
    pub points: Vec<(f64, f64)>,
    /// Nodes whose `y_n` fell outside the range of `g`.
    pub dropped: usize,
}

/// Evaluates the series at `x_n = g⁻¹(y_n)`, `y_n` the eigenvalues of the
/// `N × N` basis Jacobi matrix.
pub fn quadrature_sample(mats: &OperatorMatrices, basis: &BasisSet) -> Result<NodeSamples> {
    let nodes = quadrature_nodes(&jacobi_matrix(&basis.recursion(mats.n), mats.n)?)?;
    let mut points = Vec::with_capacity(nodes.len());
    let mut dropped = 0;
    for y in nodes {
        match basis.position(y) {
            Some(x) => points.push((x, series_at(mats, basis, y, 0))),
            None => dropped += 1,
        }
    }
    if points.is_empty() {
        return Err(Error::NoValidNodes);
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(NodeSamples { points, dropped })
}

/// Thiele continued fraction
/// `f(x) = c_0 + (x - x_0)/(c_1 + (x - x_1)/(c_2 + …))`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFit {
    /// All data points, the first `depth()` in the order used by the
    /// fraction.
    pub nodes: Vec<(f64, f64)>,
    /// Inverse differences `c_0 … c_d`, `d + 1 <= nodes.len()`.
    pub coefficients: Vec<f64>,
}

impl RationalFit {
    pub fn eval(&self, x: f64) -> f64 {
        eval_prefix(&self.nodes, &self.coefficients, x)
    }

    pub fn depth(&self) -> usize {
        self.coefficients.len()
    }
}

fn leja_order(points: &[(f64, f64)], first: usize) -> Vec<(f64, f64)> {
    let mut remaining: Vec<(f64, f64)> = points.to_vec();
    let mut ordered = Vec::with_capacity(points.len());
    ordered.push(remaining.swap_remove(first));
    // running log-product of distances to the chosen nodes
    let mut score: Vec<f64> = remaining.iter().map(|p| (p.0 - ordered[0].0).abs().ln()).collect();
    while !remaining.is_empty() {
        let best = score
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let chosen = remaining.swap_remove(best);
        score.swap_remove(best);
        for (s, p) in score.iter_mut().zip(&remaining) {
            *s += (p.0 - chosen.0).abs().ln();
        }
        ordered.push(chosen);
    }
    ordered
}

fn eval_prefix(nodes: &[(f64, f64)], coefficients: &[f64], x: f64) -> f64 {
    let d = coefficients.len() - 1;
    let mut v = coefficients[d];
    for j in (0..d).rev() {
        let dx = x - nodes[j].0;
        v = if dx == 0.0 { coefficients[j] } else { coefficients[j] + dx / v };
    }
    v
}

fn thiele(mut nodes: Vec<(f64, f64)>) -> Option<RationalFit> {
    let n = nodes.len();
    let scale = nodes.iter().fold(1.0f64, |m, p| m.max(p.1.abs()));
    let mut phi: Vec<f64> = nodes.iter().map(|p| p.1).collect();
    let mut coefficients = Vec::with_capacity(n);
    coefficients.push(phi[0]);
    for j in 1..n {
        // deeper levels only add rounding once the remaining nodes are matched
        let matched = nodes[j..]
            .iter()
            .all(|&(x, v)| (eval_prefix(&nodes, &coefficients, x) - v).abs() <= FIT_TOL * scale);
        if matched {
            break;
        }
        let (prev_x, prev) = (nodes[j - 1].0, phi[j - 1]);
        // a difference at the rounding level of its operands counts as zero;
        // the infinite inverse difference becomes zero again one level down
        for i in j..n {
            let d = phi[i] - prev;
            let size = phi[i].abs().max(prev.abs());
            phi[i] = if d.abs() <= PIVOT_TOL * size {
                f64::INFINITY
            } else {
                (nodes[i].0 - prev_x) / d
            };
        }
        let pivot = (j..n).find(|&i| phi[i].is_finite())?;
        nodes.swap(j, pivot);
        phi.swap(j, pivot);
        coefficients.push(phi[j]);
    }
    let fit = RationalFit { nodes, coefficients };
    let exact = fit
        .nodes
        .iter()
        .all(|&(x, v)| (fit.eval(x) - v).abs() <= NODE_TOL * scale);
    exact.then_some(fit)
}

/// Continued-fraction interpolant through `points`.
///
/// Nodes are taken in Leja order starting from the node farthest from the
/// mean, skipping at each level nodes whose inverse difference is infinite,
/// and the fraction stops as soon as it matches all remaining nodes. If
/// the result misses a node, one retry starts from the node nearest the
/// center.
pub fn rational_fit(points: &[(f64, f64)]) -> Result<RationalFit> {
    if points.is_empty() {
        return Err(Error::Domain("rational fit needs at least one point".into()));
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::DegenerateNodes { x: w[0].0 });
    }
    if sorted.iter().any(|p| !(p.0.is_finite() && p.1.is_finite())) {
        return Err(Error::Domain("rational fit needs finite points".into()));
    }
    let center = sorted.iter().map(|p| p.0).sum::<f64>() / sorted.len() as f64;
    let far = if center - sorted[0].0 >= sorted[sorted.len() - 1].0 - center {
        0
    } else {
        sorted.len() - 1
    };
    if let Some(fit) = thiele(leja_order(&sorted, far)) {
        return Ok(fit);
    }
    let seed = sorted
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 .0 - center).abs().total_cmp(&(b.1 .0 - center).abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    thiele(leja_order(&sorted, seed)).ok_or(Error::Pivot { level: sorted.len() })
}

/// `V(x) = λ²/8 [e^{-2λx} + 2(2μ-1) e^{-λx}]`.
pub fn morse_exact(params: &PhysicalParams, x: f64) -> f64 {
    let l = params.lambda;
    let e = (-l * x).exp();
    0.125 * l * l * (e * e + 2.0 * (2.0 * params.mu - 1.0) * e)
}

/// 10th and 90th percentiles of the node positions (linear interpolation
/// between order statistics).
pub fn interior_hull(xs: &[f64]) -> Option<(f64, f64)> {
    if xs.is_empty() {
        return None;
    }
    let mut s = xs.to_vec();
    s.sort_by(f64::total_cmp);
    let at = |q: f64| {
        let pos = q * (s.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = (lo + 1).min(s.len() - 1);
        s[lo] + (pos - lo as f64) * (s[hi] - s[lo])
    };
    Some((at(0.1), at(0.9)))
}

/// Reconstructed potential on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialTable {
    /// `(x, V(x))`, `x` increasing.
    pub points: Vec<(f64, f64)>,
    /// Points outside the node hull, where the local reconstruction is not
    /// trusted.
    pub extrapolated: Vec<bool>,
    pub method: Method,
    pub n: usize,
    /// `max |V_N(x) - V_{N+10}(x)|` over the grid, when computed.
    pub convergence_metric: Option<f64>,
    /// Smallest and largest quadrature node.
    pub node_hull: (f64, f64),
    /// See [`interior_hull`].
    pub interior_hull: (f64, f64),
    /// Nodes outside the range of `g`, skipped.
    pub dropped_nodes: usize,
}

impl PotentialTable {
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.1).collect()
    }

    /// Points inside `[lo, hi]`.
    pub fn within(&self, lo: f64, hi: f64) -> impl Iterator<Item = &(f64, f64)> {
        self.points.iter().filter(move |p| p.0 >= lo && p.0 <= hi)
    }
}

/// Evaluates `V` on `grid` with `method`. `convergence_metric` is left
/// empty; [`QuantumSystem::reconstruct`] fills it.
pub fn reconstruct_potential(
    mats: &OperatorMatrices,
    basis: &BasisSet,
    grid: &[f64],
    method: Method,
) -> Result<PotentialTable> {
    if let Some(&x) = grid.iter().find(|&&x| !basis.contains(x)) {
        return Err(Error::Domain(alloc::format!("grid point {x} is outside the configuration space")));
    }
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    let samples = quadrature_sample(mats, basis)?;
    let xs: Vec<f64> = samples.points.iter().map(|p| p.0).collect();
    let node_hull = (xs[0], xs[xs.len() - 1]);
    let interior = interior_hull(&xs).unwrap_or(node_hull);
    let values = match method {
        Method::Series => sorted
            .iter()
            .map(|&x| potential_series(mats, basis, x))
            .collect::<Result<Vec<f64>>>()?,
        Method::QuadFit => {
            let fit = rational_fit(&samples.points)?;
            sorted.iter().map(|&x| fit.eval(x)).collect()
        }
    };
    let extrapolated = sorted.iter().map(|&x| x < node_hull.0 || x > node_hull.1).collect();
    Ok(PotentialTable {
        points: sorted.into_iter().zip(values).collect(),
        extrapolated,
        method,
        n: mats.n,
        convergence_metric: None,
        node_hull,
        interior_hull: interior,
        dropped_nodes: samples.dropped,
    })
}

/// Largest `|V_col1(x) - V_col0(x)|` over `grid`, skipping points where
/// `|Q_1| < 1e-3`. An estimate of the truncation error.
pub fn column_discrepancy(mats: &OperatorMatrices, basis: &BasisSet, grid: &[f64]) -> Result<f64> {
    if mats.n < 2 {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for &x in grid {
        let y = basis.coordinate(x)?;
        if basis.polynomials(y, 2)[1].abs() < 1e-3 {
            continue;
        }
        worst = worst.max((series_at(mats, basis, y, 1) - series_at(mats, basis, y, 0)).abs());
    }
    Ok(worst)
}

impl QuantumSystem {
    /// Assembles at `N` and `N + 10` and reconstructs on `grid`. When the
    /// larger assembly fails (e.g. `E(R)` overflows) the metric is omitted.
    pub fn reconstruct(&self, n: usize, grid: &[f64], method: Method) -> Result<PotentialTable> {
        let mats = self.assemble(n)?;
        let mut table = reconstruct_potential(&mats, &self.basis, grid, method)?;
        if let Ok(finer) = self.assemble(n + CONVERGENCE_STEP) {
            let other = reconstruct_potential(&finer, &self.basis, grid, method)?;
            table.convergence_metric = Some(
                table
                    .points
                    .iter()
                    .zip(&other.points)
                    .map(|(a, b)| (a.1 - b.1).abs())
                    .fold(0.0, f64::max),
            );
        }
        Ok(table)
    }
}

/// Error of a table against `reference`, restricted to `[lo, hi]`.
pub fn max_abs_error(table: &PotentialTable, lo: f64, hi: f64, reference: impl Fn(f64) -> f64) -> f64 {
    table
        .within(lo, hi)
        .map(|&(x, v)| (v - reference(x)).abs())
        .fold(0.0, f64::max)
}
