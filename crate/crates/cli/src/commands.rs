//! One function per subcommand. Each returns the CSV and any stderr lines.

use specforge_core::reconstruct::{interior_hull, max_abs_error, morse_exact, quadrature_sample, reconstruct_potential};
use specforge_core::wavefunction::{bound_component, continuum_component, divergence_diagnostic};
use specforge_core::{Grid, QuantumSystem, SystemKind};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{float, Csv, Report};

/// Bound level matched by `--energy` within this relative distance.
pub const LEVEL_MATCH_TOL: f64 = 1e-9;

fn system(cfg: &RunConfig) -> CliResult<QuantumSystem> {
    Ok(QuantumSystem::new(cfg.system, cfg.params)?)
}

fn require_grid(grid: Option<Grid>, flag: &str) -> CliResult<Vec<f64>> {
    grid.map(|g| g.points())
        .ok_or_else(|| CliError::Validation(format!("missing --{flag} start:stop:step")))
}

fn meta(cfg: &RunConfig, extra: &[(&str, String)]) -> Vec<(String, String)> {
    let mut m = cfg.metadata();
    m.extend(extra.iter().map(|(k, v)| (k.to_string(), v.clone())));
    m
}

pub fn spectrum(cfg: &RunConfig) -> CliResult<Report> {
    let spec = system(cfg)?.spectrum()?;
    let mut csv = Csv::new(
        &meta(cfg, &[("k_max", spec.k_max.to_string()), ("omega_sum", float(spec.omega_sum()))]),
        &["k", "E_k", "omega_k"],
    );
    for (k, (e, w)) in spec.energies.iter().zip(&spec.omega).enumerate() {
        csv.row(&[k.to_string(), float(*e), float(*w)]);
    }
    let mut diagnostics = Vec::new();
    if !spec.nonpositive_weights.is_empty() {
        diagnostics.push(format!("warning: non-positive weights at k = {:?}", spec.nonpositive_weights));
    }
    Ok(Report {
        csv: csv.into_string(),
        diagnostics,
    })
}

pub fn phaseshift(cfg: &RunConfig) -> CliResult<Report> {
    let sys = system(cfg)?;
    let energies = require_grid(cfg.energies, "energies")?;
    let mut csv = Csv::new(&meta(cfg, &[]), &["E", "delta"]);
    for e in energies {
        csv.row(&[float(e), float(sys.phase_shift(e)?)]);
    }
    Ok(Report {
        csv: csv.into_string(),
        diagnostics: Vec::new(),
    })
}

pub fn potential(cfg: &RunConfig) -> CliResult<Report> {
    let sys = system(cfg)?;
    let grid = require_grid(cfg.grid, "grid")?;
    let table = sys.reconstruct(cfg.n, &grid, cfg.method)?;
    let hull = |h: (f64, f64)| format!("{}:{}", float(h.0), float(h.1));
    let mut csv = Csv::new(
        &meta(
            cfg,
            &[
                ("N", cfg.n.to_string()),
                ("method", cfg.method.to_string()),
                ("node_hull", hull(table.node_hull)),
                ("interior_hull", hull(table.interior_hull)),
                ("dropped_nodes", table.dropped_nodes.to_string()),
            ],
        ),
        &["x", "V", "extrapolated"],
    );
    for ((x, v), out) in table.points.iter().zip(&table.extrapolated) {
        csv.row(&[float(*x), float(*v), u8::from(*out).to_string()]);
    }
    let metric = match table.convergence_metric {
        Some(m) => format!("convergence metric max|V_N - V_N+10| = {}", float(m)),
        None => "convergence metric unavailable: assembly at N+10 failed".to_string(),
    };
    Ok(Report {
        csv: csv.into_string(),
        diagnostics: vec![metric],
    })
}

enum Target {
    Bound(usize),
    Continuum(f64),
}

pub fn wavefunction(cfg: &RunConfig) -> CliResult<Report> {
    let sys = system(cfg)?;
    let grid = require_grid(cfg.grid, "grid")?;
    let target = match (cfg.k, cfg.energy) {
        (Some(_), Some(_)) => return Err(CliError::Validation("give either --k or --energy, not both".into())),
        (None, None) => return Err(CliError::Validation("missing --k or --energy".into())),
        (Some(k), None) => {
            let k_max = cfg.params.k_max();
            if k > k_max {
                return Err(CliError::Validation(format!("level {k} exceeds the highest bound state {k_max}")));
            }
            Target::Bound(k)
        }
        (None, Some(e)) => {
            let spec = sys.spectrum()?;
            let level = spec
                .energies
                .iter()
                .position(|&ek| (e - ek).abs() <= LEVEL_MATCH_TOL * ek.abs().max(1.0));
            match level {
                Some(k) => Target::Bound(k),
                None if sys.map.in_continuum(e) => Target::Continuum(e),
                None => {
                    let ratio = divergence_diagnostic(&sys, e, &grid, cfg.n);
                    return Err(CliError::Numeric(format!(
                        "energy {e} is neither a bound level nor in the continuum; \
                         divergence ratio {ratio:.3e} over {} probes at N = {}",
                        grid.len(),
                        cfg.n
                    )));
                }
            }
        }
    };
    let (label, mut values) = match target {
        Target::Bound(k) => (
            ("k", k.to_string()),
            grid.iter()
                .map(|&x| Ok(bound_component(&sys, k, x, cfg.n)?.value))
                .collect::<CliResult<Vec<f64>>>()?,
        ),
        Target::Continuum(e) => (
            ("energy", float(e)),
            grid.iter()
                .map(|&x| Ok(continuum_component(&sys, e, x, cfg.n)?.value))
                .collect::<CliResult<Vec<f64>>>()?,
        ),
    };
    // overall sign is conventional; make the largest excursion positive
    let peak = values.iter().copied().fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
    if peak < 0.0 {
        values.iter_mut().for_each(|v| *v = -*v);
    }
    let mut csv = Csv::new(&meta(cfg, &[label, ("N", cfg.n.to_string())]), &["x", "psi"]);
    for (x, v) in grid.iter().zip(&values) {
        csv.row(&[float(*x), float(*v)]);
    }
    Ok(Report {
        csv: csv.into_string(),
        diagnostics: Vec::new(),
    })
}

pub fn validate(cfg: &RunConfig) -> CliResult<Report> {
    if cfg.system != SystemKind::Morse {
        return Err(CliError::Validation("validate requires an exact reference".into()));
    }
    let sys = system(cfg)?;
    let exact = |x| morse_exact(&sys.params, x);
    let mats = cfg
        .sizes
        .iter()
        .map(|&n| sys.assemble(n))
        .collect::<Result<Vec<_>, _>>()?;
    // default region: where every truncation's nodes are dense
    let (lo, hi, grid) = match cfg.grid {
        Some(g) => {
            let pts = g.points();
            let (lo, hi) = (pts.first().copied().unwrap_or(g.start), pts.last().copied().unwrap_or(g.stop));
            (lo, hi, pts)
        }
        None => {
            let mut region = (f64::MIN, f64::MAX);
            for m in &mats {
                let xs: Vec<f64> = quadrature_sample(m, &sys.basis)?.points.iter().map(|p| p.0).collect();
                let h = interior_hull(&xs).ok_or(specforge_core::Error::NoValidNodes)?;
                region = (region.0.max(h.0), region.1.min(h.1));
            }
            if region.0 >= region.1 {
                return Err(CliError::Numeric("interior node hulls do not overlap".into()));
            }
            let g = Grid::new(region.0, region.1, (region.1 - region.0) / 400.0)?;
            (region.0, region.1, g.points())
        }
    };
    let vmax = grid.iter().map(|&x| exact(x).abs()).fold(0.0, f64::max);
    let spec = sys.spectrum()?;
    let mut info = vec![
        ("region", format!("{}:{}", float(lo), float(hi))),
        ("max_abs_V", float(vmax)),
    ];
    for (k, e) in spec.energies.iter().enumerate() {
        info.push(("level", format!("{k}, {}", float(*e))));
    }
    let mut csv = Csv::new(&meta(cfg, &info), &["N", "error_series", "error_quadfit"]);
    let mut columns = (Vec::new(), Vec::new());
    for m in &mats {
        let errs = [specforge_core::Method::Series, specforge_core::Method::QuadFit].map(|method| {
            reconstruct_potential(m, &sys.basis, &grid, method).map(|t| max_abs_error(&t, lo, hi, exact))
        });
        let [s, q] = errs;
        let (s, q) = (s?, q?);
        csv.row(&[m.n.to_string(), float(s), float(q)]);
        columns.0.push(s);
        columns.1.push(q);
    }
    let mut diagnostics = Vec::new();
    for (name, col) in [("series", &columns.0), ("quadfit", &columns.1)] {
        // rounding-level wiggles do not count as growth
        if col.windows(2).any(|w| w[1] > w[0] + 1e-12 * vmax) {
            diagnostics.push(format!("warning: {name} error grows with N"));
        }
    }
    Ok(Report {
        csv: csv.into_string(),
        diagnostics,
    })
}
