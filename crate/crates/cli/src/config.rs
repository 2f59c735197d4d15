//! Run configuration: preset, then config file, then flags.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use specforge_core::{Grid, Method, PhysicalParams, SystemKind};

use crate::args::{Common, Recon};
use crate::error::{CliError, CliResult};

pub const DEFAULT_N: usize = 60;

const KEYS: &[&str] = &[
    "system", "preset", "mu", "a", "lambda", "alpha", "nu", "ell", "n", "grid", "method", "output", "energies", "k",
    "energy", "sizes",
];

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Validation(format!("config line {}: expected key = value", i + 1)))?;
        let key = key.trim().trim_start_matches("--").to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Validation(format!("config line {}: unknown key '{key}'", i + 1)));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

pub fn read_config(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Everything a subcommand may need, validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub system: SystemKind,
    pub params: PhysicalParams,
    pub n: usize,
    pub grid: Option<Grid>,
    pub method: Method,
    pub output: Option<PathBuf>,
    pub energies: Option<Grid>,
    pub k: Option<usize>,
    pub energy: Option<f64>,
    pub sizes: Vec<usize>,
}

/// Subcommand-specific flags, as strings or values straight from clap.
#[derive(Debug, Default)]
pub struct Extra<'a> {
    pub recon: Option<&'a Recon>,
    pub grid: Option<&'a str>,
    pub energies: Option<&'a str>,
    pub k: Option<usize>,
    pub energy: Option<f64>,
    pub sizes: Option<&'a str>,
}

pub fn preset(name: &str) -> CliResult<(SystemKind, PhysicalParams)> {
    match name.to_ascii_lowercase().as_str() {
        "fig1" => Ok((SystemKind::Morse, PhysicalParams::fig1())),
        "fig2" => Ok((SystemKind::Radial, PhysicalParams::fig2())),
        "fig3" => Ok((SystemKind::ExpGauss, PhysicalParams::fig3())),
        "fig4" => Ok((SystemKind::Sinh, PhysicalParams::fig4())),
        _ => Err(CliError::Validation(format!("unknown preset '{name}' (fig1|fig2|fig3|fig4)"))),
    }
}

struct Layers<'a> {
    file: &'a BTreeMap<String, String>,
}

impl Layers<'_> {
    /// Flag value if given, else the parsed file entry.
    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| CliError::Validation(format!("invalid {key} '{v}': {e}"))),
        }
    }

    fn text(&self, flag: Option<&str>, key: &str) -> Option<String> {
        flag.map(str::to_string).or_else(|| self.file.get(key).cloned())
    }
}

fn parse_grid(text: Option<String>, key: &str) -> CliResult<Option<Grid>> {
    text.map(|t| t.parse::<Grid>().map_err(|e| CliError::Validation(format!("invalid {key}: {e}"))))
        .transpose()
}

impl RunConfig {
    pub fn resolve(common: &Common, extra: &Extra<'_>) -> CliResult<Self> {
        let file = match &common.config {
            Some(path) => read_config(path)?,
            None => BTreeMap::new(),
        };
        let layers = Layers { file: &file };

        let base = layers.text(common.preset.as_deref(), "preset").map(|p| preset(&p)).transpose()?;
        let system = match layers.text(common.system.as_deref(), "system") {
            Some(name) => SystemKind::from_name(&name).ok_or_else(|| {
                CliError::Validation(format!("unknown system '{name}' (morse|radial|expgauss|sinh)"))
            })?,
            None => base
                .map(|b| b.0)
                .ok_or_else(|| CliError::Validation("missing --system (or --preset)".into()))?,
        };

        let mu = layers.get(common.mu, "mu")?;
        let a = layers.get(common.a, "a")?;
        let mut params = match (base, mu) {
            (Some((_, p)), _) => p,
            (None, Some(mu)) => PhysicalParams::new(mu, a.unwrap_or(-mu)),
            (None, None) => return Err(CliError::Validation("missing --mu (or --preset)".into())),
        };
        if let Some(mu) = mu {
            params.mu = mu;
        }
        if let Some(a) = a {
            params.a = a;
            params.nu = a;
        }
        if let Some(v) = layers.get(common.lambda, "lambda")? {
            params.lambda = v;
        }
        if let Some(v) = layers.get(common.alpha, "alpha")? {
            params.alpha = v;
        }
        if let Some(v) = layers.get(common.nu, "nu")? {
            params.nu = v;
        }
        if let Some(v) = layers.get(common.ell, "ell")? {
            params.ell = v;
        }
        params.validate()?;

        let n = layers.get(common.n, "n")?.unwrap_or(DEFAULT_N);
        if n == 0 {
            return Err(CliError::Validation("n must be at least 1".into()));
        }
        let recon = extra.recon;
        let grid_flag = recon.and_then(|r| r.grid.as_deref()).or(extra.grid);
        let grid = parse_grid(layers.text(grid_flag, "grid"), "grid")?;
        let method = match layers.text(recon.and_then(|r| r.method.as_deref()), "method") {
            Some(m) => m.parse().map_err(|e| CliError::Validation(format!("{e}")))?,
            None => Method::Series,
        };
        let energies = parse_grid(layers.text(extra.energies, "energies"), "energies")?;
        let sizes = match layers.text(extra.sizes, "sizes") {
            Some(list) => list
                .split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(v) if v > 0 => Ok(v),
                    _ => Err(CliError::Validation(format!("invalid size '{}' in sizes", t.trim()))),
                })
                .collect::<CliResult<Vec<_>>>()?,
            None => vec![20, 40, 60, 80],
        };
        Ok(Self {
            system,
            params,
            n,
            grid,
            method,
            output: common.output.clone().or_else(|| file.get("output").map(PathBuf::from)),
            energies,
            k: layers.get(extra.k, "k")?,
            energy: layers.get(extra.energy, "energy")?,
            sizes,
        })
    }

    /// `# key = value` lines describing the run.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let p = &self.params;
        vec![
            ("system".into(), self.system.name().into()),
            ("mu".into(), p.mu.to_string()),
            ("a".into(), p.a.to_string()),
            ("lambda".into(), p.lambda.to_string()),
            ("alpha".into(), p.alpha.to_string()),
            ("nu".into(), p.nu.to_string()),
            ("ell".into(), p.ell.to_string()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let m = parse_config("# header\nsystem = morse\n mu=-3.7 # inline\n\n--n = 20\n").unwrap();
        assert_eq!(m["system"], "morse");
        assert_eq!(m["mu"], "-3.7");
        assert_eq!(m["n"], "20");
        assert!(parse_config("colour = red").is_err());
        assert!(parse_config("mu -3.7").is_err());
    }

    #[test]
    fn preset_then_flags() {
        let common = Common {
            preset: Some("fig1".into()),
            mu: Some(-2.3),
            ..Default::default()
        };
        let c = RunConfig::resolve(&common, &Extra::default()).unwrap();
        assert_eq!(c.system, SystemKind::Morse);
        assert_eq!(c.params.mu, -2.3);
        assert_eq!(c.params.a, 2.5);
        assert_eq!(c.n, DEFAULT_N);
    }

    #[test]
    fn a_defaults_to_minus_mu() {
        let common = Common {
            system: Some("sinh".into()),
            mu: Some(-3.2),
            alpha: Some(0.3),
            ..Default::default()
        };
        let c = RunConfig::resolve(&common, &Extra::default()).unwrap();
        assert_eq!(c.params, PhysicalParams::fig4());
    }

    #[test]
    fn missing_inputs() {
        let e = RunConfig::resolve(&Common::default(), &Extra::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let common = Common {
            system: Some("morse".into()),
            mu: Some(0.5),
            ..Default::default()
        };
        let e = RunConfig::resolve(&common, &Extra::default()).unwrap_err();
        assert_eq!(e.to_string(), "mu must be negative non-integer");
        assert_eq!(e.exit_code(), 2);
    }
}
