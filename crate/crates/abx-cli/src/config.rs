//! Run configuration: command-line flags layered over an optional key=value file.

use crate::error::CliError;
use abx_core::{ExtensionParams, FluxAlpha};
use clap::Parser;
use num_complex::Complex64 as C;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Spectrum,
    Amplitude,
    Xsection,
    Eigenfunction,
    Resolvent,
    Mixing,
    Validate,
}

impl Task {
    pub const ALL: [Task; 7] =
        [Task::Spectrum, Task::Amplitude, Task::Xsection, Task::Eigenfunction, Task::Resolvent, Task::Mixing, Task::Validate];

    pub fn name(self) -> &'static str {
        match self {
            Task::Spectrum => "spectrum",
            Task::Amplitude => "amplitude",
            Task::Xsection => "xsection",
            Task::Eigenfunction => "eigenfunction",
            Task::Resolvent => "resolvent",
            Task::Mixing => "mixing",
            Task::Validate => "validate",
        }
    }

    fn parse(s: &str) -> Option<Task> {
        Task::ALL.into_iter().find(|t| t.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug, Default)]
#[command(name = "abx", version, about = "Aharonov-Bohm point-interaction calculator")]
#[command(after_help = "Every option can also be given as key=value in the --config file; flags take precedence.")]
pub struct Cli {
    /// spectrum | amplitude | xsection | eigenfunction | resolvent | mixing | validate
    pub task: Option<String>,
    /// key=value file, '#' starts a comment
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Flux fraction in (0, 1)
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Overall phase of the boundary matrix
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    /// Complex a as re,im
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Complex b as re,im
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Comma-separated momenta k > 0
    #[arg(long)]
    pub k: Option<String>,
    /// Incidence angle
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Points of the angle grid on [0, 2 pi)
    #[arg(long)]
    pub angles: Option<String>,
    #[arg(long)]
    pub r_min: Option<String>,
    #[arg(long)]
    pub r_max: Option<String>,
    /// Points of the radial grid (geometric spacing)
    #[arg(long)]
    pub r_points: Option<String>,
    /// Complex momentum re,im with im >= 0 for the resolvent task
    #[arg(long, allow_hyphen_values = true)]
    pub kc: Option<String>,
    /// Source point r,phi for the resolvent task
    #[arg(long, allow_hyphen_values = true)]
    pub source: Option<String>,
    /// json | csv
    #[arg(long)]
    pub format: Option<String>,
    /// Output file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Relative tolerance of the dual-path checks in validate
    #[arg(long)]
    pub dual_tol: Option<String>,
    /// Relative tolerance of the resolvent-limit check in validate
    #[arg(long)]
    pub limit_tol: Option<String>,
}

impl Cli {
    fn flag_values(&self) -> Vec<(&'static str, Option<String>)> {
        vec![
            ("task", self.task.clone()),
            ("alpha", self.alpha.clone()),
            ("eta", self.eta.clone()),
            ("a", self.a.clone()),
            ("b", self.b.clone()),
            ("k", self.k.clone()),
            ("theta", self.theta.clone()),
            ("angles", self.angles.clone()),
            ("r_min", self.r_min.clone()),
            ("r_max", self.r_max.clone()),
            ("r_points", self.r_points.clone()),
            ("kc", self.kc.clone()),
            ("source", self.source.clone()),
            ("format", self.format.clone()),
            ("out", self.out.as_ref().map(|p| p.display().to_string())),
            ("dual_tol", self.dual_tol.clone()),
            ("limit_tol", self.limit_tol.clone()),
        ]
    }
}

const DEFAULTS: [(&str, &str); 16] = [
    ("alpha", "0.5"),
    ("eta", "0"),
    ("a", "-1,0"),
    ("b", "0,0"),
    ("k", "1"),
    ("theta", "0"),
    ("angles", "360"),
    ("r_min", "0.5"),
    ("r_max", "5"),
    ("r_points", "10"),
    ("kc", "1,0.5"),
    ("source", "2,0"),
    ("format", "json"),
    ("dual_tol", "1e-10"),
    ("limit_tol", "5e-3"),
    ("out", ""),
];

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub task: Task,
    pub alpha: FluxAlpha,
    pub params: ExtensionParams,
    pub k: Vec<f64>,
    pub theta: f64,
    pub angles: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub r_points: usize,
    pub kc: C,
    pub source: (f64, f64),
    pub format: Format,
    pub out: Option<PathBuf>,
    pub dual_tol: f64,
    pub limit_tol: f64,
}

impl RunConfig {
    /// Half-open grid 2 pi i / n, i = 0..n.
    pub fn angle_grid(&self) -> Vec<f64> {
        (0..self.angles).map(|i| 2.0 * std::f64::consts::PI * i as f64 / self.angles as f64).collect()
    }

    /// Geometric grid from r_min to r_max inclusive.
    pub fn radial_grid(&self) -> Vec<f64> {
        if self.r_points == 1 {
            return vec![self.r_min];
        }
        let q = (self.r_max / self.r_min).ln() / (self.r_points - 1) as f64;
        (0..self.r_points).map(|i| if i + 1 == self.r_points { self.r_max } else { self.r_min * (q * i as f64).exp() }).collect()
    }
}

fn bad(key: &str, value: &str, why: &str) -> CliError {
    CliError::Validation(format!("{key}={value}: {why}"))
}

fn real(key: &str, v: &str) -> Result<f64, CliError> {
    let x: f64 = v.trim().parse().map_err(|_| bad(key, v, "expected a real number"))?;
    if !x.is_finite() {
        return Err(bad(key, v, "must be finite"));
    }
    Ok(x)
}

fn pair(key: &str, v: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = v.split(',').collect();
    if parts.len() != 2 {
        return Err(bad(key, v, "expected two comma-separated reals"));
    }
    Ok((real(key, parts[0])?, real(key, parts[1])?))
}

fn count(key: &str, v: &str) -> Result<usize, CliError> {
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(bad(key, v, "expected a positive integer")),
    }
}

fn positive(key: &str, v: &str) -> Result<f64, CliError> {
    let x = real(key, v)?;
    if x <= 0.0 {
        return Err(bad(key, v, "must be > 0"));
    }
    Ok(x)
}

/// Flat key=value text; blank lines and '#' comments are skipped, '-' in keys reads as '_'.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Validation(format!("{}:{}: expected key=value, got '{line}'", path.display(), n + 1)));
        };
        let key = key.trim().replace('-', "_");
        if key != "task" && !DEFAULTS.iter().any(|d| d.0 == key) {
            return Err(CliError::Validation(format!("{}:{}: unknown key '{key}'", path.display(), n + 1)));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

/// Defaults, then the config file, then flags.
pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut map: BTreeMap<String, String> = DEFAULTS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    if let Some(path) = &cli.config {
        map.extend(read_config_file(path)?);
    }
    for (key, value) in cli.flag_values() {
        if let Some(v) = value {
            map.insert(key.to_string(), v);
        }
    }
    let get = |k: &str| map.get(k).map(String::as_str).unwrap_or("");

    let task_name = map.get("task").ok_or_else(|| CliError::Validation("no task given".into()))?;
    let task = Task::parse(task_name.trim()).ok_or_else(|| {
        let names: Vec<&str> = Task::ALL.iter().map(|t| t.name()).collect();
        bad("task", task_name, &format!("expected one of {}", names.join(", ")))
    })?;
    let alpha = FluxAlpha::new(real("alpha", get("alpha"))?).map_err(CliError::from)?;
    let (ar, ai) = pair("a", get("a"))?;
    let (br, bi) = pair("b", get("b"))?;
    let params = ExtensionParams::new(real("eta", get("eta"))?, C::new(ar, ai), C::new(br, bi)).map_err(CliError::from)?;
    let k = get("k").split(',').map(|v| positive("k", v)).collect::<Result<Vec<f64>, _>>()?;
    let (r_min, r_max) = (positive("r_min", get("r_min"))?, positive("r_max", get("r_max"))?);
    if r_max < r_min {
        return Err(CliError::Validation(format!("r_max = {r_max} is below r_min = {r_min}")));
    }
    let (kr, ki) = pair("kc", get("kc"))?;
    if ki < 0.0 {
        return Err(bad("kc", get("kc"), "the momentum must lie in the closed upper half-plane"));
    }
    let source = pair("source", get("source"))?;
    if source.0 <= 0.0 {
        return Err(bad("source", get("source"), "source radius must be > 0"));
    }
    let format = match get("format").trim() {
        "json" => Format::Json,
        "csv" => Format::Csv,
        other => return Err(bad("format", other, "expected json or csv")),
    };
    let out = Some(get("out").trim()).filter(|s| !s.is_empty()).map(PathBuf::from);
    Ok(RunConfig {
        task,
        alpha,
        params,
        k,
        theta: real("theta", get("theta"))?,
        angles: count("angles", get("angles"))?,
        r_min,
        r_max,
        r_points: count("r_points", get("r_points"))?,
        kc: C::new(kr, ki),
        source,
        format,
        out,
        dual_tol: positive("dual_tol", get("dual_tol"))?,
        limit_tol: positive("limit_tol", get("limit_tol"))?,
    })
}
