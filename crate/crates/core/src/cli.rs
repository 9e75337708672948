//! Command-line front end and the flat `key=value` run configuration.
//!
//! A config is a list of `key=value` entries separated by newlines or
//! commas; `#` starts a comment. Recognized keys:
//!
//! | key                  | meaning                                     | default |
//! |----------------------|---------------------------------------------|---------|
//! | `experiment`         | `time-dilation` or `constant-force`         | required |
//! | `beta`               | proper velocity (time-dilation)             | required there |
//! | `ti`                 | acts per tick (constant-force)              | required there |
//! | `mu`                 | rest mass in mass units (constant-force)    | 1 |
//! | `tau_r`              | resolution, nodes per tick                  | 10 |
//! | `ticks`              | ticks to run                                | 7 / 8 |
//! | `cells`              | lattice size                                | sized from the run |
//! | `v_t` `v_l` `v_m` `c`| unit coefficients                           | 10, 10, 1, 1 |
//! | `out`                | CSV output path                             | stdout |
//! | `plot`               | plot-point output path                      | none |
//! | `trace`              | `ticks` or `full`                           | `ticks` |
//! | `allow_superluminal` | accept `beta > 1`                           | false |
//!
//! Relative output paths are resolved against `$SPACETIME_OUT_DIR` when it
//! is set. Exit codes: 0 success, 1 config error, 2 runtime error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::engine::TraceVerbosity;
use crate::experiments::{
    dilation_csv, force_csv, vp_curve_points, vp_plot, worldline_plot, worldline_points, ConstantForce,
    TimeDilation,
};
use crate::sync::marked_index;
use crate::units::UnitSystem;

pub const OUT_DIR_ENV: &str = "SPACETIME_OUT_DIR";

const KEYS: &[&str] = &[
    "experiment",
    "beta",
    "ti",
    "mu",
    "tau_r",
    "ticks",
    "cells",
    "v_t",
    "v_l",
    "v_m",
    "c",
    "out",
    "plot",
    "trace",
    "allow_superluminal",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    TimeDilation,
    ConstantForce,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentParams {
    TimeDilation { beta: f64 },
    ConstantForce { acts: u64, mass: u64 },
}

impl ExperimentParams {
    pub fn kind(&self) -> ExperimentKind {
        match self {
            ExperimentParams::TimeDilation { .. } => ExperimentKind::TimeDilation,
            ExperimentParams::ConstantForce { .. } => ExperimentKind::ConstantForce,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: ExperimentParams,
    pub resolution: u64,
    pub ticks: u64,
    pub cells: Option<usize>,
    pub units: UnitSystem,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub trace: TraceVerbosity,
}

/// Where a config entry came from: a line of config text, or the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Line(usize),
    Flag,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Line(n) => write!(f, "line {n}"),
            Origin::Flag => f.write_str("command line"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("{origin}: expected `key=value`, found `{text}`")]
    Syntax { origin: Origin, text: String },
    #[error("{origin}: unknown key `{key}`")]
    UnknownKey { origin: Origin, key: String },
    #[error("{origin}: invalid value `{value}` for `{key}`: {reason}")]
    InvalidValue {
        origin: Origin,
        key: String,
        value: String,
        reason: String,
    },
    #[error("missing required keys: {}", .0.join(", "))]
    Missing(Vec<&'static str>),
}

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    origin: Origin,
}

/// Key/value entries, later entries overriding earlier ones.
#[derive(Debug, Clone, Default)]
pub struct ConfigEntries {
    map: BTreeMap<String, Entry>,
}

impl ConfigEntries {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries = Self::default();
        for (i, line) in text.lines().enumerate() {
            let origin = Origin::Line(i + 1);
            let line = line.split('#').next().unwrap_or("");
            for item in line.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                let Some((key, value)) = item.split_once('=') else {
                    return Err(ConfigError::Syntax {
                        origin,
                        text: item.to_string(),
                    });
                };
                entries.insert(key.trim(), value.trim(), origin)?;
            }
        }
        Ok(entries)
    }

    pub fn insert(&mut self, key: &str, value: &str, origin: Origin) -> Result<(), ConfigError> {
        let key = key.replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey { origin, key });
        }
        self.map.insert(
            key,
            Entry {
                value: value.to_string(),
                origin,
            },
        );
        Ok(())
    }

    fn get(&self, key: &str) -> Option<&Entry> {
        self.map.get(key)
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.get(key)
            .map(|e| {
                e.value.parse::<T>().map_err(|err| ConfigError::InvalidValue {
                    origin: e.origin,
                    key: key.to_string(),
                    value: e.value.clone(),
                    reason: err.to_string(),
                })
            })
            .transpose()
    }

    fn bad(&self, key: &str, reason: impl Into<String>) -> ConfigError {
        let e = self.get(key).expect("only called for present keys");
        ConfigError::InvalidValue {
            origin: e.origin,
            key: key.to_string(),
            value: e.value.clone(),
            reason: reason.into(),
        }
    }

    fn positive<T>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T: std::str::FromStr + PartialOrd + Default,
        T::Err: fmt::Display,
    {
        match self.parsed::<T>(key)? {
            Some(v) if v <= T::default() => Err(self.bad(key, "must be positive")),
            other => Ok(other),
        }
    }

    fn coefficient(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        let v = self.parsed::<f64>(key)?.unwrap_or(default);
        if !(v.is_finite() && v > 0.0) {
            return Err(self.bad(key, "must be finite and positive"));
        }
        Ok(v)
    }

    /// Validate and apply defaults.
    pub fn into_config(self) -> Result<RunConfig, ConfigError> {
        let resolution = self.positive::<u64>("tau_r")?.unwrap_or(10);
        let cells = self.positive::<usize>("cells")?;
        let units = UnitSystem {
            v_t: self.coefficient("v_t", 10.0)?,
            v_l: self.coefficient("v_l", 10.0)?,
            v_m: self.coefficient("v_m", 1.0)?,
            c: self.coefficient("c", 1.0)?,
        };
        if let Err(e) = units.node_cell_ratio() {
            return Err(self.bad(if self.get("v_t").is_some() { "v_t" } else { "v_l" }, e.to_string()));
        }
        let allow_superluminal = self.parsed::<bool>("allow_superluminal")?.unwrap_or(false);
        let trace = match self.get("trace").map(|e| e.value.as_str()) {
            None | Some("ticks") => TraceVerbosity::Ticks,
            Some("full") => TraceVerbosity::Full,
            Some(_) => return Err(self.bad("trace", "expected `ticks` or `full`")),
        };

        let beta = self.parsed::<f64>("beta")?;
        if let Some(beta) = beta {
            if !(beta.is_finite() && beta >= 0.0) {
                return Err(self.bad("beta", "must be finite and non-negative"));
            }
            if beta > 1.0 && !allow_superluminal {
                return Err(self.bad(
                    "beta",
                    "beta > 1 puts the register past one tick (j > tau_r) where the speed cap \
                     freezes the particle clock; set allow_superluminal=true to run it anyway",
                ));
            }
        }
        let acts = self.parsed::<u64>("ti")?;
        let mass = self.positive::<u64>("mu")?;

        let kind = match self.get("experiment").map(|e| e.value.as_str()) {
            Some("time-dilation") => Some(ExperimentKind::TimeDilation),
            Some("constant-force") => Some(ExperimentKind::ConstantForce),
            Some(_) => return Err(self.bad("experiment", "expected `time-dilation` or `constant-force`")),
            None => None,
        };
        let experiment = match kind {
            None => {
                let mut missing = vec!["experiment"];
                if beta.is_none() && acts.is_none() {
                    missing.push("beta (time-dilation) or ti (constant-force)");
                }
                return Err(ConfigError::Missing(missing));
            }
            Some(ExperimentKind::TimeDilation) => ExperimentParams::TimeDilation {
                beta: beta.ok_or(ConfigError::Missing(vec!["beta"]))?,
            },
            Some(ExperimentKind::ConstantForce) => ExperimentParams::ConstantForce {
                acts: acts.ok_or(ConfigError::Missing(vec!["ti"]))?,
                mass: mass.unwrap_or(1),
            },
        };
        if let ExperimentParams::TimeDilation { beta } = experiment {
            let j = beta * resolution as f64 * units.v_l / units.v_t;
            if (j - j.round()).abs() > 1e-9 {
                return Err(self.bad(
                    "beta",
                    format!("beta*tau_r*v_l/v_t = {j} must be a whole number of nodes"),
                ));
            }
        }
        let ticks = self.positive::<u64>("ticks")?.unwrap_or(match experiment.kind() {
            ExperimentKind::TimeDilation => 7,
            ExperimentKind::ConstantForce => 8,
        });
        Ok(RunConfig {
            experiment,
            resolution,
            ticks,
            cells,
            units,
            out: self.get("out").map(|e| PathBuf::from(&e.value)),
            plot: self.get("plot").map(|e| PathBuf::from(&e.value)),
            trace,
        })
    }
}

/// Parse and validate config text.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    ConfigEntries::parse(text)?.into_config()
}

#[derive(Debug, Parser)]
#[command(name = "spacetime", version, about = "Discrete Minkowski spacetime simulator")]
struct Cli {
    /// Config file with `key=value` entries; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Uniform motion: trajectory, lab time and particle time per tick.
    TimeDilation {
        #[arg(long)]
        beta: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// A constant force from the rest state: p, v and E per tick.
    ConstantForce {
        #[arg(long)]
        ti: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Dump (sigma, rho, marked) triples of the synchronization rule.
    SyncTable {
        #[arg(long)]
        sigma_max: u64,
        #[arg(long)]
        rho_max: u64,
        #[arg(long)]
        v_t: Option<String>,
        #[arg(long)]
        v_l: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Full event log of a run.
    Trace {
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        ti: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long = "tau-r")]
    tau_r: Option<String>,
    #[arg(long)]
    ticks: Option<String>,
    #[arg(long)]
    cells: Option<String>,
    #[arg(long)]
    v_t: Option<String>,
    #[arg(long)]
    v_l: Option<String>,
    #[arg(long)]
    v_m: Option<String>,
    #[arg(long)]
    c: Option<String>,
    /// CSV output path (default stdout).
    #[arg(long)]
    out: Option<String>,
    /// Plot-point output path: `x t` lines or `p v va` lines.
    #[arg(long)]
    plot: Option<String>,
    #[arg(long)]
    allow_superluminal: bool,
}

impl Common {
    fn apply(&self, entries: &mut ConfigEntries) -> Result<(), ConfigError> {
        let pairs = [
            ("tau_r", &self.tau_r),
            ("ticks", &self.ticks),
            ("cells", &self.cells),
            ("v_t", &self.v_t),
            ("v_l", &self.v_l),
            ("v_m", &self.v_m),
            ("c", &self.c),
            ("out", &self.out),
            ("plot", &self.plot),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                entries.insert(key, v, Origin::Flag)?;
            }
        }
        if self.allow_superluminal {
            entries.insert("allow_superluminal", "true", Origin::Flag)?;
        }
        Ok(())
    }
}

enum Failure {
    Config(String),
    Runtime(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Files to write once everything succeeded; `None` path means stdout.
struct Outputs(Vec<(Option<PathBuf>, String)>);

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn load_entries(config: &Option<PathBuf>) -> Result<ConfigEntries, Failure> {
    match config {
        None => Ok(ConfigEntries::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
            Ok(ConfigEntries::parse(&text)?)
        }
    }
}

fn set(entries: &mut ConfigEntries, key: &str, value: &Option<String>) -> Result<(), ConfigError> {
    match value {
        Some(v) => entries.insert(key, v, Origin::Flag),
        None => Ok(()),
    }
}

fn run_experiment(cfg: &RunConfig) -> Result<Outputs, Failure> {
    let (csv, plot) = match cfg.experiment {
        ExperimentParams::TimeDilation { beta } => {
            let mut exp = TimeDilation::new(beta, cfg.resolution, cfg.ticks);
            exp.cells = cfg.cells;
            exp.units = cfg.units;
            let run = exp.run()?;
            (dilation_csv(&run.rows), worldline_plot(&worldline_points(&run.trace)))
        }
        ExperimentParams::ConstantForce { acts, mass } => {
            let mut exp = ConstantForce::new(acts, mass, cfg.resolution, cfg.ticks);
            exp.cells = cfg.cells;
            exp.units = cfg.units;
            let run = exp.run()?;
            (force_csv(&run.rows), vp_plot(&vp_curve_points(&run.rows)))
        }
    };
    let mut outputs = vec![(cfg.out.clone(), csv)];
    if let Some(p) = &cfg.plot {
        outputs.push((Some(p.clone()), plot));
    }
    Ok(Outputs(outputs))
}

fn run_trace(cfg: &RunConfig) -> Result<Outputs, Failure> {
    let trace = match cfg.experiment {
        ExperimentParams::TimeDilation { beta } => {
            let mut exp = TimeDilation::new(beta, cfg.resolution, cfg.ticks);
            exp.cells = cfg.cells;
            exp.units = cfg.units;
            exp.verbosity = TraceVerbosity::Full;
            exp.run()?.trace
        }
        ExperimentParams::ConstantForce { acts, mass } => {
            let mut exp = ConstantForce::new(acts, mass, cfg.resolution, cfg.ticks);
            exp.cells = cfg.cells;
            exp.units = cfg.units;
            exp.verbosity = TraceVerbosity::Full;
            exp.run()?.trace
        }
    };
    Ok(Outputs(vec![(cfg.out.clone(), trace.events_csv())]))
}

/// `sigma,rho,marked` rows for every σ ≤ `sigma_max`, ρ ≤ `rho_max`.
pub fn sync_table(sigma_max: u64, rho_max: u64, units: &UnitSystem) -> crate::Result<String> {
    let ratio = units.node_cell_ratio()?;
    let mut out = String::from("sigma,rho,marked\n");
    for sigma in 0..=sigma_max {
        for rho in 0..=rho_max {
            let m = marked_index(sigma, rho as i64, ratio);
            out.push_str(&format!("{sigma},{rho},{m}\n"));
        }
    }
    Ok(out)
}

fn dispatch(cli: Cli) -> Result<Outputs, Failure> {
    let mut entries = load_entries(&cli.config)?;
    match cli.command {
        Command::TimeDilation { beta, common } => {
            entries.insert("experiment", "time-dilation", Origin::Flag)?;
            set(&mut entries, "beta", &beta)?;
            common.apply(&mut entries)?;
            run_experiment(&entries.into_config()?)
        }
        Command::ConstantForce { ti, mu, common } => {
            entries.insert("experiment", "constant-force", Origin::Flag)?;
            set(&mut entries, "ti", &ti)?;
            set(&mut entries, "mu", &mu)?;
            common.apply(&mut entries)?;
            run_experiment(&entries.into_config()?)
        }
        Command::Trace { beta, ti, mu, common } => {
            if beta.is_some() {
                entries.insert("experiment", "time-dilation", Origin::Flag)?;
            } else if ti.is_some() {
                entries.insert("experiment", "constant-force", Origin::Flag)?;
            }
            set(&mut entries, "beta", &beta)?;
            set(&mut entries, "ti", &ti)?;
            set(&mut entries, "mu", &mu)?;
            common.apply(&mut entries)?;
            run_trace(&entries.into_config()?)
        }
        Command::SyncTable {
            sigma_max,
            rho_max,
            v_t,
            v_l,
            out,
        } => {
            set(&mut entries, "v_t", &v_t)?;
            set(&mut entries, "v_l", &v_l)?;
            let cfg_units = UnitSystem {
                v_t: entries.coefficient("v_t", 10.0)?,
                v_l: entries.coefficient("v_l", 10.0)?,
                ..UnitSystem::default()
            };
            let table = sync_table(sigma_max, rho_max, &cfg_units).map_err(|e| Failure::Config(e.to_string()))?;
            let out = out.map(PathBuf::from).or_else(|| entries.get("out").map(|e| PathBuf::from(&e.value)));
            Ok(Outputs(vec![(out, table)]))
        }
    }
}

/// Run the command line `args` (including the program name). Returns the exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let outputs = match dispatch(cli) {
        Ok(o) => o,
        Err(Failure::Config(msg)) => {
            let _ = writeln!(stderr, "config error: {msg}");
            return 1;
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "runtime error: {msg}");
            return 2;
        }
    };
    for (path, body) in outputs.0 {
        let written = match path {
            None => stdout.write_all(body.as_bytes()),
            Some(p) => std::fs::write(resolve(&p), body),
        };
        if let Err(e) = written {
            let _ = writeln!(stderr, "runtime error: {e}");
            return 2;
        }
    }
    0
}

pub fn main() -> i32 {
    main_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
