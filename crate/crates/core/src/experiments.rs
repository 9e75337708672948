//! Scripted experiments: uniform motion (time dilation) and motion under a
//! constant force, plus the sweeps built on them.
//!
//! Values are kept at full precision; [`fmt_round`] rounds only when rows
//! are emitted as CSV.

use crate::engine::{ExperimentTrace, Spacetime, TraceVerbosity};
use crate::error::{invalid, Result};
use crate::oracles::{analytic_energy, analytic_lab_time, analytic_velocity, relative_error};
use crate::particle::{Carrier, Direction, Particle};
use crate::units::UnitSystem;

pub const DILATION_HEADER: &str = "Tw,x,t,ta,err%,tp";
pub const FORCE_HEADER: &str = "Tw,p,v,va,v_err%,E,Ea,E_err%";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilationRow {
    pub tw: u64,
    pub x: f64,
    pub t: f64,
    pub ta: f64,
    pub err_pct: f64,
    pub tp: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceRow {
    pub tw: u64,
    pub p: f64,
    /// Coordinate velocity over the tick; NaN if the lab clock did not advance.
    pub v: f64,
    pub va: f64,
    pub v_err_pct: f64,
    pub e: f64,
    pub ea: f64,
    pub e_err_pct: f64,
}

/// Relative error in percent, 0 when both values are zero.
fn err_pct(measured: f64, exact: f64) -> f64 {
    if exact == 0.0 && measured == 0.0 {
        0.0
    } else {
        relative_error(measured, exact).unwrap_or(f64::INFINITY)
    }
}

/// Uniform motion at proper velocity `beta` with no carriers.
#[derive(Debug, Clone)]
pub struct TimeDilation {
    pub beta: f64,
    pub resolution: u64,
    pub ticks: u64,
    pub cells: Option<usize>,
    pub units: UnitSystem,
    pub verbosity: TraceVerbosity,
}

impl TimeDilation {
    pub fn new(beta: f64, resolution: u64, ticks: u64) -> Self {
        Self {
            beta,
            resolution,
            ticks,
            cells: None,
            units: UnitSystem::default(),
            verbosity: TraceVerbosity::Ticks,
        }
    }

    /// Register length `j = β · τ_R · v_l/v_t`; must be a whole node count.
    pub fn momentum(&self) -> Result<i64> {
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(invalid("beta", "must be finite and non-negative"));
        }
        let j = self.beta * self.resolution as f64 * self.units.v_l / self.units.v_t;
        let rounded = j.round();
        if (j - rounded).abs() > 1e-9 {
            return Err(invalid(
                "beta",
                format!("beta·tau_r = {j} is not a whole number of nodes"),
            ));
        }
        Ok(rounded as i64)
    }

    pub fn default_cells(&self, momentum: i64) -> usize {
        let per_tick = momentum.unsigned_abs().min(self.resolution) as usize;
        2 * per_tick * self.ticks as usize + 10
    }

    pub fn run(&self) -> Result<DilationRun> {
        if self.ticks == 0 {
            return Err(invalid("ticks", "must be at least 1"));
        }
        let j = self.momentum()?;
        let cells = self.cells.unwrap_or_else(|| self.default_cells(j));
        let mut st = Spacetime::new(self.units, self.resolution, cells)?;
        st.set_verbosity(self.verbosity);
        st.add_particle(Particle::new(0, j, 1)?)?;
        let trace = st.run(self.ticks)?;
        let tick_len = self.units.time_to_standard(self.resolution);
        let rows = trace
            .observations(0)
            .iter()
            .map(|o| {
                let ta = analytic_lab_time(o.tick, self.beta, tick_len);
                DilationRow {
                    tw: o.tick,
                    x: o.x,
                    t: o.t,
                    ta,
                    err_pct: err_pct(o.t, ta),
                    tp: o.tp,
                }
            })
            .collect();
        Ok(DilationRun { rows, trace })
    }
}

#[derive(Debug, Clone)]
pub struct DilationRun {
    pub rows: Vec<DilationRow>,
    pub trace: ExperimentTrace,
}

/// One carrier of `acts` acts per tick acting on a particle that starts at
/// rest at the origin.
#[derive(Debug, Clone)]
pub struct ConstantForce {
    pub acts: u64,
    pub mass: u64,
    pub resolution: u64,
    pub ticks: u64,
    pub cells: Option<usize>,
    pub units: UnitSystem,
    pub verbosity: TraceVerbosity,
}

impl ConstantForce {
    pub fn new(acts: u64, mass: u64, resolution: u64, ticks: u64) -> Self {
        Self {
            acts,
            mass,
            resolution,
            ticks,
            cells: None,
            units: UnitSystem::default(),
            verbosity: TraceVerbosity::Ticks,
        }
    }

    pub fn default_cells(&self) -> usize {
        2 * self.resolution as usize * self.ticks as usize + 40
    }

    pub fn run(&self) -> Result<ForceRun> {
        if self.ticks == 0 {
            return Err(invalid("ticks", "must be at least 1"));
        }
        let cells = self.cells.unwrap_or_else(|| self.default_cells());
        let mut st = Spacetime::new(self.units, self.resolution, cells)?;
        st.set_verbosity(self.verbosity);
        st.add_particle(Particle::new(0, 0, self.mass)?)?;
        if self.acts > 0 {
            let carrier = Carrier::new(self.acts, Direction::Increase)?;
            for tick in 1..=self.ticks {
                st.schedule_carrier(tick, carrier)?;
            }
        }
        let trace = st.run(self.ticks)?;
        let rows = trace
            .observations(0)
            .iter()
            .map(|o| {
                let v = match o.v {
                    Some(v) => v,
                    None if o.tick == 0 => 0.0,
                    None => f64::NAN,
                };
                let (va, ea) = (analytic_velocity(o.p_impulse), analytic_energy(o.p_impulse));
                ForceRow {
                    tw: o.tick,
                    p: o.p_impulse,
                    v,
                    va,
                    v_err_pct: err_pct(v, va),
                    e: o.energy,
                    ea,
                    e_err_pct: err_pct(o.energy, ea),
                }
            })
            .collect();
        Ok(ForceRun { rows, trace })
    }
}

#[derive(Debug, Clone)]
pub struct ForceRun {
    pub rows: Vec<ForceRow>,
    pub trace: ExperimentTrace,
}

/// Per-tick `(x, t)` points of every recorded tick after the start.
pub fn worldline_points(trace: &ExperimentTrace) -> Vec<(f64, f64)> {
    if trace.particle_count() == 0 {
        return Vec::new();
    }
    trace
        .observations(0)
        .iter()
        .filter(|o| o.tick > 0)
        .map(|o| (o.x, o.t))
        .collect()
}

pub fn vp_curve_points(rows: &[ForceRow]) -> Vec<(f64, f64, f64)> {
    rows.iter().map(|r| (r.p, r.v, r.va)).collect()
}

/// Round half-up to `decimals` places and print the shortest decimal form,
/// always with a fractional part (`1.0`, `0.62`, `7.33`).
pub fn fmt_round(value: f64, decimals: u32) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let scale = 10f64.powi(decimals as i32);
    let mut r = (value * scale).round() / scale;
    if r == 0.0 {
        r = 0.0;
    }
    let s = r.to_string();
    if s.contains('.') {
        s
    } else {
        format!("{s}.0")
    }
}

pub fn dilation_csv(rows: &[DilationRow]) -> String {
    let mut out = format!("{DILATION_HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.tw,
            fmt_round(r.x, 1),
            fmt_round(r.t, 1),
            fmt_round(r.ta, 2),
            fmt_round(r.err_pct, 2),
            fmt_round(r.tp, 1),
        ));
    }
    out
}

pub fn force_csv(rows: &[ForceRow]) -> String {
    let mut out = format!("{FORCE_HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.tw,
            fmt_round(r.p, 2),
            fmt_round(r.v, 2),
            fmt_round(r.va, 2),
            fmt_round(r.v_err_pct, 2),
            fmt_round(r.e, 2),
            fmt_round(r.ea, 2),
            fmt_round(r.e_err_pct, 2),
        ));
    }
    out
}

/// Whitespace-delimited `x t` lines.
pub fn worldline_plot(points: &[(f64, f64)]) -> String {
    points.iter().map(|(x, t)| format!("{x} {t}\n")).collect()
}

/// Whitespace-delimited `p v va` lines.
pub fn vp_plot(points: &[(f64, f64, f64)]) -> String {
    points.iter().map(|(p, v, va)| format!("{p} {v} {va}\n")).collect()
}

/// Worst relative lab-time error `|t − ta| / ta` over ticks `1..=ticks` of
/// uniform motion at `beta`, with one tick held at unit length (`v_t = v_l = τ_R`).
pub fn max_dilation_error(beta: f64, resolution: u64, ticks: u64) -> Result<f64> {
    let r = resolution as f64;
    let mut exp = TimeDilation::new(beta, resolution, ticks);
    exp.units = UnitSystem::new(r, r, 1.0, 1.0)?;
    let run = exp.run()?;
    Ok(run
        .rows
        .iter()
        .filter(|row| row.tw > 0)
        .map(|row| (row.t - row.ta).abs() / row.ta)
        .fold(0.0, f64::max))
}

/// A particle with an arbitrary starting register and carrier program.
#[derive(Debug, Clone)]
pub struct SpeedCapCase {
    pub resolution: u64,
    pub momentum: i64,
    pub ticks: u64,
    /// `(tick, carrier)` pairs.
    pub carriers: Vec<(u64, Carrier)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedCapReport {
    /// Largest |Δx| over one tick, in cells.
    pub max_displacement: u64,
    /// Largest measured |v| in units of c.
    pub max_speed: f64,
    /// Some tick covered more cells than lab nodes, compared exactly.
    pub superluminal: bool,
    /// The register reached `τ_R` at some tick.
    pub time_stopped: bool,
}

impl SpeedCapCase {
    pub fn run(&self) -> Result<SpeedCapReport> {
        let cells = self.resolution as usize * self.ticks as usize + 2;
        let mut st = Spacetime::new(UnitSystem::default(), self.resolution, cells)?;
        st.add_particle(Particle::new(0, self.momentum, 1)?)?;
        for &(tick, carrier) in &self.carriers {
            st.schedule_carrier(tick, carrier)?;
        }
        let trace = st.run(self.ticks)?;
        let records = trace.records(0);
        let max_displacement = records
            .windows(2)
            .map(|w| w[1].position.abs_diff(w[0].position))
            .max()
            .unwrap_or(0);
        let max_speed = trace
            .observations(0)
            .iter()
            .filter_map(|o| o.v)
            .map(f64::abs)
            .fold(0.0, f64::max);
        let superluminal = records.windows(2).any(|w| match (w[0].lab_node, w[1].lab_node) {
            (Some(a), Some(b)) => w[1].position.abs_diff(w[0].position) > b.abs_diff(a),
            _ => false,
        });
        let time_stopped = records.iter().any(|r| r.momentum.unsigned_abs() >= self.resolution);
        Ok(SpeedCapReport {
            max_displacement,
            max_speed,
            superluminal,
            time_stopped,
        })
    }
}
