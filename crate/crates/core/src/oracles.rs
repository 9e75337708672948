//! Closed-form special-relativity reference values.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticPoint {
    pub ta: f64,
    pub va: f64,
    pub ea: f64,
}

/// Exact lab time after `ticks` ticks of motion at proper velocity `beta`.
pub fn analytic_lab_time(ticks: u64, beta: f64, tick_len: f64) -> f64 {
    ticks as f64 * tick_len * (1.0 + beta * beta).sqrt()
}

/// Velocity for momentum `p` (m₀c units).
pub fn analytic_velocity(p: f64) -> f64 {
    p / analytic_energy(p)
}

/// Energy for momentum `p` (m₀c², m₀c units).
pub fn analytic_energy(p: f64) -> f64 {
    (1.0 + p * p).sqrt()
}

pub fn analytic_point(ticks: u64, beta: f64, tick_len: f64, p: f64) -> AnalyticPoint {
    AnalyticPoint {
        ta: analytic_lab_time(ticks, beta, tick_len),
        va: analytic_velocity(p),
        ea: analytic_energy(p),
    }
}

/// `100 · |measured − exact| / exact`.
pub fn relative_error(measured: f64, exact: f64) -> Result<f64> {
    if exact == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok(100.0 * (measured - exact).abs() / exact.abs())
}
