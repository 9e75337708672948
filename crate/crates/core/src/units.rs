//! Conversions between natural units (node counts, cell counts, mass units)
//! and standard units.
//!
//! Natural quantities are exact integers. Only the standard-unit results are
//! floating point.

use num_rational::Ratio;

use crate::error::{invalid, Result};

/// Conversion coefficients between the node network and standard units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    /// Lab-time nodes per unit length of light-time.
    pub v_t: f64,
    /// Space cells per unit length.
    pub v_l: f64,
    /// Mass units per unit mass.
    pub v_m: f64,
    /// Light speed.
    pub c: f64,
}

impl Default for UnitSystem {
    /// `c = 1`, `v_t = v_l = 10`, `v_m = 1`: ten nodes per metre of
    /// light-time and ten cells per metre.
    fn default() -> Self {
        Self {
            v_t: 10.0,
            v_l: 10.0,
            v_m: 1.0,
            c: 1.0,
        }
    }
}

impl UnitSystem {
    pub fn new(v_t: f64, v_l: f64, v_m: f64, c: f64) -> Result<Self> {
        let units = Self { v_t, v_l, v_m, c };
        units.validate()?;
        Ok(units)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("v_t", self.v_t),
            ("v_l", self.v_l),
            ("v_m", self.v_m),
            ("c", self.c),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(invalid(name, format!("must be finite and positive, got {value}")));
            }
        }
        Ok(())
    }

    /// Node-per-cell ratio `v_t / v_l` as an exact fraction.
    ///
    /// The synchronization rule works in integers, so the ratio must be a
    /// fraction with a modest denominator.
    pub fn node_cell_ratio(&self) -> Result<Ratio<u64>> {
        self.validate()?;
        let value = self.v_t / self.v_l;
        let approx = Ratio::<i64>::approximate_float(value)
            .ok_or_else(|| invalid("v_t/v_l", format!("{value} has no rational form")))?;
        let (num, den) = (*approx.numer(), *approx.denom());
        if num <= 0 || den <= 0 || den > 1_000_000 || ((num as f64 / den as f64) - value).abs() > 1e-12 * value {
            return Err(invalid(
                "v_t/v_l",
                format!("{value} is not a fraction with denominator <= 10^6"),
            ));
        }
        Ok(Ratio::new(num as u64, den as u64))
    }

    pub fn time_to_standard(&self, nodes: u64) -> f64 {
        nodes as f64 / (self.c * self.v_t)
    }

    pub fn distance_to_standard(&self, cells: i64) -> f64 {
        cells as f64 / self.v_l
    }

    pub fn mass_to_standard(&self, mass_units: u64) -> f64 {
        mass_units as f64 / self.v_m
    }

    /// Relative velocity `β = ρ / τ` with `τ = T_w · τ_R`; the travel
    /// distance is converted to node units first.
    pub fn relative_velocity(&self, cells: i64, ticks: u64, resolution: u64) -> Result<f64> {
        let nodes = ticks
            .checked_mul(resolution)
            .filter(|&n| n > 0)
            .ok_or_else(|| invalid("ticks*resolution", "must be positive"))?;
        Ok(cells as f64 * (self.v_t / self.v_l) / nodes as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_conversion_matches_lab_time_column() {
        let u = UnitSystem::default();
        assert_eq!(u.time_to_standard(12), 1.2);
        assert_eq!(u.time_to_standard(0), 0.0);
        assert_eq!(u.time_to_standard(23), 2.3);
    }

    #[test]
    fn distance_uses_the_length_coefficient() {
        let u = UnitSystem::new(20.0, 10.0, 1.0, 1.0).unwrap();
        assert_eq!(u.distance_to_standard(5), 0.5);
        assert_eq!(u.distance_to_standard(0), 0.0);
        assert_eq!(u.distance_to_standard(35), 3.5);
    }

    #[test]
    fn mass_conversion() {
        let u = UnitSystem::default();
        assert_eq!(u.mass_to_standard(1), 1.0);
        assert_eq!(u.mass_to_standard(0), 0.0);
        let u = UnitSystem::new(10.0, 10.0, 2.0, 1.0).unwrap();
        assert_eq!(u.mass_to_standard(5), 2.5);
    }

    #[test]
    fn relative_velocity_examples() {
        let u = UnitSystem::default();
        assert_eq!(u.relative_velocity(10, 2, 10).unwrap(), 0.5);
        assert_eq!(u.relative_velocity(0, 2, 10).unwrap(), 0.0);
        assert_eq!(u.relative_velocity(30, 3, 10).unwrap(), 1.0);
        assert!(u.relative_velocity(5, 0, 10).is_err());
    }

    #[test]
    fn rejects_non_positive_coefficients() {
        assert!(UnitSystem::new(0.0, 10.0, 1.0, 1.0).is_err());
        assert!(UnitSystem::new(10.0, -1.0, 1.0, 1.0).is_err());
        assert!(UnitSystem::new(10.0, 10.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn ratio_is_exact() {
        let u = UnitSystem::new(20.0, 10.0, 1.0, 1.0).unwrap();
        assert_eq!(u.node_cell_ratio().unwrap(), Ratio::new(2, 1));
        let u = UnitSystem::new(10.0, 15.0, 1.0, 1.0).unwrap();
        assert_eq!(u.node_cell_ratio().unwrap(), Ratio::new(2, 3));
        let u = UnitSystem::new(std::f64::consts::PI, 1.0, 1.0, 1.0).unwrap();
        assert!(u.node_cell_ratio().is_err());
    }
}
