//! Point particles: the jump register, motion steps, bearing resets and
//! interaction through carriers.
//!
//! A particle's momentum is the length `j` of its jump register, signed by
//! direction. On every reset the jump cursor is refilled with `|j|`. Each lab
//! node afterwards shifts the cursor once and moves the particle one cell,
//! until the cursor runs out and the motion is completed. A bearing reset
//! that finds the motion completed is one tick of the particle's own clock.

use crate::error::{invalid, Error, Result};
use crate::temporal_network::SpaceLattice;
use crate::units::UnitSystem;

/// Outcome of one motion step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Motion {
    Moved { from: i64, to: i64 },
    Completed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Increase,
    Reduce,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Increase => 1,
            Direction::Reduce => -1,
        }
    }
}

/// One interaction message: `acts` interaction acts in one direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Carrier {
    acts: u64,
    direction: Direction,
}

impl Carrier {
    pub fn new(acts: u64, direction: Direction) -> Result<Self> {
        if acts == 0 {
            return Err(invalid("acts", "a carrier delivers at least one act"));
        }
        Ok(Self { acts, direction })
    }

    pub fn increase(acts: u64) -> Result<Self> {
        Self::new(acts, Direction::Increase)
    }

    pub fn reduce(acts: u64) -> Result<Self> {
        Self::new(acts, Direction::Reduce)
    }

    pub fn acts(&self) -> u64 {
        self.acts
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Acts with direction sign applied.
    pub fn signed_acts(&self) -> i64 {
        self.acts as i64 * self.direction.sign()
    }
}

/// Copy of the observable particle state, carried by trace events.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParticleState {
    pub position: i64,
    pub momentum: i64,
    pub jump_cursor: u64,
    pub proper_ticks: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Particle {
    position: i64,
    momentum: i64,
    jump_cursor: u64,
    mass: u64,
    /// Acts absorbed toward the next momentum node ('Skip' list).
    skip: i64,
    proper_ticks: u64,
    completed: bool,
}

impl Particle {
    /// A particle at `position` with signed momentum `j` and rest mass `mass`
    /// (mass units; `mass` acts build one momentum node).
    pub fn new(position: i64, momentum: i64, mass: u64) -> Result<Self> {
        if mass == 0 {
            return Err(invalid("mass", "rest mass must be at least one mass unit"));
        }
        Ok(Self {
            position,
            momentum,
            jump_cursor: 0,
            mass,
            skip: 0,
            proper_ticks: 0,
            completed: true,
        })
    }

    pub fn at_rest(position: i64) -> Self {
        Self::new(position, 0, 1).expect("unit mass")
    }

    pub fn position(&self) -> i64 {
        self.position
    }

    pub fn momentum(&self) -> i64 {
        self.momentum
    }

    pub fn jump_cursor(&self) -> u64 {
        self.jump_cursor
    }

    pub fn mass(&self) -> u64 {
        self.mass
    }

    pub fn skip(&self) -> i64 {
        self.skip
    }

    pub fn proper_ticks(&self) -> u64 {
        self.proper_ticks
    }

    /// Whether a motion step found the jump cursor empty since the last reset.
    pub fn motion_completed(&self) -> bool {
        self.completed
    }

    /// `|j| ≥ τ_R`: the jump never finishes between bearings.
    pub fn time_stopped(&self, resolution: u64) -> bool {
        self.momentum.unsigned_abs() >= resolution
    }

    pub fn state(&self) -> ParticleState {
        ParticleState {
            position: self.position,
            momentum: self.momentum,
            jump_cursor: self.jump_cursor,
            proper_ticks: self.proper_ticks,
        }
    }

    /// Load the first jump at the start of a run. No proper tick is counted.
    pub fn start(&mut self) {
        self.jump_cursor = self.momentum.unsigned_abs();
        self.completed = false;
    }

    /// One `Run` message: shift the jump cursor and move one cell, or report
    /// the motion completed.
    pub fn step_motion(&mut self, id: usize, lattice: &mut SpaceLattice) -> Result<Motion> {
        if self.jump_cursor == 0 {
            self.completed = true;
            return Ok(Motion::Completed);
        }
        let from = self.position;
        let to = from + self.momentum.signum();
        lattice.relocate(id, from, to)?;
        self.position = to;
        self.jump_cursor -= 1;
        Ok(Motion::Moved { from, to })
    }

    /// Bearing reset: refill the cursor from the register. Returns whether
    /// the particle's clock ticked.
    pub fn reset(&mut self) -> bool {
        let ticked = self.completed;
        if ticked {
            self.proper_ticks += 1;
        }
        self.jump_cursor = self.momentum.unsigned_abs();
        self.completed = false;
        ticked
    }

    /// Apply a carrier. Acts accumulate in the skip list and every `mass`
    /// of them turn into one momentum node; momentum through zero flips the
    /// direction.
    pub fn do_impact(&mut self, carrier: &Carrier, resolution: u64) -> Result<()> {
        if !self.completed {
            if self.time_stopped(resolution) {
                return Err(Error::TimeStopped {
                    momentum: self.momentum.unsigned_abs(),
                    resolution,
                });
            }
            return Err(Error::MotionInProgress);
        }
        let mass = self.mass as i64;
        self.skip += carrier.signed_acts();
        let nodes = self.skip / mass;
        self.skip -= nodes * mass;
        self.momentum += nodes;
        Ok(())
    }
}

/// Force delivered by `acts` interaction acts in one tick, standard units.
pub fn force_from_intensity(acts: u64, units: &UnitSystem, resolution: u64) -> f64 {
    let r = resolution as f64;
    (1.0 / units.v_m) * (units.v_t / (r * r)) * acts as f64
}

/// Motion start delay `τ_R · μ / t_i`, in lab nodes.
pub fn start_delay(mass: u64, acts: u64, resolution: u64) -> Result<f64> {
    if acts == 0 {
        return Err(invalid("acts", "start delay needs a positive interaction intensity"));
    }
    Ok(resolution as f64 * mass as f64 / acts as f64)
}
