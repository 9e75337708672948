//! Discrete-event simulation of one-dimensional spacetime with the
//! Minkowski metric.
//!
//! Laboratory time is a sequence of time nodes; every cell of space carries
//! its own local clock. A cell at distance ρ fires its k-th local tick at
//! the first lab node τ with τ² ≥ (k·τ_R)² + ρ², so lab time and local time
//! together form a network with the Minkowski interval. Point particles
//! move one cell per lab node while their jump register lasts, and interact
//! only between jumps. Time dilation, the light-speed cap and the
//! relativistic `v(p)` and `E(p)` relations all come out of that mechanism.
//!
//! ```
//! use spacetime_sim::experiments::TimeDilation;
//!
//! let run = TimeDilation::new(0.5, 10, 7).run().unwrap();
//! let tw1 = &run.rows[1];
//! assert_eq!((tw1.x, tw1.t, tw1.tp), (0.5, 1.2, 1.0));
//! ```
//!
//! Module map:
//!
//! - [`units`]: natural ↔ standard unit conversions
//! - [`temporal_network`]: lab timeline and space lattice
//! - [`sync`]: the synchronization rule and local-tick dispatch
//! - [`particle`]: jump register, motion, reset, carriers
//! - [`engine`]: the node loop, traces and observables
//! - [`oracles`]: closed-form reference values
//! - [`experiments`]: the two scripted experiments and sweeps
//! - [`cli`]: config parsing and the `spacetime` command

pub mod cli;
pub mod engine;
mod error;
pub mod experiments;
pub mod oracles;
pub mod particle;
pub mod sync;
pub mod temporal_network;
pub mod units;

pub use engine::{EventKind, ExperimentTrace, Observation, Spacetime, TickRecord, TraceEvent, TraceVerbosity};
pub use error::{Error, Result};
pub use particle::{Carrier, Direction, Motion, Particle, ParticleState};
pub use sync::{marked_index, SyncParams, Synchronizer};
pub use temporal_network::{LabTimeline, SpaceCell, SpaceLattice, TimeNode};
pub use units::UnitSystem;
