//! The main simulation loop.
//!
//! Per lab node, in order:
//!
//! 1. advance the timeline;
//! 2. deliver `itemRun` to the cells: every cell whose marked node is reached
//!    shifts its local time and is rescheduled;
//! 3. deliver `Run` to every particle: one motion step, or motion completed;
//! 4. on a bearing node, for each particle: apply the next tick's carrier,
//!    reset, and record the tick.
//!
//! Node 0 opens the run: the first tick's carriers are applied and every
//! particle loads its first jump.
//!
//! The lab time of a recorded tick `k` is the node at which the particle's
//! cell reads local time `k`. That shift can lie after the bearing node, so
//! the record stays pending until the cell fires. Once the last tick is
//! recorded the loop keeps shifting cells (particles held) until every
//! pending lab time has resolved.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::particle::{force_from_intensity, Carrier, Motion, Particle, ParticleState};
use crate::sync::{marked_index, SyncParams, Synchronizer};
use crate::temporal_network::{LabTimeline, SpaceLattice, TimeNode};
use crate::units::UnitSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceVerbosity {
    /// Bearing nodes and particle events.
    #[default]
    Ticks,
    /// Additionally every node advance and every cell-local shift.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Advance,
    Bearing,
    LocalTick,
    Move,
    Impact,
    ImpactRejected,
    Reset,
    ProperTick,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Advance => "advance",
            EventKind::Bearing => "bearing",
            EventKind::LocalTick => "local-tick",
            EventKind::Move => "move",
            EventKind::Impact => "impact",
            EventKind::ImpactRejected => "impact-rejected",
            EventKind::Reset => "reset",
            EventKind::ProperTick => "proper-tick",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEvent {
    pub node: u64,
    pub kind: EventKind,
    pub x: Option<i64>,
    pub particle: Option<(usize, ParticleState)>,
}

impl TraceEvent {
    pub const CSV_HEADER: &'static str = "node,kind,x,particle,position,momentum,jump_cursor,proper_ticks";
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},", self.node, self.kind.as_str())?;
        if let Some(x) = self.x {
            write!(f, "{x}")?;
        }
        match &self.particle {
            Some((id, s)) => write!(
                f,
                ",{id},{},{},{},{}",
                s.position, s.momentum, s.jump_cursor, s.proper_ticks
            ),
            None => write!(f, ",,,,,"),
        }
    }
}

/// Raw state of one particle at the end of a tick.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TickRecord {
    pub tick: u64,
    pub position: i64,
    pub proper_ticks: u64,
    pub momentum: i64,
    /// Force acting during this tick, standard units, signed.
    pub force: f64,
    /// Lab node at which the particle's cell reads local time `tick`.
    pub lab_node: Option<u64>,
}

/// Per-tick observables of one particle, standard units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub tick: u64,
    pub x: f64,
    pub t: f64,
    pub tp: f64,
    /// Register momentum `j/τ_R` (the proper velocity), m₀c units.
    pub p_register: f64,
    /// Initial momentum plus accumulated impulse `Σ f·Δt`, m₀c units.
    pub p_impulse: f64,
    /// Coordinate velocity `Δx/Δt` over the last tick; `None` when `Δt = 0`.
    pub v: Option<f64>,
    /// Initial energy plus accumulated work `Σ f·Δx`, m₀c² units.
    pub energy: f64,
    /// `Δt/Δtp` over the last tick; `None` when the particle clock did not tick.
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
struct Pending {
    particle: usize,
    tick: u64,
}

/// One simulated spacetime: lattice, particles and the carrier program.
#[derive(Debug, Clone)]
pub struct Spacetime {
    units: UnitSystem,
    sync: SyncParams,
    lattice: SpaceLattice,
    particles: Vec<Particle>,
    schedule: BTreeMap<u64, Carrier>,
    verbosity: TraceVerbosity,
}

impl Spacetime {
    pub fn new(units: UnitSystem, resolution: u64, n_cells: usize) -> Result<Self> {
        let sync = SyncParams::new(resolution, units.node_cell_ratio()?)?;
        Ok(Self {
            units,
            sync,
            lattice: SpaceLattice::build(n_cells)?,
            particles: Vec::new(),
            schedule: BTreeMap::new(),
            verbosity: TraceVerbosity::default(),
        })
    }

    pub fn units(&self) -> &UnitSystem {
        &self.units
    }

    pub fn resolution(&self) -> u64 {
        self.sync.resolution
    }

    pub fn lattice(&self) -> &SpaceLattice {
        &self.lattice
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    pub fn add_particle(&mut self, particle: Particle) -> Result<usize> {
        let id = self.particles.len();
        self.lattice.place(id, particle.position())?;
        self.particles.push(particle);
        Ok(id)
    }

    /// Deliver `carrier` at the bearing moment opening `tick` (1-based).
    pub fn schedule_carrier(&mut self, tick: u64, carrier: Carrier) -> Result<()> {
        if tick == 0 {
            return Err(invalid("tick", "carriers are scheduled for ticks 1, 2, ..."));
        }
        self.schedule.insert(tick, carrier);
        Ok(())
    }

    pub fn schedule(&self) -> &BTreeMap<u64, Carrier> {
        &self.schedule
    }

    pub fn set_verbosity(&mut self, verbosity: TraceVerbosity) {
        self.verbosity = verbosity;
    }

    /// Run the node loop for `until_tick` ticks.
    pub fn run(self, until_tick: u64) -> Result<ExperimentTrace> {
        Run::new(self, until_tick)?.execute()
    }
}

struct Run {
    st: Spacetime,
    until: u64,
    timeline: LabTimeline,
    sync: Synchronizer,
    events: Vec<TraceEvent>,
    records: Vec<Vec<TickRecord>>,
    pending: HashMap<i64, Vec<Pending>>,
    n_pending: usize,
    force: Vec<f64>,
    offered: Vec<u64>,
    realized: Vec<u64>,
    first_move: Vec<Option<u64>>,
    initial: Vec<ParticleState>,
}

impl Run {
    fn new(mut st: Spacetime, until: u64) -> Result<Self> {
        let resolution = st.sync.resolution;
        let main_last = until
            .checked_mul(resolution)
            .ok_or_else(|| invalid("until_tick", "run length overflows"))?;
        let far = st.lattice.len() as i64 - 1;
        let needed = main_last.max(marked_index(main_last, far, st.sync.ratio));
        let timeline = LabTimeline::build(needed.div_ceil(resolution).max(1), resolution)?;
        let sync = Synchronizer::new(st.sync, &mut st.lattice, timeline.last_index());
        let n = st.particles.len();
        let initial = st.particles.iter().map(Particle::state).collect();
        Ok(Self {
            st,
            until,
            timeline,
            sync,
            events: Vec::new(),
            records: vec![Vec::new(); n],
            pending: HashMap::new(),
            n_pending: 0,
            force: vec![0.0; n],
            offered: vec![0; n],
            realized: vec![0; n],
            first_move: vec![None; n],
            initial,
        })
    }

    fn emit(&mut self, node: u64, kind: EventKind, x: Option<i64>, particle: Option<usize>) {
        let particle = particle.map(|id| (id, self.st.particles[id].state()));
        self.events.push(TraceEvent { node, kind, x, particle });
    }

    fn execute(mut self) -> Result<ExperimentTrace> {
        self.open();
        let main_last = self.until * self.st.sync.resolution;
        while self.timeline.current().index < main_last {
            let node = self.timeline.advance()?;
            if self.st.verbosity == TraceVerbosity::Full {
                self.emit(node.index, EventKind::Advance, None, None);
            }
            self.shift_cells(&node);
            self.run_particles(node.index)?;
            if node.bearing {
                self.bearing(node.index);
            }
        }
        while self.n_pending > 0 {
            let node = self.timeline.advance()?;
            self.shift_cells(&node);
        }
        Ok(ExperimentTrace {
            units: self.st.units,
            resolution: self.st.sync.resolution,
            events: self.events,
            records: self.records,
            initial: self.initial,
            masses: self.st.particles.iter().map(Particle::mass).collect(),
            offered: self.offered,
            realized: self.realized,
            first_move: self.first_move,
            particles: self.st.particles,
        })
    }

    fn open(&mut self) {
        for id in 0..self.st.particles.len() {
            self.impact(0, id, 1);
            self.st.particles[id].start();
            self.record(id, 0);
        }
    }

    fn shift_cells(&mut self, node: &TimeNode) {
        let shifted = self.sync.dispatch_tick(node, &mut self.st.lattice);
        for x in shifted {
            if self.st.verbosity == TraceVerbosity::Full {
                self.emit(node.index, EventKind::LocalTick, Some(x), None);
            }
            if self.n_pending == 0 {
                continue;
            }
            let Some(waiting) = self.pending.get_mut(&x) else {
                continue;
            };
            let local = self.st.lattice.cells()[x as usize].local_ticks;
            let before = waiting.len();
            waiting.retain(|p| {
                if p.tick <= local {
                    self.records[p.particle][p.tick as usize].lab_node = Some(node.index);
                    false
                } else {
                    true
                }
            });
            self.n_pending -= before - waiting.len();
        }
    }

    fn run_particles(&mut self, node: u64) -> Result<()> {
        for id in 0..self.st.particles.len() {
            let motion = self.st.particles[id].step_motion(id, &mut self.st.lattice)?;
            if let Motion::Moved { to, .. } = motion {
                self.first_move[id].get_or_insert(node);
                self.emit(node, EventKind::Move, Some(to), Some(id));
            }
        }
        Ok(())
    }

    fn bearing(&mut self, node: u64) {
        let tick = node / self.st.sync.resolution;
        self.emit(node, EventKind::Bearing, None, None);
        for id in 0..self.st.particles.len() {
            let during = self.force[id];
            if tick < self.until {
                self.impact(node, id, tick + 1);
            } else {
                self.force[id] = 0.0;
            }
            let x = self.st.particles[id].position();
            self.emit(node, EventKind::Reset, Some(x), Some(id));
            if self.st.particles[id].reset() {
                self.emit(node, EventKind::ProperTick, Some(x), Some(id));
            }
            self.record(id, tick);
            self.records[id][tick as usize].force = during;
        }
    }

    /// Apply the carrier scheduled for `tick`, if any; it sets the force for that tick.
    fn impact(&mut self, node: u64, id: usize, tick: u64) {
        self.force[id] = 0.0;
        let Some(carrier) = self.st.schedule.get(&tick).copied() else {
            return;
        };
        let resolution = self.st.sync.resolution;
        let x = self.st.particles[id].position();
        self.offered[id] += 1;
        match self.st.particles[id].do_impact(&carrier, resolution) {
            Ok(()) => {
                self.realized[id] += 1;
                self.force[id] = carrier.direction().sign() as f64
                    * force_from_intensity(carrier.acts(), &self.st.units, resolution);
                self.emit(node, EventKind::Impact, Some(x), Some(id));
            }
            Err(Error::MotionInProgress | Error::TimeStopped { .. }) => {
                self.emit(node, EventKind::ImpactRejected, Some(x), Some(id));
            }
            Err(e) => unreachable!("do_impact only rejects on motion state: {e}"),
        }
    }

    fn record(&mut self, id: usize, tick: u64) {
        let p = &self.st.particles[id];
        let x = p.position();
        let cell = &self.st.lattice.cells()[x as usize];
        let lab_node = if tick == 0 {
            Some(marked_index(0, x, self.st.sync.ratio))
        } else if cell.local_ticks >= tick {
            // the tick-th shift cannot precede this bearing node, so it is the latest
            cell.last_shift
        } else {
            self.pending.entry(x).or_default().push(Pending { particle: id, tick });
            self.n_pending += 1;
            None
        };
        self.records[id].push(TickRecord {
            tick,
            position: x,
            proper_ticks: p.proper_ticks(),
            momentum: p.momentum(),
            force: 0.0,
            lab_node,
        });
    }
}

/// Everything a run produced.
#[derive(Debug, Clone)]
pub struct ExperimentTrace {
    units: UnitSystem,
    resolution: u64,
    events: Vec<TraceEvent>,
    records: Vec<Vec<TickRecord>>,
    initial: Vec<ParticleState>,
    masses: Vec<u64>,
    offered: Vec<u64>,
    realized: Vec<u64>,
    first_move: Vec<Option<u64>>,
    particles: Vec<Particle>,
}

impl ExperimentTrace {
    pub fn units(&self) -> &UnitSystem {
        &self.units
    }

    pub fn resolution(&self) -> u64 {
        self.resolution
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn records(&self, particle: usize) -> &[TickRecord] {
        &self.records[particle]
    }

    pub fn particle_count(&self) -> usize {
        self.records.len()
    }

    /// Final particle states.
    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    /// Carriers offered to / accepted by `particle`.
    pub fn interactions(&self, particle: usize) -> (u64, u64) {
        (self.offered[particle], self.realized[particle])
    }

    /// Lab node of the particle's first motion step.
    pub fn first_move_node(&self, particle: usize) -> Option<u64> {
        self.first_move[particle]
    }

    /// Trace as CSV with a header line.
    pub fn events_csv(&self) -> String {
        let mut out = String::from(TraceEvent::CSV_HEADER);
        out.push('\n');
        for e in &self.events {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    pub fn observations(&self, particle: usize) -> Vec<Observation> {
        measure(
            &self.records[particle],
            &self.initial[particle],
            self.masses[particle],
            &self.units,
            self.resolution,
        )
    }
}

/// Derive observables from the tick records of one particle.
pub fn measure(
    records: &[TickRecord],
    initial: &ParticleState,
    mass: u64,
    units: &UnitSystem,
    resolution: u64,
) -> Vec<Observation> {
    let rest_mass = units.mass_to_standard(mass);
    // proper velocity j/τ_R equals the initial momentum p/(m₀c)
    let p0 = initial.momentum as f64 * (units.v_t / units.v_l) / resolution as f64;
    let mut p = p0;
    let mut energy = (1.0 + p0 * p0).sqrt();
    let mut prev: Option<(f64, f64, f64)> = None;
    records
        .iter()
        .map(|r| {
            let x = units.distance_to_standard(r.position);
            let t = units.time_to_standard(r.lab_node.expect("lab time resolved by the drain phase"));
            let tp = units.time_to_standard(r.proper_ticks * resolution);
            let (mut v, mut gamma) = (None, None);
            if let Some((x0, t0, tp0)) = prev {
                let (dx, dt, dtp) = (x - x0, t - t0, tp - tp0);
                p += r.force * dt / (rest_mass * units.c);
                energy += r.force * dx / (rest_mass * units.c * units.c);
                v = (dt > 0.0).then(|| dx / dt / units.c);
                gamma = (dtp > 0.0).then(|| dt / dtp);
            }
            prev = Some((x, t, tp));
            Observation {
                tick: r.tick,
                x,
                t,
                tp,
                p_register: r.momentum as f64 * (units.v_t / units.v_l) / resolution as f64,
                p_impulse: p,
                v,
                energy,
                gamma,
            }
        })
        .collect()
}
