//! Synchronization of cell-local time with laboratory time.
//!
//! A cell at coordinate ρ fires its k-th local time shift at the first lab
//! node τ satisfying the invariant interval
//!
//! ```text
//! τ² ≥ σ² + (ρ · v_t/v_l)²,   σ = k · τ_R
//! ```
//!
//! Everything here is exact integer arithmetic.

use num_rational::Ratio;

use crate::error::{invalid, Error, Result};
use crate::temporal_network::{SpaceCell, SpaceLattice, TimeNode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyncParams {
    pub resolution: u64,
    /// Node units per cell unit, `v_t / v_l`.
    pub ratio: Ratio<u64>,
}

impl SyncParams {
    pub fn new(resolution: u64, ratio: Ratio<u64>) -> Result<Self> {
        if resolution == 0 {
            return Err(invalid("resolution", "must be at least 1"));
        }
        if *ratio.numer() == 0 {
            return Err(invalid("ratio", "must be positive"));
        }
        Ok(Self { resolution, ratio })
    }

    /// Resolution `τ_R` with one node per cell.
    pub fn unit_ratio(resolution: u64) -> Result<Self> {
        Self::new(resolution, Ratio::from_integer(1))
    }
}

/// Smallest `s` with `s² ≥ n`.
pub fn ceil_sqrt(n: u128) -> u128 {
    let root = if n < (1 << 52) {
        // A double is exact enough here to land within one of the root.
        let mut s = (n as f64).sqrt() as u128;
        while s * s > n {
            s -= 1;
        }
        while (s + 1) * (s + 1) <= n {
            s += 1;
        }
        s
    } else {
        n.isqrt()
    };
    if root * root == n {
        root
    } else {
        root + 1
    }
}

/// The lab node at which a cell `rho` cells from the origin reads local time `sigma`.
pub fn marked_index(sigma: u64, rho: i64, ratio: Ratio<u64>) -> u64 {
    let (num, den) = (*ratio.numer() as u128, *ratio.denom() as u128);
    let sigma = sigma as u128;
    let rho = rho.unsigned_abs() as u128;
    let scaled = (sigma * den) * (sigma * den) + (rho * num) * (rho * num);
    // smallest τ with (τ·den)² ≥ scaled
    let root = ceil_sqrt(scaled);
    root.div_ceil(den) as u64
}

/// Schedule the next local shift of `cell` (its `local_ticks + 1`-th).
///
/// Fails when the shift lies past `last_node`; the cell's `marked` is still
/// recorded so the caller can see where it would fire.
pub fn synchronize_cell(cell: &mut SpaceCell, params: &SyncParams, last_node: u64) -> Result<u64> {
    let sigma = (cell.local_ticks + 1) * params.resolution;
    let marked = marked_index(sigma, cell.x, params.ratio);
    cell.marked = Some(marked);
    if marked > last_node {
        return Err(Error::TimelineTooShort {
            x: cell.x,
            needed: marked,
            last: last_node,
        });
    }
    Ok(marked)
}

fn shift(cell: &mut SpaceCell, node: u64) {
    cell.local_ticks += 1;
    cell.last_shift = Some(node);
}

/// Deliver `itemRun(node)` to every cell by direct scan.
///
/// Every cell whose `marked` equals the node shifts its local time and is
/// rescheduled. Far cells can owe several shifts to one node; each is made.
/// Returns the coordinate of every shift, in order.
pub fn dispatch_tick(
    node: &TimeNode,
    lattice: &mut SpaceLattice,
    params: &SyncParams,
    last_node: u64,
) -> Vec<i64> {
    let mut shifted = Vec::new();
    for cell in lattice.cells_mut() {
        while cell.marked == Some(node.index) {
            shift(cell, node.index);
            let _ = synchronize_cell(cell, params, last_node);
            shifted.push(cell.x);
        }
    }
    shifted
}

/// Calendar-queue form of [`dispatch_tick`]: cells are bucketed by their
/// marked node so each lab node only visits the cells that fire on it.
#[derive(Debug, Clone)]
pub struct Synchronizer {
    params: SyncParams,
    calendar: Vec<Vec<usize>>,
}

impl Synchronizer {
    /// Schedule the first local shift of every cell on a timeline ending at `last_node`.
    pub fn new(params: SyncParams, lattice: &mut SpaceLattice, last_node: u64) -> Self {
        let mut sync = Self {
            params,
            calendar: vec![Vec::new(); last_node as usize + 1],
        };
        for (i, cell) in lattice.cells_mut().iter_mut().enumerate() {
            if let Ok(m) = synchronize_cell(cell, &sync.params, last_node) {
                sync.calendar[m as usize].push(i);
            }
        }
        sync
    }

    pub fn params(&self) -> &SyncParams {
        &self.params
    }

    pub fn last_node(&self) -> u64 {
        self.calendar.len() as u64 - 1
    }

    pub fn dispatch_tick(&mut self, node: &TimeNode, lattice: &mut SpaceLattice) -> Vec<i64> {
        let last = self.last_node();
        let Some(bucket) = self.calendar.get_mut(node.index as usize) else {
            return Vec::new();
        };
        let mut due = std::mem::take(bucket);
        due.sort_unstable();
        let cells = lattice.cells_mut();
        let mut shifted = Vec::with_capacity(due.len());
        for &i in &due {
            let cell = &mut cells[i];
            debug_assert_eq!(cell.marked, Some(node.index));
            loop {
                shift(cell, node.index);
                shifted.push(cell.x);
                match synchronize_cell(cell, &self.params, last) {
                    Ok(m) if m == node.index => continue,
                    Ok(m) => self.calendar[m as usize].push(i),
                    Err(_) => {}
                }
                break;
            }
        }
        shifted
    }
}
