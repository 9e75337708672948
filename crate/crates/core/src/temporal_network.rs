//! The laboratory timeline and the one-dimensional space lattice.
//!
//! Both are ordered node sequences. Links between nodes are ordinals into
//! the sequence, and the timeline cursor only ever moves one node forward.

use crate::error::{invalid, Error, Result};

/// One laboratory time node. `index` is the node's natural time value τ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeNode {
    pub index: u64,
    /// `true` for a bearing moment, `false` for an ordinary one.
    pub bearing: bool,
}

/// The laboratory timeline: `ticks · τ_R + 1` nodes with a bearing node at
/// every positive multiple of the resolution.
#[derive(Debug, Clone)]
pub struct LabTimeline {
    nodes: Vec<TimeNode>,
    resolution: u64,
    cursor: usize,
}

impl LabTimeline {
    pub fn build(total_ticks: u64, resolution: u64) -> Result<Self> {
        if total_ticks == 0 {
            return Err(invalid("total_ticks", "must be at least 1"));
        }
        if resolution == 0 {
            return Err(invalid("resolution", "must be at least 1"));
        }
        let last = total_ticks
            .checked_mul(resolution)
            .ok_or_else(|| invalid("total_ticks", "timeline length overflows"))?;
        let nodes = (0..=last)
            .map(|index| TimeNode {
                index,
                bearing: index > 0 && index % resolution == 0,
            })
            .collect();
        Ok(Self {
            nodes,
            resolution,
            cursor: 0,
        })
    }

    pub fn resolution(&self) -> u64 {
        self.resolution
    }

    pub fn nodes(&self) -> &[TimeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn last_index(&self) -> u64 {
        self.nodes[self.nodes.len() - 1].index
    }

    pub fn current(&self) -> TimeNode {
        self.nodes[self.cursor]
    }

    /// Number of complete ticks in the timeline.
    pub fn total_ticks(&self) -> u64 {
        self.last_index() / self.resolution
    }

    /// Shift to the next node. Running off the end is the normal end of a run.
    pub fn advance(&mut self) -> Result<TimeNode> {
        if self.cursor + 1 >= self.nodes.len() {
            return Err(Error::TimelineExhausted {
                node: self.current().index,
            });
        }
        self.cursor += 1;
        Ok(self.nodes[self.cursor])
    }
}

impl Iterator for LabTimeline {
    type Item = TimeNode;

    fn next(&mut self) -> Option<TimeNode> {
        self.advance().ok()
    }
}

/// One cell of physical space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceCell {
    pub x: i64,
    /// Completed local time shifts.
    pub local_ticks: u64,
    /// Lab node at which the next local time shift fires.
    pub marked: Option<u64>,
    /// Lab node of the most recent local time shift.
    pub last_shift: Option<u64>,
    pub occupant: Option<usize>,
}

impl SpaceCell {
    fn new(x: i64) -> Self {
        Self {
            x,
            local_ticks: 0,
            marked: None,
            last_shift: None,
            occupant: None,
        }
    }
}

/// Cells with contiguous coordinates `0..n`.
#[derive(Debug, Clone)]
pub struct SpaceLattice {
    cells: Vec<SpaceCell>,
}

impl SpaceLattice {
    pub fn build(n_cells: usize) -> Result<Self> {
        if n_cells == 0 {
            return Err(invalid("n_cells", "must be at least 1"));
        }
        Ok(Self {
            cells: (0..n_cells as i64).map(SpaceCell::new).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[SpaceCell] {
        &self.cells
    }

    pub fn cells_mut(&mut self) -> &mut [SpaceCell] {
        &mut self.cells
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && (x as usize) < self.cells.len()
    }

    pub fn cell(&self, x: i64) -> Result<&SpaceCell> {
        if self.contains(x) {
            Ok(&self.cells[x as usize])
        } else {
            Err(Error::OutOfSpace { x })
        }
    }

    pub fn cell_mut(&mut self, x: i64) -> Result<&mut SpaceCell> {
        if self.contains(x) {
            Ok(&mut self.cells[x as usize])
        } else {
            Err(Error::OutOfSpace { x })
        }
    }

    /// Neighbouring coordinate in direction `dir` (`+1` or `-1`), if it exists.
    pub fn neighbor(&self, x: i64, dir: i64) -> Option<i64> {
        let y = x.checked_add(dir.signum())?;
        (self.contains(x) && self.contains(y)).then_some(y)
    }

    pub fn place(&mut self, particle: usize, x: i64) -> Result<()> {
        let cell = self.cell_mut(x)?;
        if cell.occupant.is_some() {
            return Err(Error::CellOccupied { x });
        }
        cell.occupant = Some(particle);
        Ok(())
    }

    /// Move an occupant one cell; the source must hold `particle`.
    pub fn relocate(&mut self, particle: usize, from: i64, to: i64) -> Result<()> {
        if !self.contains(to) {
            return Err(Error::OutOfSpace { x: to });
        }
        if self.cells[to as usize].occupant.is_some() {
            return Err(Error::CellOccupied { x: to });
        }
        let source = self.cell_mut(from)?;
        debug_assert_eq!(source.occupant, Some(particle));
        source.occupant = None;
        self.cells[to as usize].occupant = Some(particle);
        Ok(())
    }
}
