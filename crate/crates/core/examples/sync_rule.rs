// The synchronization rule on its own: which lab node each cell reads a
// given local tick at, and how a calendar queue delivers those ticks.
//
// `cargo run --example sync_rule`

use std::fmt::Write;

use num_rational::Ratio;
use spacetime_sim::{marked_index, LabTimeline, SpaceLattice, SyncParams, Synchronizer};

pub fn run_example() -> spacetime_sim::Result<String> {
    let mut out = String::new();
    let one = Ratio::from_integer(1);

    writeln!(out, "marked node of local tick 1 (tau_r = 10) by cell").unwrap();
    for rho in 0..=12 {
        writeln!(out, "  x={rho:>2}  node {}", marked_index(10, rho, one)).unwrap();
    }

    // far cells owe several local ticks to the same lab node early on
    let params = SyncParams::unit_ratio(10)?;
    let timeline = LabTimeline::build(25, 10)?;
    let mut lattice = SpaceLattice::build(201)?;
    let mut sync = Synchronizer::new(params, &mut lattice, timeline.last_index());
    for node in timeline {
        let shifted = sync.dispatch_tick(&node, &mut lattice);
        let at_far = shifted.iter().filter(|&&x| x == 200).count();
        if at_far > 1 {
            writeln!(out, "cell 200 reads {at_far} local ticks at node {}", node.index).unwrap();
        }
    }
    writeln!(out, "cell 200 local time after 250 nodes: {}", lattice.cell(200)?.local_ticks).unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> spacetime_sim::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
