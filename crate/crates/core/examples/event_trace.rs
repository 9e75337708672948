// Every event of the first tick of a β = 0.5 run: node advances, local
// shifts, moves, the bearing impact and the reset.
//
// `cargo run --example event_trace`

use spacetime_sim::{EventKind, Particle, Spacetime, TraceVerbosity, UnitSystem};

pub fn run_example() -> spacetime_sim::Result<String> {
    let mut st = Spacetime::new(UnitSystem::default(), 10, 12)?;
    st.add_particle(Particle::new(0, 5, 1)?)?;
    st.set_verbosity(TraceVerbosity::Full);
    let trace = st.run(1)?;
    let moves = trace.events().iter().filter(|e| e.kind == EventKind::Move).count();
    assert_eq!(moves, 5);
    Ok(trace.events_csv())
}

#[allow(dead_code)]
fn main() -> spacetime_sim::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
