// A one-act force applied every tick to a particle at rest.
//
// `cargo run --example constant_force -- [acts] [mass] [ticks]`

use spacetime_sim::experiments::{force_csv, ConstantForce};

pub fn run_with(acts: u64, mass: u64, ticks: u64) -> spacetime_sim::Result<String> {
    let run = ConstantForce::new(acts, mass, 10, ticks).run()?;
    Ok(force_csv(&run.rows))
}

pub fn run_example() -> spacetime_sim::Result<String> {
    run_with(1, 1, 8)
}

#[allow(dead_code)]
fn main() -> spacetime_sim::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let acts = args.first().copied().unwrap_or(1);
    let mass = args.get(1).copied().unwrap_or(1);
    let ticks = args.get(2).copied().unwrap_or(8);
    print!("{}", run_with(acts, mass, ticks)?);
    Ok(())
}
