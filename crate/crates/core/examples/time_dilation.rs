// Uniform motion at β = 0.5: a particle crosses half a cell per tick while
// its own clock falls behind the lab clock.
//
// `cargo run --example time_dilation`

use spacetime_sim::experiments::{dilation_csv, TimeDilation};

pub fn run_example() -> spacetime_sim::Result<String> {
    let run = TimeDilation::new(0.5, 10, 7).run()?;
    let last = run.rows.last().expect("tick rows");
    assert!(last.tp < last.t);
    Ok(dilation_csv(&run.rows))
}

#[allow(dead_code)]
fn main() -> spacetime_sim::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
