// Heavier particles absorb more acts before their first move.
//
// `cargo run --example mass_delay`

use std::fmt::Write;

use spacetime_sim::particle::start_delay;
use spacetime_sim::{Carrier, Particle, Spacetime, UnitSystem};

pub fn run_example() -> spacetime_sim::Result<String> {
    let resolution = 10;
    let mut out = String::from("mass,acts,first_move_node,delay_formula\n");
    for acts in [1, 2] {
        for mass in 1..=4 {
            let mut st = Spacetime::new(UnitSystem::default(), resolution, 200)?;
            st.add_particle(Particle::new(0, 0, mass)?)?;
            for tick in 1..=10 {
                st.schedule_carrier(tick, Carrier::increase(acts)?)?;
            }
            let first = st.run(10)?.first_move_node(0).expect("particle moves");
            let delay = start_delay(mass, acts, resolution)?;
            writeln!(out, "{mass},{acts},{first},{delay}").unwrap();
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> spacetime_sim::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
