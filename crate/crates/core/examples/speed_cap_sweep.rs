// Random carrier programs never push a particle past one cell per node.
//
// `cargo run --example speed_cap_sweep -- [cases]`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spacetime_sim::experiments::SpeedCapCase;
use spacetime_sim::Carrier;

pub fn sweep(cases: usize) -> spacetime_sim::Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut massive, mut photon, mut stopped) = (0.0f64, 0.0f64, 0);
    for _ in 0..cases {
        let resolution = rng.gen_range(2..=30u64);
        let mut carriers = Vec::new();
        for tick in 1..=30 {
            if rng.gen_bool(0.2) {
                carriers.push((tick, Carrier::increase(1)?));
            }
        }
        let case = SpeedCapCase {
            resolution,
            momentum: rng.gen_range(0..=resolution as i64),
            ticks: 30,
            carriers,
        };
        let report = case.run()?;
        assert!(report.max_displacement <= resolution && !report.superluminal);
        if report.time_stopped {
            stopped += 1;
            photon = photon.max(report.max_speed);
        } else {
            massive = massive.max(report.max_speed);
        }
    }
    Ok(format!(
        "{cases} cases: fastest v = {massive:.4} below the time stop; \
         {stopped} cases reached it, fastest v there = {photon:.4}\n"
    ))
}

pub fn run_example() -> spacetime_sim::Result<String> {
    sweep(40)
}

#[allow(dead_code)]
fn main() -> spacetime_sim::Result<()> {
    let cases = std::env::args().nth(1).map_or(200, |a| a.parse().expect("case count"));
    print!("{}", sweep(cases)?);
    Ok(())
}
