// Driving a run from `key=value` config text, the way the `spacetime`
// binary does with `--config`.
//
// `cargo run --example config_file`

use spacetime_sim::cli::{main_with, parse_config, ExperimentParams};

const CONFIG: &str = "\
# uniform motion, coarse grid
experiment = time-dilation
beta = 0.25, tau_r = 20
ticks = 4
";

pub fn run_example() -> Result<String, Box<dyn std::error::Error>> {
    let cfg = parse_config(CONFIG)?;
    assert!(matches!(cfg.experiment, ExperimentParams::TimeDilation { .. }));

    let dir = std::env::temp_dir().join(format!("spacetime-config-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("run.cfg");
    std::fs::write(&path, CONFIG)?;

    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let code = main_with(
        ["spacetime", "--config", path.to_str().unwrap(), "time-dilation", "--ticks", "6"],
        &mut stdout,
        &mut stderr,
    );
    std::fs::remove_dir_all(&dir)?;
    if code != 0 {
        return Err(String::from_utf8_lossy(&stderr).into_owned().into());
    }
    Ok(String::from_utf8(stdout)?)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", run_example()?);
    Ok(())
}
