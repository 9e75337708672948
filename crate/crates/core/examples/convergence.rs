// Worst lab-time error of uniform motion as the resolution grows, with the
// tick length held fixed.
//
// `cargo run --example convergence`

use std::fmt::Write;

use spacetime_sim::experiments::max_dilation_error;

pub fn run_example() -> spacetime_sim::Result<String> {
    let mut out = String::from("tau_r,max_err,max_err*tau_r\n");
    for resolution in [10, 20, 40, 80, 160] {
        let err = max_dilation_error(0.5, resolution, 8)?;
        writeln!(out, "{resolution},{err:.6},{:.4}", err * resolution as f64).unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> spacetime_sim::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
