// A spacetime diagram of the β = 0.5 worldline (x across, lab time up),
// and the (p, v, va) points of the constant-force run.
//
// `cargo run --example worldline`

use spacetime_sim::experiments::{vp_curve_points, vp_plot, worldline_points, ConstantForce, TimeDilation};

fn diagram(points: &[(f64, f64)], width: usize, height: usize, x_max: f64, t_max: f64) -> String {
    let mut grid = vec![vec![' '; width + 1]; height + 1];
    for row in &mut grid {
        row[0] = '|';
    }
    // light cone from the origin
    for (i, row) in grid.iter_mut().enumerate() {
        let col = ((i as f64 / height as f64) * t_max / x_max * width as f64).round() as usize;
        if col <= width {
            row[col] = '/';
        }
    }
    for &(x, t) in points {
        let col = (x / x_max * width as f64).round() as usize;
        let row = (t / t_max * height as f64).round() as usize;
        if col <= width && row <= height {
            grid[row][col] = '*';
        }
    }
    grid[0][0] = '*';
    let mut out: String = grid.iter().rev().map(|r| r.iter().collect::<String>() + "\n").collect();
    out.push('+');
    out.push_str(&"-".repeat(width));
    out.push('\n');
    out
}

pub fn run_example() -> spacetime_sim::Result<String> {
    let run = TimeDilation::new(0.5, 10, 7).run()?;
    let points = worldline_points(&run.trace);
    let mut out = diagram(&points, 40, 16, 8.0, 8.0);
    let force = ConstantForce::new(1, 1, 10, 8).run()?;
    out.push_str("\np v va\n");
    out.push_str(&vp_plot(&vp_curve_points(&force.rows)));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> spacetime_sim::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
