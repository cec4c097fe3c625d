//! SVG of the curve and the rank-k ranges, plus the curve samples as CSV.
//!
//! cargo run --example plot_svg -- quartic1.svg

use nrange::cli_io::{build_plot, compute_all, curve_csv, render_svg};
use nrange::gallery;
use nrange::range_solver::{RangeSolver, SolverConfig};

fn main() -> nrange::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "quartic1.svg".into());
    let solver = RangeSolver::new(&gallery::quartic1(), SolverConfig::default());
    let results = compute_all(&solver, &[1, 2])?;
    let plot = build_plot(&solver, &results, true)?;
    std::fs::write(&out, render_svg(&plot)?)?;
    let csv = curve_csv(&plot.curve);
    std::fs::write(format!("{}.csv", out.trim_end_matches(".svg")), &csv)?;
    println!("{} written, {} curve samples", out, csv.lines().count() - 1);
    Ok(())
}
