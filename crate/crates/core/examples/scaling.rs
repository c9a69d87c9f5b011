//! Times both stages over a sweep of degrees and fits the log-log slope of the
//! Hankel stage.
//!
//! Usage: `cargo run --release --example scaling -- [d1,d2,...]`

use rhw_qsp::cli::{bench_rows, log_log_slope, BenchSpec};

fn main() -> rhw_qsp::Result<()> {
    let degrees: Vec<usize> = std::env::args()
        .nth(1)
        .map_or_else(|| "25,50,100,200".to_string(), |s| s)
        .split(',')
        .map(|s| s.trim().parse().expect("degree"))
        .collect();
    let spec = BenchSpec {
        degrees,
        eps: 1e-8,
        seed: 0,
        norm_cap: 0.5,
        repeats: 3,
    };
    let rows = bench_rows(&spec, 1)?;
    println!("{:>5} {:>9} {:>12} {:>12}", "d", "N", "weiss_s", "solve_s");
    for r in &rows {
        println!("{:>5} {:>9} {:>12.6} {:>12.6}", r.d, r.grid_size, r.weiss_s, r.solve_s);
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.d as f64, r.solve_s)).collect();
    if let Some(slope) = log_log_slope(&points) {
        println!("solve-time slope {slope:.2}");
    }
    Ok(())
}
