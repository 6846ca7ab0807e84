//! Times the exact Cholesky baseline against the spike core on growing
//! synthetic clusters and fits log-log slopes: the baseline scales like
//! a dense cubic factorization, the spike arithmetic stays linear in
//! the spike count.
//!
//! Run with: `cargo run --release --example runtime_scaling`

use tose::{run_scaling, Method, ScenarioConfig};

fn main() -> Result<(), tose::Error> {
    let config = ScenarioConfig::default();
    let grid = [32, 64, 128, 256, 512];
    let records = run_scaling(&config, &grid, false)?;

    println!(
        "{:>18} {:>6} {:>6} {:>12} {:>12}",
        "method", "J_m", "K_m", "median [s]", "capacity"
    );
    for r in &records {
        println!(
            "{:>18} {:>6} {:>6} {:>12.3e} {:>12.5}",
            r.method.as_str(),
            r.j_m,
            r.k_m,
            r.wall_time_s,
            r.capacity_mean
        );
    }

    let slope_of = |method: Method| {
        let pts: Vec<(f64, f64)> = records
            .iter()
            .filter(|r| r.method == method)
            .map(|r| ((r.j_m as f64).ln(), r.wall_time_s.ln()))
            .collect();
        least_squares_slope(&pts)
    };
    println!();
    println!(
        "log-log slope, baseline: {:.2} (dense factorization trends cubic)",
        slope_of(Method::ExactMatrixProd)
    );
    println!(
        "log-log slope, spike:    {:.2} (trends linear)",
        slope_of(Method::Tose)
    );

    let base = records
        .iter()
        .find(|r| r.method == Method::ExactMatrixProd && r.j_m == 512)
        .unwrap();
    let spike = records
        .iter()
        .find(|r| r.method == Method::Tose && r.j_m == 512)
        .unwrap();
    println!(
        "speedup at J_m = 512: {:.0}x",
        base.wall_time_s / spike.wall_time_s
    );
    Ok(())
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let (sx, sy): (f64, f64) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / n, sy / n);
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    num / den
}
