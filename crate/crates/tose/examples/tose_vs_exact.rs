//! The headline comparison: spike-approximation capacity vs the exact
//! Cholesky baseline on the central cluster of a dense network, with
//! both estimators paired on identical fading draws.
//!
//! Run with: `cargo run --release --example tose_vs_exact`

use tose::{csv_to_string, run_accuracy, AreaKind, ClusterPick, ScenarioConfig};

fn main() -> Result<(), tose::Error> {
    let mut config = ScenarioConfig {
        trials: 50,
        ..ScenarioConfig::default()
    };

    println!(
        "{:>6} {:>6} {:>5} {:>5} {:>10} {:>10} {:>9}",
        "area", "beta", "J_m", "K_m", "exact", "spike", "rel err"
    );
    for area in [AreaKind::Square, AreaKind::Disk] {
        for beta in [0.5, 8.0] {
            config.area = area;
            config.beta = beta;
            let records = run_accuracy(&config, ClusterPick::Central)?;
            let (base, spike) = (&records[0], &records[1]);
            println!(
                "{:>6} {beta:>6} {:>5} {:>5} {:>10.5} {:>10.5} {:>8.2}%",
                area.as_str(),
                base.j_m,
                base.k_m,
                base.capacity_mean,
                spike.capacity_mean,
                100.0 * spike.rel_error.unwrap()
            );
        }
    }

    // The same records serialize to the benchmark CSV format.
    config.area = AreaKind::Square;
    config.beta = 0.5;
    let records = run_accuracy(&config, ClusterPick::Central)?;
    println!();
    println!("CSV form of the last run:");
    print!("{}", csv_to_string(&records));
    Ok(())
}
