//! Checks the large-network assumption behind the spike approximation:
//! as more clusters pack the same area (network density grows), the
//! spike estimate tracks the true entrywise-channel capacity more
//! closely. Small networks violate the asymptotics and show a larger
//! gap.
//!
//! Run with: `cargo run --release --example density_convergence`

use tose::{run_convergence, ClusterPick, Method, ScenarioConfig};

fn main() -> Result<(), tose::Error> {
    let mut config = ScenarioConfig {
        trials: 30,
        ..ScenarioConfig::default()
    };
    let m_grid = [4, 9, 16, 25];

    for beta in [0.5, 8.0] {
        config.beta = beta;
        let records = run_convergence(&config, &m_grid, ClusterPick::Central)?;

        println!("beta = {beta}: ~100 BSs per cluster, growing cluster count M");
        println!(
            "{:>4} {:>6} {:>6} {:>12} {:>12} {:>9}",
            "M", "J_m", "K_m", "exact", "spike", "rel gap"
        );
        for (&m, pair) in m_grid.iter().zip(records.chunks(2)) {
            let (exact, spike) = (&pair[0], &pair[1]);
            assert_eq!(exact.method, Method::ExactHadamard);
            assert_eq!(spike.method, Method::Tose);
            println!(
                "{m:>4} {:>6} {:>6} {:>12.5} {:>12.5} {:>8.2}%",
                exact.j_m,
                exact.k_m,
                exact.capacity_mean,
                spike.capacity_mean,
                100.0 * spike.rel_error.unwrap()
            );
        }
        println!();
    }
    Ok(())
}
