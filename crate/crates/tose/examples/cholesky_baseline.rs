//! Shows the exact capacity baseline: `log det(I + A A*)` computed by a
//! complex Cholesky factorization, first on a hand-checkable diagonal
//! matrix, then as a Monte-Carlo capacity estimate for a real cluster.
//!
//! Run with: `cargo run --example cholesky_baseline`

use tose::{
    build_cluster_channel, build_scenario, exact_capacity_hadamard, log_det_identity_plus,
    CMat, ScenarioConfig,
};

fn main() -> Result<(), tose::Error> {
    // Diagonal A with entries a_j makes log det(I + A A*) separable:
    // sum of log(1 + |a_j|^2).
    let diag = [1.0, 2.0, 3.0];
    let a = CMat::from_fn(3, 3, |j, k| {
        if j == k {
            diag[j].into()
        } else {
            0.0.into()
        }
    });
    let got = log_det_identity_plus(&a)?;
    let want: f64 = diag.iter().map(|&d: &f64| (1.0 + d * d).ln()).sum();
    println!("diagonal check: log det = {got:.12} (closed form {want:.12})");

    // The same routine drives the per-cluster capacity baseline. Each
    // trial draws fresh fading G, forms the entrywise channel Q .* G,
    // and averages log det(I + (Q.*G)(Q.*G)*) / J_m.
    let config = ScenarioConfig {
        num_bs: 400,
        num_clusters: 4,
        ..ScenarioConfig::default()
    };
    let scenario = build_scenario(&config)?;
    let m = scenario.central_cluster();
    let channel = build_cluster_channel(&scenario, m, &config.fading())?;

    for trials in [1, 10, 50] {
        let est = exact_capacity_hadamard(&channel.q, trials, config.seed)?;
        println!(
            "exact capacity, {trials:>2} trial(s): {:.6} nats/use/BS (std {:.2e})",
            est.mean, est.std
        );
    }
    Ok(())
}
