//! Assembles the uplink channel of one cluster: large-scale gains `L`
//! from BS-user distances, per-BS interference-plus-noise powers from
//! every out-of-cluster user, and the normalized gain matrix
//! `Q = sqrt(P) Xi^{-1/2} L` that the capacity estimators consume.
//!
//! Run with: `cargo run --example cluster_channel`

use tose::{build_cluster_channel, build_scenario, sample_g, ScenarioConfig};

fn main() -> Result<(), tose::Error> {
    let config = ScenarioConfig {
        num_bs: 400,
        num_clusters: 4,
        ..ScenarioConfig::default()
    };

    let scenario = build_scenario(&config)?;
    let m = scenario.central_cluster();
    let channel = build_cluster_channel(&scenario, m, &config.fading())?;

    println!(
        "central cluster {m}: J_m = {} BSs, K_m = {} users, beta_m = {:.3}",
        channel.j_m(),
        channel.k_m(),
        channel.beta()
    );

    let (lmin, lmax) = min_max(channel.l.data());
    println!("large-scale gains L: min {lmin:.3e}, max {lmax:.3e}");

    let (xmin, xmax) = min_max(&channel.xi);
    println!("interference-plus-noise xi: min {xmin:.3e}, max {xmax:.3e}");
    println!(
        "  (noise floor N0 = {:.0e}; interference dominates by ~{:.0}x)",
        config.n0,
        xmin / config.n0
    );

    let (qmin, qmax) = min_max(channel.q.data());
    println!("normalized gains Q: min {qmin:.3e}, max {qmax:.3e}");

    // Q folds P, L, and Xi into one matrix; the identity below recovers
    // the un-normalized gains entry by entry.
    let mut worst = 0.0f64;
    for j in 0..channel.j_m() {
        let scale = (config.p / channel.xi[j]).sqrt();
        for k in 0..channel.k_m() {
            let rebuilt = scale * channel.l[(j, k)];
            let rel = (rebuilt - channel.q[(j, k)]).abs() / channel.q[(j, k)];
            worst = worst.max(rel);
        }
    }
    println!("reconstruction sqrt(P/xi_j) l_jk == q_jk, worst rel dev: {worst:.2e}");

    // Small-scale fading rides on top of Q as an i.i.d. complex Gaussian
    // matrix drawn per Monte-Carlo trial.
    let g = sample_g(channel.j_m(), channel.k_m(), 42);
    let mean_sq =
        g.data().iter().map(|z| z.norm_sqr()).sum::<f64>() / g.data().len() as f64;
    println!("one fading draw G: mean |g|^2 = {mean_sq:.4} (unit variance)");
    Ok(())
}

fn min_max(xs: &[f64]) -> (f64, f64) {
    xs.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}
