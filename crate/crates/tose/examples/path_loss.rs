//! Sweeps the piecewise large-scale fading model and prints the gain in
//! each of its three regimes: a saturated near field below `d0`, a
//! softened mid range up to `d1`, and far-field power-law decay beyond.
//!
//! Run with: `cargo run --example path_loss`

use tose::path_loss;

fn main() {
    let (d0, d1) = (10.0, 50.0);

    println!("piecewise path loss, d0 = {d0} m, d1 = {d1} m");
    println!("{:>10} {:>14} regime", "d [m]", "gain");
    for d in [
        0.0, 5.0, 10.0, 20.0, 35.0, 50.0, 75.0, 100.0, 200.0, 400.0, 800.0,
    ] {
        let regime = if d <= d0 {
            "near (saturated)"
        } else if d <= d1 {
            "mid  (~1/d)"
        } else {
            "far  (d^-1.75)"
        };
        println!("{d:>10.1} {:>14.6e} {regime}", path_loss(d, d0, d1));
    }

    // The model is continuous at both knees and flat inside d0.
    let eps = 1e-9;
    println!();
    println!(
        "continuity at d0: {:.12e} vs {:.12e}",
        path_loss(d0 - eps, d0, d1),
        path_loss(d0 + eps, d0, d1)
    );
    println!(
        "continuity at d1: {:.12e} vs {:.12e}",
        path_loss(d1 - eps, d0, d1),
        path_loss(d1 + eps, d0, d1)
    );
    println!(
        "near-field cap:   gain(0) == gain(d0): {}",
        path_loss(0.0, d0, d1) == path_loss(d0, d0, d1)
    );
}
