//! Fast per-BS uplink capacity estimates for clustered ultra-dense
//! wireless networks.
//!
//! The library simulates networks of base stations and users partitioned
//! into cooperating clusters, builds each cluster's interference-
//! normalized channel, and estimates the per-BS uplink capacity two
//! ways:
//!
//! - **Exact baseline** ([`exact_capacity_hadamard`],
//!   [`exact_capacity_matrixprod`]): Cholesky log-determinant of
//!   `I + A A*`, cubic in the cluster's BS count.
//! - **Spike approximation** ([`tose_capacity`]): replaces the gain
//!   matrix by its optimal diagonal profile (row means, [`build_t`]),
//!   then models the top `N` eigenvalues as evenly spaced spikes above
//!   the Marchenko-Pastur bulk edge, pinned by a single trace statistic.
//!   Per realization this costs a trace pass plus `N` logarithms.
//!
//! The `examples/` directory is the guided tour; each example is a
//! runnable walkthrough of one capability, from path-loss curves to the
//! full accuracy benchmark. The `tose` binary wraps the same runners as
//! a CLI (`accuracy`, `scaling`, `convergence`, `gen-scenario`) emitting
//! CSV.
//!
//! Every random quantity is a pure function of a master seed, so runs
//! reproduce bit-for-bit:
//!
//! ```
//! use tose::spike_estimate;
//!
//! // One realization with trace statistic 100, 4 spikes, aspect
//! // ratio 4, over 50 BSs.
//! let est = spike_estimate(100.0, 4, 4.0, 50)?;
//! assert_eq!(est.spikes.len(), 4);
//! // The spikes absorb the whole trace: sum = trace + N.
//! assert!((est.spikes.iter().sum::<f64>() - 104.0).abs() < 1e-9);
//! assert!(est.capacity > 0.0);
//! # Ok::<(), tose::Error>(())
//! ```

// Validation sites use `!(x > 0.0)` instead of `x <= 0.0` because the
// negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod channel;
pub mod config;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod io;
pub mod mat;
pub mod rng;
pub mod spike;

pub use bench::{run_accuracy, run_convergence, run_scaling, BenchmarkRecord, Method};
pub use channel::{
    build_cluster_channel, build_l, build_q, build_xi, path_loss, sample_g, ClusterChannel,
    FadingParams,
};
pub use config::{AreaKind, ClusterPick, RedrawMode, ScenarioConfig, DEFAULT_SEED};
pub use error::{Error, Result};
pub use exact::{
    exact_capacity_hadamard, exact_capacity_matrixprod, log_det_identity_plus, CapacityEstimate,
};
pub use geometry::{
    build_scenario, kmeans_cluster, place_truncated_normal_disk, place_uniform_square, AreaShape,
    Cluster, NetworkScenario, Position,
};
pub use io::{
    csv_to_string, emit_csv, parse_csv, parse_scenario, read_scenario, scenario_to_string,
    write_scenario, CSV_HEADER,
};
pub use mat::{CMat, Mat};
pub use spike::{
    build_t, frobenius_gap, frobenius_gap_min, spike_capacity, spike_count, spike_estimate,
    tose_capacity, trace_b, SpikeEstimate,
};
