//! Benchmark runners behind the CLI: paired accuracy comparison,
//! runtime scaling, and density convergence. Each run emits
//! [`BenchmarkRecord`]s, two per configuration point (baseline, spike).
//!
//! Timing contract for scaling runs: both methods time only their core
//! computation on a single thread. The baseline region covers forming
//! `A = T G`, the Gram matrix `I + A A*`, and its Cholesky
//! log-determinant; the spike region covers the spike arithmetic alone,
//! with the trace statistic precomputed (the algorithm's stated input),
//! unless the trace pass is explicitly included. Scenario generation
//! and fading draws are never timed. Sub-microsecond spike calls are
//! loop-averaged; every point reports the median over repeats.

use crate::channel::{build_cluster_channel, sample_g};
use crate::config::{ClusterPick, RedrawMode, ScenarioConfig};
use crate::error::{Error, Result};
use crate::exact::{
    exact_capacity_hadamard, exact_capacity_matrixprod, log_det_identity_plus, mean_std,
    CapacityEstimate,
};
use crate::geometry::{build_scenario, NetworkScenario};
use crate::mat::CMat;
use crate::rng::{derive_seed, rng_from, tags};
use crate::spike::{build_t, spike_capacity, spike_count, tose_capacity, trace_b};
use rand::Rng;
use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

/// Which estimator produced a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Exact capacity of the entrywise channel `Q .* G`.
    ExactHadamard,
    /// Exact capacity of the diagonal-profile channel `T G` (the
    /// Cholesky baseline).
    ExactMatrixProd,
    /// Spike-approximation estimate.
    Tose,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ExactHadamard => "exact_hadamard",
            Method::ExactMatrixProd => "exact_matrixprod",
            Method::Tose => "tose",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact_hadamard" => Ok(Method::ExactHadamard),
            "exact_matrixprod" => Ok(Method::ExactMatrixProd),
            "tose" => Ok(Method::Tose),
            other => Err(Error::invalid(
                "method",
                format!("unknown method `{other}`"),
            )),
        }
    }
}

/// One benchmark data point.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRecord {
    pub method: Method,
    pub j_m: usize,
    pub k_m: usize,
    /// Configured users-per-BS ratio of the run (the cluster's own
    /// ratio is `k_m / j_m`).
    pub beta: f64,
    /// Nats per channel use per BS.
    pub capacity_mean: f64,
    pub capacity_std: f64,
    /// Relative error against the paired baseline record; set on spike
    /// records only.
    pub rel_error: Option<f64>,
    pub wall_time_s: f64,
    pub trials: usize,
    pub seed: u64,
}

fn pick_cluster(scenario: &NetworkScenario, pick: ClusterPick) -> Result<usize> {
    match pick {
        ClusterPick::Central => Ok(scenario.central_cluster()),
        ClusterPick::Index(i) if i < scenario.num_clusters => Ok(i),
        ClusterPick::Index(i) => Err(Error::invalid(
            "cluster",
            format!(
                "index {i} out of range (scenario has {} clusters)",
                scenario.num_clusters
            ),
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn paired_records(
    config: &ScenarioConfig,
    j_m: usize,
    k_m: usize,
    base_method: Method,
    base: CapacityEstimate,
    base_time: f64,
    tose: CapacityEstimate,
    tose_time: f64,
) -> Vec<BenchmarkRecord> {
    let rel = (tose.mean - base.mean).abs() / base.mean;
    vec![
        BenchmarkRecord {
            method: base_method,
            j_m,
            k_m,
            beta: config.beta,
            capacity_mean: base.mean,
            capacity_std: base.std,
            rel_error: None,
            wall_time_s: base_time,
            trials: base.trials,
            seed: config.seed,
        },
        BenchmarkRecord {
            method: Method::Tose,
            j_m,
            k_m,
            beta: config.beta,
            capacity_mean: tose.mean,
            capacity_std: tose.std,
            rel_error: Some(rel),
            wall_time_s: tose_time,
            trials: tose.trials,
            seed: config.seed,
        },
    ]
}

/// Accuracy comparison on one analysis cluster: the spike estimate
/// against the exact Cholesky capacity of the same diagonal-profile
/// channel, trial-paired through a shared fading seed.
pub fn run_accuracy(config: &ScenarioConfig, pick: ClusterPick) -> Result<Vec<BenchmarkRecord>> {
    config.validate()?;
    match config.redraw {
        RedrawMode::FadingOnly => accuracy_fixed_geometry(config, pick),
        RedrawMode::FadingAndGeometry => accuracy_redrawn_geometry(config, pick),
    }
}

fn accuracy_fixed_geometry(
    config: &ScenarioConfig,
    pick: ClusterPick,
) -> Result<Vec<BenchmarkRecord>> {
    let scenario = build_scenario(config)?;
    let m = pick_cluster(&scenario, pick)?;
    let channel = build_cluster_channel(&scenario, m, &config.fading())?;
    let t_diag = build_t(&channel.q);
    let fading_seed = derive_seed(config.seed, tags::FADING);

    let start = Instant::now();
    let exact = exact_capacity_matrixprod(
        &t_diag,
        channel.j_m(),
        channel.k_m(),
        config.trials,
        fading_seed,
    )?;
    let exact_time = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let tose = tose_capacity(&channel, config.spike_ratio, config.trials, fading_seed)?;
    let tose_time = start.elapsed().as_secs_f64();

    Ok(paired_records(
        config,
        channel.j_m(),
        channel.k_m(),
        Method::ExactMatrixProd,
        exact,
        exact_time,
        tose,
        tose_time,
    ))
}

fn accuracy_redrawn_geometry(
    config: &ScenarioConfig,
    pick: ClusterPick,
) -> Result<Vec<BenchmarkRecord>> {
    let mut exact_samples = Vec::with_capacity(config.trials);
    let mut tose_samples = Vec::with_capacity(config.trials);
    let mut exact_time = 0.0;
    let mut tose_time = 0.0;
    let mut dims = (0usize, 0usize);
    let mut degenerate = 0usize;
    let mut first_bad = 0usize;

    for t in 0..config.trials {
        let mut trial_cfg = config.clone();
        trial_cfg.seed = derive_seed(config.seed, tags::GEOMETRY_TRIAL + t as u64);
        let scenario = build_scenario(&trial_cfg)?;
        let m = pick_cluster(&scenario, pick)?;
        let channel = build_cluster_channel(&scenario, m, &config.fading())?;
        let t_diag = build_t(&channel.q);
        let fading_seed = derive_seed(trial_cfg.seed, tags::FADING);
        if t == 0 {
            dims = (channel.j_m(), channel.k_m());
        }

        let start = Instant::now();
        let e =
            exact_capacity_matrixprod(&t_diag, channel.j_m(), channel.k_m(), 1, fading_seed)?;
        exact_time += start.elapsed().as_secs_f64();
        exact_samples.push(e.mean);

        let start = Instant::now();
        match tose_capacity(&channel, config.spike_ratio, 1, fading_seed) {
            Ok(c) => tose_samples.push(c.mean),
            Err(Error::DegenerateSpectrum(_)) => {
                if degenerate == 0 {
                    first_bad = t;
                }
                degenerate += 1;
            }
            Err(e) => return Err(e),
        }
        tose_time += start.elapsed().as_secs_f64();
    }
    if degenerate > 0 {
        return Err(Error::DegenerateSpectrum(format!(
            "{degenerate} of {} trials fell in the degenerate regime (first at trial {first_bad})",
            config.trials
        )));
    }

    let (e_mean, e_std) = mean_std(&exact_samples);
    let (t_mean, t_std) = mean_std(&tose_samples);
    Ok(paired_records(
        config,
        dims.0,
        dims.1,
        Method::ExactMatrixProd,
        CapacityEstimate {
            mean: e_mean,
            std: e_std,
            trials: config.trials,
        },
        exact_time,
        CapacityEstimate {
            mean: t_mean,
            std: t_std,
            trials: config.trials,
        },
        tose_time,
    ))
}

const SCALING_REPEATS: usize = 5;

fn median_secs(mut times: Vec<f64>) -> f64 {
    times.sort_by(f64::total_cmp);
    times[times.len() / 2]
}

/// Runtime scaling over synthetic diagonal profiles: per grid size,
/// medians of the Cholesky baseline and of the spike core per
/// realization. `include_trace` moves the trace pass inside the spike
/// timed region.
pub fn run_scaling(
    config: &ScenarioConfig,
    jm_grid: &[usize],
    include_trace: bool,
) -> Result<Vec<BenchmarkRecord>> {
    config.validate()?;
    if jm_grid.is_empty() {
        return Err(Error::invalid("jm_grid", "must be non-empty"));
    }
    if let Some(&j) = jm_grid.iter().find(|&&j| j < 16) {
        return Err(Error::invalid(
            "jm_grid",
            format!("every size must be at least 16, got {j}"),
        ));
    }
    if jm_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("jm_grid", "sizes must be strictly ascending"));
    }

    let mut records = Vec::with_capacity(2 * jm_grid.len());
    for &j in jm_grid {
        let k = (config.beta * j as f64).round().max(1.0) as usize;
        let ratio = k as f64 / j as f64;
        let n = spike_count(config.spike_ratio, j, k);
        let mut rng = rng_from(derive_seed(config.seed, tags::SCALING_T + j as u64));
        let t_diag: Vec<f64> = (0..j).map(|_| 0.5 + rng.gen::<f64>()).collect();
        let g = sample_g(j, k, derive_seed(config.seed, tags::SCALING_G + j as u64));

        let mut chol_cap = 0.0;
        let mut times = Vec::with_capacity(SCALING_REPEATS);
        for rep in 0..=SCALING_REPEATS {
            let start = Instant::now();
            let a = CMat::from_fn(j, k, |r, c| t_diag[r] * g[(r, c)]);
            let log_det = log_det_identity_plus(black_box(&a))?;
            let dt = start.elapsed().as_secs_f64();
            chol_cap = black_box(log_det) / j as f64;
            if rep > 0 {
                times.push(dt);
            }
        }
        let chol_time = median_secs(times);

        let tr = trace_b(&t_diag, &g);
        let iters = if include_trace {
            ((1usize << 22) / (j * k)).max(1)
        } else {
            ((1usize << 18) / n.max(1)).max(1)
        };
        let mut tose_cap = 0.0;
        let mut times = Vec::with_capacity(SCALING_REPEATS);
        for rep in 0..=SCALING_REPEATS {
            let start = Instant::now();
            if include_trace {
                for _ in 0..iters {
                    let tr_i = trace_b(black_box(&t_diag), black_box(&g));
                    tose_cap = black_box(spike_capacity(tr_i, n, ratio, j)?);
                }
            } else {
                for _ in 0..iters {
                    tose_cap = black_box(spike_capacity(black_box(tr), n, ratio, j)?);
                }
            }
            let dt = start.elapsed().as_secs_f64() / iters as f64;
            if rep > 0 {
                times.push(dt);
            }
        }
        let tose_time = median_secs(times);

        records.push(BenchmarkRecord {
            method: Method::ExactMatrixProd,
            j_m: j,
            k_m: k,
            beta: config.beta,
            capacity_mean: chol_cap,
            capacity_std: 0.0,
            rel_error: None,
            wall_time_s: chol_time,
            trials: SCALING_REPEATS,
            seed: config.seed,
        });
        records.push(BenchmarkRecord {
            method: Method::Tose,
            j_m: j,
            k_m: k,
            beta: config.beta,
            capacity_mean: tose_cap,
            capacity_std: 0.0,
            rel_error: Some((tose_cap - chol_cap).abs() / chol_cap),
            wall_time_s: tose_time,
            trials: SCALING_REPEATS,
            seed: config.seed,
        });
    }
    Ok(records)
}

/// Density convergence: per cluster count `m` in the grid, holds the
/// per-cluster BS count near 100 (`J = 100 m`) and compares the spike
/// estimate against the exact capacity of the true entrywise channel;
/// the spike record's `rel_error` is the gap for that density.
pub fn run_convergence(
    config: &ScenarioConfig,
    m_grid: &[usize],
    pick: ClusterPick,
) -> Result<Vec<BenchmarkRecord>> {
    if m_grid.is_empty() {
        return Err(Error::invalid("m_grid", "must be non-empty"));
    }
    if m_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("m_grid", "cluster counts must be strictly ascending"));
    }
    let mut records = Vec::with_capacity(2 * m_grid.len());
    for &m in m_grid {
        let mut cfg = config.clone();
        cfg.num_clusters = m;
        cfg.num_bs = 100 * m;
        cfg.validate()?;
        let scenario = build_scenario(&cfg)?;
        let mi = pick_cluster(&scenario, pick)?;
        let channel = build_cluster_channel(&scenario, mi, &cfg.fading())?;
        let fading_seed = derive_seed(cfg.seed, tags::FADING);

        let start = Instant::now();
        let exact = exact_capacity_hadamard(&channel.q, cfg.trials, fading_seed)?;
        let exact_time = start.elapsed().as_secs_f64();

        let start = Instant::now();
        let tose = tose_capacity(&channel, cfg.spike_ratio, cfg.trials, fading_seed)?;
        let tose_time = start.elapsed().as_secs_f64();

        records.extend(paired_records(
            &cfg,
            channel.j_m(),
            channel.k_m(),
            Method::ExactHadamard,
            exact,
            exact_time,
            tose,
            tose_time,
        ));
    }
    Ok(records)
}
