//! Spike-approximation capacity estimate.
//!
//! The entrywise realization `A = Q .* G` is approximated by `T G` with
//! `T = diag(t)`, `t_j` the mean of row `j` of `Q`; this diagonal is the
//! unique minimizer of the expected squared Frobenius gap over the
//! fading ensemble. The top `N` eigenvalues of `I + A A*` are then
//! modeled as evenly spaced spikes above the bulk edge
//! `theta1 = (1 + 1/sqrt(beta))^2`, with the spacing pinned by the trace
//! of `B = T G G* T*`. Per-BS capacity is the log-sum of the spikes over
//! `J_m`; the whole estimate costs a trace pass plus `N` logarithms per
//! realization instead of a cubic factorization.

use crate::channel::ClusterChannel;
use crate::error::{Error, Result};
use crate::exact::{mean_std, CapacityEstimate};
use crate::mat::{CMat, Mat};
use crate::rng::derive_seed;

/// Best diagonal gain profile for `q`: entry `j` is the mean of row `j`.
pub fn build_t(q: &Mat) -> Vec<f64> {
    let k = q.cols() as f64;
    (0..q.rows())
        .map(|j| q.row(j).iter().sum::<f64>() / k)
        .collect()
}

/// Expected squared Frobenius gap at the optimum:
/// `sum_j [ sum_k q_jk^2 - (sum_k q_jk)^2 / K_m ]`.
pub fn frobenius_gap_min(q: &Mat) -> f64 {
    let k = q.cols() as f64;
    (0..q.rows())
        .map(|j| {
            let row = q.row(j);
            let sq: f64 = row.iter().map(|&x| x * x).sum();
            let s: f64 = row.iter().sum();
            sq - s * s / k
        })
        .sum()
}

/// Expected squared Frobenius gap `E ||Q .* G - T G||_F^2` for an
/// arbitrary square profile `T` (`J_m x J_m`):
/// `sum(q^2) + K_m sum(t^2) - 2 sum_j t_jj sum_k q_jk`.
pub fn frobenius_gap(q: &Mat, t_tilde: &Mat) -> Result<f64> {
    if t_tilde.rows() != q.rows() || t_tilde.cols() != q.rows() {
        return Err(Error::invalid(
            "t_tilde",
            format!(
                "expected {j} x {j} profile, got {} x {}",
                t_tilde.rows(),
                t_tilde.cols(),
                j = q.rows()
            ),
        ));
    }
    let k = q.cols() as f64;
    let q_sq: f64 = q.data().iter().map(|&x| x * x).sum();
    let t_sq: f64 = t_tilde.data().iter().map(|&x| x * x).sum();
    let cross: f64 = (0..q.rows())
        .map(|j| t_tilde[(j, j)] * q.row(j).iter().sum::<f64>())
        .sum();
    Ok(q_sq + k * t_sq - 2.0 * cross)
}

/// Number of spikes kept: `ceil(ratio * min(J_m, K_m))`.
pub fn spike_count(ratio: f64, j_m: usize, k_m: usize) -> usize {
    (ratio * j_m.min(k_m) as f64).ceil() as usize
}

/// `tr(B) = sum_j t_j^2 sum_k |g_jk|^2` for `B = T G G* T*`.
pub fn trace_b(t_diag: &[f64], g: &CMat) -> f64 {
    assert_eq!(t_diag.len(), g.rows(), "profile length vs fading rows");
    t_diag
        .iter()
        .enumerate()
        .map(|(j, &t)| t * t * g.row(j).iter().map(|z| z.norm_sqr()).sum::<f64>())
        .sum()
}

/// Bulk edge and spike spacing; fails in the degenerate regime where the
/// trace is too small to spread `n` spikes above the edge.
fn spike_params(tr: f64, n: usize, beta: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::invalid("n", "need at least one spike"));
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::invalid("beta", "must be positive and finite"));
    }
    if !tr.is_finite() || tr < 0.0 {
        return Err(Error::invalid(
            "trace_b",
            format!("must be non-negative and finite, got {tr}"),
        ));
    }
    let theta1 = {
        let root = 1.0 + 1.0 / beta.sqrt();
        root * root
    };
    let nf = n as f64;
    let delta = 2.0 * (tr + nf - nf * theta1) / (nf * (nf + 1.0));
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::DegenerateSpectrum(format!(
            "non-positive spike spacing {delta:e} (trace {tr:e}, {n} spikes, beta {beta})"
        )));
    }
    if theta1 + delta <= 1.0 {
        return Err(Error::DegenerateSpectrum(format!(
            "smallest spike {:e} does not exceed 1",
            theta1 + delta
        )));
    }
    Ok((theta1, delta))
}

/// Per-BS capacity of one realization from its trace statistic alone;
/// the hot path behind [`tose_capacity`].
pub fn spike_capacity(tr: f64, n: usize, beta: f64, j_m: usize) -> Result<f64> {
    if j_m == 0 {
        return Err(Error::invalid("j_m", "must be positive"));
    }
    let (theta1, delta) = spike_params(tr, n, beta)?;
    let mut acc = 0.0;
    for j in 1..=n {
        acc += (theta1 + (n + 1 - j) as f64 * delta).ln();
    }
    Ok(acc / j_m as f64)
}

/// Spike spectrum of one realization, largest first.
#[derive(Debug, Clone, PartialEq)]
pub struct SpikeEstimate {
    /// Estimated top eigenvalues of `I + A A*`, evenly spaced.
    pub spikes: Vec<f64>,
    /// Bulk edge `(1 + 1/sqrt(beta))^2`.
    pub theta1: f64,
    /// Spacing between consecutive spikes.
    pub delta: f64,
    /// `sum(ln spikes) / J_m`, nats per BS.
    pub capacity: f64,
}

/// Full spike spectrum for inspection; [`spike_capacity`] computes the
/// same capacity without materializing the spikes.
pub fn spike_estimate(tr: f64, n: usize, beta: f64, j_m: usize) -> Result<SpikeEstimate> {
    if j_m == 0 {
        return Err(Error::invalid("j_m", "must be positive"));
    }
    let (theta1, delta) = spike_params(tr, n, beta)?;
    let spikes: Vec<f64> = (1..=n)
        .map(|j| theta1 + (n + 1 - j) as f64 * delta)
        .collect();
    let mut acc = 0.0;
    for s in &spikes {
        acc += s.ln();
    }
    Ok(SpikeEstimate {
        spikes,
        theta1,
        delta,
        capacity: acc / j_m as f64,
    })
}

/// Monte-Carlo spike-approximation capacity for one cluster. Trial `t`
/// draws `G` from `derive_seed(seed, t)`, pairing realizations with the
/// exact baselines when the same `seed` is shared. Fails if any trial
/// lands in the degenerate regime.
pub fn tose_capacity(
    channel: &ClusterChannel,
    spike_ratio: f64,
    trials: usize,
    seed: u64,
) -> Result<CapacityEstimate> {
    if channel.j_m() == 0 || channel.k_m() == 0 {
        return Err(Error::invalid("channel", "matrix must be non-empty"));
    }
    if !(spike_ratio > 0.0 && spike_ratio <= 1.0) {
        return Err(Error::invalid("spike_ratio", "must lie in (0, 1]"));
    }
    if trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    let (j_m, k_m) = (channel.j_m(), channel.k_m());
    let t_diag = build_t(&channel.q);
    let n = spike_count(spike_ratio, j_m, k_m);
    let beta = channel.beta();

    let mut samples = Vec::with_capacity(trials);
    let mut degenerate = 0usize;
    let mut first_bad = 0usize;
    for t in 0..trials {
        let g = crate::channel::sample_g(j_m, k_m, derive_seed(seed, t as u64));
        match spike_capacity(trace_b(&t_diag, &g), n, beta, j_m) {
            Ok(c) => samples.push(c),
            Err(Error::DegenerateSpectrum(_)) => {
                if degenerate == 0 {
                    first_bad = t;
                }
                degenerate += 1;
            }
            Err(e) => return Err(e),
        }
    }
    if degenerate > 0 {
        return Err(Error::DegenerateSpectrum(format!(
            "{degenerate} of {trials} trials fell in the degenerate regime \
             (first at trial {first_bad})"
        )));
    }
    let (mean, std) = mean_std(&samples);
    Ok(CapacityEstimate { mean, std, trials })
}
