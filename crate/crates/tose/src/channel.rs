//! Per-cluster uplink channel construction: piecewise path loss,
//! out-of-cluster interference power, and Rayleigh fading draws.
//!
//! The normalized channel of cluster m is `Q = sqrt(P) * Xi^{-1/2} * L`,
//! where `L` holds in-cluster large-scale gains and the diagonal `Xi`
//! holds per-BS interference-plus-noise power. `Xi` is kept as a vector;
//! the full interference matrix is never materialized.

use crate::error::{Error, Result};
use crate::geometry::{Cluster, NetworkScenario};
use crate::mat::{CMat, Mat};
use crate::rng::rng_from;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Propagation and power constants shared by every link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingParams {
    /// Near-field threshold, meters.
    pub d0: f64,
    /// Far-field threshold, meters.
    pub d1: f64,
    /// Per-user transmit power, watts.
    pub p: f64,
    /// Noise power per BS, watts.
    pub n0: f64,
}

impl FadingParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.d0 > 0.0) || !(self.d1 > self.d0) {
            return Err(Error::invalid("d0/d1", "need 0 < d0 < d1"));
        }
        if !(self.p > 0.0) || !(self.n0 > 0.0) {
            return Err(Error::invalid("p/n0", "powers must be positive"));
        }
        Ok(())
    }
}

/// Distance-dependent amplitude gain: `d^-1.75` beyond `d1`,
/// `d1^-0.75 / d` between the thresholds, and capped below `d0`.
/// Continuous and non-increasing in `d`.
pub fn path_loss(d: f64, d0: f64, d1: f64) -> f64 {
    if d > d1 {
        d.powf(-1.75)
    } else if d > d0 {
        d1.powf(-0.75) / d
    } else {
        d1.powf(-0.75) / d0
    }
}

fn checked_cluster(scenario: &NetworkScenario, cluster_index: usize) -> Result<Cluster> {
    if cluster_index >= scenario.num_clusters {
        return Err(Error::invalid(
            "cluster",
            format!(
                "index {cluster_index} out of range (scenario has {} clusters)",
                scenario.num_clusters
            ),
        ));
    }
    let cl = scenario.cluster(cluster_index);
    if cl.bs_indices.is_empty() || cl.user_indices.is_empty() {
        return Err(Error::GenerationFailure(format!(
            "cluster {cluster_index} holds {} BSs and {} users; need at least one of each",
            cl.bs_indices.len(),
            cl.user_indices.len()
        )));
    }
    Ok(cl)
}

/// `J_m x K_m` matrix of large-scale gains between cluster `m`'s BSs
/// (rows) and its own users (columns).
pub fn build_l(
    scenario: &NetworkScenario,
    cluster_index: usize,
    params: &FadingParams,
) -> Result<Mat> {
    params.validate()?;
    let cl = checked_cluster(scenario, cluster_index)?;
    Ok(Mat::from_fn(
        cl.bs_indices.len(),
        cl.user_indices.len(),
        |j, k| {
            let d = scenario.bs_positions[cl.bs_indices[j]]
                .distance(&scenario.user_positions[cl.user_indices[k]]);
            path_loss(d, params.d0, params.d1)
        },
    ))
}

/// Per-BS interference-plus-noise power for cluster `m`: the noise floor
/// plus transmit power times the squared gain from every user assigned
/// to a different cluster.
pub fn build_xi(
    scenario: &NetworkScenario,
    cluster_index: usize,
    params: &FadingParams,
) -> Result<Vec<f64>> {
    params.validate()?;
    let cl = checked_cluster(scenario, cluster_index)?;
    Ok(cl
        .bs_indices
        .iter()
        .map(|&j| {
            let bs = &scenario.bs_positions[j];
            let interference: f64 = scenario
                .user_positions
                .iter()
                .zip(&scenario.cluster_of_user)
                .filter(|&(_, &c)| c != cluster_index)
                .map(|(u, _)| {
                    let g = path_loss(bs.distance(u), params.d0, params.d1);
                    g * g
                })
                .sum();
            params.n0 + params.p * interference
        })
        .collect())
}

/// Interference-normalized channel `Q = sqrt(P) * Xi^{-1/2} * L`,
/// entrywise `q_jk = sqrt(p / xi_j) * l_jk`.
pub fn build_q(l: &Mat, xi: &[f64], p: f64) -> Result<Mat> {
    if xi.len() != l.rows() {
        return Err(Error::invalid(
            "xi",
            format!("{} entries for {} rows", xi.len(), l.rows()),
        ));
    }
    if !(p > 0.0) {
        return Err(Error::invalid("p", "transmit power must be positive"));
    }
    if let Some(j) = xi.iter().position(|&x| !(x > 0.0)) {
        return Err(Error::invalid(
            "xi",
            format!("entry {j} is not positive: {}", xi[j]),
        ));
    }
    let scale: Vec<f64> = xi.iter().map(|&x| (p / x).sqrt()).collect();
    Ok(Mat::from_fn(l.rows(), l.cols(), |j, k| scale[j] * l[(j, k)]))
}

/// `J_m x K_m` draw of i.i.d. unit-variance circularly symmetric complex
/// Gaussian fading (each component is `N(0, 1/2)`).
pub fn sample_g(j_m: usize, k_m: usize, seed: u64) -> CMat {
    let mut rng = rng_from(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    CMat::from_fn(j_m, k_m, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    })
}

/// One cluster's uplink channel, ready for capacity estimation.
/// Fading `G` is an ensemble, not a field: it is drawn per trial from a
/// derived seed by the capacity estimators.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterChannel {
    /// Large-scale gains, `J_m x K_m`.
    pub l: Mat,
    /// Per-BS interference-plus-noise power, length `J_m`.
    pub xi: Vec<f64>,
    /// Interference-normalized gains `sqrt(P) * Xi^{-1/2} * L`.
    pub q: Mat,
}

impl ClusterChannel {
    /// Wraps an already-normalized gain matrix: unit transmit power and
    /// a unit noise floor, so `L = Q` and the reconstruction identity
    /// still holds. Useful for synthetic channels.
    pub fn from_q(q: Mat) -> Self {
        ClusterChannel {
            l: q.clone(),
            xi: vec![1.0; q.rows()],
            q,
        }
    }

    pub fn j_m(&self) -> usize {
        self.q.rows()
    }

    pub fn k_m(&self) -> usize {
        self.q.cols()
    }

    /// Users-per-BS ratio `K_m / J_m` of this cluster.
    pub fn beta(&self) -> f64 {
        self.k_m() as f64 / self.j_m() as f64
    }
}

/// Convenience composition of [`build_l`], [`build_xi`], and [`build_q`].
pub fn build_cluster_channel(
    scenario: &NetworkScenario,
    cluster_index: usize,
    params: &FadingParams,
) -> Result<ClusterChannel> {
    let l = build_l(scenario, cluster_index, params)?;
    let xi = build_xi(scenario, cluster_index, params)?;
    let q = build_q(&l, &xi, params.p)?;
    Ok(ClusterChannel { l, xi, q })
}
