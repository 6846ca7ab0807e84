//! Exact per-BS capacity via the Cholesky log-determinant.
//!
//! For a cluster channel realization `A` (`J_m x K_m`, complex), the
//! per-BS capacity is `log det(I + A A*) / J_m` in nats. The Gram matrix
//! `I + A A*` is Hermitian positive definite, so its log-determinant is
//! twice the log-sum of Cholesky pivots; cost grows with the cube of
//! `J_m`. Two entry points cover the two ways a realization is formed:
//! entrywise fading on a full gain matrix, or a diagonal gain profile.

use crate::error::{Error, Result};
use crate::mat::{CMat, Mat};
use crate::rng::derive_seed;
use num_complex::Complex64;

/// Monte-Carlo capacity summary in nats per BS.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityEstimate {
    pub mean: f64,
    /// Sample standard deviation across trials (0 for a single trial).
    pub std: f64,
    pub trials: usize,
}

/// Neumaier-compensated sum; immune to cancellation across magnitudes.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Mean and sample standard deviation with compensated accumulation.
pub(crate) fn mean_std(samples: &[f64]) -> (f64, f64) {
    let n = samples.len();
    assert!(n > 0, "mean of zero samples");
    let mean = compensated_sum(samples.iter().copied()) / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var =
        compensated_sum(samples.iter().map(|&x| (x - mean) * (x - mean))) / (n - 1) as f64;
    (mean, var.max(0.0).sqrt())
}

/// Lower triangle of `I + A A*` (the strict upper triangle is left zero;
/// the Cholesky below never reads it).
fn gram_plus_identity(a: &CMat) -> CMat {
    let n = a.rows();
    let mut s = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut re = 0.0;
            let mut im = 0.0;
            for (x, y) in a.row(i).iter().zip(a.row(j)) {
                re += x.re * y.re + x.im * y.im;
                im += x.im * y.re - x.re * y.im;
            }
            s[(i, j)] = if i == j {
                Complex64::new(re + 1.0, 0.0)
            } else {
                Complex64::new(re, im)
            };
        }
    }
    s
}

/// In-place lower Cholesky of a Hermitian matrix given by its lower
/// triangle; returns `2 * sum(ln r_jj)`. Fails with the pivot index if
/// the matrix is not numerically positive definite.
pub(crate) fn cholesky_log_det_lower(s: &mut CMat) -> Result<f64> {
    let n = s.rows();
    let mut log_det = 0.0;
    for i in 0..n {
        let (head, row_i) = s.split_row_mut(i);
        for j in 0..i {
            let row_j = &head[j * n..j * n + n];
            let mut sum = row_i[j];
            for k in 0..j {
                sum -= row_i[k] * row_j[k].conj();
            }
            row_i[j] = sum / row_j[j].re;
        }
        let mut diag = row_i[i].re;
        for z in &row_i[..i] {
            diag -= z.norm_sqr();
        }
        if !(diag > 0.0) || !diag.is_finite() {
            return Err(Error::NotPositiveDefinite { pivot: i });
        }
        let r = diag.sqrt();
        row_i[i] = Complex64::new(r, 0.0);
        log_det += 2.0 * r.ln();
    }
    Ok(log_det)
}

/// `log det(I + A A*)` in nats for a complex `J x K` realization.
pub fn log_det_identity_plus(a: &CMat) -> Result<f64> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::invalid("a", "matrix must be non-empty"));
    }
    cholesky_log_det_lower(&mut gram_plus_identity(a))
}

fn capacity_over_trials<F>(
    j_m: usize,
    trials: usize,
    mut realize: F,
) -> Result<CapacityEstimate>
where
    F: FnMut(u64) -> Result<f64>,
{
    if trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    let mut samples = Vec::with_capacity(trials);
    for t in 0..trials {
        samples.push(realize(t as u64)? / j_m as f64);
    }
    let (mean, std) = mean_std(&samples);
    Ok(CapacityEstimate { mean, std, trials })
}

/// Exact Monte-Carlo capacity with entrywise fading: trial `t` draws
/// `G` from `derive_seed(seed, t)` and evaluates `A = Q .* G`.
pub fn exact_capacity_hadamard(q: &Mat, trials: usize, seed: u64) -> Result<CapacityEstimate> {
    if q.rows() == 0 || q.cols() == 0 {
        return Err(Error::invalid("q", "matrix must be non-empty"));
    }
    capacity_over_trials(q.rows(), trials, |t| {
        let g = crate::channel::sample_g(q.rows(), q.cols(), derive_seed(seed, t));
        let a = CMat::from_fn(q.rows(), q.cols(), |j, k| q[(j, k)] * g[(j, k)]);
        log_det_identity_plus(&a)
    })
}

/// Exact Monte-Carlo capacity for a diagonal gain profile: trial `t`
/// draws `G` from `derive_seed(seed, t)` and evaluates `A = diag(t) G`.
/// Sharing `seed` with [`exact_capacity_hadamard`] pairs the fading
/// streams realization for realization.
pub fn exact_capacity_matrixprod(
    t_diag: &[f64],
    j_m: usize,
    k_m: usize,
    trials: usize,
    seed: u64,
) -> Result<CapacityEstimate> {
    if j_m == 0 || k_m == 0 {
        return Err(Error::invalid("j_m/k_m", "dimensions must be positive"));
    }
    if t_diag.len() != j_m {
        return Err(Error::invalid(
            "t_diag",
            format!("{} entries for J_m = {j_m}", t_diag.len()),
        ));
    }
    capacity_over_trials(j_m, trials, |t| {
        let g = crate::channel::sample_g(j_m, k_m, derive_seed(seed, t));
        let a = CMat::from_fn(j_m, k_m, |j, k| t_diag[j] * g[(j, k)]);
        log_det_identity_plus(&a)
    })
}
