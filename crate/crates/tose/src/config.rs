//! Experiment configuration: defaults, validation, and the flat
//! key=value file format used for reproducible manifests.

use crate::channel::FadingParams;
use crate::error::{Error, Result};
use crate::geometry::AreaShape;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Default master seed for all benchmarks; chosen once so that the
/// shipped defaults reproduce the documented accuracy numbers.
pub const DEFAULT_SEED: u64 = 103;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaKind {
    Square,
    Disk,
}

impl AreaKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AreaKind::Square => "square",
            AreaKind::Disk => "disk",
        }
    }
}

impl FromStr for AreaKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(AreaKind::Square),
            "disk" => Ok(AreaKind::Disk),
            other => Err(Error::invalid(
                "area",
                format!("expected `square` or `disk`, got `{other}`"),
            )),
        }
    }
}

impl fmt::Display for AreaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What each Monte-Carlo trial re-draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RedrawMode {
    /// Geometry fixed per scenario; only small-scale fading is re-drawn.
    FadingOnly,
    /// Node positions and fading are both re-drawn every trial.
    FadingAndGeometry,
}

impl RedrawMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            RedrawMode::FadingOnly => "fading",
            RedrawMode::FadingAndGeometry => "all",
        }
    }
}

impl FromStr for RedrawMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fading" => Ok(RedrawMode::FadingOnly),
            "all" => Ok(RedrawMode::FadingAndGeometry),
            other => Err(Error::invalid(
                "redraw",
                format!("expected `fading` or `all`, got `{other}`"),
            )),
        }
    }
}

/// Which cluster the benchmarks analyze.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterPick {
    /// The cluster whose joint centroid lies nearest the area center.
    Central,
    Index(usize),
}

impl FromStr for ClusterPick {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "central" {
            return Ok(ClusterPick::Central);
        }
        s.parse::<usize>().map(ClusterPick::Index).map_err(|_| {
            Error::invalid(
                "cluster",
                format!("expected `central` or a cluster index, got `{s}`"),
            )
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub area: AreaKind,
    /// Side length (square) or diameter (disk), meters.
    pub area_size: f64,
    /// Near-field threshold, meters.
    pub d0: f64,
    /// Far-field threshold, meters.
    pub d1: f64,
    /// Transmit power, watts.
    pub p: f64,
    /// Noise power, watts.
    pub n0: f64,
    pub num_clusters: usize,
    /// BS count J; the user count is `round(beta * J)`.
    pub num_bs: usize,
    /// Users-per-BS ratio K/J.
    pub beta: f64,
    /// N = ceil(spike_ratio * min(J_m, K_m)) spikes enter the estimate.
    pub spike_ratio: f64,
    pub trials: usize,
    pub redraw: RedrawMode,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            area: AreaKind::Square,
            area_size: 800.0,
            d0: 10.0,
            d1: 50.0,
            p: 1.0,
            n0: 1e-12,
            num_clusters: 25,
            num_bs: 2500,
            beta: 0.5,
            spike_ratio: 0.7,
            trials: 200,
            redraw: RedrawMode::FadingOnly,
            seed: DEFAULT_SEED,
        }
    }
}

impl ScenarioConfig {
    pub fn num_users(&self) -> usize {
        (self.beta * self.num_bs as f64).round() as usize
    }

    pub fn fading(&self) -> FadingParams {
        FadingParams {
            d0: self.d0,
            d1: self.d1,
            p: self.p,
            n0: self.n0,
        }
    }

    pub fn area_shape(&self) -> AreaShape {
        match self.area {
            AreaKind::Square => AreaShape::SquareUniform {
                side: self.area_size,
            },
            AreaKind::Disk => AreaShape::DiskTruncNormal {
                diameter: self.area_size,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.area_size > 0.0) || !self.area_size.is_finite() {
            return Err(Error::invalid("area_size", "must be positive and finite"));
        }
        if !(self.d0 > 0.0) || !(self.d1 > self.d0) {
            return Err(Error::invalid("d0/d1", "need 0 < d0 < d1"));
        }
        if !(self.p > 0.0) {
            return Err(Error::invalid("p", "transmit power must be positive"));
        }
        if !(self.n0 > 0.0) {
            return Err(Error::invalid("n0", "noise power must be positive"));
        }
        if self.num_clusters == 0 {
            return Err(Error::invalid("num_clusters", "need at least one cluster"));
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::invalid("beta", "must be positive and finite"));
        }
        if self.num_bs < self.num_clusters {
            return Err(Error::invalid("num_bs", "fewer BSs than clusters"));
        }
        if self.num_users() < self.num_clusters {
            return Err(Error::invalid("beta", "fewer users than clusters"));
        }
        if !(self.spike_ratio > 0.0 && self.spike_ratio <= 1.0) {
            return Err(Error::invalid("spike_ratio", "must lie in (0, 1]"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials", "must be at least 1"));
        }
        Ok(())
    }

    /// Applies one key=value pair; keys mirror the field names.
    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &'static str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::invalid(key, format!("cannot parse `{value}`")))
        }
        match key {
            "area" => self.area = value.parse()?,
            "area_size" => self.area_size = num("area_size", value)?,
            "d0" => self.d0 = num("d0", value)?,
            "d1" => self.d1 = num("d1", value)?,
            "p" => self.p = num("p", value)?,
            "n0" => self.n0 = num("n0", value)?,
            "num_clusters" => self.num_clusters = num("num_clusters", value)?,
            "num_bs" => self.num_bs = num("num_bs", value)?,
            "beta" => self.beta = num("beta", value)?,
            "spike_ratio" => self.spike_ratio = num("spike_ratio", value)?,
            "trials" => self.trials = num("trials", value)?,
            "redraw" => self.redraw = value.parse()?,
            "seed" => self.seed = num("seed", value)?,
            other => {
                return Err(Error::invalid(
                    "config",
                    format!("unknown key `{other}`"),
                ))
            }
        }
        Ok(())
    }

    /// Overlays `key = value` lines from a manifest file onto `self`.
    /// Blank lines and `#` comments are ignored.
    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::invalid(
                    "config",
                    format!("{}:{}: expected `key = value`", path.display(), lineno + 1),
                ));
            };
            self.apply_kv(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// The full configuration as key=value lines (round-trips through
    /// `apply_kv`; float values use Rust's shortest exact representation).
    pub fn to_kv_lines(&self) -> Vec<String> {
        vec![
            format!("area = {}", self.area),
            format!("area_size = {}", self.area_size),
            format!("d0 = {}", self.d0),
            format!("d1 = {}", self.d1),
            format!("p = {}", self.p),
            format!("n0 = {:e}", self.n0),
            format!("num_clusters = {}", self.num_clusters),
            format!("num_bs = {}", self.num_bs),
            format!("beta = {}", self.beta),
            format!("spike_ratio = {}", self.spike_ratio),
            format!("trials = {}", self.trials),
            format!("redraw = {}", self.redraw.as_str()),
            format!("seed = {}", self.seed),
        ]
    }
}
