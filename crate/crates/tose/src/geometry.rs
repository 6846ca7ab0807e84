//! Node placement and clustering for simulated network scenarios.
//!
//! Two spatial layouts are supported: uniform placement on a square and
//! an isotropic truncated normal on a disk. Nodes (BSs and users jointly)
//! are partitioned into M clusters with seeded Lloyd's k-means.

use crate::config::ScenarioConfig;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from, tags};
use rand::Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub fn distance(&self, other: &Position) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn sq_dist(&self, other: &Position) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AreaShape {
    SquareUniform { side: f64 },
    DiskTruncNormal { diameter: f64 },
}

impl AreaShape {
    /// Side length or diameter.
    pub fn size(&self) -> f64 {
        match *self {
            AreaShape::SquareUniform { side } => side,
            AreaShape::DiskTruncNormal { diameter } => diameter,
        }
    }

    pub fn center(&self) -> Position {
        let half = self.size() / 2.0;
        Position { x: half, y: half }
    }

    pub fn contains(&self, p: &Position) -> bool {
        match *self {
            AreaShape::SquareUniform { side } => {
                (0.0..=side).contains(&p.x) && (0.0..=side).contains(&p.y)
            }
            AreaShape::DiskTruncNormal { diameter } => {
                p.distance(&self.center()) <= diameter / 2.0
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkScenario {
    pub bs_positions: Vec<Position>,
    pub user_positions: Vec<Position>,
    pub area: AreaShape,
    pub cluster_of_bs: Vec<usize>,
    pub cluster_of_user: Vec<usize>,
    pub num_clusters: usize,
}

/// Index view of one cluster's nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub bs_indices: Vec<usize>,
    pub user_indices: Vec<usize>,
}

impl NetworkScenario {
    pub fn cluster(&self, m: usize) -> Cluster {
        let bs_indices = (0..self.bs_positions.len())
            .filter(|&i| self.cluster_of_bs[i] == m)
            .collect();
        let user_indices = (0..self.user_positions.len())
            .filter(|&i| self.cluster_of_user[i] == m)
            .collect();
        Cluster {
            bs_indices,
            user_indices,
        }
    }

    /// The cluster whose joint BS+user centroid lies nearest the area center.
    pub fn central_cluster(&self) -> usize {
        let center = self.area.center();
        let mut sums = vec![(0.0f64, 0.0f64, 0usize); self.num_clusters];
        for (p, &c) in self
            .bs_positions
            .iter()
            .zip(&self.cluster_of_bs)
            .chain(self.user_positions.iter().zip(&self.cluster_of_user))
        {
            sums[c].0 += p.x;
            sums[c].1 += p.y;
            sums[c].2 += 1;
        }
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (c, &(sx, sy, n)) in sums.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let centroid = Position {
                x: sx / n as f64,
                y: sy / n as f64,
            };
            let d = centroid.distance(&center);
            if d < best_d {
                best_d = d;
                best = c;
            }
        }
        best
    }
}

/// Places `n` points i.i.d. uniform on `[0, side]^2`.
pub fn place_uniform_square(n: usize, side: f64, seed: u64) -> Result<Vec<Position>> {
    if !(side > 0.0) || !side.is_finite() {
        return Err(Error::invalid("side", "must be positive and finite"));
    }
    let mut rng = rng_from(seed);
    Ok((0..n)
        .map(|_| Position {
            x: rng.gen::<f64>() * side,
            y: rng.gen::<f64>() * side,
        })
        .collect())
}

/// Places `n` points from an isotropic normal centered on the disk,
/// rejection-sampled to lie within `diameter / 2` of the center.
pub fn place_truncated_normal_disk(
    n: usize,
    diameter: f64,
    sigma: f64,
    seed: u64,
) -> Result<Vec<Position>> {
    if !(diameter > 0.0) || !diameter.is_finite() {
        return Err(Error::invalid("diameter", "must be positive and finite"));
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::invalid("sigma", "must be positive and finite"));
    }
    let mut rng = rng_from(seed);
    let radius = diameter / 2.0;
    let center = Position {
        x: radius,
        y: radius,
    };
    Ok((0..n)
        .map(|_| loop {
            let dx: f64 = rng.sample(StandardNormal);
            let dy: f64 = rng.sample(StandardNormal);
            let p = Position {
                x: center.x + sigma * dx,
                y: center.y + sigma * dy,
            };
            if p.distance(&center) <= radius {
                break p;
            }
        })
        .collect())
}

/// Lloyd iterations with seeded initial centers drawn from the points.
/// Returns the assignment and the within-cluster sum of squares measured
/// after each assignment phase.
fn lloyd(
    points: &[Position],
    m: usize,
    seed: u64,
    max_iters: usize,
) -> (Vec<usize>, Vec<f64>) {
    let n = points.len();
    let mut rng = rng_from(seed);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..m {
        let j = rng.gen_range(i..n);
        idx.swap(i, j);
    }
    let mut centers: Vec<Position> = idx[..m].iter().map(|&i| points[i]).collect();
    let mut assign = vec![0usize; n];
    let mut wcss_trace = Vec::new();

    for _ in 0..max_iters {
        let mut changed = false;
        for (pi, p) in points.iter().enumerate() {
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (ci, c) in centers.iter().enumerate() {
                let d = p.sq_dist(c);
                if d < best_d {
                    best_d = d;
                    best = ci;
                }
            }
            if assign[pi] != best {
                assign[pi] = best;
                changed = true;
            }
        }

        // Re-seed empty clusters with the farthest point from its center,
        // taken from clusters that can spare one.
        let mut counts = vec![0usize; m];
        for &a in &assign {
            counts[a] += 1;
        }
        for empty in 0..m {
            if counts[empty] > 0 {
                continue;
            }
            let far = (0..n)
                .filter(|&pi| counts[assign[pi]] > 1)
                .max_by(|&a, &b| {
                    let da = points[a].sq_dist(&centers[assign[a]]);
                    let db = points[b].sq_dist(&centers[assign[b]]);
                    da.total_cmp(&db)
                });
            if let Some(far) = far {
                counts[assign[far]] -= 1;
                counts[empty] += 1;
                centers[empty] = points[far];
                assign[far] = empty;
                changed = true;
            }
        }

        let wcss = points
            .iter()
            .zip(&assign)
            .map(|(p, &a)| p.sq_dist(&centers[a]))
            .sum();
        wcss_trace.push(wcss);

        let mut sums = vec![(0.0f64, 0.0f64, 0usize); m];
        for (p, &a) in points.iter().zip(&assign) {
            sums[a].0 += p.x;
            sums[a].1 += p.y;
            sums[a].2 += 1;
        }
        for (c, &(sx, sy, cn)) in centers.iter_mut().zip(&sums) {
            if cn > 0 {
                c.x = sx / cn as f64;
                c.y = sy / cn as f64;
            }
        }

        if !changed {
            break;
        }
    }
    (assign, wcss_trace)
}

/// Seeded k-means; every returned cluster index is in `[0, m)` and every
/// cluster is non-empty (for distinct input points).
pub fn kmeans_cluster(
    positions: &[Position],
    m: usize,
    seed: u64,
    max_iters: usize,
) -> Result<Vec<usize>> {
    if positions.is_empty() {
        return Err(Error::invalid("positions", "cannot cluster zero points"));
    }
    if m == 0 || m > positions.len() {
        return Err(Error::invalid(
            "m",
            format!("need 1 <= m <= {}, got {m}", positions.len()),
        ));
    }
    Ok(lloyd(positions, m, seed, max_iters).0)
}

const SCENARIO_ATTEMPTS: u64 = 16;
const KMEANS_MAX_ITERS: usize = 200;

/// Builds a full scenario: place BSs and users, cluster the joint node
/// set, and retry with a fresh derived seed until every cluster holds at
/// least one BS and one user.
pub fn build_scenario(config: &ScenarioConfig) -> Result<NetworkScenario> {
    config.validate()?;
    let j = config.num_bs;
    let k = config.num_users();
    let m = config.num_clusters;
    let area = config.area_shape();

    for attempt in 0..SCENARIO_ATTEMPTS {
        let base = derive_seed(config.seed, tags::SCENARIO + attempt);
        let (bs, users) = match area {
            AreaShape::SquareUniform { side } => (
                place_uniform_square(j, side, derive_seed(base, tags::BS_PLACEMENT))?,
                place_uniform_square(k, side, derive_seed(base, tags::USER_PLACEMENT))?,
            ),
            AreaShape::DiskTruncNormal { diameter } => {
                // Spread sigma = D/4 keeps roughly 95% of the untruncated
                // mass inside the disk.
                let sigma = diameter / 4.0;
                (
                    place_truncated_normal_disk(
                        j,
                        diameter,
                        sigma,
                        derive_seed(base, tags::BS_PLACEMENT),
                    )?,
                    place_truncated_normal_disk(
                        k,
                        diameter,
                        sigma,
                        derive_seed(base, tags::USER_PLACEMENT),
                    )?,
                )
            }
        };

        let joint: Vec<Position> = bs.iter().chain(users.iter()).copied().collect();
        let assign = kmeans_cluster(&joint, m, derive_seed(base, tags::KMEANS), KMEANS_MAX_ITERS)?;
        let cluster_of_bs = assign[..j].to_vec();
        let cluster_of_user = assign[j..].to_vec();

        let mut bs_count = vec![0usize; m];
        let mut user_count = vec![0usize; m];
        for &c in &cluster_of_bs {
            bs_count[c] += 1;
        }
        for &c in &cluster_of_user {
            user_count[c] += 1;
        }
        if (0..m).all(|c| bs_count[c] > 0 && user_count[c] > 0) {
            return Ok(NetworkScenario {
                bs_positions: bs,
                user_positions: users,
                area,
                cluster_of_bs,
                cluster_of_user,
                num_clusters: m,
            });
        }
    }
    Err(Error::GenerationFailure(format!(
        "a cluster lacked a BS or a user in every one of {SCENARIO_ATTEMPTS} attempts \
         (J={j}, K={k}, M={m})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::AreaKind;

    #[test]
    fn uniform_square_empty_and_deterministic() {
        assert!(place_uniform_square(0, 800.0, 1).unwrap().is_empty());
        let a = place_uniform_square(1000, 800.0, 42).unwrap();
        let b = place_uniform_square(1000, 800.0, 42).unwrap();
        assert_eq!(a, b);
        assert!(place_uniform_square(5, 0.0, 1).is_err());
    }

    #[test]
    fn uniform_square_stays_inside_and_centers() {
        let side = 800.0;
        let pts = place_uniform_square(10_000, side, 3).unwrap();
        assert!(pts
            .iter()
            .all(|p| (0.0..=side).contains(&p.x) && (0.0..=side).contains(&p.y)));
        let mean_x: f64 = pts.iter().map(|p| p.x).sum::<f64>() / pts.len() as f64;
        assert!((mean_x - side * 0.5).abs() < side * 0.02);
    }

    #[test]
    fn disk_points_respect_truncation() {
        let pts = place_truncated_normal_disk(500, 800.0, 200.0, 5).unwrap();
        let center = Position { x: 400.0, y: 400.0 };
        assert!(pts.iter().all(|p| p.distance(&center) <= 400.0));
        assert!(place_truncated_normal_disk(0, 800.0, 200.0, 5)
            .unwrap()
            .is_empty());
        assert!(place_truncated_normal_disk(5, 800.0, -1.0, 5).is_err());
    }

    #[test]
    fn disk_mass_concentrates_in_the_inner_half() {
        // Inner disk of radius R/sqrt(2) has the same area as the outer
        // annulus, so the normal profile must put more points inside.
        let pts = place_truncated_normal_disk(10_000, 800.0, 200.0, 11).unwrap();
        let center = Position { x: 400.0, y: 400.0 };
        let split = 400.0 / std::f64::consts::SQRT_2;
        let inner = pts.iter().filter(|p| p.distance(&center) <= split).count();
        assert!(inner > pts.len() - inner, "inner {} of {}", inner, pts.len());
    }

    #[test]
    fn kmeans_single_cluster_and_identity_partition() {
        let pts = place_uniform_square(40, 100.0, 9).unwrap();
        let one = kmeans_cluster(&pts, 1, 1, 50).unwrap();
        assert!(one.iter().all(|&c| c == 0));

        let own = kmeans_cluster(&pts, pts.len(), 1, 50).unwrap();
        let mut seen = vec![false; pts.len()];
        for &c in &own {
            assert!(!seen[c], "cluster {c} assigned twice");
            seen[c] = true;
        }
    }

    #[test]
    fn kmeans_recovers_far_separated_groups() {
        let mut pts = Vec::new();
        let centers = [(0.0, 0.0), (1000.0, 0.0), (0.0, 1000.0), (1000.0, 1000.0)];
        let mut rng = rng_from(77);
        for &(cx, cy) in &centers {
            for _ in 0..25 {
                pts.push(Position {
                    x: cx + rng.gen::<f64>(),
                    y: cy + rng.gen::<f64>(),
                });
            }
        }
        let assign = kmeans_cluster(&pts, 4, 4, 100).unwrap();
        for g in 0..4 {
            let label = assign[g * 25];
            assert!(
                assign[g * 25..(g + 1) * 25].iter().all(|&c| c == label),
                "group {g} split"
            );
        }
        let mut labels: Vec<usize> = (0..4).map(|g| assign[g * 25]).collect();
        labels.sort_unstable();
        labels.dedup();
        assert_eq!(labels.len(), 4, "groups merged");
    }

    #[test]
    fn kmeans_rejects_bad_m() {
        let pts = place_uniform_square(10, 100.0, 2).unwrap();
        assert!(kmeans_cluster(&pts, 0, 1, 50).is_err());
        assert!(kmeans_cluster(&pts, 11, 1, 50).is_err());
        assert!(kmeans_cluster(&[], 1, 1, 50).is_err());
    }

    #[test]
    fn kmeans_objective_never_increases() {
        let pts = place_uniform_square(500, 800.0, 21).unwrap();
        let (_, trace) = lloyd(&pts, 8, 3, 100);
        for w in trace.windows(2) {
            assert!(
                w[1] <= w[0] * (1.0 + 1e-12),
                "objective rose: {} -> {}",
                w[0],
                w[1]
            );
        }
    }

    fn small_config() -> ScenarioConfig {
        ScenarioConfig {
            num_bs: 500,
            beta: 0.5,
            num_clusters: 25,
            ..Default::default()
        }
    }

    #[test]
    fn scenario_partitions_every_node() {
        let config = small_config();
        let s = build_scenario(&config).unwrap();
        assert_eq!(s.bs_positions.len(), 500);
        assert_eq!(s.user_positions.len(), 250);
        assert_eq!(s.cluster_of_bs.len(), 500);
        assert_eq!(s.cluster_of_user.len(), 250);
        assert!(s.cluster_of_bs.iter().all(|&c| c < 25));
        assert!(s.cluster_of_user.iter().all(|&c| c < 25));

        let mut total_bs = 0;
        let mut total_users = 0;
        for m in 0..25 {
            let cl = s.cluster(m);
            assert!(!cl.bs_indices.is_empty());
            assert!(!cl.user_indices.is_empty());
            total_bs += cl.bs_indices.len();
            total_users += cl.user_indices.len();
        }
        assert_eq!(total_bs, 500);
        assert_eq!(total_users, 250);
    }

    #[test]
    fn scenario_is_deterministic() {
        let config = small_config();
        let a = build_scenario(&config).unwrap();
        let b = build_scenario(&config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scenario_respects_area_shape() {
        let mut config = small_config();
        config.area = AreaKind::Disk;
        let s = build_scenario(&config).unwrap();
        let center = s.area.center();
        assert!(s
            .bs_positions
            .iter()
            .chain(&s.user_positions)
            .all(|p| p.distance(&center) <= 400.0));
    }

    #[test]
    fn scenario_rejects_more_clusters_than_nodes() {
        let config = ScenarioConfig {
            num_bs: 10,
            beta: 0.5,
            num_clusters: 25,
            ..Default::default()
        };
        assert!(build_scenario(&config).is_err());
    }

    #[test]
    fn central_cluster_centroid_is_nearest_the_center() {
        let s = build_scenario(&small_config()).unwrap();
        let picked = s.central_cluster();
        let center = s.area.center();
        let centroid = |m: usize| {
            let cl = s.cluster(m);
            let mut sx = 0.0;
            let mut sy = 0.0;
            let n = (cl.bs_indices.len() + cl.user_indices.len()) as f64;
            for &i in &cl.bs_indices {
                sx += s.bs_positions[i].x;
                sy += s.bs_positions[i].y;
            }
            for &i in &cl.user_indices {
                sx += s.user_positions[i].x;
                sy += s.user_positions[i].y;
            }
            Position { x: sx / n, y: sy / n }
        };
        let picked_d = centroid(picked).distance(&center);
        for m in 0..s.num_clusters {
            assert!(picked_d <= centroid(m).distance(&center) + 1e-12);
        }
    }
}
