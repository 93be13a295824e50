//! Seeded workloads shared by the benchmarks.

use mixup_core::PointCloud;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// `n` points drawn uniformly from the cube `[-1, 1)^dim`.
pub fn uniform_cloud(n: usize, dim: usize, seed: u64) -> PointCloud {
    let mut rng = StdRng::seed_from_u64(seed);
    let points = (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    PointCloud::euclidean(points).expect("finite coordinates")
}

/// `n` points on a noisy unit circle in the plane.
pub fn noisy_circle(n: usize, noise: f64, seed: u64) -> PointCloud {
    let mut rng = StdRng::seed_from_u64(seed);
    let points = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            vec![
                t.cos() + rng.gen_range(-noise..=noise),
                t.sin() + rng.gen_range(-noise..=noise),
            ]
        })
        .collect();
    PointCloud::euclidean(points).expect("finite coordinates")
}
