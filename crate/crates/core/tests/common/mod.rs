#![allow(dead_code)]

use mixup_core::{build_rips_pair, FilteredPair, PointCloud};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// A random VR instance: `A` with 1..=max_a points, `B` with 0..=max_b
/// points, in dimension 2..=4, with a threshold between 0.3 and 2.5.
pub struct Instance {
    pub seed: u64,
    pub a: PointCloud,
    pub b: Vec<Vec<f64>>,
    pub r_max: f64,
    pub dim: usize,
}

impl Instance {
    pub fn random(seed: u64, max_a: usize, max_b: usize) -> Self {
        let mut rng = StdRng::seed_from_u64(seed);
        let dim = rng.gen_range(2..=4);
        let na = rng.gen_range(1..=max_a);
        let nb = rng.gen_range(0..=max_b);
        let point =
            |rng: &mut StdRng| -> Vec<f64> { (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect() };
        let a = (0..na).map(|_| point(&mut rng)).collect();
        let b = (0..nb).map(|_| point(&mut rng)).collect();
        let r_max = rng.gen_range(0.3..2.5);
        Instance {
            seed,
            a: PointCloud::euclidean(a).unwrap(),
            b,
            r_max,
            dim,
        }
    }

    pub fn b_cloud(&self) -> PointCloud {
        PointCloud::euclidean(self.b.clone()).unwrap()
    }

    pub fn b_subset(&self, mask: u32) -> PointCloud {
        let pts = self
            .b
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| p.clone())
            .collect();
        PointCloud::euclidean(pts).unwrap()
    }

    pub fn pair(&self, k_max: usize) -> FilteredPair {
        build_rips_pair(&self.a, &self.b_cloud(), self.r_max, k_max).unwrap()
    }
}
