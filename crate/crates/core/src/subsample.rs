//! k-medoids subsampling (PAM: greedy BUILD, then SWAP to a local optimum).
//!
//! Medoids are input points, so a selection is a subset of the cloud. Costs
//! are always summed over points in index order, which makes the reported
//! cost of a selection reproducible bit for bit.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::complex::PointCloud;
use crate::error::{Error, Result};
use crate::stats::LabeledPointCloud;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MedoidSelection {
    /// Selected point indices, ascending.
    pub indices: Vec<usize>,
    /// Sum over all points of the distance to the nearest medoid.
    pub cost: f64,
}

/// Cost of a medoid set: `Σ_j min_m d(m, j)` summed over `j` in index order.
pub fn medoid_cost(cloud: &PointCloud, medoids: &[usize]) -> f64 {
    (0..cloud.len())
        .map(|j| {
            medoids
                .iter()
                .map(|&m| cloud.distance(m, j))
                .fold(f64::INFINITY, f64::min)
        })
        .sum()
}

/// Number of BUILD starts used by [`k_medoids`].
pub const DEFAULT_STARTS: usize = 6;

/// Selects `k` medoids with [`DEFAULT_STARTS`] starts.
pub fn k_medoids(cloud: &PointCloud, k: usize, seed: u64) -> Result<MedoidSelection> {
    k_medoids_with_starts(cloud, k, seed, DEFAULT_STARTS)
}

/// PAM from several starts. Start `s` forces the first BUILD medoid to be
/// the point with the `s`-th smallest total distance, completes BUILD
/// greedily and runs SWAP to a local optimum; the cheapest result wins, the
/// earliest start on ties. One start is classic PAM.
///
/// The seed only affects which of several equally good candidates is taken:
/// seed 0 prefers the lowest index, any other seed prefers candidates in a
/// seeded permutation of the indices.
pub fn k_medoids_with_starts(
    cloud: &PointCloud,
    k: usize,
    seed: u64,
    starts: usize,
) -> Result<MedoidSelection> {
    let n = cloud.len();
    if n == 0 {
        return Err(Error::EmptyCloud);
    }
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if k >= n {
        return Ok(MedoidSelection {
            indices: (0..n).collect(),
            cost: 0.0,
        });
    }
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..i {
            let v = cloud.distance(i, j);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    let dist = |i: usize, j: usize| d[i * n + j];

    let mut scan: Vec<usize> = (0..n).collect();
    if seed != 0 {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        scan.shuffle(&mut rng);
    }

    // Candidate first medoids ordered by their BUILD cost, ties in scan order.
    let mut firsts: Vec<(f64, usize)> = scan
        .iter()
        .map(|&c| ((0..n).map(|j| dist(c, j)).sum(), c))
        .collect();
    firsts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let starts = firsts.len().min(starts.max(1));

    let mut best: Option<(f64, Vec<usize>)> = None;
    for &(_, first) in &firsts[..starts] {
        let medoids = swap(build(first, k, n, &scan, &dist), n, &scan, &dist);
        let cost = total_cost(&medoids, n, &dist);
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, medoids));
        }
    }
    let (_, mut indices) = best.expect("at least one start");
    indices.sort_unstable();
    Ok(MedoidSelection {
        cost: total_cost(&indices, n, &dist),
        indices,
    })
}

/// Greedy BUILD starting from `first`.
fn build(
    first: usize,
    k: usize,
    n: usize,
    scan: &[usize],
    dist: &impl Fn(usize, usize) -> f64,
) -> Vec<usize> {
    let mut medoids = vec![first];
    let mut is_medoid = vec![false; n];
    is_medoid[first] = true;
    let mut nearest: Vec<f64> = (0..n).map(|j| dist(first, j)).collect();
    while medoids.len() < k {
        let mut best: Option<(f64, usize)> = None;
        for &c in scan.iter().filter(|&&c| !is_medoid[c]) {
            let cost: f64 = (0..n).map(|j| nearest[j].min(dist(c, j))).sum();
            if best.is_none_or(|(b, _)| cost < b) {
                best = Some((cost, c));
            }
        }
        let (_, c) = best.expect("k < n leaves a candidate");
        medoids.push(c);
        is_medoid[c] = true;
        for (j, near) in nearest.iter_mut().enumerate() {
            *near = near.min(dist(c, j));
        }
    }
    medoids
}

/// Best-improvement SWAP until no single swap lowers the cost.
fn swap(
    mut medoids: Vec<usize>,
    n: usize,
    scan: &[usize],
    dist: &impl Fn(usize, usize) -> f64,
) -> Vec<usize> {
    let k = medoids.len();
    let mut is_medoid = vec![false; n];
    for &m in &medoids {
        is_medoid[m] = true;
    }
    let mut cost = total_cost(&medoids, n, dist);
    loop {
        let (first, second, owner) = nearest_two(&medoids, n, dist);
        let mut best: Option<(f64, usize, usize)> = None;
        for slot in 0..k {
            for &h in scan.iter().filter(|&&h| !is_medoid[h]) {
                let candidate: f64 = (0..n)
                    .map(|j| {
                        let dh = dist(h, j);
                        if owner[j] == slot {
                            dh.min(second[j])
                        } else {
                            dh.min(first[j])
                        }
                    })
                    .sum();
                if best.is_none_or(|(b, _, _)| candidate < b) {
                    best = Some((candidate, slot, h));
                }
            }
        }
        match best {
            Some((candidate, slot, h)) if candidate < cost => {
                is_medoid[medoids[slot]] = false;
                is_medoid[h] = true;
                medoids[slot] = h;
                cost = total_cost(&medoids, n, dist);
            }
            _ => return medoids,
        }
    }
}

fn total_cost(medoids: &[usize], n: usize, dist: &impl Fn(usize, usize) -> f64) -> f64 {
    (0..n)
        .map(|j| {
            medoids
                .iter()
                .map(|&m| dist(m, j))
                .fold(f64::INFINITY, f64::min)
        })
        .sum()
}

/// Nearest and second-nearest medoid distance per point, plus the slot of
/// the nearest medoid.
fn nearest_two(
    medoids: &[usize],
    n: usize,
    dist: &impl Fn(usize, usize) -> f64,
) -> (Vec<f64>, Vec<f64>, Vec<usize>) {
    let mut first = vec![f64::INFINITY; n];
    let mut second = vec![f64::INFINITY; n];
    let mut owner = vec![usize::MAX; n];
    for j in 0..n {
        for (slot, &m) in medoids.iter().enumerate() {
            let v = dist(m, j);
            if v < first[j] {
                second[j] = first[j];
                first[j] = v;
                owner[j] = slot;
            } else if v < second[j] {
                second[j] = v;
            }
        }
    }
    (first, second, owner)
}

/// Per-label subsample indices into the clouds of a series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelSelection {
    pub label: i64,
    /// Medoids of the points carrying `label` (`k_a` of them).
    pub own: Vec<usize>,
    /// Medoids of all points carrying any other label (`k_b` of them).
    pub rest: Vec<usize>,
}

/// Computes medoids once on `series[reference]` and returns indices valid for
/// every cloud of the series. `None` for a size keeps all points.
pub fn consistent_subsample(
    series: &[&LabeledPointCloud],
    k_a: Option<usize>,
    k_b: Option<usize>,
    seed: u64,
    reference: usize,
) -> Result<Vec<LabelSelection>> {
    let base = series
        .get(reference)
        .ok_or_else(|| Error::Series(format!("reference {reference} outside series")))?;
    for (t, x) in series.iter().enumerate() {
        if x.labels() != base.labels() {
            return Err(Error::Series(format!(
                "cloud {t} does not carry the same labelled examples as the reference"
            )));
        }
    }
    base.distinct_labels()
        .into_iter()
        .map(|label| {
            let own_idx: Vec<usize> = base.indices_of(label);
            let rest_idx: Vec<usize> = (0..base.len())
                .filter(|&i| base.labels()[i] != label)
                .collect();
            Ok(LabelSelection {
                label,
                own: select_medoids(base.cloud(), &own_idx, k_a, seed)?,
                rest: select_medoids(base.cloud(), &rest_idx, k_b, seed)?,
            })
        })
        .collect()
}

/// Medoids of the sub-cloud on `indices`, mapped back to cloud indices.
pub fn select_medoids(
    cloud: &PointCloud,
    indices: &[usize],
    k: Option<usize>,
    seed: u64,
) -> Result<Vec<usize>> {
    match k {
        Some(k) if k < indices.len() => {
            let sub = cloud.select(indices)?;
            let sel = k_medoids(&sub, k, seed)?;
            Ok(sel.indices.iter().map(|&i| indices[i]).collect())
        }
        _ => Ok(indices.to_vec()),
    }
}
