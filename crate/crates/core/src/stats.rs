//! Summary statistics of mixup barcodes and the aggregate tables built on
//! them: pairwise class matrices and mixup profiles.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{build_rips_pair_within, FilteredPair, PointCloud};
use crate::error::{Error, Result};
use crate::reduce::{mixup_barcode_indices, to_value_barcode, IndexMixupTriple, ValueTriple};
use crate::subsample::{consistent_subsample, select_medoids};

/// Mixup barcode in one degree, in both value and index form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixupBarcode {
    pub degree: usize,
    pub triples: Vec<ValueTriple>,
    pub index_triples: Vec<IndexMixupTriple>,
    /// Value substituted for infinite endpoints in statistics.
    pub clamp: Option<f64>,
}

impl MixupBarcode {
    pub fn empty(degree: usize, clamp: Option<f64>) -> Self {
        MixupBarcode {
            degree,
            triples: Vec::new(),
            index_triples: Vec::new(),
            clamp,
        }
    }

    /// Runs the coordinated reduction on `fp` in degree `k`.
    pub fn compute(fp: &FilteredPair, k: usize, clamp: Option<f64>) -> Result<Self> {
        let index_triples = mixup_barcode_indices(fp, k)?;
        let triples = to_value_barcode(&index_triples, fp)?;
        Ok(MixupBarcode {
            degree: k,
            triples,
            index_triples,
            clamp,
        })
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Triples with infinite endpoints replaced by the clamp value.
    pub fn clamped(&self) -> Result<Vec<ValueTriple>> {
        self.triples
            .iter()
            .map(|t| clamp_triple(t, self.clamp))
            .collect()
    }
}

fn clamp_triple(t: &ValueTriple, clamp: Option<f64>) -> Result<ValueTriple> {
    let finite_max = [t.birth, t.death_img, t.death]
        .into_iter()
        .filter(|v| v.is_finite())
        .fold(f64::NEG_INFINITY, f64::max);
    let fix = |v: f64| -> Result<f64> {
        if v.is_finite() {
            return Ok(v);
        }
        match clamp {
            None => Err(Error::UnclampedInfinity),
            Some(c) if c < finite_max => Err(Error::ClampBelowValue {
                clamp: c,
                value: finite_max,
            }),
            Some(c) => Ok(c),
        }
    };
    Ok(ValueTriple {
        birth: fix(t.birth)?,
        death_img: fix(t.death_img)?,
        death: fix(t.death)?,
    })
}

/// Correctly rounded sum (Shewchuk's algorithm with exact partials).
fn exact_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for mut x in values {
        let mut kept = 0;
        for i in 0..partials.len() {
            let mut y = partials[i];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[kept] = lo;
                kept += 1;
            }
            x = hi;
        }
        partials.truncate(kept);
        partials.push(x);
    }
    // Round the partials (non-overlapping, increasing magnitude) to nearest.
    let mut hi = 0.0;
    let mut n = partials.len();
    if n > 0 {
        n -= 1;
        hi = partials[n];
        let mut lo = 0.0;
        while n > 0 {
            let x = hi;
            n -= 1;
            let y = partials[n];
            hi = x + y;
            let yr = hi - x;
            lo = y - yr;
            if lo != 0.0 {
                break;
            }
        }
        if n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0)) {
            let y = lo * 2.0;
            let x = hi + y;
            if y == x - hi {
                hi = x;
            }
        }
    }
    hi
}

/// `d - d'`, the length of the mixup sub-bar.
pub fn mixup(t: &ValueTriple, clamp: Option<f64>) -> Result<f64> {
    let t = clamp_triple(t, clamp)?;
    Ok(t.death - t.death_img)
}

/// `(d - d') / (d - b)`; fails for bars of zero persistence.
pub fn mixup_percentage(t: &ValueTriple, clamp: Option<f64>) -> Result<f64> {
    let t = clamp_triple(t, clamp)?;
    let pers = t.death - t.birth;
    if pers <= 0.0 {
        return Err(Error::ZeroPersistence);
    }
    Ok((t.death - t.death_img) / pers)
}

/// Sum of all mixups, correctly rounded from the exact sum of the endpoints.
pub fn total_mixup(bc: &MixupBarcode) -> Result<f64> {
    let clamped = bc.clamped()?;
    Ok(exact_sum(
        clamped.iter().flat_map(|t| [t.death, -t.death_img]),
    ))
}

/// Sum of bar lengths `d - b`.
pub fn total_persistence(bc: &MixupBarcode) -> Result<f64> {
    let clamped = bc.clamped()?;
    Ok(exact_sum(clamped.iter().flat_map(|t| [t.death, -t.birth])))
}

/// Sum of image sub-bar lengths `d' - b`.
pub fn total_image_persistence(bc: &MixupBarcode) -> Result<f64> {
    let clamped = bc.clamped()?;
    Ok(exact_sum(
        clamped.iter().flat_map(|t| [t.death_img, -t.birth]),
    ))
}

fn percentages(bc: &MixupBarcode) -> Result<Vec<f64>> {
    let clamped = bc.clamped()?;
    Ok(clamped
        .iter()
        .filter(|t| t.death > t.birth)
        .map(|t| (t.death - t.death_img) / (t.death - t.birth))
        .collect())
}

/// Sum of mixup percentages over bars of positive persistence.
pub fn total_mixup_percentage(bc: &MixupBarcode) -> Result<f64> {
    Ok(exact_sum(percentages(bc)?))
}

/// Mean mixup percentage over bars of positive persistence; 0 when there
/// are none.
pub fn mean_mixup_percentage(bc: &MixupBarcode) -> Result<f64> {
    let p = percentages(bc)?;
    if p.is_empty() {
        return Ok(0.0);
    }
    let n = p.len() as f64;
    Ok(exact_sum(p) / n)
}

/// All scalar statistics of one barcode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total_mixup: f64,
    pub total_persistence: f64,
    pub total_image_persistence: f64,
    pub total_mixup_percentage: f64,
    pub mean_mixup_percentage: f64,
}

impl Summary {
    pub fn of(bc: &MixupBarcode) -> Result<Self> {
        Ok(Summary {
            total_mixup: total_mixup(bc)?,
            total_persistence: total_persistence(bc)?,
            total_image_persistence: total_image_persistence(bc)?,
            total_mixup_percentage: total_mixup_percentage(bc)?,
            mean_mixup_percentage: mean_mixup_percentage(bc)?,
        })
    }
}

/// A point cloud whose points carry integer labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPointCloud {
    cloud: PointCloud,
    labels: Vec<i64>,
}

impl LabeledPointCloud {
    pub fn new(cloud: PointCloud, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != cloud.len() {
            return Err(Error::Labels(format!(
                "{} labels for {} points",
                labels.len(),
                cloud.len()
            )));
        }
        Ok(LabeledPointCloud { cloud, labels })
    }

    pub fn cloud(&self) -> &PointCloud {
        &self.cloud
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labels present, ascending.
    pub fn distinct_labels(&self) -> Vec<i64> {
        let mut l = self.labels.clone();
        l.sort_unstable();
        l.dedup();
        l
    }

    pub fn indices_of(&self, label: i64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.labels[i] == label)
            .collect()
    }
}

/// How a profile entry combines the percentages of one barcode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregate {
    Total,
    Mean,
}

impl Aggregate {
    pub fn apply(self, bc: &MixupBarcode) -> Result<f64> {
        match self {
            Aggregate::Total => total_mixup_percentage(bc),
            Aggregate::Mean => mean_mixup_percentage(bc),
        }
    }
}

/// Settings shared by the point-cloud analyses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub r_max: f64,
    pub k_max: usize,
    /// k-medoids size for the included cloud `A`; `None` keeps all points.
    pub subsample_a: Option<usize>,
    /// k-medoids size for the ambient addition `B`.
    pub subsample_b: Option<usize>,
    /// Clamp for infinite deaths; defaults to `r_max`.
    pub clamp: Option<f64>,
    pub seed: u64,
    pub aggregate: Aggregate,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            r_max: 1.0,
            k_max: 2,
            subsample_a: Some(500),
            subsample_b: Some(100),
            clamp: None,
            seed: 0,
            aggregate: Aggregate::Total,
        }
    }
}

impl AnalysisConfig {
    pub fn clamp_value(&self) -> f64 {
        self.clamp.unwrap_or(self.r_max)
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.k_max {
            return Err(Error::DegreeOutOfRange {
                degree,
                max: self.k_max,
            });
        }
        Ok(())
    }
}

/// Mixup barcode of `A ↪ A ∪ B` for index sets of one cloud. Degrees above
/// the largest cell dimension present give an empty barcode.
pub fn barcode_within(
    cloud: &PointCloud,
    a: &[usize],
    b: &[usize],
    degree: usize,
    config: &AnalysisConfig,
) -> Result<MixupBarcode> {
    config.check_degree(degree)?;
    let fp = build_rips_pair_within(cloud, a, b, config.r_max, degree)?;
    barcode_of_pair(&fp, degree, Some(config.clamp_value()))
}

/// Like [`MixupBarcode::compute`], but a degree above the top cell
/// dimension yields an empty barcode instead of an error.
pub fn barcode_of_pair(
    fp: &FilteredPair,
    degree: usize,
    clamp: Option<f64>,
) -> Result<MixupBarcode> {
    match fp.max_dim() {
        Some(m) if degree <= m => MixupBarcode::compute(fp, degree, clamp),
        _ => Ok(MixupBarcode::empty(degree, clamp)),
    }
}

/// Class-by-class mean mixup percentages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseMatrix {
    pub degree: usize,
    pub labels: Vec<i64>,
    /// `values[i][j]`: class `labels[i]` included into its union with class
    /// `labels[j]`.
    pub values: Vec<Vec<f64>>,
}

/// Entry `(i, j)` is the mean mixup percentage of `X_i ↪ X_i ∪ X_j`; the
/// diagonal is zero. Degree 0 uses all points; higher degrees subsample each
/// class with k-medoids.
pub fn pairwise_matrix(
    x: &LabeledPointCloud,
    degree: usize,
    config: &AnalysisConfig,
) -> Result<PairwiseMatrix> {
    config.check_degree(degree)?;
    let labels = x.distinct_labels();
    if labels.len() < 2 {
        return Err(Error::Labels(format!(
            "need at least two labels, found {}",
            labels.len()
        )));
    }
    let (k_a, k_b) = if degree == 0 {
        (None, None)
    } else {
        (config.subsample_a, config.subsample_b)
    };
    let groups: Vec<(Vec<usize>, Vec<usize>)> = labels
        .par_iter()
        .map(|&l| {
            let idx = x.indices_of(l);
            Ok((
                select_medoids(x.cloud(), &idx, k_a, config.seed)?,
                select_medoids(x.cloud(), &idx, k_b, config.seed)?,
            ))
        })
        .collect::<Result<_>>()?;

    let m = labels.len();
    let entries: Vec<f64> = (0..m * m)
        .into_par_iter()
        .map(|e| {
            let (i, j) = (e / m, e % m);
            if i == j {
                return Ok(0.0);
            }
            let bc = barcode_within(x.cloud(), &groups[i].0, &groups[j].1, degree, config)?;
            mean_mixup_percentage(&bc)
        })
        .collect::<Result<_>>()?;
    Ok(PairwiseMatrix {
        degree,
        labels,
        values: entries.chunks(m).map(<[f64]>::to_vec).collect(),
    })
}

/// Labelled clouds indexed by `(layer, step)`.
pub type ProfileSeries = BTreeMap<(usize, usize), LabeledPointCloud>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixupProfile {
    pub degree: usize,
    pub aggregate: Aggregate,
    pub layers: Vec<usize>,
    pub steps: Vec<usize>,
    /// `values[k][t]` for `layers[k]`, `steps[t]`.
    pub values: Vec<Vec<f64>>,
}

/// `P[k][t] = max_j agg(X_j ↪ X_j ∪ ⋃_{r≠j} X_r)` on the cloud of layer `k`
/// and step `t`. Subsample indices are computed once on the first cloud of
/// the series and reused everywhere.
pub fn mixup_profile(
    series: &ProfileSeries,
    degree: usize,
    config: &AnalysisConfig,
) -> Result<MixupProfile> {
    config.check_degree(degree)?;
    let mut layers: Vec<usize> = series.keys().map(|&(k, _)| k).collect();
    layers.dedup();
    let mut steps: Vec<usize> = series.keys().map(|&(_, t)| t).collect();
    steps.sort_unstable();
    steps.dedup();
    if series.is_empty() {
        return Err(Error::Series("empty series".into()));
    }
    for &k in &layers {
        for &t in &steps {
            match series.get(&(k, t)) {
                None => return Err(Error::Series(format!("missing layer {k}, step {t}"))),
                Some(x) if x.is_empty() => {
                    return Err(Error::Series(format!("empty cloud at layer {k}, step {t}")))
                }
                Some(_) => {}
            }
        }
    }
    let clouds: Vec<&LabeledPointCloud> = series.values().collect();
    let (k_a, k_b) = if degree == 0 {
        (None, None)
    } else {
        (config.subsample_a, config.subsample_b)
    };
    let selection = consistent_subsample(&clouds, k_a, k_b, config.seed, 0)?;

    let keys: Vec<(usize, usize)> = series.keys().copied().collect();
    let entries: Vec<f64> = keys
        .par_iter()
        .map(|key| {
            let x = &series[key];
            let mut best = 0.0f64;
            for sel in &selection {
                let bc = barcode_within(x.cloud(), &sel.own, &sel.rest, degree, config)?;
                best = best.max(config.aggregate.apply(&bc)?);
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    let by_key: BTreeMap<(usize, usize), f64> = keys.into_iter().zip(entries).collect();
    let values = layers
        .iter()
        .map(|&k| steps.iter().map(|&t| by_key[&(k, t)]).collect())
        .collect();
    Ok(MixupProfile {
        degree,
        aggregate: config.aggregate,
        layers,
        steps,
        values,
    })
}
