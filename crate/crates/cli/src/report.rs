//! JSON result documents. Infinite endpoints are written as `null`; finite
//! values use the shortest decimal form that parses back to the same double.

use mixup_core::{Aggregate, IndexMixupTriple, MixupBarcode, Summary, ValueTriple};
use serde::{Deserialize, Serialize};

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub degree: usize,
    /// `[b, d', d]` in filtration values.
    pub triples: Vec<[Option<f64>; 3]>,
    /// `[b, d', d]` as cell ids.
    pub index_triples: Vec<[Option<usize>; 3]>,
    pub zero_length: Vec<bool>,
    pub stats: Summary,
}

impl DegreeReport {
    pub fn new(bc: &MixupBarcode) -> mixup_core::Result<Self> {
        Ok(DegreeReport {
            degree: bc.degree,
            triples: bc
                .triples
                .iter()
                .map(|t| [finite(t.birth), finite(t.death_img), finite(t.death)])
                .collect(),
            index_triples: bc
                .index_triples
                .iter()
                .map(|t| [Some(t.birth), t.death_img, t.death])
                .collect(),
            zero_length: bc.triples.iter().map(ValueTriple::is_zero_length).collect(),
            stats: Summary::of(bc)?,
        })
    }

    pub fn barcode(&self, clamp: Option<f64>) -> MixupBarcode {
        let inf = |v: Option<f64>| v.unwrap_or(f64::INFINITY);
        MixupBarcode {
            degree: self.degree,
            triples: self
                .triples
                .iter()
                .map(|t| ValueTriple {
                    birth: inf(t[0]),
                    death_img: inf(t[1]),
                    death: inf(t[2]),
                })
                .collect(),
            index_triples: self
                .index_triples
                .iter()
                .map(|t| IndexMixupTriple {
                    degree: self.degree,
                    birth: t[0].unwrap_or_default(),
                    death_img: t[1],
                    death: t[2],
                })
                .collect(),
            clamp,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsampleInfo {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixupReport {
    pub r_max: Option<f64>,
    pub clamp: f64,
    /// Points used in degrees ≥ 1 when A or B was subsampled.
    pub subsample: Option<SubsampleInfo>,
    pub degrees: Vec<DegreeReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDegree {
    pub degree: usize,
    pub values: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseReport {
    pub labels: Vec<i64>,
    pub degrees: Vec<MatrixDegree>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub aggregate: Aggregate,
    pub layers: Vec<usize>,
    pub steps: Vec<usize>,
    pub degrees: Vec<MatrixDegree>,
}

/// Any result document, tagged by the subcommand that wrote it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Mixup(MixupReport),
    Pairwise(PairwiseReport),
    Profile(ProfileReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
