//! Mixup barcodes of inclusions of filtrations.
//!
//! For a filtered complex `L` included in a filtered complex `K`, every
//! persistence bar `[b, d)` of `L` splits at the death `d'` of its image in
//! `K` into an image sub-bar `[b, d')` and a mixup sub-bar `[d', d)`. The
//! mixup sub-bar measures how much earlier a class of `L` dies once the cells
//! of `K ∖ L` are present. For point clouds, `L` and `K` are the
//! Vietoris–Rips filtrations of `A` and `A ∪ B`.
//!
//! ```
//! use mixup_core::{build_rips_pair, MixupBarcode, PointCloud, total_mixup};
//!
//! let a = PointCloud::euclidean(vec![
//!     vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0],
//! ]).unwrap();
//! let b = PointCloud::euclidean(vec![vec![0.5, 0.5]]).unwrap();
//! let pair = build_rips_pair(&a, &b, 2.0, 1).unwrap();
//! let h1 = MixupBarcode::compute(&pair, 1, Some(2.0)).unwrap();
//! // the square's cycle is filled by the center point as soon as it appears
//! assert_eq!(h1.triples[0].death_img, 1.0);
//! assert!(total_mixup(&h1).unwrap() > 0.4);
//! ```
//!
//! Modules:
//! * [`complex`] builds filtered pairs from point clouds or explicit cells.
//! * [`reduce`] runs the coordinated boundary-matrix reduction.
//! * [`stats`] holds the scalar statistics, pairwise matrices and profiles.
//! * [`oracle`] recomputes barcodes from rank functions for verification.
//! * [`subsample`] selects k-medoids subsamples.
//! * [`plot`] and [`io`] handle SVG output and text formats.

pub mod complex;
pub mod error;
pub mod io;
pub mod oracle;
pub mod plot;
pub mod reduce;
pub mod stats;
pub mod subsample;

pub use complex::{
    build_rips_pair, build_rips_pair_within, parse_explicit_pair, restrict_to_l, Cell,
    DistanceMatrix, FilteredPair, Member, Metric, PointCloud,
};
pub use error::{Error, Result};
pub use oracle::{
    barcode_from_ranks, rank_function, verify_pair, Interval, RankFunction, RankMode,
};
pub use reduce::{
    image_row_order, mixup_barcode_indices, reduce, to_value_barcode, IndexMixupTriple, RowOrder,
    SparseBoundaryMatrix, ValueTriple,
};
pub use stats::{
    mean_mixup_percentage, mixup, mixup_percentage, mixup_profile, pairwise_matrix, total_mixup,
    total_mixup_percentage, Aggregate, AnalysisConfig, LabeledPointCloud, MixupBarcode,
    MixupProfile, PairwiseMatrix, ProfileSeries, Summary,
};
pub use subsample::{
    consistent_subsample, k_medoids, k_medoids_with_starts, LabelSelection, MedoidSelection,
};
