use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use mixup_core::io::{parse_distance_matrix, parse_labeled_cloud, parse_points};
use mixup_core::oracle::VerifyReport;
use mixup_core::plot::{plot_matrix, plot_mixup_barcodes, PlotStyle};
use mixup_core::stats::barcode_of_pair;
use mixup_core::subsample::select_medoids;
use mixup_core::{
    build_rips_pair_within, consistent_subsample, k_medoids, mixup_profile, pairwise_matrix,
    parse_explicit_pair, verify_pair, Aggregate, AnalysisConfig, FilteredPair, LabeledPointCloud,
    Metric, MixupBarcode, PointCloud, ProfileSeries,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::*;
use crate::report::*;

pub type Outcome = Result<u8, String>;

fn fail(e: mixup_core::Error) -> String {
    e.to_string()
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn in_file<T>(path: &Path, r: mixup_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("{}: {e}", path.display()))
}

fn write_out(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, content).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn coordinate_metric(m: MetricArg) -> Result<Metric, String> {
    match m {
        MetricArg::Euclidean => Ok(Metric::Euclidean),
        MetricArg::Sqeuclidean => Ok(Metric::SquaredEuclidean),
        MetricArg::Matrix => {
            Err("this input needs coordinates; --metric matrix is not supported".into())
        }
    }
}

fn load_cloud(path: &Path, metric: MetricArg) -> Result<PointCloud, String> {
    let text = read(path)?;
    match metric {
        MetricArg::Matrix => Ok(PointCloud::from_distances(in_file(
            path,
            parse_distance_matrix(&text),
        )?)),
        m => in_file(
            path,
            mixup_core::io::parse_point_cloud(&text, coordinate_metric(m)?),
        ),
    }
}

fn load_labeled(path: &Path, metric: MetricArg) -> Result<LabeledPointCloud, String> {
    let text = read(path)?;
    in_file(path, parse_labeled_cloud(&text, coordinate_metric(metric)?))
}

fn size(k: usize) -> Option<usize> {
    (k > 0).then_some(k)
}

enum Source {
    Explicit(FilteredPair),
    Points {
        cloud: PointCloud,
        a: Vec<usize>,
        b: Vec<usize>,
    },
}

fn load_pair(input: &PairInput) -> Result<Source, String> {
    if let Some(path) = &input.filtration {
        return Ok(Source::Explicit(in_file(
            path,
            parse_explicit_pair(&read(path)?),
        )?));
    }
    let a_path = input
        .a
        .as_ref()
        .ok_or("one of --a or --filtration is required")?;
    let (cloud, split) = if input.metric == MetricArg::Matrix {
        if input.b.is_some() {
            return Err("--b cannot be combined with --metric matrix; use --split".into());
        }
        let cloud = load_cloud(a_path, MetricArg::Matrix)?;
        let split = input.split.unwrap_or(cloud.len());
        if split > cloud.len() {
            return Err(format!(
                "--split {split} exceeds the {} points of the matrix",
                cloud.len()
            ));
        }
        (cloud, split)
    } else {
        if input.split.is_some() {
            return Err("--split needs --metric matrix".into());
        }
        let metric = coordinate_metric(input.metric)?;
        let (mut points, _) = in_file(a_path, parse_points(&read(a_path)?, false))?;
        let split = points.len();
        if let Some(b_path) = &input.b {
            points.extend(in_file(b_path, parse_points(&read(b_path)?, false))?.0);
        }
        (PointCloud::new(points, metric).map_err(fail)?, split)
    };
    if split == 0 {
        return Err("A has no points".into());
    }
    Ok(Source::Points {
        a: (0..split).collect(),
        b: (split..cloud.len()).collect(),
        cloud,
    })
}

/// Requested degrees, ascending; all of `0..=cap` when none were given.
fn degrees(f: &Filtration, cap: usize) -> Result<Vec<usize>, String> {
    let mut d = if f.degrees.is_empty() {
        (0..=cap).collect()
    } else {
        f.degrees.clone()
    };
    d.sort_unstable();
    d.dedup();
    if let Some(&k) = d.iter().find(|&&k| k > f.kmax) {
        return Err(format!("degree {k} exceeds --kmax {}", f.kmax));
    }
    Ok(d)
}

fn rmax(f: &Filtration) -> Result<f64, String> {
    f.rmax
        .ok_or_else(|| "--rmax is required for point-cloud inputs".into())
}

fn config(f: &Filtration, s: &Sampling, aggregate: Aggregate) -> Result<AnalysisConfig, String> {
    Ok(AnalysisConfig {
        r_max: rmax(f)?,
        k_max: f.kmax,
        subsample_a: size(s.subsample_a),
        subsample_b: size(s.subsample_b),
        clamp: f.clamp,
        seed: s.seed,
        aggregate,
    })
}

pub fn mixup(args: &MixupArgs) -> Outcome {
    let f = &args.filtration;
    let report = match load_pair(&args.input)? {
        Source::Explicit(fp) => {
            let top = fp.max_dim().unwrap_or(0);
            let degrees = degrees(f, f.kmax.min(top))?;
            let clamp = f
                .clamp
                .unwrap_or_else(|| fp.cells().iter().map(|c| c.value).fold(0.0, f64::max));
            let degrees = degrees
                .par_iter()
                .map(|&k| DegreeReport::new(&MixupBarcode::compute(&fp, k, Some(clamp))?))
                .collect::<mixup_core::Result<_>>()
                .map_err(fail)?;
            MixupReport {
                r_max: None,
                clamp,
                subsample: None,
                degrees,
            }
        }
        Source::Points { cloud, a, b } => {
            let r = rmax(f)?;
            let clamp = f.clamp.unwrap_or(r);
            let degrees = degrees(f, f.kmax)?;
            let top = degrees.last().copied().unwrap_or(0);
            let s = &args.sampling;
            let (sa, sb) = if top > 0 {
                (
                    select_medoids(&cloud, &a, size(s.subsample_a), s.seed).map_err(fail)?,
                    select_medoids(&cloud, &b, size(s.subsample_b), s.seed).map_err(fail)?,
                )
            } else {
                (a.clone(), b.clone())
            };
            let subsampled = sa != a || sb != b;
            // One complex serves every degree unless degree 0 must use all points.
            let sub = build_rips_pair_within(&cloud, &sa, &sb, r, top).map_err(fail)?;
            let full = match degrees.first() {
                Some(0) if subsampled => {
                    Some(build_rips_pair_within(&cloud, &a, &b, r, 0).map_err(fail)?)
                }
                _ => None,
            };
            let degrees = degrees
                .par_iter()
                .map(|&k| {
                    let fp = if k == 0 {
                        full.as_ref().unwrap_or(&sub)
                    } else {
                        &sub
                    };
                    DegreeReport::new(&barcode_of_pair(fp, k, Some(clamp))?)
                })
                .collect::<mixup_core::Result<_>>()
                .map_err(fail)?;
            MixupReport {
                r_max: Some(r),
                clamp,
                subsample: subsampled.then_some(SubsampleInfo { a: sa, b: sb }),
                degrees,
            }
        }
    };
    let content = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => Report::Mixup(report).to_json(),
        Format::Csv => mixup_csv(&report),
        Format::Svg => barcode_svg(&report, &[])?,
    };
    write_out(&args.output.out, &content)?;
    Ok(0)
}

fn mixup_csv(report: &MixupReport) -> String {
    let value = |v: Option<f64>| v.map_or("inf".to_string(), |x| x.to_string());
    let id = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
    let mut out =
        String::from("degree,birth,death_img,death,birth_id,death_img_id,death_id,zero_length\n");
    for d in &report.degrees {
        for ((t, i), z) in d.triples.iter().zip(&d.index_triples).zip(&d.zero_length) {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{z}",
                d.degree,
                value(t[0]),
                value(t[1]),
                value(t[2]),
                id(i[0]),
                id(i[1]),
                id(i[2])
            )
            .unwrap();
        }
    }
    out
}

fn barcode_svg(report: &MixupReport, only: &[usize]) -> Result<String, String> {
    let barcodes: Vec<MixupBarcode> = report
        .degrees
        .iter()
        .filter(|d| only.is_empty() || only.contains(&d.degree))
        .map(|d| d.barcode(Some(report.clamp)))
        .collect();
    plot_mixup_barcodes(&barcodes, &PlotStyle::default()).map_err(fail)
}

fn single_degree<'a>(
    degrees: &'a [MatrixDegree],
    only: &[usize],
) -> Result<&'a MatrixDegree, String> {
    match only {
        [] if degrees.len() == 1 => Ok(&degrees[0]),
        [] => Err("SVG output draws one degree; pass a single --degrees value".into()),
        [k, ..] => degrees
            .iter()
            .find(|d| d.degree == *k)
            .ok_or_else(|| format!("degree {k} not present")),
    }
}

fn pairwise_svg(r: &PairwiseReport, only: &[usize]) -> Result<String, String> {
    let d = single_degree(&r.degrees, only)?;
    let labels: Vec<String> = r.labels.iter().map(i64::to_string).collect();
    Ok(plot_matrix(
        &d.values,
        &labels,
        &labels,
        &format!(
            "H{} mean mixup percentage (row into row ∪ column)",
            d.degree
        ),
    ))
}

fn profile_svg(r: &ProfileReport, only: &[usize]) -> Result<String, String> {
    let d = single_degree(&r.degrees, only)?;
    let rows: Vec<String> = r.layers.iter().map(|l| format!("layer {l}")).collect();
    let cols: Vec<String> = r.steps.iter().map(|t| format!("step {t}")).collect();
    Ok(plot_matrix(
        &d.values,
        &rows,
        &cols,
        &format!("H{} mixup profile", d.degree),
    ))
}

pub fn pairwise(args: &PairwiseArgs) -> Outcome {
    let x = load_labeled(&args.a, args.metric)?;
    let cfg = config(&args.filtration, &args.sampling, Aggregate::Total)?;
    let mut report = PairwiseReport {
        labels: x.distinct_labels(),
        degrees: Vec::new(),
    };
    for k in degrees(&args.filtration, args.filtration.kmax)? {
        let m = pairwise_matrix(&x, k, &cfg).map_err(fail)?;
        report.degrees.push(MatrixDegree {
            degree: k,
            values: m.values,
        });
    }
    let content = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => Report::Pairwise(report).to_json(),
        Format::Csv => {
            let mut out = String::from("degree,label");
            for l in &report.labels {
                write!(out, ",{l}").unwrap();
            }
            out.push('\n');
            for d in &report.degrees {
                for (l, row) in report.labels.iter().zip(&d.values) {
                    write!(out, "{},{l}", d.degree).unwrap();
                    for v in row {
                        write!(out, ",{v}").unwrap();
                    }
                    out.push('\n');
                }
            }
            out
        }
        Format::Svg => pairwise_svg(&report, &[])?,
    };
    write_out(&args.output.out, &content)?;
    Ok(0)
}

fn load_series(manifest: &Path, metric: MetricArg) -> Result<ProfileSeries, String> {
    let text = read(manifest)?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let mut series = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || {
            format!(
                "{}:{}: expected `layer step path`",
                manifest.display(),
                i + 1
            )
        };
        let mut parts = line.splitn(3, char::is_whitespace);
        let layer: usize = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
        let step: usize = parts
            .next()
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(bad)?;
        let path = parts
            .next()
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .ok_or_else(bad)?;
        let cloud = load_labeled(&base.join(path), metric)?;
        if series.insert((layer, step), cloud).is_some() {
            return Err(format!(
                "{}:{}: layer {layer}, step {step} listed twice",
                manifest.display(),
                i + 1
            ));
        }
    }
    Ok(series)
}

pub fn profile(args: &ProfileArgs) -> Outcome {
    let series = load_series(&args.series, args.metric)?;
    let aggregate = match args.profile_aggregate {
        AggregateArg::Total => Aggregate::Total,
        AggregateArg::Mean => Aggregate::Mean,
    };
    let cfg = config(&args.filtration, &args.sampling, aggregate)?;
    let mut report = ProfileReport {
        aggregate,
        layers: Vec::new(),
        steps: Vec::new(),
        degrees: Vec::new(),
    };
    for k in degrees(&args.filtration, args.filtration.kmax)? {
        let p = mixup_profile(&series, k, &cfg).map_err(fail)?;
        report.layers = p.layers;
        report.steps = p.steps;
        report.degrees.push(MatrixDegree {
            degree: k,
            values: p.values,
        });
    }
    let content = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => Report::Profile(report).to_json(),
        Format::Csv => {
            let mut out = String::from("degree,layer,step,value\n");
            for d in &report.degrees {
                for (l, row) in report.layers.iter().zip(&d.values) {
                    for (t, v) in report.steps.iter().zip(row) {
                        writeln!(out, "{},{l},{t},{v}", d.degree).unwrap();
                    }
                }
            }
            out
        }
        Format::Svg => profile_svg(&report, &[])?,
    };
    write_out(&args.output.out, &content)?;
    Ok(0)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn subsample(args: &SubsampleArgs) -> Outcome {
    let s = &args.sampling;
    let format = args.output.format.unwrap_or(Format::Csv);
    if format == Format::Svg {
        return Err("subsample writes csv or json".into());
    }
    let content = if args.labeled {
        let x = load_labeled(&args.a, args.metric)?;
        let sel = consistent_subsample(&[&x], size(s.subsample_a), size(s.subsample_b), s.seed, 0)
            .map_err(fail)?;
        if format == Format::Json {
            json(&sel)
        } else {
            let mut out = String::from("label,role,index\n");
            for l in &sel {
                for (role, idx) in [("own", &l.own), ("rest", &l.rest)] {
                    for i in idx {
                        writeln!(out, "{},{role},{i}", l.label).unwrap();
                    }
                }
            }
            out
        }
    } else {
        let cloud = load_cloud(&args.a, args.metric)?;
        let k = size(s.subsample_a).unwrap_or(cloud.len()).max(1);
        let sel = k_medoids(&cloud, k, s.seed).map_err(fail)?;
        if format == Format::Json {
            json(&sel)
        } else {
            let mut out = String::from("index\n");
            for i in &sel.indices {
                writeln!(out, "{i}").unwrap();
            }
            out
        }
    };
    write_out(&args.output.out, &content)?;
    Ok(0)
}

#[derive(Serialize)]
struct Check {
    instance: Option<u64>,
    #[serde(flatten)]
    report: VerifyReport,
}

/// A random VR pair with at most eight points.
fn random_pair(rng: &mut StdRng, kmax: usize) -> mixup_core::Result<FilteredPair> {
    let dim: usize = rng.gen_range(2..=4);
    let na = rng.gen_range(1..=5);
    let nb = rng.gen_range(0..=3);
    let points: Vec<Vec<f64>> = (0..na + nb)
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let r = rng.gen_range(0.3..2.5);
    let cloud = PointCloud::euclidean(points)?;
    let a: Vec<usize> = (0..na).collect();
    let b: Vec<usize> = (na..na + nb).collect();
    build_rips_pair_within(&cloud, &a, &b, r, kmax)
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let f = &args.filtration;
    let mut checks = Vec::new();
    let mut pairs: Vec<(Option<u64>, FilteredPair)> = Vec::new();
    let degrees = match args.random {
        Some(n) => {
            let mut rng = StdRng::seed_from_u64(args.seed);
            for i in 0..n {
                pairs.push((Some(i), random_pair(&mut rng, f.kmax).map_err(fail)?));
            }
            degrees(f, f.kmax)?
        }
        None => match load_pair(&args.input)? {
            Source::Explicit(fp) => {
                let d = degrees(f, f.kmax.min(fp.max_dim().unwrap_or(0)))?;
                pairs.push((None, fp));
                d
            }
            Source::Points { cloud, a, b } => {
                let d = degrees(f, f.kmax)?;
                let top = d.last().copied().unwrap_or(0);
                pairs.push((
                    None,
                    build_rips_pair_within(&cloud, &a, &b, rmax(f)?, top).map_err(fail)?,
                ));
                d
            }
        },
    };
    let vr = args.random.is_some() || args.input.filtration.is_none();
    for (instance, fp) in &pairs {
        for &k in &degrees {
            if vr && fp.max_dim().is_none_or(|m| k > m) {
                continue;
            }
            checks.push(Check {
                instance: *instance,
                report: verify_pair(fp, k).map_err(fail)?,
            });
        }
    }
    let bad: Vec<&Check> = checks.iter().filter(|c| !c.report.ok()).collect();
    let content = match args.output.format.unwrap_or(Format::Csv) {
        Format::Json => json(&checks),
        Format::Svg => return Err("verify writes text or json".into()),
        Format::Csv => {
            let mut out = String::new();
            for c in &bad {
                writeln!(
                    out,
                    "mismatch: instance {}, degree {}: persistence {}, image {}, ordered {}, monotone {}",
                    c.instance.map_or("input".into(), |i| i.to_string()),
                    c.report.degree,
                    c.report.persistence_matches,
                    c.report.image_matches,
                    c.report.ordered,
                    c.report.monotone
                )
                .unwrap();
            }
            if bad.is_empty() {
                writeln!(
                    out,
                    "all match: {} instances, {} degree checks",
                    pairs.len(),
                    checks.len()
                )
                .unwrap();
            } else {
                writeln!(
                    out,
                    "{} of {} degree checks mismatch",
                    bad.len(),
                    checks.len()
                )
                .unwrap();
            }
            out
        }
    };
    write_out(&args.output.out, &content)?;
    Ok(if bad.is_empty() { 0 } else { 1 })
}

pub fn plot(args: &PlotArgs) -> Outcome {
    let text = read(&args.input)?;
    let report: Report =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", args.input.display()))?;
    let svg = match &report {
        Report::Mixup(r) => barcode_svg(r, &args.degrees)?,
        Report::Pairwise(r) => pairwise_svg(r, &args.degrees)?,
        Report::Profile(r) => profile_svg(r, &args.degrees)?,
    };
    write_out(&args.out, &svg)?;
    Ok(0)
}
