//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the binary exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use mixup_core::io::format_points;
use mixup_core::stats::barcode_of_pair;
use mixup_core::subsample::medoid_cost;
use mixup_core::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SIX_CELLS: &str = "\
1 1 1 L
2 1 2 L
3 2 3 K 2
4 2 4 K 1
5 2 5 L 1 2
6 2 6 L 1
";

const FUZZ_INSTANCES: u64 = 500;
const FUZZ_BUDGET: Duration = Duration::from_secs(60);
const GOLDEN_BUDGET: Duration = Duration::from_millis(10);
const SUBSET_INSTANCES: u64 = 100;
const MEDOID_INSTANCES: u64 = 50;
const MEDOID_TOLERANCE: f64 = 0.05;
const GEOMETRIC_THRESHOLD: f64 = 0.5;
const SMOKE_BUDGET: Duration = Duration::from_secs(120);

/// Random VR instance: `A` with 1..=max_a points, `B` with 0..=max_b points,
/// dimension 2..=4, threshold in [0.3, 2.5).
struct Instance {
    a: PointCloud,
    b: Vec<Vec<f64>>,
    r_max: f64,
}

impl Instance {
    fn random(seed: u64, max_a: usize, max_b: usize) -> Self {
        let mut rng = StdRng::seed_from_u64(seed);
        let dim: usize = rng.gen_range(2..=4);
        let na = rng.gen_range(1..=max_a);
        let nb = rng.gen_range(0..=max_b);
        let mut point = || -> Vec<f64> { (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect() };
        let a = (0..na).map(|_| point()).collect();
        let b = (0..nb).map(|_| point()).collect();
        Instance {
            a: PointCloud::euclidean(a).unwrap(),
            b,
            r_max: rng.gen_range(0.3..2.5),
        }
    }

    fn b_subset(&self, mask: u32) -> PointCloud {
        let pts = (0..self.b.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.b[i].clone())
            .collect();
        PointCloud::euclidean(pts).unwrap()
    }

    fn pair(&self, k_max: usize) -> FilteredPair {
        build_rips_pair(&self.a, &self.b_subset(u32::MAX), self.r_max, k_max).unwrap()
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn golden() -> Outcome {
    let start = Instant::now();
    let fp = parse_explicit_pair(SIX_CELLS).unwrap();
    let bc = MixupBarcode::compute(&fp, 1, None).unwrap();
    let elapsed = start.elapsed();
    let got: Vec<(f64, f64, f64)> = bc
        .triples
        .iter()
        .map(|t| (t.birth, t.death_img, t.death))
        .collect();
    let expected = vec![(1.0, 4.0, 6.0), (2.0, 3.0, 5.0)];
    let total = total_mixup(&bc).unwrap();
    outcome(
        got == expected && total == 4.0 && elapsed < GOLDEN_BUDGET,
        format!("triples {got:?}, total mixup {total}, {elapsed:?} (budget {GOLDEN_BUDGET:?})"),
    )
}

struct FuzzResult {
    instances: u64,
    degrees_checked: usize,
    mismatches: Vec<String>,
    ordering_violations: usize,
    triples: usize,
    independence_failures: Vec<u64>,
    elapsed: Duration,
}

fn value_pairs(bc: &MixupBarcode) -> Vec<(f64, f64)> {
    let mut v: Vec<(f64, f64)> = bc.triples.iter().map(|t| (t.birth, t.death)).collect();
    v.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    v
}

fn fuzz() -> FuzzResult {
    let start = Instant::now();
    let mut res = FuzzResult {
        instances: FUZZ_INSTANCES,
        degrees_checked: 0,
        mismatches: Vec::new(),
        ordering_violations: 0,
        triples: 0,
        independence_failures: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for seed in 0..FUZZ_INSTANCES {
        let inst = Instance::random(seed, 6, 3);
        let fp = inst.pair(2);
        let alone = build_rips_pair(&inst.a, &inst.b_subset(0), inst.r_max, 2).unwrap();
        let mut independent = true;
        for k in 0..=2 {
            if fp.max_dim().is_some_and(|m| k <= m) {
                let report = verify_pair(&fp, k).unwrap();
                res.degrees_checked += 1;
                if !report.persistence_matches || !report.image_matches || !report.monotone {
                    res.mismatches.push(format!("seed {seed} degree {k}"));
                }
            }
            let mixed = barcode_of_pair(&fp, k, None).unwrap();
            res.triples += mixed.len();
            res.ordering_violations += mixed
                .triples
                .iter()
                .filter(|t| !(t.birth <= t.death_img && t.death_img <= t.death))
                .count();
            res.ordering_violations += mixed
                .index_triples
                .iter()
                .filter(|t| !t.is_ordered())
                .count();
            let plain = barcode_of_pair(&alone, k, None).unwrap();
            independent &= value_pairs(&mixed) == value_pairs(&plain);
        }
        if !independent {
            res.independence_failures.push(seed);
        }
    }
    res.elapsed = start.elapsed();
    res
}

fn subsets() -> Outcome {
    let mut comparisons = 0usize;
    let mut failures = Vec::new();
    for seed in 10_000..10_000 + SUBSET_INSTANCES {
        let inst = Instance::random(seed, 6, 5);
        let nb = inst.b.len() as u32;
        let full = inst.pair(2);
        for k in 0..=2 {
            let reference =
                total_mixup(&barcode_of_pair(&full, k, Some(inst.r_max)).unwrap()).unwrap();
            for mask in 0..(1u32 << nb) {
                let fp = build_rips_pair(&inst.a, &inst.b_subset(mask), inst.r_max, 2).unwrap();
                let sub = total_mixup(&barcode_of_pair(&fp, k, Some(inst.r_max)).unwrap()).unwrap();
                comparisons += 1;
                if sub > reference {
                    failures.push(format!(
                        "seed {seed} degree {k} mask {mask:b}: {sub} > {reference}"
                    ));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{SUBSET_INSTANCES} instances, {comparisons} subset comparisons, {} violations {:?}",
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

/// Longest bar of `A ↪ A ∪ B` in `degree` and its mixup percentage. With
/// `finite`, only bars that die in `A` below `r_max` are considered.
fn dominant(
    a: Vec<Vec<f64>>,
    b: Vec<Vec<f64>>,
    r_max: f64,
    degree: usize,
    finite: bool,
) -> (ValueTriple, f64) {
    let a = PointCloud::euclidean(a).unwrap();
    let b = PointCloud::euclidean(b).unwrap();
    let fp = build_rips_pair(&a, &b, r_max, degree).unwrap();
    let bc = MixupBarcode::compute(&fp, degree, Some(r_max)).unwrap();
    let bars = bc.clamped().unwrap();
    let top = bars
        .into_iter()
        .filter(|t| !finite || t.death < r_max)
        .max_by(|x, y| (x.death - x.birth).total_cmp(&(y.death - y.birth)))
        .expect("a bar in the requested degree");
    let pct = mixup_percentage(&top, Some(r_max)).unwrap();
    (top, pct)
}

fn fibonacci_sphere(n: usize) -> Vec<Vec<f64>> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let y = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - y * y).sqrt();
            let phi = golden * i as f64;
            vec![r * phi.cos(), y, r * phi.sin()]
        })
        .collect()
}

fn in_ball(rng: &mut StdRng, n: usize, dim: usize, radius: f64) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    while out.len() < n {
        let p: Vec<f64> = (0..dim).map(|_| rng.gen_range(-radius..radius)).collect();
        if p.iter().map(|x| x * x).sum::<f64>() <= radius * radius {
            out.push(p);
        }
    }
    out
}

fn geometric() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let interior = in_ball(&mut rng, 10, 3, 0.5);
    let (sphere, sphere_pct) = dominant(fibonacci_sphere(60), interior, 1.7, 2, true);

    let circle_pts: Vec<Vec<f64>> = (0..40)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / 40.0;
            vec![t.cos(), t.sin()]
        })
        .collect();
    let disk = in_ball(&mut StdRng::seed_from_u64(2), 12, 2, 0.5);
    let (_, circle_pct) = dominant(circle_pts, disk, 2.0, 1, false);

    let mut clusters = Vec::new();
    for cx in [-2.0, 2.0] {
        for i in 0..5 {
            let t = 2.0 * PI * i as f64 / 5.0;
            clusters.push(vec![cx + 0.2 * t.cos(), 0.2 * t.sin()]);
        }
    }
    let mut slab = Vec::new();
    for x in [-1.2, -0.6, 0.0, 0.6, 1.2] {
        for y in [-0.3, 0.0, 0.3] {
            slab.push(vec![x, y]);
        }
    }
    let (merge, _) = dominant(clusters, slab, 4.5, 0, true);

    let pass = sphere_pct > GEOMETRIC_THRESHOLD
        && circle_pct > GEOMETRIC_THRESHOLD
        && merge.death_img < merge.death;
    outcome(
        pass,
        format!(
            "sphere+interior H2 {sphere_pct:.3} ({:.3}, {:.3}, {:.3}); circle+disk H1 {circle_pct:.3}; \
             slab H0 d'={:.3} < d={:.3}",
            sphere.birth, sphere.death_img, sphere.death, merge.death_img, merge.death
        ),
    )
}

/// Two layers of concentric spheres (class 0 inside class 1); in step 1
/// the outer class is lifted far away from the inner one.
fn profile_series() -> ProfileSeries {
    let mut series = BTreeMap::new();
    for (layer, outer) in [(0usize, 1.6), (1, 1.8)] {
        for (step, lift) in [(0usize, 0.0), (1, 50.0)] {
            let mut pts = fibonacci_sphere(30);
            pts.extend(
                fibonacci_sphere(40)
                    .into_iter()
                    .map(|p| vec![outer * p[0], outer * p[1], outer * p[2] + lift]),
            );
            let labels = (0..70).map(|i| i64::from(i >= 30)).collect();
            let cloud = PointCloud::euclidean(pts).unwrap();
            series.insert(
                (layer, step),
                LabeledPointCloud::new(cloud, labels).unwrap(),
            );
        }
    }
    series
}

fn profile() -> Outcome {
    let series = profile_series();
    let config = AnalysisConfig {
        r_max: 2.0,
        k_max: 1,
        ..AnalysisConfig::default()
    };
    let mut pass = true;
    let mut details = Vec::new();
    for degree in 0..=1 {
        let p = mixup_profile(&series, degree, &config).unwrap();
        for row in &p.values {
            pass &= row.len() >= 2 && row.windows(2).all(|w| w[1] < w[0]);
        }
        details.push(format!("H{degree} {:?}", p.values));
    }
    outcome(pass, details.join("; "))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

fn medoids() -> Outcome {
    let mut worst_ratio = 1.0f64;
    let mut not_local = Vec::new();
    for seed in 0..MEDOID_INSTANCES {
        let mut rng = StdRng::seed_from_u64(20_000 + seed);
        let n = rng.gen_range(4..=10);
        let k = rng.gen_range(1..=3);
        let dim = rng.gen_range(1..=3);
        let pts = (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(0.0..10.0)).collect())
            .collect();
        let cloud = PointCloud::euclidean(pts).unwrap();
        let sel = k_medoids(&cloud, k, seed % 3).unwrap();
        let optimum = combinations(n, k)
            .iter()
            .map(|c| medoid_cost(&cloud, c))
            .fold(f64::INFINITY, f64::min);
        if optimum > 0.0 {
            worst_ratio = worst_ratio.max(sel.cost / optimum);
        }
        for slot in 0..k {
            for h in (0..n).filter(|h| !sel.indices.contains(h)) {
                let mut swapped = sel.indices.clone();
                swapped[slot] = h;
                if medoid_cost(&cloud, &swapped) < sel.cost {
                    not_local.push(seed);
                }
            }
        }
    }
    not_local.dedup();
    outcome(
        worst_ratio <= 1.0 + MEDOID_TOLERANCE && not_local.is_empty(),
        format!(
            "{MEDOID_INSTANCES} instances, worst cost / optimum {worst_ratio:.4} (tolerance {MEDOID_TOLERANCE}), \
             improving swaps at seeds {not_local:?}"
        ),
    )
}

fn run(args: &[&str], dir: &Path) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_mixup"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success() || out.status.code() == Some(1),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut rng = StdRng::seed_from_u64(9);
    let mut cloud = |n: usize, shift: f64| -> Vec<Vec<f64>> {
        (0..n)
            .map(|_| vec![rng.gen_range(-1.0..1.0) + shift, rng.gen_range(-1.0..1.0)])
            .collect()
    };
    let a = cloud(30, 0.0);
    let b = cloud(12, 0.5);
    std::fs::write(d.join("a.csv"), format_points(&a, None)).unwrap();
    std::fs::write(d.join("b.csv"), format_points(&b, None)).unwrap();
    let mut all = a.clone();
    all.extend(b.iter().cloned());
    let labels: Vec<i64> = (0..all.len()).map(|i| (i % 3) as i64).collect();
    std::fs::write(d.join("x.csv"), format_points(&all, Some(&labels))).unwrap();
    std::fs::write(d.join("series.txt"), "0 0 x.csv\n0 1 x.csv\n").unwrap();
    std::fs::write(d.join("six_cells.txt"), SIX_CELLS).unwrap();

    let commands: Vec<Vec<&str>> = vec![
        vec![
            "mixup",
            "--a",
            "a.csv",
            "--b",
            "b.csv",
            "--rmax",
            "1.2",
            "--subsample-a",
            "20",
            "--subsample-b",
            "8",
            "--seed",
            "3",
        ],
        vec![
            "mixup", "--a", "a.csv", "--b", "b.csv", "--rmax", "1.2", "--format", "svg",
        ],
        vec!["mixup", "--filtration", "six_cells.txt"],
        vec!["pairwise", "--a", "x.csv", "--rmax", "1", "--kmax", "1"],
        vec![
            "pairwise",
            "--a",
            "x.csv",
            "--rmax",
            "1",
            "--degrees",
            "1",
            "--format",
            "svg",
        ],
        vec![
            "profile",
            "--series",
            "series.txt",
            "--rmax",
            "1",
            "--kmax",
            "1",
        ],
        vec![
            "profile",
            "--series",
            "series.txt",
            "--rmax",
            "1",
            "--degrees",
            "0",
            "--format",
            "svg",
        ],
        vec![
            "subsample",
            "--a",
            "a.csv",
            "--subsample-a",
            "5",
            "--format",
            "json",
        ],
        vec![
            "subsample",
            "--a",
            "x.csv",
            "--labeled",
            "--subsample-a",
            "4",
            "--subsample-b",
            "3",
        ],
        vec![
            "verify", "--random", "20", "--seed", "4", "--format", "json",
        ],
    ];
    let mut differing = Vec::new();
    for args in &commands {
        if run(args, d) != run(args, d) {
            differing.push(args[0]);
        }
    }
    std::fs::write(d.join("r.json"), run(&commands[0], d)).unwrap();
    let plot = ["plot", "--input", "r.json"];
    if run(&plot, d) != run(&plot, d) {
        differing.push("plot");
    }
    outcome(
        differing.is_empty(),
        format!(
            "{} invocations run twice, differing: {differing:?}",
            commands.len() + 1
        ),
    )
}

fn gaussian(rng: &mut StdRng, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
                    let v: f64 = rng.gen_range(0.0..1.0);
                    (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
                })
                .collect()
        })
        .collect()
}

/// |A| = 500, |B| = 100 standard Gaussian points in dimension 10, with the
/// threshold at the 20th percentile of the pairwise distances within A.
fn smoke() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    let a = gaussian(&mut rng, 500, 10);
    let b = gaussian(&mut rng, 100, 10);
    let cloud = PointCloud::euclidean(a.clone()).unwrap();
    let mut dists: Vec<f64> = (0..500)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| cloud.distance(i, j))
        .collect();
    dists.sort_by(f64::total_cmp);
    let r_max = dists[dists.len() / 5];
    std::fs::write(dir.path().join("a.csv"), format_points(&a, None)).unwrap();
    std::fs::write(dir.path().join("b.csv"), format_points(&b, None)).unwrap();
    let start = Instant::now();
    let r = r_max.to_string();
    let json = run(
        &[
            "mixup",
            "--a",
            "a.csv",
            "--b",
            "b.csv",
            "--rmax",
            &r,
            "--degrees",
            "0,1",
            "--out",
            "r.json",
        ],
        dir.path(),
    );
    let elapsed = start.elapsed();
    let written = std::fs::read_to_string(dir.path().join("r.json")).unwrap();
    let bars = written.matches("\"zero_length\"").count();
    outcome(
        json.is_empty() && bars == 2 && elapsed < SMOKE_BUDGET,
        format!(
            "r_max {r_max:.4}, degrees 0-1 via the CLI in {elapsed:.1?} (budget {SMOKE_BUDGET:?})"
        ),
    )
}

fn main() {
    let fz = fuzz();
    let results = [
        ("AC1 golden explicit pair", golden()),
        (
            "AC2 oracle equivalence",
            outcome(
                fz.mismatches.is_empty() && fz.elapsed < FUZZ_BUDGET,
                format!(
                    "{} instances, {} degree checks, {} mismatches {:?}, {:?} (budget {FUZZ_BUDGET:?})",
                    fz.instances,
                    fz.degrees_checked,
                    fz.mismatches.len(),
                    fz.mismatches.iter().take(3).collect::<Vec<_>>(),
                    fz.elapsed
                ),
            ),
        ),
        (
            "AC3 triple ordering",
            outcome(
                fz.ordering_violations == 0,
                format!("{} triples, {} violations", fz.triples, fz.ordering_violations),
            ),
        ),
        ("AC4 subsampling monotonicity", subsets()),
        (
            "AC5 independence of B",
            outcome(
                fz.independence_failures.is_empty(),
                format!(
                    "{} instances, failures at seeds {:?}",
                    fz.instances, fz.independence_failures
                ),
            ),
        ),
        ("AC6 geometric sanity", geometric()),
        ("AC7 separating profile", profile()),
        ("AC8 k-medoids quality", medoids()),
        ("AC9 determinism", determinism()),
        ("AC10 performance smoke", smoke()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "{} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
