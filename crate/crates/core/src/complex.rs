//! Simplex-wise filtered pairs `L ↪ K`.
//!
//! A [`FilteredPair`] stores the cells of the ambient filtration `K` in their
//! total order, each tagged with whether it also belongs to `L`. Because `L`
//! carries the induced filtration, a cell of `L` enters `L` at the same index
//! at which it enters `K`, and the single list of cells is the source of truth
//! for every index used downstream.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How distances between points are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    Euclidean,
    SquaredEuclidean,
    Precomputed,
}

/// Symmetric matrix of pairwise distances, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds a matrix from full rows, checking symmetry, non-negativity and
    /// the zero diagonal.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidDistanceMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        let m = DistanceMatrix { n, data };
        m.validate()?;
        Ok(m)
    }

    /// Builds a matrix from its strictly lower triangle: row `i` holds the
    /// distances from point `i` to points `0..i`.
    pub fn from_lower_triangle(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = vec![0.0; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i {
                return Err(Error::InvalidDistanceMatrix(format!(
                    "lower-triangular row {i} has {} entries, expected {i}",
                    row.len()
                )));
            }
            for (j, &d) in row.iter().enumerate() {
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        let m = DistanceMatrix { n, data };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            if self.get(i, i) != 0.0 {
                return Err(Error::InvalidDistanceMatrix(format!(
                    "diagonal entry {i} is not zero"
                )));
            }
            for j in 0..i {
                let d = self.get(i, j);
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "entry ({i}, {j}) = {d} is not a finite non-negative distance"
                    )));
                }
                if d != self.get(j, i) {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "entries ({i}, {j}) and ({j}, {i}) differ"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// The submatrix on `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            if i >= self.n {
                return Err(Error::PointIndex {
                    index: i,
                    len: self.n,
                });
            }
        }
        let m = indices.len();
        let mut data = Vec::with_capacity(m * m);
        for &i in indices {
            for &j in indices {
                data.push(self.get(i, j));
            }
        }
        Ok(DistanceMatrix { n: m, data })
    }
}

/// A finite point cloud, either as coordinates with a metric or as a
/// precomputed finite metric space.
#[derive(Debug, Clone, PartialEq)]
pub enum PointCloud {
    Coordinates {
        points: Vec<Vec<f64>>,
        squared: bool,
    },
    Distances(DistanceMatrix),
}

impl PointCloud {
    /// Coordinate cloud; every point must have the same dimension and finite
    /// coordinates.
    pub fn new(points: Vec<Vec<f64>>, metric: Metric) -> Result<Self> {
        let squared = match metric {
            Metric::Euclidean => false,
            Metric::SquaredEuclidean => true,
            Metric::Precomputed => return Err(Error::MetricMismatch),
        };
        if let Some(first) = points.first() {
            let dim = first.len();
            if dim == 0 {
                return Err(Error::DimensionMismatch {
                    point: 0,
                    expected: 1,
                    found: 0,
                });
            }
            for (i, p) in points.iter().enumerate() {
                if p.len() != dim {
                    return Err(Error::DimensionMismatch {
                        point: i,
                        expected: dim,
                        found: p.len(),
                    });
                }
                if p.iter().any(|x| !x.is_finite()) {
                    return Err(Error::NonFinite { point: i });
                }
            }
        }
        Ok(PointCloud::Coordinates { points, squared })
    }

    pub fn euclidean(points: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(points, Metric::Euclidean)
    }

    pub fn from_distances(matrix: DistanceMatrix) -> Self {
        PointCloud::Distances(matrix)
    }

    pub fn metric(&self) -> Metric {
        match self {
            PointCloud::Coordinates { squared: false, .. } => Metric::Euclidean,
            PointCloud::Coordinates { squared: true, .. } => Metric::SquaredEuclidean,
            PointCloud::Distances(_) => Metric::Precomputed,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            PointCloud::Coordinates { points, .. } => points.len(),
            PointCloud::Distances(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Ambient dimension of a coordinate cloud; `None` for precomputed or
    /// empty clouds.
    pub fn dim(&self) -> Option<usize> {
        match self {
            PointCloud::Coordinates { points, .. } => points.first().map(Vec::len),
            PointCloud::Distances(_) => None,
        }
    }

    pub fn points(&self) -> Option<&[Vec<f64>]> {
        match self {
            PointCloud::Coordinates { points, .. } => Some(points),
            PointCloud::Distances(_) => None,
        }
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        match self {
            PointCloud::Coordinates { points, squared } => {
                point_distance(&points[i], &points[j], *squared)
            }
            PointCloud::Distances(m) => m.get(i, j),
        }
    }

    /// The sub-cloud on `indices`, in that order, with the same metric.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        match self {
            PointCloud::Coordinates { points, squared } => {
                let mut out = Vec::with_capacity(indices.len());
                for &i in indices {
                    let p = points.get(i).ok_or(Error::PointIndex {
                        index: i,
                        len: points.len(),
                    })?;
                    out.push(p.clone());
                }
                Ok(PointCloud::Coordinates {
                    points: out,
                    squared: *squared,
                })
            }
            PointCloud::Distances(m) => Ok(PointCloud::Distances(m.select(indices)?)),
        }
    }
}

fn point_distance(p: &[f64], q: &[f64], squared: bool) -> f64 {
    let s: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
    if squared {
        s
    } else {
        s.sqrt()
    }
}

/// Which side of the inclusion a cell lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Member {
    /// The cell belongs to `L` (and hence to `K`).
    L,
    /// The cell belongs to `K` only.
    KMinusL,
}

/// One cell of the ambient filtration `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    /// Index in `K`'s total order, 1-based.
    pub id: usize,
    pub dim: usize,
    pub value: f64,
    pub member: Member,
    /// Ids of the `(dim - 1)`-dimensional faces, ascending.
    pub boundary: Vec<usize>,
    /// Vertex indices for simplices built from point clouds (A first, then B).
    pub vertices: Option<Vec<usize>>,
}

impl Cell {
    pub fn in_l(&self) -> bool {
        self.member == Member::L
    }
}

/// A simplex-wise filtration of `K` with the induced filtration of `L`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FilteredPair {
    cells: Vec<Cell>,
    max_dim: Option<usize>,
}

impl FilteredPair {
    /// Validates and wraps cells that are already sorted by id.
    ///
    /// Ids must be strictly increasing; every face must precede its coface,
    /// have dimension one less, and not enter later by value.
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        let mut position: HashMap<usize, usize> = HashMap::with_capacity(cells.len());
        let mut prev: Option<(usize, f64)> = None;
        for (pos, cell) in cells.iter().enumerate() {
            if !cell.value.is_finite() {
                return Err(Error::NonFiniteValue { cell: cell.id });
            }
            if let Some((pid, pval)) = prev {
                if cell.id == pid {
                    return Err(Error::DuplicateId(cell.id));
                }
                if cell.id < pid {
                    return Err(Error::Parse {
                        line: pos + 1,
                        message: format!("cell ids out of order at {}", cell.id),
                    });
                }
                if cell.value < pval {
                    return Err(Error::NonMonotoneValue { cell: cell.id });
                }
            }
            for &face in &cell.boundary {
                if face >= cell.id {
                    return Err(Error::ForwardReference {
                        cell: cell.id,
                        face,
                    });
                }
                let &fpos = position.get(&face).ok_or(Error::UnknownFace {
                    cell: cell.id,
                    face,
                })?;
                let f = &cells[fpos];
                if f.dim + 1 != cell.dim {
                    return Err(Error::FaceDimension {
                        cell: cell.id,
                        dim: cell.dim,
                        face,
                        face_dim: f.dim,
                    });
                }
                if f.value > cell.value {
                    return Err(Error::FaceValue {
                        cell: cell.id,
                        face,
                    });
                }
            }
            position.insert(cell.id, pos);
            prev = Some((cell.id, cell.value));
        }
        let max_dim = cells.iter().map(|c| c.dim).max();
        Ok(FilteredPair { cells, max_dim })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Number of cells.
    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.max_dim
    }

    /// Position of the cell with the given id.
    pub fn position(&self, id: usize) -> Option<usize> {
        self.cells.binary_search_by_key(&id, |c| c.id).ok()
    }

    pub fn cell(&self, id: usize) -> Option<&Cell> {
        self.position(id).map(|p| &self.cells[p])
    }

    /// Filtration value of the cell with the given id.
    pub fn value(&self, id: usize) -> Result<f64> {
        self.cell(id).map(|c| c.value).ok_or(Error::UnknownCell(id))
    }

    /// Checks that `L` is closed under taking faces.
    pub fn check_subcomplex(&self) -> Result<()> {
        for cell in self.cells.iter().filter(|c| c.in_l()) {
            for &face in &cell.boundary {
                let f = self.cell(face).ok_or(Error::UnknownFace {
                    cell: cell.id,
                    face,
                })?;
                if !f.in_l() {
                    return Err(Error::NotSubcomplex {
                        cell: cell.id,
                        face,
                    });
                }
            }
        }
        Ok(())
    }

    /// Number of cells in `K ∖ L`.
    pub fn count_outside_l(&self) -> usize {
        self.cells.iter().filter(|c| !c.in_l()).count()
    }
}

/// The sub-filtration of `L`, keeping the original ids as labels.
pub fn restrict_to_l(fp: &FilteredPair) -> Result<FilteredPair> {
    fp.check_subcomplex()?;
    let cells = fp.cells.iter().filter(|c| c.in_l()).cloned().collect();
    FilteredPair::new(cells)
}

/// Vietoris–Rips filtrations `L = VR(A)` and `K = VR(A ∪ B)` on a shared
/// sequence of radii.
///
/// Simplices up to dimension `k_max + 1` with diameter at most `r_max` are
/// included. Vertices `0..|A|` come from `a`, the rest from `b`.
pub fn build_rips_pair(
    a: &PointCloud,
    b: &PointCloud,
    r_max: f64,
    k_max: usize,
) -> Result<FilteredPair> {
    if a.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let (pa, pb, squared) = match (a, b) {
        (
            PointCloud::Coordinates {
                points: pa,
                squared: sa,
            },
            PointCloud::Coordinates {
                points: pb,
                squared: sb,
            },
        ) => {
            if sa != sb {
                return Err(Error::MetricMismatch);
            }
            (pa, pb, *sa)
        }
        _ => return Err(Error::PrecomputedPair),
    };
    let dim = pa[0].len();
    if let Some(q) = pb.first() {
        if q.len() != dim {
            return Err(Error::DimensionMismatch {
                point: pa.len(),
                expected: dim,
                found: q.len(),
            });
        }
    }
    let all: Vec<&Vec<f64>> = pa.iter().chain(pb.iter()).collect();
    let n = all.len();
    let dist = |i: usize, j: usize| point_distance(all[i], all[j], squared);
    build_rips(n, pa.len(), dist, r_max, k_max)
}

/// Like [`build_rips_pair`], with `A` and `B` given as index sets into one
/// cloud. Works for every metric, including precomputed distances.
///
/// The vertex numbering of the result lists `a_indices` first, then
/// `b_indices`.
pub fn build_rips_pair_within(
    cloud: &PointCloud,
    a_indices: &[usize],
    b_indices: &[usize],
    r_max: f64,
    k_max: usize,
) -> Result<FilteredPair> {
    if a_indices.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let order: Vec<usize> = a_indices.iter().chain(b_indices).copied().collect();
    for &i in &order {
        if i >= cloud.len() {
            return Err(Error::PointIndex {
                index: i,
                len: cloud.len(),
            });
        }
    }
    let dist = |i: usize, j: usize| cloud.distance(order[i], order[j]);
    build_rips(order.len(), a_indices.len(), dist, r_max, k_max)
}

struct RawSimplex {
    vertices: Vec<usize>,
    value: f64,
    member: Member,
}

fn compare_simplices(x: &RawSimplex, y: &RawSimplex) -> Ordering {
    x.value
        .total_cmp(&y.value)
        .then(x.vertices.len().cmp(&y.vertices.len()))
        .then(x.member.cmp(&y.member))
        .then_with(|| x.vertices.cmp(&y.vertices))
}

fn build_rips(
    n: usize,
    n_a: usize,
    dist: impl Fn(usize, usize) -> f64,
    r_max: f64,
    k_max: usize,
) -> Result<FilteredPair> {
    if !r_max.is_finite() || r_max < 0.0 {
        return Err(Error::InvalidRadius(r_max));
    }
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..i {
            let v = dist(i, j);
            if !v.is_finite() {
                return Err(Error::NonFinite { point: i });
            }
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    // Higher neighbors within the threshold, ascending.
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|i| ((i + 1)..n).filter(|&j| d[i * n + j] <= r_max).collect())
        .collect();

    let max_vertices = k_max + 2;
    let mut raw = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(max_vertices);
    for v in 0..n {
        stack.push(v);
        extend_cliques(
            &d,
            n,
            n_a,
            &neighbors,
            &mut stack,
            &neighbors[v],
            0.0,
            max_vertices,
            &mut raw,
        );
        stack.pop();
    }
    raw.sort_by(compare_simplices);

    let mut id_of: HashMap<&[usize], usize> = HashMap::with_capacity(raw.len());
    let mut cells = Vec::with_capacity(raw.len());
    for (pos, s) in raw.iter().enumerate() {
        let id = pos + 1;
        let mut boundary = Vec::with_capacity(s.vertices.len());
        if s.vertices.len() > 1 {
            let mut face = Vec::with_capacity(s.vertices.len() - 1);
            for skip in 0..s.vertices.len() {
                face.clear();
                face.extend(
                    s.vertices
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v),
                );
                boundary.push(id_of[face.as_slice()]);
            }
            boundary.sort_unstable();
        }
        id_of.insert(&s.vertices, id);
        cells.push(Cell {
            id,
            dim: s.vertices.len() - 1,
            value: s.value,
            member: s.member,
            boundary,
            vertices: Some(s.vertices.clone()),
        });
    }
    let max_dim = cells.iter().map(|c| c.dim).max();
    Ok(FilteredPair { cells, max_dim })
}

#[allow(clippy::too_many_arguments)]
fn extend_cliques(
    d: &[f64],
    n: usize,
    n_a: usize,
    neighbors: &[Vec<usize>],
    stack: &mut Vec<usize>,
    candidates: &[usize],
    value: f64,
    max_vertices: usize,
    out: &mut Vec<RawSimplex>,
) {
    let member = if stack.iter().all(|&v| v < n_a) {
        Member::L
    } else {
        Member::KMinusL
    };
    out.push(RawSimplex {
        vertices: stack.clone(),
        value,
        member,
    });
    if stack.len() == max_vertices {
        return;
    }
    for (ci, &w) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[ci + 1..]
            .iter()
            .copied()
            .filter(|&u| neighbors[w].binary_search(&u).is_ok())
            .collect();
        let diameter = stack.iter().map(|&u| d[u * n + w]).fold(value, f64::max);
        stack.push(w);
        extend_cliques(
            d,
            n,
            n_a,
            neighbors,
            stack,
            &next,
            diameter,
            max_vertices,
            out,
        );
        stack.pop();
    }
}

/// Parses the explicit filtration format: one cell per line,
/// `id dim value member boundary_id...`, with `member` either `L` or `K`
/// (for `K ∖ L`). Blank lines and `#` comments are ignored.
pub fn parse_explicit_pair(text: &str) -> Result<FilteredPair> {
    let mut cells: Vec<(usize, Cell)> = Vec::new();
    for (lineno, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let line_no = lineno + 1;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let tokens: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() < 4 {
            return Err(err(format!(
                "expected `id dim value member [boundary...]`, got {} fields",
                tokens.len()
            )));
        }
        let id: usize = tokens[0]
            .parse()
            .map_err(|_| err(format!("bad id `{}`", tokens[0])))?;
        let dim: usize = tokens[1]
            .parse()
            .map_err(|_| err(format!("bad dimension `{}`", tokens[1])))?;
        let value: f64 = tokens[2]
            .parse()
            .map_err(|_| err(format!("bad value `{}`", tokens[2])))?;
        let member = match tokens[3] {
            "L" | "l" => Member::L,
            "K" | "k" => Member::KMinusL,
            other => return Err(err(format!("member must be L or K, got `{other}`"))),
        };
        let mut boundary = Vec::with_capacity(tokens.len() - 4);
        for t in &tokens[4..] {
            let f: usize = t.parse().map_err(|_| err(format!("bad face id `{t}`")))?;
            boundary.push(f);
        }
        boundary.sort_unstable();
        if boundary.windows(2).any(|w| w[0] == w[1]) {
            return Err(err(format!("cell {id} lists a face twice")));
        }
        cells.push((
            line_no,
            Cell {
                id,
                dim,
                value,
                member,
                boundary,
                vertices: None,
            },
        ));
    }
    cells.sort_by_key(|(_, c)| c.id);
    for w in cells.windows(2) {
        if w[0].1.id == w[1].1.id {
            return Err(Error::DuplicateId(w[0].1.id));
        }
    }
    let n = cells.len();
    if cells.iter().enumerate().any(|(i, (_, c))| c.id != i + 1) {
        return Err(Error::NonContiguousIds { n });
    }
    FilteredPair::new(cells.into_iter().map(|(_, c)| c).collect())
}

/// Serializes a pair in the explicit filtration format.
pub fn format_explicit_pair(fp: &FilteredPair) -> String {
    let mut out = String::new();
    for c in fp.cells() {
        out.push_str(&format!(
            "{} {} {:?} {}",
            c.id,
            c.dim,
            c.value,
            if c.in_l() { "L" } else { "K" }
        ));
        for f in &c.boundary {
            out.push_str(&format!(" {f}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const SIX_CELLS: &str = "\
# two circles a, b in L; two disks in K \\ L; cylinder and a disk in L
1 1 1 L
2 1 2 L
3 2 3 K 2
4 2 4 K 1
5 2 5 L 1 2
6 2 6 L 1
";

    fn square_center() -> (PointCloud, PointCloud) {
        let a = PointCloud::euclidean(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        let b = PointCloud::euclidean(vec![vec![0.5, 0.5]]).unwrap();
        (a, b)
    }

    #[test]
    fn single_point() {
        let a = PointCloud::euclidean(vec![vec![3.0, 4.0]]).unwrap();
        let b = PointCloud::euclidean(vec![]).unwrap();
        let fp = build_rips_pair(&a, &b, 1.0, 1).unwrap();
        assert_eq!(fp.n(), 1);
        let c = &fp.cells()[0];
        assert_eq!((c.dim, c.value, c.member), (0, 0.0, Member::L));
    }

    #[test]
    fn two_points_on_a_line() {
        let a = PointCloud::euclidean(vec![vec![0.0], vec![1.0]]).unwrap();
        let b = PointCloud::euclidean(vec![]).unwrap();
        let fp = build_rips_pair(&a, &b, 2.0, 1).unwrap();
        let summary: Vec<_> = fp
            .cells()
            .iter()
            .map(|c| (c.dim, c.value, c.member))
            .collect();
        assert_eq!(
            summary,
            vec![
                (0, 0.0, Member::L),
                (0, 0.0, Member::L),
                (1, 1.0, Member::L)
            ]
        );
        assert_eq!(fp.cells()[2].boundary, vec![1, 2]);
    }

    #[test]
    fn square_with_center_ordering() {
        let (a, b) = square_center();
        let fp = build_rips_pair(&a, &b, 2.0, 2).unwrap();
        let cells = fp.cells();
        // 5 vertices, 10 edges, 10 triangles, 5 tetrahedra
        assert_eq!(fp.n(), 30);
        assert!(cells[..5].iter().all(|c| c.dim == 0 && c.value == 0.0));
        assert_eq!(cells[4].member, Member::KMinusL);
        let half_diag = std::f64::consts::SQRT_2 / 2.0;
        for c in &cells[5..9] {
            assert_eq!(c.dim, 1);
            assert_eq!(c.value, half_diag);
            assert_eq!(c.member, Member::KMinusL);
            assert!(c.vertices.as_ref().unwrap().contains(&4));
        }
        for c in &cells[9..13] {
            assert_eq!((c.dim, c.value, c.member), (1, 1.0, Member::L));
        }
        // the four corner-corner-center triangles follow the side edges at value 1
        for c in &cells[13..17] {
            assert_eq!((c.dim, c.value, c.member), (2, 1.0, Member::KMinusL));
        }
        for w in cells.windows(2) {
            assert!(w[0].value <= w[1].value);
        }
        for c in cells {
            assert!(c.boundary.iter().all(|&f| f < c.id));
        }
    }

    #[test]
    fn rips_rejects_bad_input() {
        let a = PointCloud::euclidean(vec![vec![0.0, 0.0]]).unwrap();
        let b = PointCloud::euclidean(vec![vec![0.0, 0.0, 1.0]]).unwrap();
        assert!(matches!(
            build_rips_pair(&a, &b, 1.0, 1),
            Err(Error::DimensionMismatch { .. })
        ));
        let b = PointCloud::euclidean(vec![]).unwrap();
        assert!(matches!(
            build_rips_pair(&a, &b, -1.0, 1),
            Err(Error::InvalidRadius(_))
        ));
        assert!(matches!(
            PointCloud::euclidean(vec![vec![f64::NAN]]),
            Err(Error::NonFinite { point: 0 })
        ));
    }

    #[test]
    fn parse_six_cell() {
        let fp = parse_explicit_pair(SIX_CELLS).unwrap();
        assert_eq!(fp.n(), 6);
        let members: Vec<_> = fp.cells().iter().map(|c| c.member).collect();
        use Member::*;
        assert_eq!(members, vec![L, L, KMinusL, KMinusL, L, L]);
        assert_eq!(fp.cells()[4].boundary, vec![1, 2]);
        let again = parse_explicit_pair(&format_explicit_pair(&fp)).unwrap();
        assert_eq!(again, fp);
    }

    #[test]
    fn parse_empty_and_errors() {
        assert_eq!(parse_explicit_pair("").unwrap().n(), 0);
        assert_eq!(parse_explicit_pair("# nothing\n\n").unwrap().n(), 0);
        assert!(matches!(
            parse_explicit_pair("1 0 0 L\n2 1 1 L 3\n3 0 1 L\n"),
            Err(Error::ForwardReference { cell: 2, face: 3 })
        ));
        assert!(matches!(
            parse_explicit_pair("1 0 1 L\n2 0 0 L\n"),
            Err(Error::NonMonotoneValue { cell: 2 })
        ));
        assert!(matches!(
            parse_explicit_pair("1 0 0 L\n2 2 1 L 1\n"),
            Err(Error::FaceDimension { cell: 2, .. })
        ));
        assert!(matches!(
            parse_explicit_pair("1 0 0 L\n1 0 0 L\n"),
            Err(Error::DuplicateId(1))
        ));
        assert!(matches!(
            parse_explicit_pair("1 0 0 L\n3 0 0 L\n"),
            Err(Error::NonContiguousIds { .. })
        ));
        assert!(matches!(
            parse_explicit_pair("1 0 0 X\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn restrict_six_cell() {
        let fp = parse_explicit_pair(SIX_CELLS).unwrap();
        let l = restrict_to_l(&fp).unwrap();
        let ids: Vec<_> = l.cells().iter().map(|c| c.id).collect();
        assert_eq!(ids, vec![1, 2, 5, 6]);
    }

    #[test]
    fn restrict_rejects_non_subcomplex() {
        let fp = parse_explicit_pair("1 0 0 K\n2 0 0 L\n3 1 1 L 1 2\n").unwrap();
        assert!(matches!(
            restrict_to_l(&fp),
            Err(Error::NotSubcomplex { cell: 3, face: 1 })
        ));
    }

    #[test]
    fn restrict_square_center_matches_corners_only() {
        let (a, b) = square_center();
        let fp = build_rips_pair(&a, &b, 2.0, 2).unwrap();
        let l = restrict_to_l(&fp).unwrap();
        let none = PointCloud::euclidean(vec![]).unwrap();
        let alone = build_rips_pair(&a, &none, 2.0, 2).unwrap();
        assert_eq!(l.n(), alone.n());
        // 4 vertices, 6 edges, 4 triangles, 1 tetrahedron
        assert_eq!(l.n(), 15);
        for (x, y) in l.cells().iter().zip(alone.cells()) {
            assert_eq!(x.vertices, y.vertices);
            assert_eq!(x.value, y.value);
        }
    }

    #[test]
    fn precomputed_within() {
        let m = DistanceMatrix::from_lower_triangle(&[vec![], vec![1.0], vec![2.0, 1.5]]).unwrap();
        let x = PointCloud::from_distances(m);
        let fp = build_rips_pair_within(&x, &[0, 2], &[1], 3.0, 1).unwrap();
        let l: Vec<_> = fp
            .cells()
            .iter()
            .filter(|c| c.in_l())
            .map(|c| c.value)
            .collect();
        assert_eq!(l, vec![0.0, 0.0, 2.0]);
        assert!(matches!(
            DistanceMatrix::from_rows(vec![vec![0.0, 1.0], vec![2.0, 0.0]]),
            Err(Error::InvalidDistanceMatrix(_))
        ));
    }
}
