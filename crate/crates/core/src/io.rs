//! Text formats for point clouds and distance matrices.

use crate::complex::{DistanceMatrix, Metric, PointCloud};
use crate::error::{Error, Result};
use crate::stats::LabeledPointCloud;

fn numeric_rows(text: &str) -> Result<Vec<(usize, Vec<&str>)>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line
            .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        rows.push((i + 1, tokens));
    }
    // A leading header row is skipped when it is not numeric.
    if let Some((_, first)) = rows.first() {
        if first.iter().any(|t| t.parse::<f64>().is_err()) {
            rows.remove(0);
        }
    }
    Ok(rows)
}

fn parse_f64(line: usize, t: &str) -> Result<f64> {
    t.parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{t}` is not a number"),
    })
}

/// Coordinates per row, plus labels when the input is labelled.
pub type ParsedPoints = (Vec<Vec<f64>>, Option<Vec<i64>>);

/// Parses one point per row. With `labeled`, the final column holds an
/// integer label.
pub fn parse_points(text: &str, labeled: bool) -> Result<ParsedPoints> {
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (line, tokens) in numeric_rows(text)? {
        let coords = if labeled {
            let (last, rest) = tokens.split_last().ok_or(Error::Parse {
                line,
                message: "empty row".into(),
            })?;
            let label: i64 = last.parse().map_err(|_| Error::Parse {
                line,
                message: format!("label `{last}` is not an integer"),
            })?;
            labels.push(label);
            rest
        } else {
            &tokens[..]
        };
        points.push(
            coords
                .iter()
                .map(|t| parse_f64(line, t))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok((points, labeled.then_some(labels)))
}

/// Reads a coordinate cloud under the given metric.
pub fn parse_point_cloud(text: &str, metric: Metric) -> Result<PointCloud> {
    let (points, _) = parse_points(text, false)?;
    PointCloud::new(points, metric)
}

/// Reads a coordinate cloud whose last column is an integer label.
pub fn parse_labeled_cloud(text: &str, metric: Metric) -> Result<LabeledPointCloud> {
    let (points, labels) = parse_points(text, true)?;
    LabeledPointCloud::new(PointCloud::new(points, metric)?, labels.unwrap_or_default())
}

/// Reads a distance matrix given either as its strictly lower triangle
/// (row `i` lists distances to points `0..i`; the empty first row may be
/// omitted) or as the full square matrix.
pub fn parse_distance_matrix(text: &str) -> Result<DistanceMatrix> {
    let rows: Vec<Vec<f64>> = numeric_rows(text)?
        .into_iter()
        .map(|(line, tokens)| tokens.iter().map(|t| parse_f64(line, t)).collect())
        .collect::<Result<_>>()?;
    let n = rows.len();
    if n > 0 && rows.iter().all(|r| r.len() == n) && (n > 1 || rows[0] == [0.0]) {
        return DistanceMatrix::from_rows(rows);
    }
    let mut lower = rows;
    if lower.first().is_some_and(|r| !r.is_empty()) {
        lower.insert(0, Vec::new());
    }
    DistanceMatrix::from_lower_triangle(&lower)
}

/// Formats a cloud as CSV, one point per row.
pub fn format_points(points: &[Vec<f64>], labels: Option<&[i64]>) -> String {
    let mut out = String::new();
    for (i, p) in points.iter().enumerate() {
        let row: Vec<String> = p.iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&row.join(","));
        if let Some(l) = labels {
            out.push_str(&format!(",{}", l[i]));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_whitespace_points() {
        let (p, l) = parse_points("x,y\n0,1\n# c\n2 3\n", false).unwrap();
        assert_eq!(p, vec![vec![0.0, 1.0], vec![2.0, 3.0]]);
        assert!(l.is_none());
        let x = parse_labeled_cloud("0.5,1,7\n1,2,8\n", Metric::Euclidean).unwrap();
        assert_eq!(x.labels(), &[7, 8]);
        assert_eq!(x.cloud().dim(), Some(2));
        assert!(parse_labeled_cloud("0.5,1,2\n0.5,1,x\n", Metric::Euclidean).is_err());
        assert!(matches!(
            parse_point_cloud("1,2\n3\n", Metric::Euclidean),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lower_triangular_matrices() {
        let m = parse_distance_matrix("1\n2,3\n").unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.get(2, 1), 3.0);
        assert_eq!(m.get(0, 2), 2.0);
        let same = parse_distance_matrix("\n1\n2 3\n").unwrap();
        assert_eq!(m, same);
        let full = parse_distance_matrix("0,1,2\n1,0,3\n2,3,0\n").unwrap();
        assert_eq!(m, full);
        assert!(parse_distance_matrix("1\n2\n").is_err());
        assert!(parse_distance_matrix("-1\n").is_err());
    }
}
