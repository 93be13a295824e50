//! SVG rendering of mixup barcodes and of matrices (pairwise tables and
//! profiles).
//!
//! Each bar is drawn as its image sub-bar `[b, d')` in the light color
//! followed by its mixup sub-bar `[d', d)` in the dark color. Output is a
//! pure function of the input and the style.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::reduce::ValueTriple;
use crate::stats::MixupBarcode;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotStyle {
    pub width: f64,
    pub bar_height: f64,
    pub bar_gap: f64,
    pub margin: f64,
    pub light: String,
    pub dark: String,
    pub ticks: usize,
}

impl Default for PlotStyle {
    fn default() -> Self {
        PlotStyle {
            width: 640.0,
            bar_height: 6.0,
            bar_gap: 3.0,
            margin: 40.0,
            light: "#9ecae1".into(),
            dark: "#08306b".into(),
            ticks: 5,
        }
    }
}

fn fmt_num(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Bars sorted by birth, then by persistence descending.
fn sorted_bars(bc: &MixupBarcode) -> Result<Vec<ValueTriple>> {
    let mut bars = bc.clamped()?;
    bars.sort_by(|x, y| {
        x.birth
            .total_cmp(&y.birth)
            .then((y.death - y.birth).total_cmp(&(x.death - x.birth)))
            .then(x.death_img.total_cmp(&y.death_img))
    });
    Ok(bars)
}

fn panel(
    out: &mut String,
    bc: &MixupBarcode,
    style: &PlotStyle,
    top: f64,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    let bars = sorted_bars(bc)?;
    let plot_w = style.width - 2.0 * style.margin;
    let span = if hi > lo { hi - lo } else { 1.0 };
    let x = |v: f64| style.margin + (v - lo) / span * plot_w;
    let step = style.bar_height + style.bar_gap;

    writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" font-family="sans-serif">H{}</text>"#,
        fmt_num(style.margin),
        fmt_num(top + 12.0),
        bc.degree
    )
    .unwrap();
    let mut y = top + 20.0;
    for t in &bars {
        for (from, to, color) in [
            (t.birth, t.death_img, &style.light),
            (t.death_img, t.death, &style.dark),
        ] {
            if to > from {
                writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                    fmt_num(x(from)),
                    fmt_num(y),
                    fmt_num(x(to) - x(from)),
                    fmt_num(style.bar_height),
                    color
                )
                .unwrap();
            }
        }
        y += step;
    }
    // axis
    let axis_y = y + 4.0;
    writeln!(
        out,
        r#"<line x1="{}" y1="{ay}" x2="{}" y2="{ay}" stroke="black" stroke-width="1"/>"#,
        fmt_num(x(lo)),
        fmt_num(x(lo + span)),
        ay = fmt_num(axis_y)
    )
    .unwrap();
    let ticks = style.ticks.max(1);
    for i in 0..=ticks {
        let v = lo + span * i as f64 / ticks as f64;
        writeln!(
            out,
            r#"<line x1="{tx}" y1="{}" x2="{tx}" y2="{}" stroke="black" stroke-width="1"/>"#,
            fmt_num(axis_y),
            fmt_num(axis_y + 4.0),
            tx = fmt_num(x(v))
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10" font-family="sans-serif" text-anchor="middle">{}</text>"#,
            fmt_num(x(v)),
            fmt_num(axis_y + 16.0),
            fmt_num(v)
        )
        .unwrap();
    }
    Ok(axis_y + 24.0)
}

fn value_range(barcodes: &[MixupBarcode]) -> Result<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for bc in barcodes {
        for t in bc.clamped()? {
            lo = lo.min(t.birth);
            hi = hi.max(t.death);
        }
    }
    if lo > hi {
        Ok((0.0, 1.0))
    } else {
        Ok((lo.min(0.0), hi))
    }
}

/// Renders one barcode as an SVG document.
pub fn plot_mixup_barcode(bc: &MixupBarcode, style: &PlotStyle) -> Result<String> {
    plot_mixup_barcodes(std::slice::from_ref(bc), style)
}

/// Renders several barcodes as stacked panels sharing one value axis.
pub fn plot_mixup_barcodes(barcodes: &[MixupBarcode], style: &PlotStyle) -> Result<String> {
    let (lo, hi) = value_range(barcodes)?;
    let mut body = String::new();
    let mut top = style.margin / 2.0;
    for bc in barcodes {
        top = panel(&mut body, bc, style, top, lo, hi)?;
    }
    Ok(wrap(style.width, top + style.margin / 2.0, &body))
}

fn wrap(width: f64, height: f64, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{body}</svg>\n",
        w = fmt_num(width),
        h = fmt_num(height),
    )
}

/// Renders a matrix as a grayscale heatmap scaled to its maximum entry.
/// Rows run top to bottom.
pub fn plot_matrix(
    values: &[Vec<f64>],
    row_labels: &[String],
    col_labels: &[String],
    title: &str,
) -> String {
    let cell = 36.0;
    let left = 60.0;
    let top = 40.0;
    let rows = values.len();
    let cols = values.first().map_or(0, Vec::len);
    let max = values
        .iter()
        .flatten()
        .copied()
        .filter(|v| v.is_finite())
        .fold(0.0f64, f64::max);
    let mut body = String::new();
    writeln!(
        body,
        r#"<text x="{}" y="20" font-size="12" font-family="sans-serif">{}</text>"#,
        fmt_num(left),
        escape(title)
    )
    .unwrap();
    for (i, row) in values.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let shade = if max > 0.0 {
                255.0 * (1.0 - v / max)
            } else {
                255.0
            };
            let g = shade.round().clamp(0.0, 255.0) as u8;
            writeln!(
                body,
                r##"<rect x="{}" y="{}" width="{c}" height="{c}" fill="#{g:02x}{g:02x}{g:02x}" stroke="#888888"><title>{}</title></rect>"##,
                fmt_num(left + j as f64 * cell),
                fmt_num(top + i as f64 * cell),
                fmt_num(v),
                c = fmt_num(cell),
            )
            .unwrap();
        }
    }
    for (i, l) in row_labels.iter().enumerate() {
        writeln!(
            body,
            r#"<text x="{}" y="{}" font-size="10" font-family="sans-serif" text-anchor="end">{}</text>"#,
            fmt_num(left - 6.0),
            fmt_num(top + (i as f64 + 0.6) * cell),
            escape(l)
        )
        .unwrap();
    }
    for (j, l) in col_labels.iter().enumerate() {
        writeln!(
            body,
            r#"<text x="{}" y="{}" font-size="10" font-family="sans-serif" text-anchor="middle">{}</text>"#,
            fmt_num(left + (j as f64 + 0.5) * cell),
            fmt_num(top + rows as f64 * cell + 14.0),
            escape(l)
        )
        .unwrap();
    }
    wrap(
        left + cols as f64 * cell + 20.0,
        top + rows as f64 * cell + 30.0,
        &body,
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
