//! Minimal deterministic SVG renderers for sweep results.
//!
//! One-axis sweeps render as a polyline, two-axis sweeps as a color-mapped
//! heatmap (blue = low, red = high, grey = failed row).  Output is plain
//! text assembled with fixed-precision coordinates and no timestamps, so a
//! given result always renders to identical bytes.

use crate::error::{Error, Result};
use crate::sweep::SweepResult;

/// Rendering style; must match the sweep's axis count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SvgKind {
    /// Metric against the single axis.
    Line,
    /// Heatmap over the two axes.
    Surface,
}

impl SvgKind {
    /// The natural kind for a result: lines for one axis, heatmaps for two.
    pub fn for_result(result: &SweepResult) -> SvgKind {
        if result.axis_counts.len() == 2 {
            SvgKind::Surface
        } else {
            SvgKind::Line
        }
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 50.0;

fn metric_index(result: &SweepResult, metric: &str) -> Result<usize> {
    result
        .metric_names
        .iter()
        .position(|&m| m == metric)
        .ok_or_else(|| {
            Error::Validation(format!(
                "metric `{metric}` is not in this sweep (has: {})",
                result.metric_names.join(", ")
            ))
        })
}

fn finite_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        if v.is_finite() {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if lo > hi {
        // Nothing finite at all; pick an arbitrary fixed range.
        (0.0, 1.0)
    } else {
        (lo, hi)
    }
}

/// Maps `v` in `[lo, hi]` to `[0, 1]`; a constant column maps to 1/2.
fn unit(v: f64, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        (v - lo) / (hi - lo)
    } else {
        0.5
    }
}

fn heat_color(t: f64) -> String {
    let r = (255.0 * t).round() as u8;
    let b = (255.0 * (1.0 - t)).round() as u8;
    format!("rgb({r},0,{b})")
}

/// Renders `metric` from `result` as a self-contained SVG document.
pub fn render_svg(result: &SweepResult, kind: SvgKind, metric: &str) -> Result<String> {
    let axes = result.axis_counts.len();
    match (kind, axes) {
        (SvgKind::Line, 1) => render_line(result, metric),
        (SvgKind::Surface, 2) => render_surface(result, metric),
        (SvgKind::Line, n) => Err(Error::UnsupportedKind { kind: "line", axes: n }),
        (SvgKind::Surface, n) => Err(Error::UnsupportedKind { kind: "surface", axes: n }),
    }
}

fn document(body: &str, title: &str) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{tx}\" y=\"20\" text-anchor=\"middle\" ",
            "font-family=\"monospace\" font-size=\"14\">{title}</text>\n",
            "{body}</svg>\n"
        ),
        w = WIDTH,
        h = HEIGHT,
        tx = WIDTH / 2.0,
        title = title,
        body = body,
    )
}

fn render_line(result: &SweepResult, metric: &str) -> Result<String> {
    let col = metric_index(result, metric)?;
    let (x_lo, x_hi) = finite_range(result.rows.iter().map(|r| r.axis_values[0]));
    let (y_lo, y_hi) = finite_range(result.rows.iter().map(|r| r.values[col]));
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;

    let mut points = String::new();
    for row in &result.rows {
        let v = row.values[col];
        if !v.is_finite() {
            continue;
        }
        let x = MARGIN + unit(row.axis_values[0], x_lo, x_hi) * plot_w;
        let y = HEIGHT - MARGIN - unit(v, y_lo, y_hi) * plot_h;
        if !points.is_empty() {
            points.push(' ');
        }
        points.push_str(&format!("{x:.2},{y:.2}"));
    }

    let mut body = String::new();
    body.push_str(&format!(
        "<rect x=\"{m}\" y=\"{m}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"black\"/>\n",
        m = MARGIN,
    ));
    body.push_str(&format!(
        "<polyline points=\"{points}\" fill=\"none\" stroke=\"rgb(178,0,77)\" \
         stroke-width=\"1.5\"/>\n"
    ));
    body.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" text-anchor=\"middle\" font-family=\"monospace\" \
         font-size=\"12\">{name}</text>\n",
        x = WIDTH / 2.0,
        y = HEIGHT - 12.0,
        name = result.axis_names[0],
    ));
    Ok(document(&body, &format!("{metric} by {}", result.axis_names[0])))
}

fn render_surface(result: &SweepResult, metric: &str) -> Result<String> {
    let col = metric_index(result, metric)?;
    let rows_n = result.axis_counts[0];
    let cols_n = result.axis_counts[1];
    if rows_n * cols_n != result.rows.len() {
        return Err(Error::Validation(format!(
            "sweep shape {rows_n}x{cols_n} does not match {} rows",
            result.rows.len()
        )));
    }
    let (lo, hi) = finite_range(result.rows.iter().map(|r| r.values[col]));
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let cell_w = plot_w / cols_n as f64;
    let cell_h = plot_h / rows_n as f64;

    let mut body = String::new();
    for (idx, row) in result.rows.iter().enumerate() {
        let i = idx / cols_n; // first (slow) axis
        let j = idx % cols_n; // second (fast) axis
        let v = row.values[col];
        let fill = if v.is_finite() {
            heat_color(unit(v, lo, hi))
        } else {
            "rgb(128,128,128)".to_string()
        };
        let x = MARGIN + j as f64 * cell_w;
        let y = HEIGHT - MARGIN - (i + 1) as f64 * cell_h;
        body.push_str(&format!(
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{cell_w:.2}\" height=\"{cell_h:.2}\" \
             fill=\"{fill}\"/>\n"
        ));
    }
    body.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" text-anchor=\"middle\" font-family=\"monospace\" \
         font-size=\"12\">{name}</text>\n",
        x = WIDTH / 2.0,
        y = HEIGHT - 12.0,
        name = result.axis_names[1],
    ));
    body.push_str(&format!(
        "<text x=\"16\" y=\"{y}\" text-anchor=\"middle\" font-family=\"monospace\" \
         font-size=\"12\" transform=\"rotate(-90 16 {y})\">{name}</text>\n",
        y = HEIGHT / 2.0,
        name = result.axis_names[0],
    ));
    Ok(document(
        &body,
        &format!(
            "{metric} over {} x {}",
            result.axis_names[0], result.axis_names[1]
        ),
    ))
}
