//! Table emitters: full-precision CSV, a minimal SVG line chart, and the
//! run summary.

use std::fmt::Write as _;
use std::path::Path;

use cv_metrology::SweepTable;

use crate::config::VariantsSection;
use crate::error::{CliError, Result};

/// Serialize one numeric cell with 17 significant digits so the value parses
/// back bit-exactly; absent (degenerate) cells stay empty.
fn cell(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.16e}"),
        None => String::new(),
    }
}

/// RFC-4180-style CSV: header row, '.' decimals, LF line endings.
pub fn csv_string(table: &SweepTable) -> Result<String> {
    if table.rows.is_empty() {
        return Err(CliError::Validation("cannot emit an empty table".into()));
    }
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let line: Vec<String> = row.iter().map(|c| cell(*c)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Drop column families the config toggled off. Coordinate columns stay.
pub fn filter_columns(table: &SweepTable, v: &VariantsSection) -> SweepTable {
    let keep = |name: &str| -> bool {
        if name.starts_with("loss") {
            true
        } else if name == "db_rel_snl" {
            v.with_opa && v.snl
        } else if name.ends_with("_noopa") {
            v.without_opa
        } else if name.ends_with("_opa") {
            v.with_opa
        } else if name.ends_with("_snl") {
            v.snl
        } else if name.starts_with("sigma_eq") || name.ends_with("_printed") {
            v.as_printed
        } else {
            true
        }
    };
    let kept: Vec<usize> = (0..table.columns.len())
        .filter(|&i| keep(&table.columns[i]))
        .collect();
    SweepTable {
        columns: kept.iter().map(|&i| table.columns[i].clone()).collect(),
        rows: table
            .rows
            .iter()
            .map(|row| kept.iter().map(|&i| row[i]).collect())
            .collect(),
        warnings: table.warnings.clone(),
    }
}

const PALETTE: &[&str] = &[
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

/// Column names plotted as curves, in preference order.
const SERIES_PREFERENCE: &[&str] = &[
    "sigma_opa",
    "sigma_noopa",
    "sigma_snl",
    "sigma_eq11",
    "sigma_ave_opa",
    "sigma_ave_noopa",
    "sigma_ave_snl",
    "sigma_ave_printed",
    "sigma1_opa",
    "sigma1_noopa",
    "sigma1_snl",
];

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
}

fn one_axis_series(table: &SweepTable) -> Vec<Series> {
    let mut series = Vec::new();
    for name in SERIES_PREFERENCE {
        if let Some(col) = table.column_index(name) {
            let points: Vec<(f64, f64)> = table
                .rows
                .iter()
                .filter_map(|row| match (row[0], row[col]) {
                    (Some(x), Some(y)) => Some((x, y)),
                    _ => None,
                })
                .collect();
            if !points.is_empty() {
                series.push(Series { label: (*name).to_owned(), points });
            }
        }
    }
    series
}

/// For two coordinate axes, plot σ_ave (amplified) against the first loss,
/// one curve per second-axis value.
fn two_axis_series(table: &SweepTable) -> Vec<Series> {
    let col = match table.column_index("sigma_ave_opa") {
        Some(c) => c,
        None => return Vec::new(),
    };
    let mut series: Vec<Series> = Vec::new();
    for row in &table.rows {
        let (Some(x), Some(slice), y) = (row[0], row[1], row[col]) else {
            continue;
        };
        let label = format!("loss2={slice:.2}");
        if series.last().map(|s| s.label != label).unwrap_or(true) {
            series.push(Series { label, points: Vec::new() });
        }
        if let Some(y) = y {
            series.last_mut().unwrap().points.push((x, y));
        }
    }
    // Row order is loss1-major, so rebuild per-slice curves.
    let mut by_slice: Vec<Series> = Vec::new();
    for s in series {
        match by_slice.iter_mut().find(|t| t.label == s.label) {
            Some(t) => t.points.extend(s.points),
            None => by_slice.push(s),
        }
    }
    for s in &mut by_slice {
        s.points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    by_slice.truncate(8);
    by_slice
}

/// A minimal line chart: labeled axes (loss vs σ), optional log-scale σ.
pub fn svg_string(table: &SweepTable, log_scale: bool) -> Result<String> {
    if table.rows.is_empty() {
        return Err(CliError::Validation("cannot emit an empty table".into()));
    }
    let two_axis = table.columns.get(1).map(|c| c == "loss2").unwrap_or(false);
    let mut series = if two_axis { two_axis_series(table) } else { one_axis_series(table) };
    if log_scale {
        for s in &mut series {
            s.points.retain(|p| p.1 > 0.0);
        }
    }
    series.retain(|s| !s.points.is_empty());
    if series.is_empty() {
        return Err(CliError::Validation("no plottable series in table".into()));
    }

    let (width, height) = (860.0, 540.0);
    let (left, right, top, bottom) = (75.0, 190.0, 25.0, 55.0);
    let (pw, ph) = (width - left - right, height - top - bottom);
    let ys = |v: f64| if log_scale { v.log10() } else { v };

    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for s in &series {
        for &(x, y) in &s.points {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(ys(y));
            ymax = ymax.max(ys(y));
        }
    }
    if xmax == xmin {
        xmax = xmin + 1.0;
    }
    if ymax == ymin {
        ymax = ymin + 1.0;
    }
    let px = |x: f64| left + (x - xmin) / (xmax - xmin) * pw;
    let py = |y: f64| top + (ymax - ys(y)) / (ymax - ymin) * ph;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<g fill="none" stroke="black"><path d="M {left} {top} V {y0} H {x1}"/></g>"#,
        y0 = top + ph,
        x1 = left + pw,
    );

    for i in 0..=5 {
        let fx = xmin + (xmax - xmin) * i as f64 / 5.0;
        let x = px(fx);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.1}" y1="{y0}" x2="{x:.1}" y2="{y1}" stroke="black"/><text x="{x:.1}" y="{yt}" font-size="12" text-anchor="middle">{fx:.2}</text>"#,
            y0 = top + ph,
            y1 = top + ph + 5.0,
            yt = top + ph + 20.0,
        );
        let fy = ymin + (ymax - ymin) * i as f64 / 5.0;
        let yy = top + ph - ph * i as f64 / 5.0;
        let label = if log_scale { format!("{:.3}", 10f64.powf(fy)) } else { format!("{fy:.3}") };
        let _ = writeln!(
            svg,
            r#"<line x1="{x0}" y1="{yy:.1}" x2="{x1}" y2="{yy:.1}" stroke="black"/><text x="{xt}" y="{yt:.1}" font-size="12" text-anchor="end">{label}</text>"#,
            x0 = left - 5.0,
            x1 = left,
            xt = left - 8.0,
            yt = yy + 4.0,
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{x:.1}" y="{y:.1}" font-size="14" text-anchor="middle">loss</text>"#,
        x = left + pw / 2.0,
        y = height - 12.0,
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{y:.1}" font-size="14" text-anchor="middle" transform="rotate(-90 18 {y:.1})">sigma{log}</text>"#,
        y = top + ph / 2.0,
        log = if log_scale { " (log scale)" } else { "" },
    );

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let path: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.8" points="{}"/>"#,
            path.join(" ")
        );
        let ly = top + 16.0 * i as f64 + 8.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{x0}" y1="{ly:.1}" x2="{x1}" y2="{ly:.1}" stroke="{color}" stroke-width="3"/><text x="{xt}" y="{yt:.1}" font-size="12">{label}</text>"#,
            x0 = left + pw + 12.0,
            x1 = left + pw + 36.0,
            xt = left + pw + 42.0,
            yt = ly + 4.0,
            label = s.label,
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// First grid loss at which the unamplified curve rises above the shot-noise
/// reference, using the per-phase-1 columns when present.
pub fn crossover_loss(table: &SweepTable) -> Option<f64> {
    let loss = table.column_index("loss")?;
    let (noopa, snl) = match (table.column_index("sigma1_noopa"), table.column_index("sigma1_snl")) {
        (Some(n), Some(s)) => (n, s),
        _ => (table.column_index("sigma_noopa")?, table.column_index("sigma_snl")?),
    };
    table.rows.iter().find_map(|row| match (row[loss], row[noopa], row[snl]) {
        (Some(l), Some(n), Some(s)) if n > s => Some(l),
        _ => None,
    })
}

/// Per-column min/max plus the crossover, printed after a run.
pub fn summary(table: &SweepTable) -> String {
    let mut out = String::new();
    for (i, name) in table.columns.iter().enumerate() {
        if name.starts_with("loss") {
            continue;
        }
        let values: Vec<f64> = table.rows.iter().filter_map(|r| r[i]).collect();
        if values.is_empty() {
            let _ = writeln!(out, "{name}: no finite values");
            continue;
        }
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let _ = writeln!(out, "{name}: min={min:.6} max={max:.6}");
    }
    if let Some(l) = crossover_loss(table) {
        let _ = writeln!(out, "unamplified curve crosses the shot-noise reference at loss={l:.3}");
    }
    if !table.warnings.is_empty() {
        let _ = writeln!(out, "warnings: {}", table.warnings.len());
    }
    out
}
