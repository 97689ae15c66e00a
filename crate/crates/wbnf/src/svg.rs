//! Minimal SVG charts of sweep tables. CSV is the data contract; these are a
//! quick visual check.

use std::fmt::Write as _;

use crate::commands::Figure;
use crate::table::SweepTable;

const W: f64 = 640.0;
const H: f64 = 420.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Renders the chart that fits `figure`, or `None` if the table is empty.
pub fn render(figure: Figure, table: &SweepTable) -> Option<String> {
    if table.rows().is_empty() {
        return None;
    }
    let cols = table.columns();
    let last = cols.len() - 1;
    match figure {
        Figure::GainSurface => Some(heatmap(table, 0, 1, 2)),
        Figure::GainCuts => {
            // Held coordinate is gamma1 when fixed_axis = 1; plot against the other one.
            let held = |r: &[f64]| if r[0] == 1.0 { r[1] } else { r[2] };
            let free = |r: &[f64]| if r[0] == 1.0 { r[2] } else { r[1] };
            Some(line_chart(
                table,
                &|r| vec![r[0], held(r)],
                &free,
                last,
                "free gamma coordinate",
            ))
        }
        Figure::Contours => Some(scatter(table, 1, 2, 0)),
        Figure::BmaxCurve => Some(line_chart(
            table,
            &|r| vec![r[1], r[2]],
            &|r| r[0],
            3,
            &cols[0],
        )),
        Figure::BandMap => Some(line_chart(table, &|r| vec![r[1]], &|r| r[0], 2, &cols[0])),
    }
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn fit(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Self {
        let span = |it: &mut dyn Iterator<Item = f64>| {
            let (lo, hi) = it
                .filter(|v| v.is_finite())
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
                    (a.min(v), b.max(v))
                });
            if !lo.is_finite() {
                (0.0, 1.0)
            } else if lo == hi {
                (lo - 0.5, hi + 0.5)
            } else {
                (lo, hi)
            }
        };
        Self {
            x: span(&mut xs.clone()),
            y: span(&mut ys.clone()),
        }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x.0) / (self.x.1 - self.x.0) * (W - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        H - MARGIN - (y - self.y.0) / (self.y.1 - self.y.0) * (H - 2.0 * MARGIN)
    }
}

fn open(out: &mut String, f: &Frame, xlabel: &str, ylabel: &str) {
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">
<rect width="100%" height="100%" fill="white"/>
<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>
<text x="{}" y="{}" text-anchor="middle">{xlabel}</text>
<text x="14" y="{}" transform="rotate(-90 14 {})" text-anchor="middle">{ylabel}</text>
<text x="{MARGIN}" y="{}" text-anchor="start">{:.4}</text>
<text x="{}" y="{}" text-anchor="end">{:.4}</text>
<text x="{}" y="{}" text-anchor="end">{:.4}</text>
<text x="{}" y="{MARGIN}" text-anchor="end">{:.4}</text>
"#,
        W - 2.0 * MARGIN,
        H - 2.0 * MARGIN,
        W / 2.0,
        H - 12.0,
        H / 2.0,
        H / 2.0,
        H - MARGIN + 16.0,
        f.x.0,
        W - MARGIN,
        H - MARGIN + 16.0,
        f.x.1,
        MARGIN - 4.0,
        H - MARGIN,
        f.y.0,
        MARGIN - 4.0,
        f.y.1,
    );
}

/// One polyline per distinct `key`; non-finite `y` values break the line.
fn line_chart(
    t: &SweepTable,
    key: &dyn Fn(&[f64]) -> Vec<f64>,
    x: &dyn Fn(&[f64]) -> f64,
    yc: usize,
    xlabel: &str,
) -> String {
    let rows = t.rows();
    let f = Frame::fit(rows.iter().map(|r| x(r)), rows.iter().map(|r| r[yc]));
    let mut out = String::new();
    open(&mut out, &f, xlabel, &t.columns()[yc]);
    let mut series: Vec<(Vec<f64>, Vec<&Vec<f64>>)> = Vec::new();
    for r in rows {
        let k = key(r);
        match series.iter_mut().find(|(s, _)| *s == k) {
            Some((_, v)) => v.push(r),
            None => series.push((k, vec![r])),
        }
    }
    for (i, (_, pts)) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        for run in pts.split(|r| !r[yc].is_finite()).filter(|s| s.len() > 1) {
            let d: Vec<String> = run
                .iter()
                .map(|r| format!("{:.2},{:.2}", f.px(x(r)), f.py(r[yc])))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
                d.join(" ")
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn scatter(t: &SweepTable, xc: usize, yc: usize, group: usize) -> String {
    let rows = t.rows();
    let f = Frame::fit(rows.iter().map(|r| r[xc]), rows.iter().map(|r| r[yc]));
    let mut out = String::new();
    open(&mut out, &f, &t.columns()[xc], &t.columns()[yc]);
    let mut keys: Vec<f64> = Vec::new();
    for r in rows {
        let i = keys.iter().position(|&k| k == r[group]).unwrap_or_else(|| {
            keys.push(r[group]);
            keys.len() - 1
        });
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="1.5" fill="{}"/>"#,
            f.px(r[xc]),
            f.py(r[yc]),
            PALETTE[i % PALETTE.len()]
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Grey-scale cells, darker for lower values.
fn heatmap(t: &SweepTable, xc: usize, yc: usize, vc: usize) -> String {
    let rows = t.rows();
    let f = Frame::fit(rows.iter().map(|r| r[xc]), rows.iter().map(|r| r[yc]));
    let (vlo, vhi) = rows
        .iter()
        .map(|r| r[vc])
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        });
    let mut xs: Vec<f64> = rows.iter().map(|r| r[xc]).collect();
    let mut ys: Vec<f64> = rows.iter().map(|r| r[yc]).collect();
    for v in [&mut xs, &mut ys] {
        v.sort_by(f64::total_cmp);
        v.dedup();
    }
    let cw = (W - 2.0 * MARGIN) / xs.len() as f64;
    let ch = (H - 2.0 * MARGIN) / ys.len() as f64;
    let mut out = String::new();
    open(&mut out, &f, &t.columns()[xc], &t.columns()[yc]);
    for r in rows {
        let level = if vhi > vlo {
            (r[vc] - vlo) / (vhi - vlo)
        } else {
            1.0
        };
        let g = (level * 255.0).round() as u8;
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="rgb({g},{g},{g})"/>"#,
            f.px(r[xc]) - cw / 2.0,
            f.py(r[yc]) - ch / 2.0,
            cw,
            ch
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_well_formed_documents() {
        let mut t = SweepTable::new(["tau_db", "aperture_m", "carrier_hz", "bmax_hz"]);
        t.push_row(vec![-1.0, 0.34, 28e9, 7.4e8]);
        t.push_row(vec![-0.5, 0.34, 28e9, f64::INFINITY]);
        t.push_row(vec![-0.1, 0.34, 28e9, 2e8]);
        let svg = render(Figure::BmaxCurve, &t).unwrap();
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
        assert!(render(Figure::BandMap, &SweepTable::new(["a", "b", "c"])).is_none());
    }
}
