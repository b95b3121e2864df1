//! Hand-written SVG plots of bargaining regions in the `(g, r)` plane.
//!
//! Mean-condition bounds are solid, variance-condition bounds dashed, and
//! the combined region is a shaded polygon. Gridlines are dotted.

use std::fmt::Write;

use crate::region::{Curve, RegionReport, RegionSlice};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 44.0;
const BOTTOM: f64 = 64.0;

struct Frame {
    g_min: f64,
    g_max: f64,
    r_max: f64,
}

impl Frame {
    fn x(&self, g: f64) -> f64 {
        LEFT + (g - self.g_min) / (self.g_max - self.g_min) * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, r: f64) -> f64 {
        TOP + (1.0 - r / self.r_max) * (HEIGHT - TOP - BOTTOM)
    }

    fn point(&self, g: f64, r: f64) -> String {
        format!("{:.2},{:.2}", self.x(g), self.y(r))
    }
}

fn ticks(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let first = (lo / step - 1e-9).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn fmt_tick(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    if s.starts_with("-0") && s.trim_start_matches(['-', '0', '.']).is_empty() {
        s[1..].to_string()
    } else {
        s
    }
}

/// Breaks a curve into drawable runs of finite values, clamped so that
/// steep sections stay inside a bounded box around the plot.
fn curve_runs(slices: &[RegionSlice], c: Curve, r_max: f64) -> Vec<Vec<(f64, f64)>> {
    let mut runs = Vec::new();
    let mut cur: Vec<(f64, f64)> = Vec::new();
    for s in slices {
        match s.curves.map(|b| b.get(c)) {
            Some(v) if v.is_finite() => cur.push((s.g, v.clamp(-r_max, 2.0 * r_max))),
            _ => {
                if cur.len() > 1 {
                    runs.push(std::mem::take(&mut cur));
                }
                cur.clear();
            }
        }
    }
    if cur.len() > 1 {
        runs.push(cur);
    }
    runs
}

fn region_polygons(slices: &[RegionSlice], r_max: f64) -> Vec<Vec<(f64, f64)>> {
    let mut polys = Vec::new();
    let mut run: Vec<(f64, f64, f64)> = Vec::new();
    let flush = |run: &mut Vec<(f64, f64, f64)>, polys: &mut Vec<Vec<(f64, f64)>>| {
        if run.len() > 1 {
            let mut pts: Vec<(f64, f64)> = run.iter().map(|&(g, _, hi)| (g, hi)).collect();
            pts.extend(run.iter().rev().map(|&(g, lo, _)| (g, lo)));
            polys.push(pts);
        }
        run.clear();
    };
    for s in slices {
        match s.combined.bounds() {
            Some((lo, hi)) if s.valid && lo <= r_max => run.push((s.g, lo, hi.min(r_max))),
            _ => flush(&mut run, &mut polys),
        }
    }
    flush(&mut run, &mut polys);
    polys
}

fn polyline(out: &mut String, f: &Frame, pts: &[(f64, f64)], dashed: bool) {
    let coords: Vec<String> = pts.iter().map(|&(g, r)| f.point(g, r)).collect();
    let dash = if dashed {
        r#" stroke-dasharray="7 5""#
    } else {
        ""
    };
    let _ = writeln!(
        out,
        r#"<polyline clip-path="url(#plot)" fill="none" stroke="black" stroke-width="1.5"{dash} points="{}"/>"#,
        coords.join(" ")
    );
}

/// Renders one region report. Variance curves are omitted when `σ = 0`.
pub fn region_svg(report: &RegionReport, g_min: f64, g_max: f64, title: &str) -> String {
    let f = Frame {
        g_min,
        g_max,
        r_max: report.clamp_r_max,
    };
    let (px0, px1) = (f.x(g_min), f.x(g_max));
    let (py0, py1) = (f.y(f.r_max), f.y(0.0));
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="monospace" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="plot"><rect x="{px0:.2}" y="{py0:.2}" width="{:.2}" height="{:.2}"/></clipPath></defs>"#,
        px1 - px0,
        py1 - py0
    );

    for poly in region_polygons(&report.slices, f.r_max) {
        let coords: Vec<String> = poly.iter().map(|&(g, r)| f.point(g, r)).collect();
        let _ = writeln!(
            out,
            r#"<polygon clip-path="url(#plot)" fill="lightgray" stroke="none" points="{}"/>"#,
            coords.join(" ")
        );
    }

    // gridlines
    for g in ticks(g_min, g_max, 0.01) {
        let x = f.x(g);
        let _ = writeln!(
            out,
            r##"<line x1="{x:.2}" y1="{py0:.2}" x2="{x:.2}" y2="{py1:.2}" stroke="#888" stroke-dasharray="1 3"/>"##
        );
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            py1 + 16.0,
            fmt_tick(g, 2)
        );
    }
    for r in ticks(0.0, f.r_max, 0.5) {
        let y = f.y(r);
        let _ = writeln!(
            out,
            r##"<line x1="{px0:.2}" y1="{y:.2}" x2="{px1:.2}" y2="{y:.2}" stroke="#888" stroke-dasharray="1 3"/>"##
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            px0 - 6.0,
            y + 4.0,
            fmt_tick(r, 1)
        );
    }

    let draw_variance = report.sigma > 0.0;
    for c in Curve::ALL {
        let dashed = matches!(c, Curve::VarLower | Curve::VarUpper);
        if dashed && !draw_variance {
            continue;
        }
        for run in curve_runs(&report.slices, c, f.r_max) {
            polyline(&mut out, &f, &run, dashed);
        }
    }

    // axes
    let _ = writeln!(
        out,
        r#"<line x1="{px0:.2}" y1="{py1:.2}" x2="{px1:.2}" y2="{py1:.2}" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<line x1="{px0:.2}" y1="{py1:.2}" x2="{px0:.2}" y2="{py0:.2}" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">expected growth rate of M</text>"#,
        0.5 * (px0 + px1),
        HEIGHT - 18.0
    );
    let _ = writeln!(
        out,
        r#"<text transform="translate(20,{:.2}) rotate(-90)" text-anchor="middle">exchange ratio r</text>"#,
        0.5 * (py0 + py1)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        0.5 * (px0 + px1),
        xml_escape(title)
    );
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
