//! Minimal SVG line plots: polyline, frame and a few tick labels.

use std::fmt::Write;

pub struct Panel {
    pub title: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

const W: f64 = 420.0;
const H: f64 = 300.0;
const PAD: f64 = 48.0;

fn label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e-2 && v.abs() < 1e4 {
        format!("{}", (v * 1000.0).round() / 1000.0)
    } else {
        format!("{v:.2e}")
    }
}

fn range(v: &[f64]) -> (f64, f64) {
    let lo = v
        .iter()
        .cloned()
        .filter(|x| x.is_finite())
        .fold(f64::INFINITY, f64::min);
    let hi = v
        .iter()
        .cloned()
        .filter(|x| x.is_finite())
        .fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, lo + 0.5)
    }
}

fn panel(out: &mut String, p: &Panel, ox: f64, oy: f64, x_label: &str, y_label: &str) {
    let (x0, x1) = range(&p.x);
    let (_, y1) = range(&p.y);
    let y0 = 0.0f64.min(range(&p.y).0);
    let (pw, ph) = (W - 1.5 * PAD, H - 1.8 * PAD);
    let (left, top) = (ox + PAD, oy + 0.8 * PAD);
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| top + ph - (y - y0) / (y1 - y0) * ph;
    let _ = writeln!(
        out,
        r#"<rect x="{left:.2}" y="{top:.2}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{}</text>"#,
        left + pw / 2.0,
        top - 10.0,
        p.title
    );
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="10">{}</text>"#,
            sx(xv),
            top + ph + 14.0,
            label(xv)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-size="10">{}</text>"#,
            left - 4.0,
            sy(yv) + 3.0,
            label(yv)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="11">{x_label}</text>"#,
        left + pw / 2.0,
        top + ph + 30.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="11">{y_label}</text>"#,
        ox + 4.0,
        top - 10.0
    );
    let mut pts = String::new();
    for (x, y) in p.x.iter().zip(&p.y) {
        if x.is_finite() && y.is_finite() {
            let _ = write!(pts, "{:.2},{:.2} ", sx(*x), sy(*y));
        }
    }
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="1.2" points="{}"/>"#,
        pts.trim_end()
    );
}

/// Panels laid out in a grid with `cols` columns.
pub fn render(panels: &[Panel], cols: usize, x_label: &str, y_label: &str) -> String {
    let cols = cols.max(1);
    let rows = panels.len().div_ceil(cols).max(1);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        W * cols as f64,
        H * rows as f64,
        W * cols as f64,
        H * rows as f64
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, p) in panels.iter().enumerate() {
        let (ox, oy) = ((i % cols) as f64 * W, (i / cols) as f64 * H);
        panel(&mut out, p, ox, oy, x_label, y_label);
    }
    out.push_str("</svg>\n");
    out
}
