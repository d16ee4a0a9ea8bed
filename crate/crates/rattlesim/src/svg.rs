//! Minimal self-contained SVG renderer: line charts (optionally log-y) and
//! histograms. Figures are a convenience; the CSV files are the contract.

use std::fmt::Write;

const WIDTH: f64 = 840.0;
const HEIGHT: f64 = 520.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 55.0;

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#7f7f7f"];

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    log_y: bool,
}

impl Frame {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let ty = if self.log_y { y.log10() } else { y };
        let px = MARGIN_L + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - MARGIN_L - MARGIN_R);
        let py = HEIGHT - MARGIN_B - (ty - self.y0) / (self.y1 - self.y0) * (HEIGHT - MARGIN_T - MARGIN_B);
        (px, py)
    }
}

fn pad_range(lo: f64, hi: f64) -> (f64, f64) {
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        let pad = (hi - lo) * 0.05;
        (lo - pad, hi + pad)
    }
}

fn axis_ticks(lo: f64, hi: f64) -> Vec<f64> {
    (0..=5).map(|i| lo + (hi - lo) * i as f64 / 5.0).collect()
}

fn tick_label(v: f64, log: bool) -> String {
    let shown = if log { 10f64.powf(v) } else { v };
    if shown != 0.0 && (shown.abs() >= 1e4 || shown.abs() < 1e-3) {
        format!("{shown:.2e}")
    } else {
        format!("{:.4}", shown).trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn chrome(out: &mut String, title: &str, x_label: &str, y_label: &str, frame: &Frame) {
    let _ = write!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">
<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>
<text x="{tx}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{title}</text>
<text x="{tx}" y="{bly}" font-family="sans-serif" font-size="13" text-anchor="middle">{x_label}</text>
<text x="18" y="{mly}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 18 {mly})">{y_label}</text>
"##,
        tx = (MARGIN_L + WIDTH - MARGIN_R) / 2.0,
        bly = HEIGHT - 12.0,
        mly = (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
    );
    for v in axis_ticks(frame.x0, frame.x1) {
        let (px, _) = frame.map(v, if frame.log_y { 10f64.powf(frame.y0) } else { frame.y0 });
        let _ = write!(
            out,
            r##"<line x1="{px}" y1="{t}" x2="{px}" y2="{b}" stroke="#dddddd"/>
<text x="{px}" y="{ly}" font-family="sans-serif" font-size="11" text-anchor="middle">{label}</text>
"##,
            t = MARGIN_T,
            b = HEIGHT - MARGIN_B,
            ly = HEIGHT - MARGIN_B + 18.0,
            label = tick_label(v, false),
        );
    }
    for v in axis_ticks(frame.y0, frame.y1) {
        let py = HEIGHT - MARGIN_B - (v - frame.y0) / (frame.y1 - frame.y0) * (HEIGHT - MARGIN_T - MARGIN_B);
        let _ = write!(
            out,
            r##"<line x1="{l}" y1="{py}" x2="{r}" y2="{py}" stroke="#dddddd"/>
<text x="{lx}" y="{ty}" font-family="sans-serif" font-size="11" text-anchor="end">{label}</text>
"##,
            l = MARGIN_L,
            r = WIDTH - MARGIN_R,
            lx = MARGIN_L - 6.0,
            ty = py + 4.0,
            label = tick_label(v, frame.log_y),
        );
    }
    let _ = writeln!(
        out,
        r##"<rect x="{l}" y="{t}" width="{w}" height="{h}" fill="none" stroke="#333333"/>"##,
        l = MARGIN_L,
        t = MARGIN_T,
        w = WIDTH - MARGIN_L - MARGIN_R,
        h = HEIGHT - MARGIN_T - MARGIN_B,
    );
}

/// Render series as polylines. `log_y` drops non-positive points.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, log_y: bool, series: &[Series]) -> String {
    let usable = |p: &(f64, f64)| p.0.is_finite() && p.1.is_finite() && (!log_y || p.1 > 0.0);
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for s in series {
        for p in s.points.iter().filter(|p| usable(p)) {
            xs.push(p.0);
            ys.push(if log_y { p.1.log10() } else { p.1 });
        }
    }
    let mut out = String::new();
    if xs.is_empty() {
        chrome(&mut out, title, x_label, y_label, &Frame { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0, log_y: false });
        out.push_str("</svg>\n");
        return out;
    }
    let (x0, x1) = pad_range(xs.iter().cloned().fold(f64::INFINITY, f64::min), xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    let (y0, y1) = pad_range(ys.iter().cloned().fold(f64::INFINITY, f64::min), ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    let frame = Frame { x0, x1, y0, y1, log_y };
    chrome(&mut out, title, x_label, y_label, &frame);
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: String = s
            .points
            .iter()
            .filter(|p| usable(p))
            .map(|&(x, y)| {
                let (px, py) = frame.map(x, y);
                format!("{px:.2},{py:.2}")
            })
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, r##"<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.2"/>"##);
        let _ = writeln!(
            out,
            r##"<text x="{x}" y="{y}" font-family="sans-serif" font-size="12" fill="{color}">{label}</text>"##,
            x = MARGIN_L + 10.0,
            y = MARGIN_T + 18.0 + 16.0 * i as f64,
            label = s.label,
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Render `(bin_start, bin_end, count)` bars.
pub fn histogram(title: &str, x_label: &str, bins: &[(f64, f64, u64)]) -> String {
    let mut out = String::new();
    if bins.is_empty() {
        chrome(&mut out, title, x_label, "count", &Frame { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0, log_y: false });
        out.push_str("</svg>\n");
        return out;
    }
    let x0 = bins[0].0;
    let x1 = bins[bins.len() - 1].1;
    let y1 = bins.iter().map(|b| b.2).max().unwrap() as f64 * 1.05;
    let frame = Frame { x0, x1, y0: 0.0, y1: y1.max(1.0), log_y: false };
    chrome(&mut out, title, x_label, "count", &frame);
    for &(lo, hi, count) in bins {
        let (px0, py) = frame.map(lo, count as f64);
        let (px1, base) = frame.map(hi, 0.0);
        let _ = writeln!(
            out,
            r##"<rect x="{px0:.2}" y="{py:.2}" width="{w:.2}" height="{h:.2}" fill="#1f77b4" stroke="white" stroke-width="0.5"/>"##,
            w = (px1 - px0).max(0.5),
            h = (base - py).max(0.0),
        );
    }
    out.push_str("</svg>\n");
    out
}
