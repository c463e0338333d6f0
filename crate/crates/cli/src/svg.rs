//! Static SVG histogram of a rescaled root measure.

use std::fmt::Write;

use bochner::measures::ArcsineLaw;
use bochner::report::{rescaled_measure, Analysis};
use bochner::Rat;
use rug::Float;

use crate::Failure;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;
const BINS: usize = 40;

/// Histogram of the real parts of the atoms divided by the largest root
/// modulus, over `[-1, 1]`. When `reference` is given, the arcsine density
/// on that interval, rescaled the same way, is drawn on top.
pub fn histogram(a: &Analysis, reference: Option<&(Rat, Rat)>) -> Result<String, Failure> {
    let m = rescaled_measure(a)?;
    let xs: Vec<f64> = m.atoms().iter().map(|z| z.real().to_f64()).collect();
    let width = 2.0 / BINS as f64;
    let mut counts = [0usize; BINS];
    for x in &xs {
        let i = (((x + 1.0) / width).floor().max(0.0) as usize).min(BINS - 1);
        counts[i] += 1;
    }
    let heights: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 / (xs.len() as f64 * width))
        .collect();

    let curve: Vec<(f64, f64)> = match reference {
        Some((lo, hi)) => {
            let scale = a.max_radius.to_f64();
            let law = ArcsineLaw::new(lo.clone(), hi.clone())?;
            (1..400)
                .map(|i| {
                    let t = -1.0 + 2.0 * i as f64 / 400.0;
                    let d = law.density(&Float::with_val(64, t * scale)).to_f64() * scale;
                    (t, d)
                })
                .filter(|(_, d)| *d > 0.0)
                .collect()
        }
        None => Vec::new(),
    };
    let bar_max = heights.iter().cloned().fold(0.0, f64::max);
    let y_max = if bar_max > 0.0 { bar_max * 1.25 } else { 1.0 };
    let px = |x: f64| MARGIN + (x + 1.0) / 2.0 * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y.min(y_max) / y_max) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">n = {}, atoms / max radius ({:.6})</text>"#,
        a.n,
        a.max_radius.to_f64()
    );
    for (i, h) in heights.iter().enumerate() {
        if *h == 0.0 {
            continue;
        }
        let x0 = px(-1.0 + i as f64 * width);
        let x1 = px(-1.0 + (i + 1) as f64 * width);
        let y = py(*h);
        let _ = writeln!(
            s,
            r##"<rect x="{x0:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="#9ab" stroke="#567"/>"##,
            x1 - x0,
            HEIGHT - MARGIN - y
        );
    }
    if !curve.is_empty() {
        let points: Vec<String> = curve
            .iter()
            .map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y)))
            .collect();
        let _ = writeln!(
            s,
            r##"<polyline fill="none" stroke="#c33" stroke-width="1.5" points="{}"/>"##,
            points.join(" ")
        );
    }
    let base = HEIGHT - MARGIN;
    let _ = writeln!(
        s,
        r#"<line x1="{MARGIN}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#,
        WIDTH - MARGIN
    );
    for t in [-1.0, 0.0, 1.0] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{t}</text>"#,
            px(t),
            base + 16.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
