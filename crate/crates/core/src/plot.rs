//! Minimal SVG line charts for curves and profiles.

use std::fmt::Write as _;

use crate::curve::DegradationFrequencyCurve;
use crate::error::{invalid, Result};
use crate::fingerprint::DegradationProfile;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;
const TICKS: usize = 5;

struct Frame {
    x_max: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        LEFT + v / self.x_max * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - BOTTOM - v / self.y_max * (HEIGHT - TOP - BOTTOM)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn polyline(frame: &Frame, xs: &[f64], ys: &[f64]) -> String {
    let mut points = String::new();
    for (x, y) in xs.iter().zip(ys) {
        let _ = write!(points, "{:.2},{:.2} ", frame.x(*x), frame.y(*y));
    }
    points.trim_end().to_string()
}

/// Header, axes, ticks and labels.
fn open(title: &str, frame: &Frame) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (x0, y0, x1, y1) = (LEFT, HEIGHT - BOTTOM, WIDTH - RIGHT, TOP);
    let _ = writeln!(
        s,
        r#"<path d="M{x0},{y1} L{x0},{y0} L{x1},{y0}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let (xv, yv) = (t * frame.x_max, t * frame.y_max);
        let (px, py) = (frame.x(xv), frame.y(yv));
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{y0}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{xv:.1}</text>"#,
            y0 + 5.0,
            y0 + 19.0
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{yv:.3}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">radial frequency (bins from DC)</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">normalized response</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
    s
}

fn y_limit(values: impl Iterator<Item = f64>) -> f64 {
    let top = values.fold(0.0, f64::max);
    if top > 0.0 {
        top * 1.1
    } else {
        1.0
    }
}

pub fn curve_svg(dfc: &DegradationFrequencyCurve, title: &str) -> Result<String> {
    dfc.validate()?;
    let frame = Frame {
        x_max: dfc.max_radius(),
        y_max: y_limit(dfc.normalized.iter().copied()),
    };
    let mut s = open(title, &frame);
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#1f5fa8" stroke-width="2"/>"##,
        polyline(&frame, &dfc.centers, &dfc.normalized)
    );
    s.push_str("</svg>\n");
    Ok(s)
}

/// Mean curve with a shaded band of one standard deviation either side;
/// band positions are taken from `centers`.
pub fn profile_svg(profile: &DegradationProfile, centers: &[f64]) -> Result<String> {
    profile.validate()?;
    if centers.len() != profile.band_count || centers.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("profile plot needs one increasing center per band"));
    }
    let std = profile.std_curve();
    let upper: Vec<f64> = profile
        .mean_curve
        .iter()
        .zip(&std)
        .map(|(m, s)| m + s)
        .collect();
    let lower: Vec<f64> = profile
        .mean_curve
        .iter()
        .zip(&std)
        .map(|(m, s)| (m - s).max(0.0))
        .collect();
    let frame = Frame {
        x_max: *centers.last().expect("non-empty"),
        y_max: y_limit(upper.iter().copied()),
    };
    let title = format!("{} (n = {})", profile.label, profile.sample_count);
    let mut s = open(&title, &frame);
    let mut band_x = centers.to_vec();
    band_x.extend(centers.iter().rev());
    let mut band_y = upper;
    band_y.extend(lower.iter().rev());
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="#1f5fa8" fill-opacity="0.25" stroke="none"/>"##,
        polyline(&frame, &band_x, &band_y)
    );
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#1f5fa8" stroke-width="2"/>"##,
        polyline(&frame, centers, &profile.mean_curve)
    );
    s.push_str("</svg>\n");
    Ok(s)
}
