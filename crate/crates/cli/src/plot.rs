//! A bare SVG line chart of a sampled profile, mirrored onto [0, 2].

use gridups::upsilon::UpsilonProfile;
use num_traits::ToPrimitive;
use std::fmt::Write as _;

const W: f64 = 480.0;
const H: f64 = 320.0;
const PAD: f64 = 40.0;

pub fn svg(p: &UpsilonProfile) -> String {
    let mut pts: Vec<(f64, f64)> = p
        .samples
        .iter()
        .map(|(t, v)| (t.value().to_f64().unwrap_or(0.0), v.to_f64().unwrap_or(0.0)))
        .collect();
    let mirrored: Vec<(f64, f64)> = pts.iter().rev().filter(|(t, _)| *t < 1.0).map(|&(t, v)| (2.0 - t, v)).collect();
    pts.extend(mirrored);
    let lo = pts.iter().map(|p| p.1).fold(0.0f64, f64::min);
    let hi = pts.iter().map(|p| p.1).fold(0.0f64, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let sx = |t: f64| PAD + t / 2.0 * (W - 2.0 * PAD);
    let sy = |v: f64| H - PAD - (v - lo) / span * (H - 2.0 * PAD);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{:.2}" x2="{}" y2="{:.2}" stroke="gray"/>"#,
        sx(0.0),
        sy(0.0),
        sx(2.0),
        sy(0.0)
    );
    let line: Vec<String> = pts.iter().map(|&(t, v)| format!("{:.2},{:.2}", sx(t), sy(v))).collect();
    let _ = writeln!(s, r#"<polyline fill="none" stroke="black" stroke-width="2" points="{}"/>"#, line.join(" "));
    for &(t, v) in &pts {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#, sx(t), sy(v));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12">t</text>"#, W - PAD + 8.0, sy(0.0) + 4.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12">Υ({:.3} … {:.3})</text>"#, PAD, PAD - 12.0, lo, hi);
    s.push_str("</svg>\n");
    s
}
