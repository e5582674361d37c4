//! Static scatter plot of resonances in the complex k-plane.

use std::fmt::Write;

use num_complex::Complex64;

use crate::resonance::FamilyKind;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;

/// One point per resonance; marker radius grows with multiplicity.
pub fn scatter(points: &[(Complex64, usize, FamilyKind)], title: &str) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (-1.0f64, 1.0f64, -1.0f64, 0.5f64);
    for (k, _, _) in points {
        x0 = x0.min(k.re);
        x1 = x1.max(k.re);
        y0 = y0.min(k.im);
        y1 = y1.max(k.im);
    }
    let pad_x = 0.05 * (x1 - x0);
    let pad_y = 0.1 * (y1 - y0);
    let (x0, x1, y0, y1) = (x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888"/>"##,
        sx(x0),
        sy(0.0),
        sx(x1),
        sy(0.0)
    );
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888"/>"##,
        sx(0.0),
        sy(y0),
        sx(0.0),
        sy(y1)
    );
    for (label, x, y) in [
        ("Re k", WIDTH - MARGIN, sy(0.0) - 6.0),
        ("Im k", sx(0.0) + 6.0, MARGIN - 6.0),
    ] {
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="11">{label}</text>"#
        );
    }
    for (k, mult, kind) in points {
        let color = match kind {
            FamilyKind::Eigenvalue => "#1f77b4",
            FamilyKind::Resonance => "#d62728",
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{:.1}" fill="{color}" fill-opacity="0.8"/>"#,
            sx(k.re),
            sy(k.im),
            2.0 + 1.5 * *mult as f64
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_circle_per_point() {
        let pts = vec![
            (Complex64::new(0.0, 0.0), 1, FamilyKind::Eigenvalue),
            (Complex64::new(3.1, -0.7), 2, FamilyKind::Resonance),
        ];
        let svg = scatter(&pts, "a < b");
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains("a &lt; b"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
