//! Hand-written SVG line chart of power curves.
//!
//! Fixed 800x600 canvas, plot area inset by 10% on every side, both axes on
//! `[0, 1]` with six labelled ticks. Coordinates are printed with three
//! decimals so the bytes are stable.

use std::fmt::Write;

use crate::transition::PowerCurvePoint;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
pub const MARGIN: f64 = 0.1;
const TICKS: usize = 6;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

pub struct Curve<'a> {
    pub label: String,
    pub points: &'a [PowerCurvePoint],
}

struct Frame {
    left: f64,
    right: f64,
    top: f64,
    bottom: f64,
}

impl Frame {
    fn new() -> Self {
        Self {
            left: WIDTH * MARGIN,
            right: WIDTH * (1.0 - MARGIN),
            top: HEIGHT * MARGIN,
            bottom: HEIGHT * (1.0 - MARGIN),
        }
    }

    fn x(&self, v: f64) -> f64 {
        self.left + v * (self.right - self.left)
    }

    fn y(&self, v: f64) -> f64 {
        self.bottom - v * (self.bottom - self.top)
    }
}

pub fn render_power_curves(title: &str, curves: &[Curve<'_>]) -> String {
    let f = Frame::new();
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text class="title" x="{:.3}" y="{:.3}" text-anchor="middle" font-family="sans-serif" font-size="18">{}</text>"#,
        WIDTH / 2.0,
        f.top / 2.0,
        escape(title)
    );

    let _ = writeln!(s, r#"<g class="axes" stroke="black" stroke-width="1">"#);
    let _ = writeln!(
        s,
        r#"<line class="x-axis" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
        f.left, f.bottom, f.right, f.bottom
    );
    let _ = writeln!(
        s,
        r#"<line class="y-axis" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
        f.left, f.bottom, f.left, f.top
    );
    let _ = writeln!(s, "</g>");

    let _ = writeln!(
        s,
        r#"<g class="ticks" font-family="sans-serif" font-size="12">"#
    );
    for i in 0..TICKS {
        let v = i as f64 / (TICKS - 1) as f64;
        let (x, y) = (f.x(v), f.y(v));
        let _ = writeln!(
            s,
            r#"<line class="x-tick" x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}" stroke="black"/>"#,
            f.bottom,
            f.bottom + 6.0
        );
        let _ = writeln!(
            s,
            r#"<text class="x-tick-label" x="{x:.3}" y="{:.3}" text-anchor="middle">{v:.1}</text>"#,
            f.bottom + 20.0
        );
        let _ = writeln!(
            s,
            r#"<line class="y-tick" x1="{:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}" stroke="black"/>"#,
            f.left - 6.0,
            f.left
        );
        let _ = writeln!(
            s,
            r#"<text class="y-tick-label" x="{:.3}" y="{:.3}" text-anchor="end">{v:.1}</text>"#,
            f.left - 10.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text class="x-label" x="{:.3}" y="{:.3}" text-anchor="middle">AGI labor share L_AGI</text>"#,
        (f.left + f.right) / 2.0,
        f.bottom + 45.0
    );
    let _ = writeln!(
        s,
        r#"<text class="y-label" x="{:.3}" y="{:.3}" text-anchor="middle" transform="rotate(-90 {:.3} {:.3})">Human economic power P_h</text>"#,
        f.left - 50.0,
        (f.top + f.bottom) / 2.0,
        f.left - 50.0,
        (f.top + f.bottom) / 2.0
    );
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g class="curves" fill="none" stroke-width="2">"#);
    for (i, curve) in curves.iter().enumerate() {
        let coords: Vec<String> = curve
            .points
            .iter()
            .filter_map(|p| {
                p.p_h
                    .map(|ph| format!("{:.3},{:.3}", f.x(p.l_agi), f.y(ph)))
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline class="curve" stroke="{}" points="{}"/>"#,
            COLORS[i % COLORS.len()],
            coords.join(" ")
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(
        s,
        r#"<g class="legend" font-family="sans-serif" font-size="12">"#
    );
    for (i, curve) in curves.iter().enumerate() {
        let y = f.top + 15.0 + 18.0 * i as f64;
        let x = f.right - 120.0;
        let _ = writeln!(
            s,
            r#"<line class="legend-swatch" x1="{x:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}" stroke="{}" stroke-width="2"/>"#,
            x + 20.0,
            COLORS[i % COLORS.len()]
        );
        let _ = writeln!(
            s,
            r#"<text class="legend-entry" x="{:.3}" y="{:.3}">{}</text>"#,
            x + 26.0,
            y + 4.0,
            escape(&curve.label)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transition::TransitionParams;

    #[test]
    fn one_polyline_and_legend_entry_per_curve() {
        let a = TransitionParams::new(1.0, 1.0, 2.0)
            .unwrap()
            .power_curve(11)
            .unwrap();
        let b = TransitionParams::new(1.0, 1.0, 5.0)
            .unwrap()
            .power_curve(11)
            .unwrap();
        let svg = render_power_curves(
            "t <1>",
            &[
                Curve {
                    label: "lambda = 2".into(),
                    points: &a,
                },
                Curve {
                    label: "lambda = 5".into(),
                    points: &b,
                },
            ],
        );
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("class=\"legend-entry\"").count(), 2);
        assert!(svg.contains("t &lt;1&gt;"));
        // first point (0, 1) maps to the top-left corner of the plot area
        assert!(svg.contains("points=\"80.000,60.000 "));
        // last point (1, 0) maps to the bottom-right corner
        assert!(svg.contains(" 720.000,540.000\""));
    }

    #[test]
    fn undefined_points_are_skipped() {
        let c = TransitionParams::new(1.0, 0.0, 2.0)
            .unwrap()
            .power_curve(3)
            .unwrap();
        let svg = render_power_curves(
            "x",
            &[Curve {
                label: "z".into(),
                points: &c,
            }],
        );
        assert!(svg.contains("points=\"80.000,60.000 400.000,60.000\""));
    }
}
