//! Minimal SVG polyline rendering of diagram curves.

use std::fmt::Write as _;

use whitham_mi::diagrams::{CurveKind, StabilityCurve};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;

fn color(kind: CurveKind) -> &'static str {
    match kind {
        CurveKind::GroupVelExtremum => "#1f77b4",
        CurveKind::LongShortResonance => "#2ca02c",
        CurveKind::SecondHarmonic => "#9467bd",
        CurveKind::BenjaminFeir | CurveKind::BFResonancePlus => "#d62728",
        CurveKind::BFResonanceMinus => "#ff7f0e",
        CurveKind::CriticalTension | CurveKind::GravityCritical => "#555555",
    }
}

pub fn render(curves: &[StabilityCurve], x_range: (f64, f64), y_range: (f64, f64), x_label: &str, y_label: &str) -> String {
    let sx = |x: f64| MARGIN + (x - x_range.0) / (x_range.1 - x_range.0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y_range.0) / (y_range.1 - y_range.0) * (HEIGHT - 2.0 * MARGIN);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{x_label}</text>"#, WIDTH / 2.0, HEIGHT - 15.0);
    let _ = writeln!(
        s,
        r#"<text x="15" y="{}" text-anchor="middle" transform="rotate(-90 15 {})">{y_label}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    for c in curves {
        let pts: Vec<String> = c
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let dash = if c.mechanism.is_annotation() { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"><title>{}</title></polyline>"#,
            color(c.mechanism),
            pts.join(" "),
            c.mechanism.name()
        );
    }
    s.push_str("</svg>\n");
    s
}
