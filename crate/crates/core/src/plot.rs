//! Standalone SVG rendering of a panel.
//!
//! The SVG is written by hand (polylines and text) with fixed number
//! formatting, so identical inputs give byte-identical files.

use std::fmt::Write as _;

use crate::curve::Marker;
use crate::error::Result;
use crate::graph::BigPicture;
use crate::scenario::{PanelPayload, Ranges, Viewport, BASELINE_SUFFIX};
use crate::symbols::SymbolRegistry;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 160.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;
const TICKS: usize = 5;
const PALETTE: &[&str] = &[
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Compact deterministic tick label.
fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.abs() >= 1e5 || v.abs() < 1e-3 {
        return format!("{v:.2e}");
    }
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }

    fn contains(&self, (x, y): (f64, f64)) -> bool {
        x >= self.x.0 && x <= self.x.1 && y >= self.y.0 && y <= self.y.1
    }

    /// Liang-Barsky clipping of one segment to the frame.
    fn clip(&self, a: (f64, f64), b: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let mut t0 = 0.0f64;
        let mut t1 = 1.0f64;
        for (p, q) in [
            (-dx, a.0 - self.x.0),
            (dx, self.x.1 - a.0),
            (-dy, a.1 - self.y.0),
            (dy, self.y.1 - a.1),
        ] {
            if p == 0.0 {
                if q < 0.0 {
                    return None;
                }
            } else {
                let t = q / p;
                if p < 0.0 {
                    t0 = t0.max(t);
                } else {
                    t1 = t1.min(t);
                }
            }
        }
        (t0 <= t1).then_some((
            (a.0 + t0 * dx, a.1 + t0 * dy),
            (a.0 + t1 * dx, a.1 + t1 * dy),
        ))
    }

    /// Splits a polyline into the runs visible inside the frame.
    fn runs(&self, points: &[(f64, f64)]) -> Vec<Vec<(f64, f64)>> {
        let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
        let mut open = false;
        for w in points.windows(2) {
            match self.clip(w[0], w[1]) {
                Some((a, b)) => {
                    if !open {
                        runs.push(vec![a]);
                    }
                    runs.last_mut().expect("run was pushed").push(b);
                    // A clipped end means the curve left the frame.
                    open = b == w[1];
                }
                None => open = false,
            }
        }
        runs
    }
}

fn label(key: &str) -> &str {
    SymbolRegistry::global().label(key).unwrap_or(key)
}

/// Renders a panel as SVG. Bounds follow the same rule as the panel
/// sampling: `viewport` overrides, else three times the marker coordinate.
pub fn render_svg(panel: &PanelPayload, viewport: Viewport) -> Result<String> {
    let node = BigPicture::canonical().node(panel.node_id)?;
    let marker = panel
        .equilibrium_marker
        .clone()
        .unwrap_or_else(|| Marker::new("", 1.0, 1.0));
    let Ranges { x, y } = viewport.resolve(&marker)?;
    let frame = Frame { x, y };
    let mut out = String::new();
    let w = |out: &mut String, s: std::fmt::Arguments| {
        out.write_fmt(s).expect("writing to a String cannot fail");
        out.push('\n');
    };

    w(&mut out, format_args!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\">"
    ));
    w(
        &mut out,
        format_args!("<title>{}</title>", escape(&node.name)),
    );
    w(
        &mut out,
        format_args!(
            "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
        ),
    );
    w(
        &mut out,
        format_args!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">{}. {}</text>",
            WIDTH / 2.0,
            TOP / 2.0 + 4.0,
            node.id,
            escape(&node.name)
        ),
    );

    // Axes and ticks.
    let (x0, x1, y0, y1) = (frame.px(x.0), frame.px(x.1), frame.py(y.0), frame.py(y.1));
    w(&mut out, format_args!(
        "<polyline points=\"{x0:.2},{y1:.2} {x0:.2},{y0:.2} {x1:.2},{y0:.2}\" fill=\"none\" stroke=\"black\"/>"
    ));
    for k in 0..TICKS {
        let t = k as f64 / (TICKS - 1) as f64;
        let (vx, vy) = (x.0 + t * (x.1 - x.0), y.0 + t * (y.1 - y.0));
        let (px, py) = (frame.px(vx), frame.py(vy));
        w(
            &mut out,
            format_args!(
            "<line x1=\"{px:.2}\" y1=\"{y0:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
            y0 + 4.0
        ),
        );
        w(
            &mut out,
            format_args!(
                "<text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
                y0 + 18.0,
                tick_label(vx)
            ),
        );
        w(
            &mut out,
            format_args!(
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{x0:.2}\" y2=\"{py:.2}\" stroke=\"black\"/>",
            x0 - 4.0
        ),
        );
        w(
            &mut out,
            format_args!(
                "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
                x0 - 7.0,
                py + 4.0,
                tick_label(vy)
            ),
        );
    }
    w(
        &mut out,
        format_args!(
            "<text class=\"x-label\" x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
            (x0 + x1) / 2.0,
            HEIGHT - 14.0,
            escape(label(&node.x_label))
        ),
    );
    w(&mut out, format_args!(
        "<text class=\"y-label\" x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 {:.2} {:.2})\">{}</text>",
        18.0,
        (y0 + y1) / 2.0,
        18.0,
        (y0 + y1) / 2.0,
        escape(label(&node.y_label))
    ));

    // Curves, with the baseline layer dashed.
    let mut color_of: Vec<String> = Vec::new();
    for (idx, curve) in panel.curves.iter().enumerate() {
        let base_name = curve
            .name
            .strip_suffix(BASELINE_SUFFIX)
            .unwrap_or(&curve.name);
        let baseline = base_name.len() != curve.name.len();
        let slot = match color_of.iter().position(|n| n == base_name) {
            Some(i) => i,
            None => {
                color_of.push(base_name.to_string());
                color_of.len() - 1
            }
        };
        let color = PALETTE[slot % PALETTE.len()];
        let dash = if baseline {
            " stroke-dasharray=\"6 4\""
        } else {
            ""
        };
        for run in frame.runs(&curve.points) {
            let pts: Vec<String> = run
                .iter()
                .map(|&(a, b)| format!("{:.2},{:.2}", frame.px(a), frame.py(b)))
                .collect();
            w(&mut out, format_args!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"{dash}/>",
                pts.join(" ")
            ));
        }
        let ly = TOP + 16.0 * idx as f64;
        let lx = WIDTH - RIGHT + 12.0;
        w(&mut out, format_args!(
            "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" stroke-width=\"2\"{dash}/>",
            lx + 20.0
        ));
        w(
            &mut out,
            format_args!(
                "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>",
                lx + 26.0,
                ly + 4.0,
                escape(&curve.name)
            ),
        );
        for m in &curve.markers {
            if !frame.contains((m.x, m.y)) {
                continue;
            }
            let (mx, my) = (frame.px(m.x), frame.py(m.y));
            w(
                &mut out,
                format_args!(
                "<circle cx=\"{mx:.2}\" cy=\"{my:.2}\" r=\"4\" fill=\"{color}\" stroke=\"black\"/>"
            ),
            );
            w(
                &mut out,
                format_args!(
                    "<text x=\"{:.2}\" y=\"{:.2}\">{} ({}, {})</text>",
                    mx + 6.0,
                    my - 6.0,
                    escape(&m.name),
                    tick_label(m.x),
                    tick_label(m.y)
                ),
            );
        }
    }
    if let Some(def) = &panel.definition {
        w(&mut out, format_args!("<desc>{}</desc>", escape(def)));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
