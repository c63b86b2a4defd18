//! SVG rendering of instances, tours, and interval families.
//!
//! Geometry is drawn inside a `scale(1,-1)` group so the mathematical y-up
//! convention survives; text labels are placed outside the group with their
//! y negated by hand so they render upright. Coordinates are formatted with
//! nine significant digits for display only; nothing here feeds back into
//! the exact computation.

use std::fmt::Write as _;

use minlink_core::engine::Ledger;
use minlink_core::geom::{Point, Rational};
use minlink_core::instance::Instance;
use minlink_core::recovery::Tour;
use num_traits::ToPrimitive;

fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Nine significant digits, trailing zeros trimmed.
fn num(v: f64) -> String {
    let s = format!("{v:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn xy(p: &Point) -> (f64, f64) {
    (approx(&p.x), approx(&p.y))
}

/// Render an instance with its tour and, optionally, the interval families:
/// one decoration group per layer and direction.
pub fn emit_svg(inst: &Instance, tour: &Tour, ledger: Option<&Ledger>) -> String {
    // Bounding box over everything drawn.
    let mut pts: Vec<(f64, f64)> = Vec::new();
    pts.push(xy(&inst.s));
    pts.push(xy(&inst.t));
    for seg in &inst.segments {
        pts.push(xy(&seg.geom.p));
        pts.push(xy(&seg.geom.q));
    }
    for v in &tour.vertices {
        pts.push(xy(v));
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for (x, y) in &pts {
        x0 = x0.min(*x);
        y0 = y0.min(*y);
        x1 = x1.max(*x);
        y1 = y1.max(*y);
    }
    let w = (x1 - x0).max(1.0);
    let h = (y1 - y0).max(1.0);
    let margin = 0.1 * w.max(h);
    let (x0, y0, x1, y1) = (x0 - margin, y0 - margin, x1 + margin, y1 + margin);
    let stroke = (w.max(h) / 200.0).max(0.01);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        num(x0),
        num(-y1),
        num(x1 - x0),
        num(y1 - y0)
    );
    // Mathematical y points up; the group flips the axis so file coordinates
    // can be used unchanged.
    let _ = writeln!(out, "<!-- geometry drawn inside a scale(1,-1) group: y axis points up -->");
    let _ = writeln!(out, "<g transform=\"scale(1,-1)\">");

    if let Some(ledger) = ledger {
        for rec in &ledger.layers {
            if rec.layer == 0 || rec.layer > inst.segments.len() {
                continue;
            }
            let seg = &inst.segments[rec.layer - 1].geom;
            for j in 0..inst.oset.len() {
                if rec.base.family(j).is_empty() && rec.plus.family(j).is_empty() {
                    continue;
                }
                let _ = writeln!(
                    out,
                    "<g class=\"family\" data-layer=\"{}\" data-dir=\"{}\">",
                    rec.layer, j
                );
                for (cls, fam) in [("base", rec.base.family(j)), ("plus", rec.plus.family(j))] {
                    for iv in fam {
                        let a = seg.point_at(&iv.range.lo);
                        let b = seg.point_at(&iv.range.hi);
                        let (ax, ay) = xy(&a);
                        let (bx, by) = xy(&b);
                        let _ = writeln!(
                            out,
                            "<line class=\"{cls}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#9bd\" stroke-opacity=\"0.5\" stroke-width=\"{}\"/>",
                            num(ax), num(ay), num(bx), num(by), num(stroke * 3.0)
                        );
                    }
                }
                let _ = writeln!(out, "</g>");
            }
        }
    }

    for seg in &inst.segments {
        let (ax, ay) = xy(&seg.geom.p);
        let (bx, by) = xy(&seg.geom.q);
        let _ = writeln!(
            out,
            "<line class=\"segment\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333\" stroke-width=\"{}\"/>",
            num(ax),
            num(ay),
            num(bx),
            num(by),
            num(stroke * 1.5)
        );
    }

    if tour.vertices.len() > 1 {
        let points: Vec<String> = tour
            .vertices
            .iter()
            .map(|v| {
                let (x, y) = xy(v);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(
            out,
            "<polyline class=\"tour\" points=\"{}\" fill=\"none\" stroke=\"#c33\" stroke-width=\"{}\"/>",
            points.join(" "),
            num(stroke)
        );
    }

    for (_, p) in &tour.visit_points {
        let (x, y) = xy(p);
        let _ = writeln!(
            out,
            "<circle class=\"visit\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#c33\"/>",
            num(x),
            num(y),
            num(stroke * 1.8)
        );
    }
    for (p, cls) in [(&inst.s, "start"), (&inst.t, "end")] {
        let (x, y) = xy(p);
        let _ = writeln!(
            out,
            "<circle class=\"{cls}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#363\"/>",
            num(x),
            num(y),
            num(stroke * 2.2)
        );
    }
    let _ = writeln!(out, "</g>");

    // Upright labels: y negated by hand instead of inheriting the flip.
    let font = stroke * 12.0;
    for (i, seg) in inst.segments.iter().enumerate() {
        let mid = seg.geom.point_at(&minlink_core::geom::ratio(1, 2));
        let (x, y) = xy(&mid);
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"{}\">e{}</text>",
            num(x + stroke * 2.0),
            num(-(y + stroke * 2.0)),
            num(font),
            i + 1
        );
    }
    for (p, label) in [(&inst.s, "s"), (&inst.t, "t")] {
        let (x, y) = xy(p);
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"{}\">{}</text>",
            num(x + stroke * 2.0),
            num(-(y - stroke * 2.0)),
            num(font),
            label
        );
    }
    out.push_str("</svg>\n");
    out
}
