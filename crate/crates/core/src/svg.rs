//! Deterministic SVG drawings of curves, intersections, divisors and
//! piecewise-linear functions.

use std::fmt::Write;

use crate::divisor::{DivPoint, Divisor};
use crate::divisor_calculus::{MetricGraph, PLFunc};
use crate::geometry::{Cell1, Point2};
use crate::rat::Rat;
use crate::stable_intersection::IntersectionComplex;
use crate::tropical_curve::TropCurve;

const PALETTE: [&str; 4] = ["#1f5fa8", "#c0392b", "#2e8b57", "#8e44ad"];
const SCALE: f64 = 80.0;
const MARGIN: f64 = 0.6;

struct Edge {
    cell: Cell1,
    weight: u32,
    colour: &'static str,
}

/// Drawing instructions in exact coordinates; scaling happens in
/// [`Scene::render`].
pub struct Scene {
    edges: Vec<Edge>,
    highlight: Vec<Cell1>,
    marks: Vec<Point2>,
    zeros: Vec<(Point2, i64)>,
    poles: Vec<(Point2, i64)>,
    graphs: Vec<Vec<Point2>>,
    ray_len: Rat,
    layers: usize,
}

impl Scene {
    pub fn new(ray_len: Rat) -> Self {
        Scene {
            edges: Vec::new(),
            highlight: Vec::new(),
            marks: Vec::new(),
            zeros: Vec::new(),
            poles: Vec::new(),
            graphs: Vec::new(),
            ray_len,
            layers: 0,
        }
    }

    fn next_colour(&mut self) -> &'static str {
        let c = PALETTE[self.layers % PALETTE.len()];
        self.layers += 1;
        c
    }

    pub fn add_curve(&mut self, c: &TropCurve) -> &mut Self {
        let colour = self.next_colour();
        for e in c.edges() {
            self.edges.push(Edge { cell: e.cell, weight: e.weight, colour });
        }
        self
    }

    pub fn add_graph(&mut self, g: &MetricGraph) -> &mut Self {
        let colour = self.next_colour();
        for a in 0..g.arcs.len() {
            self.edges.push(Edge { cell: g.cell(a), weight: 1, colour });
        }
        self
    }

    pub fn add_complex(&mut self, i: &IntersectionComplex) -> &mut Self {
        self.highlight.extend(i.cells1());
        self.marks.extend(i.isolated_points().into_iter().cloned());
        self
    }

    fn ray_tip(&self, base: &Point2, dir: crate::geometry::PrimitiveDir) -> Point2 {
        base.along(dir, &self.ray_len)
    }

    /// Positive coefficients become dots, negative ones crosses. Ray-end
    /// points sit at the tip of the drawn ray stub.
    pub fn add_divisor(&mut self, d: &Divisor) -> &mut Self {
        for (p, c) in d.iter() {
            let at = match p {
                DivPoint::Point(q) => q.clone(),
                DivPoint::RayEnd(r) => self.ray_tip(&r.base, r.dir),
            };
            if c > 0 {
                self.zeros.push((at, c));
            } else {
                self.poles.push((at, -c));
            }
        }
        self
    }

    /// Graph of `h` over the arcs where it is not identically zero, lifted
    /// along a fixed oblique direction.
    pub fn add_function(&mut self, g: &MetricGraph, h: &PLFunc) -> &mut Self {
        for (a, arc) in g.arcs.iter().enumerate() {
            let piece = &h.arcs[a];
            let start = &h.node_values[arc.from];
            if start.is_zero() && piece.slopes.iter().all(|s| *s == 0) {
                continue;
            }
            let stop = arc.length().cloned().unwrap_or_else(|| self.ray_len.clone());
            let mut params = vec![Rat::zero()];
            params.extend(piece.breaks.iter().filter(|b| **b < stop).cloned());
            params.push(stop);
            let path = params
                .iter()
                .map(|s| {
                    let base = g.point_on(a, s);
                    let v = h.value_on(g, a, s);
                    Point2::new(&base.x + &(&v * &Rat::new(1, 4)), &base.y + &(&v * &Rat::new(1, 2)))
                })
                .collect();
            self.graphs.push(path);
        }
        self
    }

    fn drawn_segment(&self, c: &Cell1) -> (Point2, Point2) {
        let end = c.end().unwrap_or_else(|| self.ray_tip(&c.base, c.dir));
        (c.base.clone(), end)
    }

    pub fn render(&self) -> String {
        let mut pts: Vec<Point2> = Vec::new();
        for e in &self.edges {
            let (a, b) = self.drawn_segment(&e.cell);
            pts.push(a);
            pts.push(b);
        }
        for c in &self.highlight {
            let (a, b) = self.drawn_segment(c);
            pts.push(a);
            pts.push(b);
        }
        pts.extend(self.marks.iter().cloned());
        pts.extend(self.zeros.iter().map(|(p, _)| p.clone()));
        pts.extend(self.poles.iter().map(|(p, _)| p.clone()));
        pts.extend(self.graphs.iter().flatten().cloned());
        if pts.is_empty() {
            pts.push(Point2::origin());
        }
        let xs: Vec<f64> = pts.iter().map(|p| p.x.to_f64()).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.y.to_f64()).collect();
        let fold = |v: &[f64], init: f64, f: fn(f64, f64) -> f64| v.iter().copied().fold(init, f);
        let (x0, x1) = (fold(&xs, f64::INFINITY, f64::min) - MARGIN, fold(&xs, f64::NEG_INFINITY, f64::max) + MARGIN);
        let (y0, y1) = (fold(&ys, f64::INFINITY, f64::min) - MARGIN, fold(&ys, f64::NEG_INFINITY, f64::max) + MARGIN);
        let (w, h) = ((x1 - x0) * SCALE, (y1 - y0) * SCALE);
        let tx = |p: &Point2| (p.x.to_f64() - x0) * SCALE;
        let ty = |p: &Point2| (y1 - p.y.to_f64()) * SCALE;

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.4}" height="{h:.4}" viewBox="0 0 {w:.4} {h:.4}">"#
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for c in &self.highlight {
            let (a, b) = self.drawn_segment(c);
            let _ = writeln!(
                out,
                r##"<line x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="#f1c40f" stroke-width="9" stroke-linecap="round" opacity="0.6"/>"##,
                tx(&a), ty(&a), tx(&b), ty(&b)
            );
        }
        for e in &self.edges {
            let (a, b) = self.drawn_segment(&e.cell);
            let dash = if e.cell.len.is_none() { r#" stroke-dasharray="6 3""# } else { "" };
            let _ = writeln!(
                out,
                r#"<line x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="{}" stroke-width="{}"{dash}/>"#,
                tx(&a), ty(&a), tx(&b), ty(&b), e.colour, 1.5 * e.weight as f64
            );
            if e.weight > 1 {
                let m = Point2::new((&a.x + &b.x) / Rat::from(2), (&a.y + &b.y) / Rat::from(2));
                let _ = writeln!(out, r#"<text x="{:.4}" y="{:.4}" font-size="12">{}</text>"#, tx(&m) + 4.0, ty(&m) - 4.0, e.weight);
            }
        }
        for path in &self.graphs {
            let coords: Vec<String> = path.iter().map(|p| format!("{:.4},{:.4}", tx(p), ty(p))).collect();
            let _ = writeln!(out, r##"<polyline points="{}" fill="none" stroke="#555555" stroke-width="1.5"/>"##, coords.join(" "));
        }
        for p in &self.marks {
            let _ = writeln!(out, r#"<circle cx="{:.4}" cy="{:.4}" r="5" fill="none" stroke="black"/>"#, tx(p), ty(p));
        }
        for (p, c) in &self.zeros {
            let _ = writeln!(out, r#"<circle cx="{:.4}" cy="{:.4}" r="4.5" fill="black"/>"#, tx(p), ty(p));
            if *c > 1 {
                let _ = writeln!(out, r#"<text x="{:.4}" y="{:.4}" font-size="11">{c}</text>"#, tx(p) + 6.0, ty(p) + 12.0);
            }
        }
        for (p, c) in &self.poles {
            let (x, y) = (tx(p), ty(p));
            let _ = writeln!(
                out,
                r#"<path d="M{:.4},{:.4} L{:.4},{:.4} M{:.4},{:.4} L{:.4},{:.4}" stroke="black" stroke-width="2"/>"#,
                x - 5.0, y - 5.0, x + 5.0, y + 5.0, x - 5.0, y + 5.0, x + 5.0, y - 5.0
            );
            if *c > 1 {
                let _ = writeln!(out, r#"<text x="{:.4}" y="{:.4}" font-size="11">{c}</text>"#, x + 6.0, y - 6.0);
            }
        }
        out.push_str("</svg>\n");
        out
    }
}
