//! Embedded metric graphs with a marked closed subcomplex `S`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::divisor::RayEnd;
use crate::error::{Error, Result};
use crate::geometry::{cross, Cell1, Point2, PrimitiveDir};
use crate::rat::Rat;
use crate::stable_intersection::IntersectionComplex;
use crate::tropical_curve::TropCurve;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub pos: Point2,
    pub in_s: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcEnd {
    Node { to: usize, length: Rat },
    /// Unbounded arc; the end point is symbolic.
    Ray(RayEnd),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub from: usize,
    pub end: ArcEnd,
    pub dir: PrimitiveDir,
    pub in_s: bool,
}

impl Arc {
    pub fn length(&self) -> Option<&Rat> {
        match &self.end {
            ArcEnd::Node { length, .. } => Some(length),
            ArcEnd::Ray(_) => None,
        }
    }

    pub fn to(&self) -> Option<usize> {
        match &self.end {
            ArcEnd::Node { to, .. } => Some(*to),
            ArcEnd::Ray(_) => None,
        }
    }

    pub fn ray_end(&self) -> Option<&RayEnd> {
        match &self.end {
            ArcEnd::Ray(r) => Some(r),
            ArcEnd::Node { .. } => None,
        }
    }

    pub fn is_ray(&self) -> bool {
        matches!(self.end, ArcEnd::Ray(_))
    }
}

/// Where a point of the plane sits on the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Node(usize),
    /// Interior of an arc, at lattice distance `s` from its start.
    Arc(usize, Rat),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricGraph {
    pub nodes: Vec<Node>,
    pub arcs: Vec<Arc>,
}

impl MetricGraph {
    pub fn add_node(&mut self, pos: Point2, in_s: bool) -> usize {
        self.nodes.push(Node { pos, in_s });
        self.nodes.len() - 1
    }

    /// Adds a segment arc between two existing nodes.
    pub fn add_segment(&mut self, from: usize, to: usize, in_s: bool) -> Result<usize> {
        let (dir, length) = PrimitiveDir::of_displacement(&(&self.nodes[to].pos - &self.nodes[from].pos))
            .ok_or_else(|| Error::Invalid("zero-length arc".into()))?;
        self.arcs.push(Arc { from, end: ArcEnd::Node { to, length }, dir, in_s });
        Ok(self.arcs.len() - 1)
    }

    pub fn add_ray(&mut self, from: usize, end: RayEnd, in_s: bool) -> usize {
        let dir = end.dir;
        self.arcs.push(Arc { from, end: ArcEnd::Ray(end), dir, in_s });
        self.arcs.len() - 1
    }

    pub fn cell(&self, a: usize) -> Cell1 {
        let arc = &self.arcs[a];
        Cell1 { base: self.nodes[arc.from].pos.clone(), dir: arc.dir, len: arc.length().cloned() }
    }

    pub fn point_on(&self, a: usize, s: &Rat) -> Point2 {
        self.nodes[self.arcs[a].from].pos.along(self.arcs[a].dir, s)
    }

    /// Arcs touching node `v`, as `(arc, v is the start)`. A loop is not
    /// possible in an embedded graph.
    pub fn incident(&self, v: usize) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        for (k, a) in self.arcs.iter().enumerate() {
            if a.from == v {
                out.push((k, true));
            }
            if a.to() == Some(v) {
                out.push((k, false));
            }
        }
        out
    }

    /// Nodes of `S` incident to an arc outside `S`.
    pub fn attachment_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&v| self.nodes[v].in_s && self.incident(v).iter().any(|(a, _)| !self.arcs[*a].in_s))
            .collect()
    }

    pub fn locate(&self, p: &Point2) -> Option<Location> {
        if let Some(v) = self.nodes.iter().position(|n| &n.pos == p) {
            return Some(Location::Node(v));
        }
        (0..self.arcs.len()).find_map(|a| {
            let c = self.cell(a);
            c.contains_interior(p).then(|| Location::Arc(a, c.param_of(p).unwrap()))
        })
    }

    /// The ray arc whose carrier ray contains `r`'s base and shares its
    /// direction.
    pub fn ray_arc_of(&self, r: &RayEnd) -> Option<usize> {
        self.arcs.iter().position(|a| {
            a.is_ray() && a.dir == r.dir && {
                let d = &r.base - &self.nodes[a.from].pos;
                cross(&d, &a.dir.as_point()).is_zero()
            }
        })
    }

    /// Subdivides arcs at the given points (those already at nodes or off the
    /// graph are ignored). Original nodes keep their indices. Also returns,
    /// for each original arc, its pieces in order from the start.
    pub fn refine(&self, points: &[Point2]) -> (MetricGraph, Vec<Vec<usize>>) {
        let mut cuts: Vec<BTreeSet<Rat>> = vec![BTreeSet::new(); self.arcs.len()];
        for p in points {
            if let Some(Location::Arc(a, s)) = self.locate(p) {
                cuts[a].insert(s);
            }
        }
        let mut g = MetricGraph { nodes: self.nodes.clone(), arcs: Vec::new() };
        let mut pieces = Vec::with_capacity(self.arcs.len());
        for (a, arc) in self.arcs.iter().enumerate() {
            let mut chain = Vec::new();
            let mut prev = arc.from;
            let mut prev_s = Rat::zero();
            for s in &cuts[a] {
                let v = g.add_node(self.point_on(a, s), arc.in_s);
                let length = s - &prev_s;
                g.arcs.push(Arc { from: prev, end: ArcEnd::Node { to: v, length }, dir: arc.dir, in_s: arc.in_s });
                chain.push(g.arcs.len() - 1);
                prev = v;
                prev_s = s.clone();
            }
            let end = match &arc.end {
                ArcEnd::Node { to, length } => ArcEnd::Node { to: *to, length: length - &prev_s },
                ArcEnd::Ray(r) => ArcEnd::Ray(r.clone()),
            };
            g.arcs.push(Arc { from: prev, end, dir: arc.dir, in_s: arc.in_s });
            chain.push(g.arcs.len() - 1);
            pieces.push(chain);
        }
        (g, pieces)
    }

    /// Connected components of `S`, as sorted node lists.
    pub fn s_components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if !self.nodes[start].in_s || comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for (a, _) in self.incident(v) {
                    let arc = &self.arcs[a];
                    if !arc.in_s {
                        continue;
                    }
                    if let Some(to) = arc.to() {
                        let w = if arc.from == v { to } else { arc.from };
                        if comp[w] == usize::MAX {
                            comp[w] = id;
                            stack.push(w);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Whether the bounded part of `S` contains a cycle.
    pub fn s_has_cycle(&self) -> bool {
        let seg_arcs = self.arcs.iter().filter(|a| a.in_s && !a.is_ray()).count();
        let s_nodes = self.nodes.iter().filter(|n| n.in_s).count();
        seg_arcs + self.s_components().len() > s_nodes
    }
}

/// Metric graph of `c` with `S = i` marked. Arcs are the edges of `c`
/// subdivided at every 0-cell of `i`.
pub fn graph_of_curve(c: &TropCurve, i: &IntersectionComplex) -> Result<MetricGraph> {
    for p in &i.points {
        if !c.contains(p) {
            return Err(Error::CellNotOnCurve(p.to_string()));
        }
    }
    for cell in i.cells1() {
        let probe = cell.point_at(&cell.len.clone().map_or(Rat::one(), |l| l / Rat::from(2)));
        if !c.contains(&probe) {
            return Err(Error::CellNotOnCurve(format!("{}+s{:?}", cell.base, cell.dir)));
        }
    }
    let mut g = MetricGraph::default();
    for v in &c.vertices {
        g.add_node(v.clone(), false);
    }
    for s in &c.segments {
        g.add_segment(s.ends.0, s.ends.1, false)?;
    }
    for r in &c.rays {
        g.add_ray(r.base, RayEnd { base: c.vertices[r.base].clone(), dir: r.dir }, false);
    }
    let (mut g, _) = g.refine(&i.points);
    let cells = i.cells1();
    for n in g.nodes.iter_mut() {
        n.in_s = i.contains(&n.pos);
    }
    for a in 0..g.arcs.len() {
        let probe = match g.arcs[a].length() {
            Some(l) => g.point_on(a, &(l / Rat::from(2))),
            None => g.point_on(a, &Rat::one()),
        };
        g.arcs[a].in_s = cells.iter().any(|c| c.contains(&probe));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rat::q;
    use crate::stable_intersection::intersect_complex;
    use crate::tropical_curve::{curve_of, tropicalize_poly};

    fn curve(s: &str) -> TropCurve {
        curve_of(&tropicalize_poly(&parse_poly(s).unwrap())).unwrap()
    }

    #[test]
    fn line_and_conic_segment() {
        let cf = curve("x + y + 1");
        let cg = curve("x + x*y + t*y");
        let i = intersect_complex(&cf, &cg);
        let g = graph_of_curve(&cf, &i).unwrap();
        let s_segs: Vec<_> = g.arcs.iter().filter(|a| a.in_s).collect();
        assert_eq!(s_segs.len(), 1);
        assert_eq!(s_segs[0].length(), Some(&q(1, 1)));
        let att: Vec<Point2> = g.attachment_nodes().into_iter().map(|v| g.nodes[v].pos.clone()).collect();
        assert_eq!(att, vec![Point2::origin(), Point2::ints(1, 0)]);
        assert!(!g.s_has_cycle());
    }

    #[test]
    fn identical_lines_mark_everything() {
        let c = curve("x + y + 1");
        let i = intersect_complex(&c, &c);
        let g = graph_of_curve(&c, &i).unwrap();
        assert!(g.arcs.iter().all(|a| a.in_s && a.is_ray()));
        assert!(g.attachment_nodes().is_empty());
    }

    #[test]
    fn refine_keeps_lengths() {
        let c = curve("x + y + 1");
        let i = intersect_complex(&c, &c);
        let g = graph_of_curve(&c, &i).unwrap();
        let (h, pieces) = g.refine(&[Point2::new(q(1, 2), q(0, 1)), Point2::ints(2, 0)]);
        let east = g.arcs.iter().position(|a| a.dir == PrimitiveDir(1, 0)).unwrap();
        assert_eq!(pieces[east].len(), 3);
        let lens: Vec<_> = pieces[east][..2].iter().map(|&a| h.arcs[a].length().unwrap().clone()).collect();
        assert_eq!(lens, vec![q(1, 2), q(3, 2)]);
        assert!(h.nodes.iter().all(|n| n.in_s));
    }

    #[test]
    fn foreign_complex_is_rejected() {
        let c = curve("x + y + 1");
        let other = curve("x + y + t^(-1)");
        let i = intersect_complex(&other, &other);
        assert!(matches!(graph_of_curve(&c, &i), Err(Error::CellNotOnCurve(_))));
    }
}
