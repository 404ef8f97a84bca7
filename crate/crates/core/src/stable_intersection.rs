//! Set-theoretic and stable intersection of two tropical plane curves.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::divisor::{DivPoint, Divisor};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, cross, minkowski_sum, twice_area, Cell1, Meet, Point2, PrimitiveDir};
use crate::rat::Rat;
use crate::tropical_curve::TropCurve;

/// Directions of first-curve edges leaving the intersection at a 0-cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub point: usize,
    pub directions: Vec<PrimitiveDir>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionComplex {
    /// 0-cells, sorted.
    pub points: Vec<Point2>,
    /// Bounded 1-cells as pairs of 0-cell indices.
    pub segments: Vec<(usize, usize)>,
    /// Unbounded 1-cells.
    pub rays: Vec<(usize, PrimitiveDir)>,
    pub attachments: Vec<Attachment>,
}

impl IntersectionComplex {
    pub fn cells1(&self) -> Vec<Cell1> {
        let segs = self
            .segments
            .iter()
            .map(|&(a, b)| Cell1::segment(&self.points[a], &self.points[b]).expect("degenerate cell"));
        let rays = self.rays.iter().map(|(b, d)| Cell1::ray(self.points[*b].clone(), *d));
        segs.chain(rays).collect()
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.points.contains(p) || self.cells1().iter().any(|c| c.contains(p))
    }

    /// No 1-dimensional cells.
    pub fn is_finite(&self) -> bool {
        self.segments.is_empty() && self.rays.is_empty()
    }

    /// 0-cells not on any 1-cell.
    pub fn isolated_points(&self) -> Vec<&Point2> {
        let mut used = BTreeSet::new();
        for &(a, b) in &self.segments {
            used.insert(a);
            used.insert(b);
        }
        for (b, _) in &self.rays {
            used.insert(*b);
        }
        self.points
            .iter()
            .enumerate()
            .filter(|(k, _)| !used.contains(k))
            .map(|(_, p)| p)
            .collect()
    }
}

fn index_of(points: &[Point2], p: &Point2) -> usize {
    points.binary_search(p).expect("point registered")
}

/// Does the germ of direction `g` at `p` lie in one of `cells`?
fn germ_covered(cells: &[Cell1], p: &Point2, g: PrimitiveDir) -> bool {
    cells.iter().any(|c| {
        let Some(s) = c.param_of(p) else { return false };
        if c.dir == g {
            !s.is_negative() && c.len.as_ref().map_or(true, |l| &s < l)
        } else if c.dir == g.neg() {
            s.is_positive() && c.len.as_ref().map_or(true, |l| &s <= l)
        } else {
            false
        }
    })
}

pub fn intersect_complex(c1: &TropCurve, c2: &TropCurve) -> IntersectionComplex {
    let mut isolated: BTreeSet<Point2> = BTreeSet::new();
    let mut segs: BTreeSet<(Point2, Point2)> = BTreeSet::new();
    let mut rays: BTreeSet<(Point2, PrimitiveDir)> = BTreeSet::new();
    let e1s = c1.edges();
    let e2s = c2.edges();
    for e1 in &e1s {
        for e2 in &e2s {
            match e1.cell.meet(&e2.cell) {
                Meet::Empty => {}
                Meet::Point(p) => {
                    isolated.insert(p);
                }
                Meet::Cell(c) => match c.end() {
                    Some(end) => {
                        let (a, b) = if c.base <= end { (c.base, end) } else { (end, c.base) };
                        segs.insert((a, b));
                    }
                    None => {
                        rays.insert((c.base, c.dir));
                    }
                },
            }
        }
    }
    // vertices of one curve lying on the other are caught above, except for
    // isolated vertex-vertex coincidences, which also arise as edge meets.
    let cells: Vec<Cell1> = segs
        .iter()
        .map(|(a, b)| Cell1::segment(a, b).unwrap())
        .chain(rays.iter().map(|(b, d)| Cell1::ray(b.clone(), *d)))
        .collect();
    let mut points: BTreeSet<Point2> = BTreeSet::new();
    for (a, b) in &segs {
        points.insert(a.clone());
        points.insert(b.clone());
    }
    for (b, _) in &rays {
        points.insert(b.clone());
    }
    for p in isolated {
        if !cells.iter().any(|c| c.contains(&p)) {
            points.insert(p);
        }
    }
    let points: Vec<Point2> = points.into_iter().collect();
    let segments = segs
        .iter()
        .map(|(a, b)| (index_of(&points, a), index_of(&points, b)))
        .collect();
    let rays_idx = rays.iter().map(|(b, d)| (index_of(&points, b), *d)).collect();

    let mut attachments = Vec::new();
    for (k, p) in points.iter().enumerate() {
        let mut dirs: BTreeSet<PrimitiveDir> = BTreeSet::new();
        for e in &e1s {
            let Some(s) = e.cell.param_of(p) else { continue };
            if s.is_negative() || e.cell.len.as_ref().is_some_and(|l| &s > l) {
                continue;
            }
            let at_end = e.cell.len.as_ref().is_some_and(|l| &s == l);
            if !at_end {
                dirs.insert(e.cell.dir);
            }
            if s.is_positive() {
                dirs.insert(e.cell.dir.neg());
            }
        }
        let leaving: Vec<PrimitiveDir> =
            dirs.into_iter().filter(|g| !germ_covered(&cells, p, *g)).collect();
        if !leaving.is_empty() {
            attachments.push(Attachment { point: k, directions: leaving });
        }
    }
    IntersectionComplex { points, segments, rays: rays_idx, attachments }
}

/// `a + ε·b`, compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Eps(Rat, Rat);

const SLOPE_DENOMS: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Candidate displacements `(1, 1/p)`.
pub fn displacement_candidates() -> impl Iterator<Item = Point2> {
    SLOPE_DENOMS
        .iter()
        .map(|&p| Point2::new(Rat::one(), Rat::new(1, p)))
}

/// Limit of `(C1 + εv) ∩ C2` as `ε → 0⁺`, or `None` if `v` is not generic
/// for this pair.
pub fn stable_divisor_with(c1: &TropCurve, c2: &TropCurve, v: &Point2) -> Option<Divisor> {
    for u in c1.directions().into_iter().chain(c2.directions()) {
        if cross(v, &u.as_point()).is_zero() {
            return None;
        }
    }
    let zero = Eps(Rat::zero(), Rat::zero());
    let mut div = Divisor::new();
    for e1 in c1.edges() {
        for e2 in c2.edges() {
            let u1 = e1.cell.dir.as_point();
            let u2 = e2.cell.dir.as_point();
            let den = cross(&u1, &u2);
            if den.is_zero() {
                continue;
            }
            // p1 + εv + s·u1 = p2 + τ·u2, with d = p2 - p1 - εv
            let d0 = &e2.cell.base - &e1.cell.base;
            let dv = Point2::new(-&v.x, -&v.y);
            let s = Eps(cross(&d0, &u2) / &den, cross(&dv, &u2) / &den);
            let t = Eps(cross(&d0, &u1) / &den, cross(&dv, &u1) / &den);
            let inside = |x: &Eps, len: &Option<Rat>| -> Option<bool> {
                if *x == zero {
                    return None;
                }
                if let Some(l) = len {
                    let top = Eps(l.clone(), Rat::zero());
                    if *x == top {
                        return None;
                    }
                    return Some(*x > zero && *x < top);
                }
                Some(*x > zero)
            };
            let in1 = inside(&s, &e1.cell.len)?;
            let in2 = inside(&t, &e2.cell.len)?;
            if in1 && in2 {
                let p = e2.cell.point_at(&t.0);
                let mult = e1.weight as i64 * e2.weight as i64 * den.abs().to_i64().unwrap();
                div.add(DivPoint::Point(p), mult);
            }
        }
    }
    Some(div)
}

/// Stable intersection divisor, checked against a second displacement.
pub fn stable_divisor(c1: &TropCurve, c2: &TropCurve) -> Result<Divisor> {
    let mut found = displacement_candidates().filter_map(|v| stable_divisor_with(c1, c2, &v));
    let first = found.next().ok_or(Error::NoGenericDisplacement)?;
    let second = found.next().ok_or(Error::NoGenericDisplacement)?;
    if first != second {
        return Err(Error::GenericityFailure);
    }
    Ok(first)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, i64)>,
}

impl NewtonPolygon {
    pub fn from_support<I: IntoIterator<Item = (u32, u32)>>(it: I) -> Self {
        let pts: Vec<(i64, i64)> = it.into_iter().map(|(i, j)| (i as i64, j as i64)).collect();
        NewtonPolygon { vertices: convex_hull(&pts) }
    }
}

/// Mixed area `Area(N1 + N2) − Area(N1) − Area(N2)` with Euclidean area,
/// i.e. the Bernstein count. The twice-area difference is always even.
pub fn mixed_volume(n1: &NewtonPolygon, n2: &NewtonPolygon) -> i64 {
    let sum = minkowski_sum(&n1.vertices, &n2.vertices);
    (twice_area(&sum) - twice_area(&n1.vertices) - twice_area(&n2.vertices)) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;
    use crate::tropical_curve::{curve_of, TropPoly};

    fn tp(entries: &[((u32, u32), Rat)]) -> TropPoly {
        TropPoly::new(entries.iter().cloned())
    }

    fn line_at(a: Rat, b: Rat) -> TropCurve {
        // vertex at (a, b): min(0, w1 - a, w2 - b)
        curve_of(&tp(&[((0, 0), q(0, 1)), ((1, 0), -a), ((0, 1), -b)])).unwrap()
    }

    #[test]
    fn generic_lines_meet_in_a_point() {
        let l1 = line_at(q(0, 1), q(0, 1));
        let l2 = line_at(q(1, 1), q(-2, 1));
        let i = intersect_complex(&l1, &l2);
        assert!(i.is_finite());
        assert_eq!(i.points.len(), 1);
        let e = stable_divisor(&l1, &l2).unwrap();
        assert_eq!(e.degree(), 1);
        assert_eq!(e.support()[0].as_point(), Some(&i.points[0]));
    }

    #[test]
    fn identical_lines() {
        let l = line_at(q(0, 1), q(0, 1));
        let e = stable_divisor(&l, &l).unwrap();
        assert_eq!(e, Divisor::from_points([(Point2::origin(), 1)]));
        let i = intersect_complex(&l, &l);
        assert_eq!(i.rays.len(), 3);
        assert!(i.attachments.is_empty());
    }

    #[test]
    fn mixed_volumes() {
        let tri = NewtonPolygon::from_support([(0, 0), (1, 0), (0, 1)]);
        assert_eq!(mixed_volume(&tri, &tri), 1);
        let g = NewtonPolygon::from_support([(1, 0), (1, 1), (0, 1)]);
        assert_eq!(mixed_volume(&tri, &g), 2);
        let cubic = NewtonPolygon::from_support([(1, 0), (0, 2), (2, 1), (1, 1)]);
        assert_eq!(mixed_volume(&cubic, &cubic), 3);
    }
}
