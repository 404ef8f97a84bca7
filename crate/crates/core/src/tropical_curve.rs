//! Min-plus tropical polynomials and their plane curves.
//!
//! The curve of `T = min (c_{ij} + i·w₁ + j·w₂)` is read off the regular
//! subdivision of the Newton polygon induced by lifting each monomial
//! `(i, j)` to height `c_{ij}`: lower faces of the lifted point set are dual
//! to curve vertices, interior dual edges to bounded segments and boundary
//! dual edges to rays.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, twice_area, Cell1, Point2, PrimitiveDir};
use crate::puiseux::BivariatePoly;
use crate::rat::Rat;

pub type Lattice = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropPoly {
    pub coeffs: BTreeMap<(u32, u32), Rat>,
}

impl TropPoly {
    pub fn new<I: IntoIterator<Item = ((u32, u32), Rat)>>(it: I) -> Self {
        TropPoly { coeffs: it.into_iter().collect() }
    }

    fn lifted(&self) -> Vec<(Lattice, Rat)> {
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| ((i as i64, j as i64), c.clone()))
            .collect()
    }

    /// Monomials attaining the minimum at `w`.
    pub fn argmin(&self, w: &Point2) -> Vec<(u32, u32)> {
        let vals: Vec<((u32, u32), Rat)> = self
            .coeffs
            .iter()
            .map(|(&(i, j), c)| ((i, j), term_value(c, i, j, w)))
            .collect();
        let Some(m) = vals.iter().map(|(_, v)| v).min().cloned() else {
            return Vec::new();
        };
        vals.into_iter().filter(|(_, v)| *v == m).map(|(k, _)| k).collect()
    }
}

fn term_value(c: &Rat, i: u32, j: u32, w: &Point2) -> Rat {
    c + &w.x * Rat::from_int(i as i64) + &w.y * Rat::from_int(j as i64)
}

/// Coefficientwise valuation.
pub fn tropicalize_poly(f: &BivariatePoly) -> TropPoly {
    TropPoly::new(
        f.terms()
            .iter()
            .filter_map(|(m, c)| c.val().map(|v| (*m, v))),
    )
}

/// `min (c_{ij} + i·w₁ + j·w₂)`; panics on an empty polynomial.
pub fn trop_eval(t: &TropPoly, w: &Point2) -> Rat {
    t.coeffs
        .iter()
        .map(|(&(i, j), c)| term_value(c, i, j, w))
        .min()
        .expect("empty tropical polynomial")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCell {
    /// Hull vertices, counter-clockwise. Two entries for a 1-dimensional
    /// Newton polygon.
    pub vertices: Vec<Lattice>,
    /// All support points whose lift lies on this face.
    pub points: Vec<Lattice>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSubdivision {
    pub cells: Vec<DualCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub ends: (usize, usize),
    pub weight: u32,
    /// Primitive direction from `ends.0` to `ends.1`.
    pub dir: PrimitiveDir,
    pub dual: (Lattice, Lattice),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub base: usize,
    pub dir: PrimitiveDir,
    pub weight: u32,
    pub dual: (Lattice, Lattice),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropCurve {
    pub vertices: Vec<Point2>,
    pub segments: Vec<Segment>,
    pub rays: Vec<Ray>,
    pub dual: DualSubdivision,
}

/// An edge of a curve viewed as a closed 1-cell.
#[derive(Clone, Debug)]
pub struct CurveEdge {
    pub cell: Cell1,
    pub weight: u32,
}

impl TropCurve {
    pub fn edges(&self) -> Vec<CurveEdge> {
        let segs = self.segments.iter().map(|s| CurveEdge {
            cell: Cell1::segment(&self.vertices[s.ends.0], &self.vertices[s.ends.1])
                .expect("degenerate segment"),
            weight: s.weight,
        });
        let rays = self.rays.iter().map(|r| CurveEdge {
            cell: Cell1::ray(self.vertices[r.base].clone(), r.dir),
            weight: r.weight,
        });
        segs.chain(rays).collect()
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.vertices.contains(p) || self.edges().iter().any(|e| e.cell.contains(p))
    }

    /// All primitive edge directions, used when choosing displacements.
    pub fn directions(&self) -> Vec<PrimitiveDir> {
        self.segments
            .iter()
            .map(|s| s.dir)
            .chain(self.rays.iter().map(|r| r.dir))
            .collect()
    }
}

/// Plane through three lifted points, as the vertex `w` it is dual to, or
/// `None` when the projections are collinear.
fn lower_plane(a: &(Lattice, Rat), b: &(Lattice, Rat), c: &(Lattice, Rat)) -> Option<(Rat, Rat, Rat)> {
    let (ux, uy, uz) = (
        Rat::from_int(b.0 .0 - a.0 .0),
        Rat::from_int(b.0 .1 - a.0 .1),
        &b.1 - &a.1,
    );
    let (vx, vy, vz) = (
        Rat::from_int(c.0 .0 - a.0 .0),
        Rat::from_int(c.0 .1 - a.0 .1),
        &c.1 - &a.1,
    );
    let nx = &uy * &vz - &uz * &vy;
    let ny = &uz * &vx - &ux * &vz;
    let nz = &ux * &vy - &uy * &vx;
    if nz.is_zero() {
        return None;
    }
    // orient so the normal points up
    if nz.is_negative() {
        Some((-nx, -ny, -nz))
    } else {
        Some((nx, ny, nz))
    }
}

/// Lower faces of the lifted support with their dual vertices.
fn lower_faces(lifted: &[(Lattice, Rat)]) -> Vec<(Point2, Vec<Lattice>)> {
    let n = lifted.len();
    let mut seen: BTreeSet<Vec<Lattice>> = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let Some((nx, ny, nz)) = lower_plane(&lifted[a], &lifted[b], &lifted[c]) else {
                    continue;
                };
                let pa = &lifted[a];
                let side = |p: &(Lattice, Rat)| {
                    &nx * Rat::from_int(p.0 .0 - pa.0 .0)
                        + &ny * Rat::from_int(p.0 .1 - pa.0 .1)
                        + &nz * (&p.1 - &pa.1)
                };
                let mut on = Vec::new();
                let mut ok = true;
                for p in lifted {
                    let s = side(p);
                    if s.is_negative() {
                        ok = false;
                        break;
                    }
                    if s.is_zero() {
                        on.push(p.0);
                    }
                }
                if !ok {
                    continue;
                }
                on.sort();
                if seen.insert(on.clone()) {
                    let w = Point2::new(&nx / &nz, &ny / &nz);
                    out.push((w, on));
                }
            }
        }
    }
    out
}

fn edge_key(a: Lattice, b: Lattice) -> (Lattice, Lattice) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Builds the tropical curve together with its dual subdivision.
pub fn curve_of(t: &TropPoly) -> Result<TropCurve> {
    if t.coeffs.len() < 2 {
        return Err(Error::EmptyCurve);
    }
    let lifted = t.lifted();
    let pts: Vec<Lattice> = lifted.iter().map(|p| p.0).collect();
    let hull = convex_hull(&pts);
    if hull.len() < 3 {
        return Ok(curve_of_collinear(&lifted));
    }

    let faces = lower_faces(&lifted);
    let mut vertices = Vec::new();
    let mut cells = Vec::new();
    let mut edge_cells: BTreeMap<(Lattice, Lattice), Vec<usize>> = BTreeMap::new();
    for (k, (w, on)) in faces.into_iter().enumerate() {
        let hv = convex_hull(&on);
        for e in 0..hv.len() {
            let key = edge_key(hv[e], hv[(e + 1) % hv.len()]);
            edge_cells.entry(key).or_default().push(k);
        }
        vertices.push(w);
        cells.push(DualCell { vertices: hv, points: on });
    }

    let mut segments = Vec::new();
    let mut rays = Vec::new();
    for (&(p, q), owners) in &edge_cells {
        let (_, weight) = PrimitiveDir::from_vector(q.0 - p.0, q.1 - p.1).expect("zero edge");
        match owners.as_slice() {
            [a, b] => {
                let d = &vertices[*b] - &vertices[*a];
                let (dir, _) = PrimitiveDir::of_displacement(&d).expect("coincident vertices");
                segments.push(Segment { ends: (*a, *b), weight: weight as u32, dir, dual: (p, q) });
            }
            [a] => {
                // inward normal of the boundary edge
                let (ex, ey) = (q.0 - p.0, q.1 - p.1);
                let (mut nx, mut ny) = (-ey, ex);
                let inner = cells[*a]
                    .vertices
                    .iter()
                    .map(|v| nx * (v.0 - p.0) + ny * (v.1 - p.1))
                    .find(|s| *s != 0)
                    .unwrap_or(0);
                if inner < 0 {
                    nx = -nx;
                    ny = -ny;
                }
                let (dir, _) = PrimitiveDir::from_vector(nx, ny).expect("zero normal");
                rays.push(Ray { base: *a, dir, weight: weight as u32, dual: (p, q) });
            }
            _ => unreachable!("dual edge shared by more than two cells"),
        }
    }
    Ok(TropCurve { vertices, segments, rays, dual: DualSubdivision { cells } })
}

/// Collinear support: the curve is a union of parallel lines, each stored
/// as a two-valent vertex with two opposite rays.
fn curve_of_collinear(lifted: &[(Lattice, Rat)]) -> TropCurve {
    let mut pts: Vec<(Lattice, Rat)> = lifted.to_vec();
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    let p0 = pts[0].0;
    let far = pts.last().unwrap().0;
    let (d, _) = PrimitiveDir::from_vector(far.0 - p0.0, far.1 - p0.1).expect("distinct points");
    let norm2 = d.0 * d.0 + d.1 * d.1;
    let line: Vec<(i64, Rat)> = pts
        .iter()
        .map(|(p, c)| (((p.0 - p0.0) * d.0 + (p.1 - p0.1) * d.1) / norm2, c.clone()))
        .collect();
    let hull = crate::puiseux::lower_hull_1d(&line);
    let at = |k: i64| (p0.0 + k * d.0, p0.1 + k * d.1);
    let (nx, ny) = (-d.1, d.0);
    let mut curve = TropCurve {
        vertices: Vec::new(),
        segments: Vec::new(),
        rays: Vec::new(),
        dual: DualSubdivision::default(),
    };
    for w in hull.windows(2) {
        let (k0, c0) = &w[0];
        let (k1, c1) = &w[1];
        let (a, b) = (at(*k0), at(*k1));
        let e = Point2::ints(b.0 - a.0, b.1 - a.1);
        let scale = (c0 - c1) / Rat::from_int(e.x.to_i64().unwrap().pow(2) + e.y.to_i64().unwrap().pow(2));
        let v = curve.vertices.len();
        curve.vertices.push(&e * &scale);
        let weight = (k1 - k0) as u32;
        for dir in [PrimitiveDir(nx, ny), PrimitiveDir(-nx, -ny)] {
            curve.rays.push(Ray { base: v, dir, weight, dual: (a, b) });
        }
        let on: Vec<Lattice> = pts
            .iter()
            .filter(|(p, _)| {
                let k = ((p.0 - p0.0) * d.0 + (p.1 - p0.1) * d.1) / norm2;
                k >= *k0 && k <= *k1
            })
            .map(|(p, _)| *p)
            .collect();
        curve.dual.cells.push(DualCell { vertices: vec![a, b], points: on });
    }
    curve
}

/// Every dual cell is a lattice triangle of normalised area one.
pub fn is_smooth(t: &TropPoly) -> bool {
    match curve_of(t) {
        Ok(c) => {
            !c.dual.cells.is_empty()
                && c.dual.cells.iter().all(|cell| cell.vertices.len() == 3 && twice_area(&cell.vertices) == 1)
        }
        Err(_) => false,
    }
}

/// Weighted sum of outgoing primitive directions at every vertex is zero.
pub fn check_balanced(c: &TropCurve) -> bool {
    let mut sums = vec![(0i64, 0i64); c.vertices.len()];
    for s in &c.segments {
        let w = s.weight as i64;
        sums[s.ends.0].0 += w * s.dir.0;
        sums[s.ends.0].1 += w * s.dir.1;
        sums[s.ends.1].0 -= w * s.dir.0;
        sums[s.ends.1].1 -= w * s.dir.1;
    }
    for r in &c.rays {
        let w = r.weight as i64;
        sums[r.base].0 += w * r.dir.0;
        sums[r.base].1 += w * r.dir.1;
    }
    sums.iter().all(|&s| s == (0, 0))
}
