//! Exact planar geometry: points, primitive lattice directions, closed
//! segments and rays, lattice polygons.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point2 {
    pub x: Rat,
    pub y: Rat,
}

impl Point2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point2 { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point2::new(Rat::from_int(x), Rat::from_int(y))
    }

    pub fn origin() -> Self {
        Point2::ints(0, 0)
    }

    /// `self + s·d`
    pub fn along(&self, d: PrimitiveDir, s: &Rat) -> Point2 {
        Point2::new(
            &self.x + s * Rat::from_int(d.0),
            &self.y + s * Rat::from_int(d.1),
        )
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a, 'b> Add<&'b Point2> for &'a Point2 {
    type Output = Point2;
    fn add(self, o: &'b Point2) -> Point2 {
        Point2::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl<'a, 'b> Sub<&'b Point2> for &'a Point2 {
    type Output = Point2;
    fn sub(self, o: &'b Point2) -> Point2 {
        Point2::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl<'a, 'b> Mul<&'b Rat> for &'a Point2 {
    type Output = Point2;
    fn mul(self, s: &'b Rat) -> Point2 {
        Point2::new(&self.x * s, &self.y * s)
    }
}

pub fn cross(a: &Point2, b: &Point2) -> Rat {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Point2, b: &Point2) -> Rat {
    &a.x * &b.x + &a.y * &b.y
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Primitive integer direction: `gcd(|u₁|,|u₂|) = 1`, never `(0,0)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimitiveDir(pub i64, pub i64);

impl PrimitiveDir {
    /// Normalises an integer vector; returns the direction and the lattice
    /// length (the gcd).
    pub fn from_vector(a: i64, b: i64) -> Option<(PrimitiveDir, i64)> {
        let g = gcd(a, b);
        (g != 0).then(|| (PrimitiveDir(a / g, b / g), g))
    }

    /// Direction and lattice length of a rational displacement `d`, when `d`
    /// is a rational multiple of an integer vector (always true in ℚ²).
    pub fn of_displacement(d: &Point2) -> Option<(PrimitiveDir, Rat)> {
        if d.x.is_zero() && d.y.is_zero() {
            return None;
        }
        // scale by lcm of denominators, then reduce
        let den = num::integer::lcm(d.x.denom().clone(), d.y.denom().clone());
        let a = &d.x * Rat::from(den.clone());
        let b = &d.y * Rat::from(den.clone());
        let (ai, bi) = (a.numer().clone(), b.numer().clone());
        let g = num::integer::gcd(ai.clone(), bi.clone());
        let u = (
            num::ToPrimitive::to_i64(&(&ai / &g))?,
            num::ToPrimitive::to_i64(&(&bi / &g))?,
        );
        let len = Rat::from_big(g, den);
        Some((PrimitiveDir(u.0, u.1), len))
    }

    pub fn neg(self) -> PrimitiveDir {
        PrimitiveDir(-self.0, -self.1)
    }

    pub fn as_point(self) -> Point2 {
        Point2::ints(self.0, self.1)
    }

    pub fn det(self, o: PrimitiveDir) -> i64 {
        self.0 * o.1 - self.1 * o.0
    }
}

impl fmt::Debug for PrimitiveDir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.0, self.1)
    }
}

/// Closed segment `{p + s·u : 0 ≤ s ≤ len}` or ray `{p + s·u : s ≥ 0}`,
/// with `u` primitive so `s` is lattice length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell1 {
    pub base: Point2,
    pub dir: PrimitiveDir,
    /// `None` for a ray.
    pub len: Option<Rat>,
}

/// Result of intersecting two closed 1-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    Empty,
    Point(Point2),
    Cell(Cell1),
}

impl Cell1 {
    pub fn segment(a: &Point2, b: &Point2) -> Option<Cell1> {
        let (dir, len) = PrimitiveDir::of_displacement(&(b - a))?;
        Some(Cell1 { base: a.clone(), dir, len: Some(len) })
    }

    pub fn ray(base: Point2, dir: PrimitiveDir) -> Cell1 {
        Cell1 { base, dir, len: None }
    }

    pub fn end(&self) -> Option<Point2> {
        self.len.as_ref().map(|l| self.base.along(self.dir, l))
    }

    pub fn point_at(&self, s: &Rat) -> Point2 {
        self.base.along(self.dir, s)
    }

    fn in_range(&self, s: &Rat) -> bool {
        !s.is_negative() && self.len.as_ref().map_or(true, |l| s <= l)
    }

    /// Lattice parameter of `p` along the carrier line, if `p` is on it.
    pub fn param_of(&self, p: &Point2) -> Option<Rat> {
        let d = p - &self.base;
        let u = self.dir.as_point();
        if !cross(&u, &d).is_zero() {
            return None;
        }
        Some(dot(&u, &d) / dot(&u, &u))
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.param_of(p).is_some_and(|s| self.in_range(&s))
    }

    /// Contains `p` in its relative interior.
    pub fn contains_interior(&self, p: &Point2) -> bool {
        self.param_of(p).is_some_and(|s| {
            s.is_positive() && self.len.as_ref().map_or(true, |l| &s < l)
        })
    }

    pub fn meet(&self, o: &Cell1) -> Meet {
        let u1 = self.dir.as_point();
        let u2 = o.dir.as_point();
        let den = cross(&u1, &u2);
        let d = &o.base - &self.base;
        if !den.is_zero() {
            let s = cross(&d, &u2) / &den;
            let t = cross(&d, &u1) / &den;
            if self.in_range(&s) && o.in_range(&t) {
                return Meet::Point(self.point_at(&s));
            }
            return Meet::Empty;
        }
        if !cross(&u1, &d).is_zero() {
            return Meet::Empty;
        }
        // collinear: interval of `o` in self's parameter
        let s0 = dot(&u1, &d) / dot(&u1, &u1);
        let same = dot(&u1, &u2).is_positive();
        // bounds as Option (None = infinite)
        let (olo, ohi): (Option<Rat>, Option<Rat>) = match (&o.len, same) {
            (Some(l), true) => (Some(s0.clone()), Some(&s0 + l)),
            (Some(l), false) => (Some(&s0 - l), Some(s0.clone())),
            (None, true) => (Some(s0.clone()), None),
            (None, false) => (None, Some(s0.clone())),
        };
        let lo = match olo {
            Some(v) => v.max(Rat::zero()),
            None => Rat::zero(),
        };
        let hi = match (ohi, &self.len) {
            (Some(a), Some(b)) => Some(a.min(b.clone())),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        };
        match hi {
            Some(h) => match lo.cmp(&h) {
                Ordering::Greater => Meet::Empty,
                Ordering::Equal => Meet::Point(self.point_at(&lo)),
                Ordering::Less => Meet::Cell(Cell1 {
                    base: self.point_at(&lo),
                    dir: self.dir,
                    len: Some(&h - &lo),
                }),
            },
            None => Meet::Cell(Cell1::ray(self.point_at(&lo), self.dir)),
        }
    }
}

/// Convex hull of integer points, counter-clockwise, collinear points
/// removed. Degenerate inputs return 1 or 2 points.
pub fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let turn = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Twice the Euclidean area of a lattice polygon given by its hull vertices.
pub fn twice_area(hull: &[(i64, i64)]) -> i64 {
    if hull.len() < 3 {
        return 0;
    }
    let mut s = 0;
    for k in 0..hull.len() {
        let (a, b) = (hull[k], hull[(k + 1) % hull.len()]);
        s += a.0 * b.1 - a.1 * b.0;
    }
    s.abs()
}

pub fn minkowski_sum(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let sums: Vec<(i64, i64)> = a
        .iter()
        .flat_map(|p| b.iter().map(move |q| (p.0 + q.0, p.1 + q.1)))
        .collect();
    convex_hull(&sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn displacement_normalisation() {
        let (d, l) = PrimitiveDir::of_displacement(&Point2::new(q(3, 2), q(3, 2))).unwrap();
        assert_eq!(d, PrimitiveDir(1, 1));
        assert_eq!(l, q(3, 2));
        let (d, l) = PrimitiveDir::of_displacement(&Point2::new(q(-2, 1), q(4, 1))).unwrap();
        assert_eq!(d, PrimitiveDir(-1, 2));
        assert_eq!(l, q(2, 1));
    }

    #[test]
    fn transversal_and_collinear_meets() {
        let h = Cell1::segment(&Point2::ints(0, 0), &Point2::ints(2, 0)).unwrap();
        let v = Cell1::ray(Point2::ints(1, -1), PrimitiveDir(0, 1));
        assert_eq!(h.meet(&v), Meet::Point(Point2::ints(1, 0)));
        let r = Cell1::ray(Point2::ints(1, 0), PrimitiveDir(-1, 0));
        assert_eq!(
            h.meet(&r),
            Meet::Cell(Cell1::segment(&Point2::ints(0, 0), &Point2::ints(1, 0)).unwrap())
        );
        let away = Cell1::ray(Point2::ints(2, 0), PrimitiveDir(1, 0));
        assert_eq!(h.meet(&away), Meet::Point(Point2::ints(2, 0)));
        let r2 = Cell1::ray(Point2::ints(-5, 0), PrimitiveDir(1, 0));
        let r3 = Cell1::ray(Point2::ints(0, 0), PrimitiveDir(1, 0));
        assert_eq!(r2.meet(&r3), Meet::Cell(r3.clone()));
    }

    #[test]
    fn hull_and_area() {
        let h = convex_hull(&[(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)]);
        assert_eq!(h, vec![(0, 0), (2, 0), (0, 2)]);
        assert_eq!(twice_area(&h), 4);
        let m = minkowski_sum(&[(0, 0), (1, 0), (0, 1)], &[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(twice_area(&m), 4);
    }
}
