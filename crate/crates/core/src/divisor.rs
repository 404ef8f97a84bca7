//! Integer divisors on embedded tropical curves, including points at the
//! far end of unbounded rays.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{Point2, PrimitiveDir};

/// The point at infinity of a curve ray, named by the ray's original base
/// vertex and direction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct RayEnd {
    pub base: Point2,
    pub dir: PrimitiveDir,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivPoint {
    Point(Point2),
    RayEnd(RayEnd),
}

impl DivPoint {
    pub fn as_point(&self) -> Option<&Point2> {
        match self {
            DivPoint::Point(p) => Some(p),
            DivPoint::RayEnd(_) => None,
        }
    }
}

impl From<Point2> for DivPoint {
    fn from(p: Point2) -> Self {
        DivPoint::Point(p)
    }
}

impl fmt::Debug for DivPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivPoint::Point(p) => write!(f, "{p}"),
            DivPoint::RayEnd(r) => write!(f, "∞[{} + s{:?}]", r.base, r.dir),
        }
    }
}

/// Finite formal sum of points with nonzero integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Divisor {
    #[serde(with = "entries")]
    coeffs: BTreeMap<DivPoint, i64>,
}

mod entries {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        at: DivPoint,
        coeff: i64,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<DivPoint, i64>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = m.iter().map(|(k, c)| Entry { at: k.clone(), coeff: *c }).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<DivPoint, i64>, D::Error> {
        let v: Vec<Entry> = Vec::deserialize(d)?;
        let mut m = BTreeMap::new();
        for e in v {
            if e.coeff != 0 {
                *m.entry(e.at).or_insert(0) += e.coeff;
            }
        }
        m.retain(|_, c| *c != 0);
        Ok(m)
    }
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_points<I: IntoIterator<Item = (Point2, i64)>>(it: I) -> Self {
        let mut d = Divisor::new();
        for (p, c) in it {
            d.add(DivPoint::Point(p), c);
        }
        d
    }

    pub fn add(&mut self, p: DivPoint, c: i64) {
        let e = self.coeffs.entry(p.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&p);
        }
    }

    pub fn coeff(&self, p: &DivPoint) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Sum of positive coefficients.
    pub fn positive_degree(&self) -> i64 {
        self.coeffs.values().filter(|c| **c > 0).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| *c > 0)
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DivPoint, i64)> {
        self.coeffs.iter().map(|(k, v)| (k, *v))
    }

    pub fn support(&self) -> Vec<&DivPoint> {
        self.coeffs.keys().collect()
    }

    pub fn sub(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, c) in o.iter() {
            d.add(p.clone(), -c);
        }
        d
    }

    pub fn plus(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, c) in o.iter() {
            d.add(p.clone(), c);
        }
        d
    }

    pub fn neg(&self) -> Divisor {
        Divisor { coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

impl FromIterator<(DivPoint, i64)> for Divisor {
    fn from_iter<I: IntoIterator<Item = (DivPoint, i64)>>(iter: I) -> Self {
        let mut d = Divisor::new();
        for (p, c) in iter {
            d.add(p, c);
        }
        d
    }
}
