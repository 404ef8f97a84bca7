//! Piecewise-linear functions with integer slopes on a metric graph, and
//! their divisors.

use serde::{Deserialize, Serialize};

use super::graph::MetricGraph;
use crate::divisor::{DivPoint, Divisor};
use crate::error::{Error, Result};
use crate::rat::Rat;

/// Restriction of a function to one arc. `breaks` are strictly increasing
/// lattice distances from the arc start, all inside the arc; `slopes` has one
/// more entry and is measured per lattice length in the arc direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcPiece {
    pub breaks: Vec<Rat>,
    pub slopes: Vec<i64>,
}

impl ArcPiece {
    pub fn constant() -> Self {
        ArcPiece { breaks: Vec::new(), slopes: vec![0] }
    }

    pub fn linear(slope: i64) -> Self {
        ArcPiece { breaks: Vec::new(), slopes: vec![slope] }
    }

    pub fn first_slope(&self) -> i64 {
        self.slopes[0]
    }

    pub fn last_slope(&self) -> i64 {
        *self.slopes.last().unwrap()
    }

    /// Change in value between the start and lattice distance `s`.
    pub fn rise(&self, s: &Rat) -> Rat {
        let mut total = Rat::zero();
        let mut prev = Rat::zero();
        for (k, slope) in self.slopes.iter().enumerate() {
            let stop = self.breaks.get(k).map_or(s.clone(), |b| b.clone().min(s.clone()));
            if stop > prev {
                total += &(&(&stop - &prev) * &Rat::from(*slope));
                prev = stop;
            }
            if &prev >= s {
                break;
            }
        }
        total
    }

    fn slope_at(&self, s: &Rat) -> i64 {
        let k = self.breaks.iter().take_while(|b| *b <= s).count();
        self.slopes[k]
    }

    /// Drops breakpoints whose neighbouring slopes agree.
    pub fn simplified(&self) -> ArcPiece {
        let mut breaks = Vec::new();
        let mut slopes = vec![self.slopes[0]];
        for (b, s) in self.breaks.iter().zip(&self.slopes[1..]) {
            if *s != *slopes.last().unwrap() {
                breaks.push(b.clone());
                slopes.push(*s);
            }
        }
        ArcPiece { breaks, slopes }
    }

    fn combine(&self, o: &ArcPiece, op: impl Fn(i64, i64) -> i64) -> ArcPiece {
        let mut breaks: Vec<Rat> = self.breaks.iter().chain(&o.breaks).cloned().collect();
        breaks.sort();
        breaks.dedup();
        let mut slopes = vec![op(self.slopes[0], o.slopes[0])];
        for b in &breaks {
            slopes.push(op(self.slope_at(b), o.slope_at(b)));
        }
        ArcPiece { breaks, slopes }.simplified()
    }
}

/// A tropical rational function on a [`MetricGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLFunc {
    pub node_values: Vec<Rat>,
    pub arcs: Vec<ArcPiece>,
}

/// Limit of a function along a ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndValue {
    Finite(Rat),
    PlusInfinity,
    MinusInfinity,
}

impl PLFunc {
    pub fn zero(g: &MetricGraph) -> Self {
        PLFunc { node_values: vec![Rat::zero(); g.nodes.len()], arcs: vec![ArcPiece::constant(); g.arcs.len()] }
    }

    /// Checks shape and continuity on `g`.
    pub fn validate(&self, g: &MetricGraph) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidFunction(m));
        if self.node_values.len() != g.nodes.len() || self.arcs.len() != g.arcs.len() {
            return bad("size does not match graph".into());
        }
        for (k, (piece, arc)) in self.arcs.iter().zip(&g.arcs).enumerate() {
            if piece.slopes.len() != piece.breaks.len() + 1 {
                return bad(format!("arc {k}: slope count"));
            }
            let inside = |b: &Rat| b.is_positive() && arc.length().map_or(true, |l| b < l);
            if !piece.breaks.iter().all(inside) || piece.breaks.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("arc {k}: breakpoints out of order or range"));
            }
            if let (Some(to), Some(l)) = (arc.to(), arc.length()) {
                let reached = &self.node_values[arc.from] + &piece.rise(l);
                if reached != self.node_values[to] {
                    return bad(format!("arc {k}: discontinuous at node {to}"));
                }
            }
        }
        Ok(())
    }

    /// Value at lattice distance `s` along arc `a`.
    pub fn value_on(&self, g: &MetricGraph, a: usize, s: &Rat) -> Rat {
        &self.node_values[g.arcs[a].from] + &self.arcs[a].rise(s)
    }

    pub fn end_value(&self, g: &MetricGraph, a: usize) -> Option<EndValue> {
        let arc = &g.arcs[a];
        arc.is_ray().then(|| {
            let p = &self.arcs[a];
            match p.last_slope() {
                0 => EndValue::Finite(self.value_on(g, a, p.breaks.last().unwrap_or(&Rat::zero()))),
                s if s > 0 => EndValue::PlusInfinity,
                _ => EndValue::MinusInfinity,
            }
        })
    }

    pub fn plus(&self, o: &PLFunc) -> PLFunc {
        PLFunc {
            node_values: self.node_values.iter().zip(&o.node_values).map(|(a, b)| a + b).collect(),
            arcs: self.arcs.iter().zip(&o.arcs).map(|(a, b)| a.combine(b, |x, y| x + y)).collect(),
        }
    }

    pub fn neg(&self) -> PLFunc {
        PLFunc {
            node_values: self.node_values.iter().map(|v| -v).collect(),
            arcs: self
                .arcs
                .iter()
                .map(|p| ArcPiece { breaks: p.breaks.clone(), slopes: p.slopes.iter().map(|s| -s).collect() })
                .collect(),
        }
    }

    pub fn add_const(&self, c: &Rat) -> PLFunc {
        PLFunc { node_values: self.node_values.iter().map(|v| v + c).collect(), arcs: self.arcs.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.node_values.iter().all(Rat::is_zero) && self.arcs.iter().all(|p| p.slopes.iter().all(|s| *s == 0))
    }
}

/// `ord_P(h)` is minus the sum of outgoing slopes at `P`; at a ray end it is
/// the slope toward infinity.
pub fn divisor_of(h: &PLFunc, g: &MetricGraph) -> Divisor {
    let mut d = Divisor::new();
    for (k, arc) in g.arcs.iter().enumerate() {
        let p = &h.arcs[k];
        d.add(DivPoint::Point(g.nodes[arc.from].pos.clone()), -p.first_slope());
        for (b, w) in p.breaks.iter().zip(p.slopes.windows(2)) {
            d.add(DivPoint::Point(g.point_on(k, b)), w[0] - w[1]);
        }
        match (arc.to(), arc.ray_end()) {
            (Some(to), _) => d.add(DivPoint::Point(g.nodes[to].pos.clone()), p.last_slope()),
            (None, Some(r)) => d.add(DivPoint::RayEnd(r.clone()), p.last_slope()),
            (None, None) => unreachable!(),
        }
    }
    d
}
