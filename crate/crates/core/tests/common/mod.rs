#![allow(dead_code)]

use rand::Rng;
use troplift::divisor_calculus::ArcPiece;
use troplift::*;

pub fn curves(f: &BivariatePoly, g: &BivariatePoly) -> (TropCurve, TropCurve) {
    (curve_of(&tropicalize_poly(f)).unwrap(), curve_of(&tropicalize_poly(g)).unwrap())
}

pub fn graph_and_stable(f: &BivariatePoly, g: &BivariatePoly) -> (MetricGraph, Divisor) {
    let (cf, cg) = curves(f, g);
    let gr = graph_of_curve(&cf, &intersect_complex(&cf, &cg)).unwrap();
    (gr, stable_divisor(&cf, &cg).unwrap())
}

pub fn pt(x: Rat, y: Rat) -> Point2 {
    Point2::new(x, y)
}

pub fn points(ps: &[(Rat, Rat, i64)]) -> Divisor {
    Divisor::from_points(ps.iter().map(|(x, y, c)| (pt(x.clone(), y.clone()), *c)))
}

/// A random rational with small numerator and denominator.
pub fn small_rat<R: Rng>(rng: &mut R, span: i64) -> Rat {
    q(rng.gen_range(-span..=span), rng.gen_range(1..=4))
}

/// A continuous function with integer slopes: random node values, two
/// pieces per segment, one break on each ray.
pub fn random_plfunc<R: Rng>(rng: &mut R, g: &MetricGraph) -> PLFunc {
    let node_values: Vec<Rat> = g.nodes.iter().map(|_| small_rat(rng, 6)).collect();
    let arcs = g
        .arcs
        .iter()
        .map(|arc| match (arc.to(), arc.length()) {
            (Some(to), Some(len)) => {
                let avg = (&node_values[to] - &node_values[arc.from]) / len;
                let a = avg.floor().to_i64().unwrap() + rng.gen_range(1..=3);
                let b = avg.ceil().to_i64().unwrap() - rng.gen_range(1..=3);
                // a·x + b·(len − x) = Δ
                let delta = &node_values[to] - &node_values[arc.from];
                let x = (&delta - &(&Rat::from(b) * len)) / Rat::from(a - b);
                ArcPiece { breaks: vec![x], slopes: vec![a, b] }
            }
            _ => {
                let s0 = rng.gen_range(-3..=3);
                let s1 = rng.gen_range(-3..=3);
                if s0 == s1 {
                    ArcPiece::linear(s0)
                } else {
                    ArcPiece { breaks: vec![q(rng.gen_range(1..=8), 2)], slopes: vec![s0, s1] }
                }
            }
        })
        .collect();
    PLFunc { node_values, arcs }
}

/// Multiplies every coefficient by a random unit `a + b·t^e` with `a ≠ 0`
/// and `e > 0`, keeping all valuations.
pub fn perturb<R: Rng>(rng: &mut R, f: &BivariatePoly) -> BivariatePoly {
    let mut out = BivariatePoly::default();
    for (&(i, j), c) in f.terms() {
        let mut a = 0;
        while a == 0 {
            a = rng.gen_range(-9..=9);
        }
        let unit = PuiseuxScalar::from_terms([
            (q(a, rng.gen_range(1..=5)), Rat::zero()),
            (q(rng.gen_range(-5..=5), 1), q(rng.gen_range(1..=6), 2)),
        ]);
        out.add_term((i, j), &(&unit * c));
    }
    out
}
