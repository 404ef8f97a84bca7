//! From concrete `f, g` to the tropical image `D` of their intersection and
//! an end-to-end check that `D − E` is principal on `Trop(f)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::divisor::{DivPoint, Divisor};
use crate::divisor_calculus::{find_certificate, graph_of_curve, MetricGraph, PLFunc};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::puiseux::{newton_root_valuations, resultant_wrt, BivariatePoly, Var};
use crate::rat::Rat;
use crate::stable_intersection::{intersect_complex, mixed_volume, stable_divisor, IntersectionComplex, NewtonPolygon};
use crate::tropical_curve::{curve_of, tropicalize_poly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionValuations {
    /// Valuations of the nonzero roots of `Res_y(f, g)`, with multiplicity.
    pub xvals: Vec<Rat>,
    /// Same for `Res_x(f, g)`.
    pub yvals: Vec<Rat>,
    /// Zero roots of the two resultants: intersections with a vanishing
    /// coordinate, outside the torus.
    pub dropped: (u32, u32),
}

pub fn intersection_valuations(f: &BivariatePoly, g: &BivariatePoly) -> Result<IntersectionValuations> {
    let rx = newton_root_valuations(&resultant_wrt(f, g, Var::Y)?);
    let ry = newton_root_valuations(&resultant_wrt(f, g, Var::X)?);
    Ok(IntersectionValuations { xvals: rx.expanded(), yvals: ry.expanded(), dropped: (rx.zero_roots, ry.zero_roots) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "divisors")]
pub enum Pairing {
    Unique(Divisor),
    /// Several matchings survive; all are listed.
    Ambiguous(Vec<Divisor>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assembly {
    pub pairing: Pairing,
    /// Distinct divisors from matchings that land on the intersection.
    pub admissible: usize,
}

fn next_permutation(v: &mut [Rat]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Candidate divisors from matching x- and y-valuations; when the counts
/// differ, the longer list is matched partially.
fn matchings(xvals: &[Rat], yvals: &[Rat]) -> BTreeSet<Divisor> {
    let swap = xvals.len() < yvals.len();
    let (long, short) = if swap { (yvals, xvals) } else { (xvals, yvals) };
    let mut perm = long.to_vec();
    perm.sort();
    let mut out = BTreeSet::new();
    loop {
        let d: Divisor = perm
            .iter()
            .zip(short)
            .map(|(a, b)| {
                let p = if swap { Point2::new(b.clone(), a.clone()) } else { Point2::new(a.clone(), b.clone()) };
                (DivPoint::Point(p), 1)
            })
            .collect();
        out.insert(d);
        if !next_permutation(&mut perm) {
            return out;
        }
    }
}

/// Pairs coordinates into points on `i`, using certificates on `g` to break
/// ties.
pub fn assemble_divisor(
    xvals: &[Rat],
    yvals: &[Rat],
    i: &IntersectionComplex,
    e: &Divisor,
    g: &MetricGraph,
) -> Result<Assembly> {
    let on_i: Vec<Divisor> = matchings(xvals, yvals)
        .into_iter()
        .filter(|d| d.support().iter().all(|p| p.as_point().is_some_and(|p| i.contains(p))))
        .collect();
    let admissible = on_i.len();
    let pairing = match on_i.len() {
        0 => return Err(Error::NoAdmissiblePairing),
        1 => Pairing::Unique(on_i[0].clone()),
        _ => {
            let mut certified = Vec::new();
            for d in &on_i {
                if d.degree() == e.degree() && find_certificate(g, d, e)?.is_some() {
                    certified.push(d.clone());
                }
            }
            match certified.len() {
                1 => Pairing::Unique(certified.remove(0)),
                0 => Pairing::Ambiguous(on_i),
                _ => Pairing::Ambiguous(certified),
            }
        }
    };
    Ok(Assembly { pairing, admissible })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    /// Stable intersection `E`.
    pub stable: Divisor,
    /// Tropical image `D` of the torus intersection points.
    pub image: Divisor,
    /// Other surviving pairings, if the pairing was ambiguous.
    pub alternatives: Vec<Divisor>,
    pub admissible_matchings: usize,
    /// Ray-end points added to `D` to make up for intersections outside the
    /// torus.
    pub ray_end_completion: Divisor,
    pub valuations: IntersectionValuations,
    pub mixed_volume: i64,
    pub complex: IntersectionComplex,
    /// `Trop(f)` as a metric graph; the certificate lives here.
    pub graph: MetricGraph,
    pub certificate: Option<PLFunc>,
    /// No certificate exists for valid input.
    pub falsified: bool,
}

fn multisets(k: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in multisets(k, n - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for i in lo..k {
            let mut v = rest.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

/// Runs the whole pipeline on `f, g`.
pub fn verify_main_theorem(f: &BivariatePoly, g: &BivariatePoly) -> Result<LiftReport> {
    let cf = curve_of(&tropicalize_poly(f))?;
    let cg = curve_of(&tropicalize_poly(g))?;
    let complex = intersect_complex(&cf, &cg);
    let stable = stable_divisor(&cf, &cg)?;
    let valuations = intersection_valuations(f, g)?;
    let graph = graph_of_curve(&cf, &complex)?;
    let mv = mixed_volume(&NewtonPolygon::from_support(f.support()), &NewtonPolygon::from_support(g.support()));

    let (image, alternatives, admissible) = if valuations.xvals.is_empty() || valuations.yvals.is_empty() {
        (Divisor::new(), Vec::new(), 1)
    } else {
        let asm = assemble_divisor(&valuations.xvals, &valuations.yvals, &complex, &stable, &graph)?;
        match asm.pairing {
            Pairing::Unique(d) => (d, Vec::new(), asm.admissible),
            Pairing::Ambiguous(mut ds) => {
                let first = ds.remove(0);
                (first, ds, asm.admissible)
            }
        }
    };

    let deficit = stable.degree() - image.degree();
    let mut completion = Divisor::new();
    let mut certificate = None;
    if deficit == 0 {
        certificate = find_certificate(&graph, &image, &stable)?;
    } else if deficit > 0 {
        let rays: Vec<_> =
            graph.arcs.iter().filter(|a| a.in_s).filter_map(|a| a.ray_end().cloned()).collect();
        for pick in multisets(rays.len(), deficit as usize) {
            if rays.is_empty() {
                break;
            }
            let extra: Divisor = pick.iter().map(|&k| (DivPoint::RayEnd(rays[k].clone()), 1)).collect();
            if let Some(h) = find_certificate(&graph, &image.plus(&extra), &stable)? {
                completion = extra;
                certificate = Some(h);
                break;
            }
        }
    }
    Ok(LiftReport {
        falsified: certificate.is_none(),
        stable,
        image,
        alternatives,
        admissible_matchings: admissible,
        ray_end_completion: completion,
        valuations,
        mixed_volume: mv,
        complex,
        graph,
        certificate,
    })
}
