//! Deciding whether `D − E` is the divisor of a function supported on `S`.

use std::collections::BTreeMap;

use super::graph::{Location, MetricGraph};
use super::plfunc::{ArcPiece, PLFunc};
use crate::divisor::{DivPoint, Divisor};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::linalg::{solve, Solution};
use crate::rat::Rat;

/// `D − E` placed on a graph refined at its support: integer weight per node
/// and per ray arc.
pub(crate) struct Placed {
    pub graph: MetricGraph,
    pub pieces: Vec<Vec<usize>>,
    pub at_node: BTreeMap<usize, i64>,
    pub at_ray: BTreeMap<usize, i64>,
}

/// Checks that `t` is supported on `S` and refines `g` at its finite points.
pub(crate) fn place(g: &MetricGraph, t: &Divisor) -> Result<Placed> {
    let mut cuts: Vec<Point2> = Vec::new();
    for (p, _) in t.iter() {
        match p {
            DivPoint::Point(pt) => {
                let ok = match g.locate(pt) {
                    Some(Location::Node(v)) => g.nodes[v].in_s,
                    Some(Location::Arc(a, _)) => g.arcs[a].in_s,
                    None => false,
                };
                if !ok {
                    return Err(Error::SupportOutsideS(pt.to_string()));
                }
                cuts.push(pt.clone());
            }
            DivPoint::RayEnd(r) => {
                if !g.ray_arc_of(r).is_some_and(|a| g.arcs[a].in_s) {
                    return Err(Error::SupportOutsideS(format!("{p:?}")));
                }
            }
        }
    }
    let (graph, pieces) = g.refine(&cuts);
    let mut at_node = BTreeMap::new();
    let mut at_ray = BTreeMap::new();
    for (p, c) in t.iter() {
        match p {
            DivPoint::Point(pt) => {
                let Some(Location::Node(v)) = graph.locate(pt) else { unreachable!("refined at {pt}") };
                *at_node.entry(v).or_insert(0) += c;
            }
            DivPoint::RayEnd(r) => {
                *at_ray.entry(graph.ray_arc_of(r).unwrap()).or_insert(0) += c;
            }
        }
    }
    Ok(Placed { graph, pieces, at_node, at_ray })
}

/// A function `h` with `(h) = D − E`, vanishing on `Γ ∖ S` and at every
/// attachment node, if one exists. The function is unique when it exists:
/// its node values solve a Laplacian system with the attachment nodes (or one
/// anchor per free component) pinned at zero, and every resulting slope must
/// be an integer.
pub fn find_certificate(g: &MetricGraph, d: &Divisor, e: &Divisor) -> Result<Option<PLFunc>> {
    let t = d.sub(e);
    let Placed { graph: r, pieces, at_node, at_ray } = place(g, &t)?;

    let attach = r.attachment_nodes();
    let mut pinned = vec![false; r.nodes.len()];
    for &v in &attach {
        pinned[v] = true;
    }
    for comp in r.s_components() {
        if !comp.iter().any(|v| pinned[*v]) {
            pinned[comp[0]] = true;
        }
    }
    let mut col = vec![usize::MAX; r.nodes.len()];
    let mut ncols = 0;
    for v in 0..r.nodes.len() {
        if r.nodes[v].in_s && !pinned[v] {
            col[v] = ncols;
            ncols += 1;
        }
    }

    // Σ outgoing slopes at v = −T(v), where the slope out of v along a
    // segment is (φ(w) − φ(v))/len and along a ray is T(ray end).
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for v in 0..r.nodes.len() {
        if !r.nodes[v].in_s {
            continue;
        }
        let mut row = vec![Rat::zero(); ncols];
        let mut b = Rat::from(-at_node.get(&v).copied().unwrap_or(0));
        for (a, _) in r.incident(v) {
            let arc = &r.arcs[a];
            if !arc.in_s {
                continue;
            }
            match (arc.to(), arc.length()) {
                (Some(to), Some(len)) => {
                    let w = if arc.from == v { to } else { arc.from };
                    let inv = len.recip();
                    if col[w] != usize::MAX {
                        row[col[w]] += &inv;
                    }
                    if col[v] != usize::MAX {
                        row[col[v]] -= &inv;
                    }
                }
                _ => b -= &Rat::from(at_ray.get(&a).copied().unwrap_or(0)),
            }
        }
        rows.push(row);
        rhs.push(b);
    }
    let phi_free = match solve(&rows, &rhs, ncols) {
        Solution::Inconsistent => return Ok(None),
        Solution::Unique(x) => x,
        Solution::Family { particular, .. } => particular,
    };
    let phi: Vec<Rat> = (0..r.nodes.len())
        .map(|v| if col[v] == usize::MAX { Rat::zero() } else { phi_free[col[v]].clone() })
        .collect();

    let mut slopes = Vec::with_capacity(r.arcs.len());
    for (a, arc) in r.arcs.iter().enumerate() {
        let s = if !arc.in_s {
            Rat::zero()
        } else {
            match (arc.to(), arc.length()) {
                (Some(to), Some(len)) => (&phi[to] - &phi[arc.from]) / len,
                _ => Rat::from(at_ray.get(&a).copied().unwrap_or(0)),
            }
        };
        match s.to_i64() {
            Some(k) => slopes.push(k),
            None => return Ok(None),
        }
    }

    let mut arcs = Vec::with_capacity(g.arcs.len());
    for chain in &pieces {
        let mut breaks = Vec::new();
        let mut sl = vec![slopes[chain[0]]];
        let mut offset = Rat::zero();
        for w in chain.windows(2) {
            offset += r.arcs[w[0]].length().unwrap();
            breaks.push(offset.clone());
            sl.push(slopes[w[1]]);
        }
        arcs.push(ArcPiece { breaks, slopes: sl }.simplified());
    }
    let node_values = phi[..g.nodes.len()].to_vec();
    Ok(Some(PLFunc { node_values, arcs }))
}
