//! Polyhedral cells of effective divisors equivalent to `E` on a finite tree
//! `S`, parameterised by the positions of their zeros.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::certificate::place;
use super::graph::{Location, MetricGraph};
use crate::divisor::{DivPoint, Divisor};
use crate::error::{Error, Result};
use crate::linalg::{rank, solve, Solution};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigVar {
    /// Lattice distance of the `index`-th zero on `arc` from the arc start.
    Zero { arc: usize, index: usize },
    /// Value of the certificate at a node.
    Value { node: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcPattern {
    pub arc: usize,
    pub zeros: u32,
    /// Slope at the arc start; it drops by one after each zero.
    pub start_slope: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlopePattern {
    pub arcs: Vec<ArcPattern>,
    pub node_zeros: Vec<(usize, u32)>,
}

/// `coeffs · v = rhs` for equalities and `coeffs · v ≤ rhs` for inequalities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

impl LinearConstraint {
    fn eval(&self, v: &[Rat]) -> Rat {
        self.coeffs.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    #[serde(flatten)]
    pub constraint: LinearConstraint,
    pub facet: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigCell {
    pub dim: usize,
    pub pattern: SlopePattern,
    pub variables: Vec<ConfigVar>,
    pub equalities: Vec<LinearConstraint>,
    pub inequalities: Vec<Inequality>,
    /// Vertices of the polytope, in `variables` coordinates.
    pub vertices: Vec<Vec<Rat>>,
    pub vertex_divisors: Vec<Divisor>,
    /// Centroid of the vertices.
    pub interior: Vec<Rat>,
}

impl ConfigCell {
    /// Whether `v` satisfies every constraint, with strict inequalities when
    /// `strict`.
    pub fn contains(&self, v: &[Rat], strict: bool) -> bool {
        self.equalities.iter().all(|c| c.eval(v) == c.rhs)
            && self.inequalities.iter().all(|i| {
                let x = i.constraint.eval(v);
                if strict {
                    x < i.constraint.rhs
                } else {
                    x <= i.constraint.rhs
                }
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSpace {
    /// The input graph refined at the support of `stable`; cells index its
    /// arcs and nodes.
    pub graph: MetricGraph,
    pub stable: Divisor,
    pub cells: Vec<ConfigCell>,
}

impl ConfigSpace {
    /// The zero divisor of the certificate at parameter point `v` of `cell`.
    pub fn divisor_at(&self, cell: &ConfigCell, v: &[Rat]) -> Divisor {
        let mut d = Divisor::new();
        for (var, x) in cell.variables.iter().zip(v) {
            if let ConfigVar::Zero { arc, .. } = var {
                d.add(DivPoint::Point(self.graph.point_on(*arc, x)), 1);
            }
        }
        for (v, m) in &cell.pattern.node_zeros {
            d.add(DivPoint::Point(self.graph.nodes[*v].pos.clone()), *m as i64);
        }
        d
    }
}

fn distributions(balls: u32, bins: usize) -> Vec<Vec<u32>> {
    if bins == 0 {
        return if balls == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=balls).rev() {
        for mut rest in distributions(balls - first, bins - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

struct Layout<'a> {
    g: &'a MetricGraph,
    e: BTreeMap<usize, i64>,
    seg_arcs: Vec<usize>,
    s_nodes: Vec<usize>,
    pinned: Vec<bool>,
}

impl Layout<'_> {
    fn slopes(&self, zeros: &BTreeMap<usize, u32>, node_zeros: &BTreeMap<usize, u32>) -> Option<Vec<i64>> {
        let col: BTreeMap<usize, usize> = self.seg_arcs.iter().enumerate().map(|(k, a)| (*a, k)).collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for &v in &self.s_nodes {
            let mut row = vec![Rat::zero(); self.seg_arcs.len()];
            let mut b = self.e.get(&v).copied().unwrap_or(0) - node_zeros.get(&v).copied().unwrap_or(0) as i64;
            for (a, starts) in self.g.incident(v) {
                let Some(&c) = col.get(&a) else { continue };
                if starts {
                    row[c] += &Rat::one();
                } else {
                    row[c] -= &Rat::one();
                    b -= zeros.get(&a).copied().unwrap_or(0) as i64;
                }
            }
            rows.push(row);
            rhs.push(Rat::from(b));
        }
        let s = match solve(&rows, &rhs, self.seg_arcs.len()) {
            Solution::Unique(s) => s,
            Solution::Family { particular, .. } => particular,
            Solution::Inconsistent => return None,
        };
        s.iter().map(Rat::to_i64).collect()
    }

    fn cell(&self, zeros: &BTreeMap<usize, u32>, node_zeros: &BTreeMap<usize, u32>) -> Option<ConfigCell> {
        let slopes = self.slopes(zeros, node_zeros)?;
        let mut variables = Vec::new();
        for &a in &self.seg_arcs {
            for index in 0..zeros.get(&a).copied().unwrap_or(0) as usize {
                variables.push(ConfigVar::Zero { arc: a, index });
            }
        }
        for &v in &self.s_nodes {
            if !self.pinned[v] {
                variables.push(ConfigVar::Value { node: v });
            }
        }
        let n = variables.len();
        let idx = |var: &ConfigVar| variables.iter().position(|w| w == var);

        let mut equalities = Vec::new();
        let mut inequalities = Vec::new();
        for (k, &a) in self.seg_arcs.iter().enumerate() {
            let arc = &self.g.arcs[a];
            let len = arc.length().unwrap().clone();
            let na = zeros.get(&a).copied().unwrap_or(0) as usize;
            let mut coeffs = vec![Rat::zero(); n];
            if let Some(c) = idx(&ConfigVar::Value { node: arc.to().unwrap() }) {
                coeffs[c] += &Rat::one();
            }
            if let Some(c) = idx(&ConfigVar::Value { node: arc.from }) {
                coeffs[c] -= &Rat::one();
            }
            for index in 0..na {
                coeffs[idx(&ConfigVar::Zero { arc: a, index }).unwrap()] -= &Rat::one();
            }
            equalities.push(LinearConstraint { coeffs, rhs: &Rat::from(slopes[k] - na as i64) * &len });
            for index in 0..=na {
                let mut coeffs = vec![Rat::zero(); n];
                let mut rhs = Rat::zero();
                if index > 0 {
                    coeffs[idx(&ConfigVar::Zero { arc: a, index: index - 1 }).unwrap()] = Rat::one();
                }
                if index < na {
                    coeffs[idx(&ConfigVar::Zero { arc: a, index }).unwrap()] = -Rat::one();
                } else {
                    rhs = len.clone();
                }
                if na > 0 {
                    inequalities.push(Inequality { constraint: LinearConstraint { coeffs, rhs }, facet: false });
                }
            }
        }

        let rows: Vec<Vec<Rat>> = equalities.iter().map(|c| c.coeffs.clone()).collect();
        let rhs: Vec<Rat> = equalities.iter().map(|c| c.rhs.clone()).collect();
        let (p, kernel) = match solve(&rows, &rhs, n) {
            Solution::Inconsistent => return None,
            Solution::Unique(p) => (p, Vec::new()),
            Solution::Family { particular, kernel } => (particular, kernel),
        };
        let d = kernel.len();
        let lift = |lam: &[Rat]| -> Vec<Rat> {
            let mut v = p.clone();
            for (l, k) in lam.iter().zip(&kernel) {
                for (vi, ki) in v.iter_mut().zip(k) {
                    *vi += &(l * ki);
                }
            }
            v
        };
        // inequalities in kernel coordinates
        let reduced: Vec<(Vec<Rat>, Rat)> = inequalities
            .iter()
            .map(|i| {
                let a = &i.constraint.coeffs;
                let row = kernel.iter().map(|k| a.iter().zip(k).map(|(x, y)| x * y).sum()).collect();
                (row, &i.constraint.rhs - &i.constraint.eval(&p))
            })
            .collect();
        let feasible = |lam: &[Rat]| {
            reduced.iter().all(|(row, b)| row.iter().zip(lam).map(|(x, y)| x * y).sum::<Rat>() <= *b)
        };
        let mut lams: Vec<Vec<Rat>> = Vec::new();
        if d == 0 {
            lams.push(Vec::new());
        } else {
            for pick in subsets(reduced.len(), d) {
                let a: Vec<Vec<Rat>> = pick.iter().map(|&i| reduced[i].0.clone()).collect();
                let b: Vec<Rat> = pick.iter().map(|&i| reduced[i].1.clone()).collect();
                if let Solution::Unique(lam) = solve(&a, &b, d) {
                    if feasible(&lam) && !lams.contains(&lam) {
                        lams.push(lam);
                    }
                }
            }
        }
        if lams.is_empty() {
            return None;
        }
        let count = Rat::from(lams.len() as i64);
        let centre: Vec<Rat> =
            (0..d).map(|j| lams.iter().map(|l| l[j].clone()).sum::<Rat>() / &count).collect();
        let strict = reduced
            .iter()
            .all(|(row, b)| row.iter().zip(&centre).map(|(x, y)| x * y).sum::<Rat>() < *b);
        if !strict {
            return None;
        }
        lams.sort();
        for (i, (row, b)) in inequalities.iter_mut().zip(&reduced) {
            let tight: Vec<&Vec<Rat>> =
                lams.iter().filter(|l| row.iter().zip(*l).map(|(x, y)| x * y).sum::<Rat>() == *b).collect();
            i.facet = d > 0
                && !tight.is_empty()
                && rank(&tight.iter().map(|l| l.iter().zip(tight[0]).map(|(a, b)| a - b).collect()).collect::<Vec<_>>())
                    == d - 1;
        }
        let vertices: Vec<Vec<Rat>> = lams.iter().map(|l| lift(l)).collect();
        let pattern = SlopePattern {
            arcs: self
                .seg_arcs
                .iter()
                .zip(&slopes)
                .map(|(a, s)| ArcPattern { arc: *a, zeros: zeros.get(a).copied().unwrap_or(0), start_slope: *s })
                .collect(),
            node_zeros: node_zeros.iter().filter(|(_, m)| **m > 0).map(|(v, m)| (*v, *m)).collect(),
        };
        Some(ConfigCell {
            dim: d,
            pattern,
            variables,
            equalities,
            inequalities,
            vertices,
            vertex_divisors: Vec::new(),
            interior: lift(&centre),
        })
    }

    /// Whether `d` lies in the closed polytope of `cell`.
    fn in_closure(&self, cell: &ConfigCell, d: &Divisor) -> bool {
        let mut interior: BTreeMap<usize, Vec<Rat>> = BTreeMap::new();
        let mut at_node: BTreeMap<usize, u32> = BTreeMap::new();
        for (p, c) in d.iter() {
            let Some(pt) = p.as_point() else { return false };
            match self.g.locate(pt) {
                Some(Location::Node(v)) => *at_node.entry(v).or_insert(0) += c as u32,
                Some(Location::Arc(a, s)) => interior.entry(a).or_default().extend(std::iter::repeat(s).take(c as usize)),
                None => return false,
            }
        }
        let want_node: BTreeMap<usize, u32> = cell.pattern.node_zeros.iter().cloned().collect();
        // per arc: how many zeros must come from its end nodes
        let mut deficits = Vec::new();
        for ap in &cell.pattern.arcs {
            let k = interior.get(&ap.arc).map_or(0, |v| v.len() as u32);
            if ap.zeros < k {
                return false;
            }
            deficits.push(ap.zeros - k);
        }
        let choices: Vec<Vec<u32>> = deficits.iter().map(|&m| (0..=m).collect()).collect();
        let mut pick = vec![0usize; choices.len()];
        loop {
            // pick[k] zeros of arc k sit at its start, the rest at its end
            let mut used: BTreeMap<usize, u32> = want_node.clone();
            for (k, ap) in cell.pattern.arcs.iter().enumerate() {
                let arc = &self.g.arcs[ap.arc];
                let from = choices[k][pick[k]];
                *used.entry(arc.from).or_insert(0) += from;
                *used.entry(arc.to().unwrap()).or_insert(0) += deficits[k] - from;
            }
            used.retain(|_, m| *m > 0);
            if used == at_node && self.fits(cell, &interior, &deficits, &choices, &pick) {
                return true;
            }
            let mut k = 0;
            loop {
                if k == pick.len() {
                    return false;
                }
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }

    fn fits(
        &self,
        cell: &ConfigCell,
        interior: &BTreeMap<usize, Vec<Rat>>,
        deficits: &[u32],
        choices: &[Vec<u32>],
        pick: &[usize],
    ) -> bool {
        let mut fixed: BTreeMap<usize, Rat> = BTreeMap::new();
        for (k, ap) in cell.pattern.arcs.iter().enumerate() {
            let len = self.g.arcs[ap.arc].length().unwrap().clone();
            let at_start = choices[k][pick[k]];
            let mut xs: Vec<Rat> = vec![Rat::zero(); at_start as usize];
            let mut mid = interior.get(&ap.arc).cloned().unwrap_or_default();
            mid.sort();
            xs.extend(mid);
            xs.extend(std::iter::repeat(len).take((deficits[k] - at_start) as usize));
            for (index, x) in xs.into_iter().enumerate() {
                let c = cell.variables.iter().position(|v| *v == ConfigVar::Zero { arc: ap.arc, index }).unwrap();
                fixed.insert(c, x);
            }
        }
        let free: Vec<usize> = (0..cell.variables.len()).filter(|c| !fixed.contains_key(c)).collect();
        let rows: Vec<Vec<Rat>> = cell.equalities.iter().map(|e| free.iter().map(|&c| e.coeffs[c].clone()).collect()).collect();
        let rhs: Vec<Rat> = cell
            .equalities
            .iter()
            .map(|e| &e.rhs - &fixed.iter().map(|(c, x)| &e.coeffs[*c] * x).sum::<Rat>())
            .collect();
        !matches!(solve(&rows, &rhs, free.len()), Solution::Inconsistent)
    }
}

/// Maximal cells of the space of effective divisors `D` of degree `deg E`
/// on `S` that admit a certificate against `E`.
pub fn configuration_space(g: &MetricGraph, e: &Divisor) -> Result<ConfigSpace> {
    if g.s_has_cycle() {
        return Err(Error::CyclicSubcomplexUnsupported);
    }
    if g.arcs.iter().any(|a| a.in_s && a.is_ray()) {
        return Err(Error::UnboundedSubcomplexUnsupported);
    }
    if !e.is_effective() {
        return Err(Error::Invalid("stable divisor must be effective".into()));
    }
    let placed = place(g, e)?;
    let r = placed.graph;
    let seg_arcs: Vec<usize> = (0..r.arcs.len()).filter(|&a| r.arcs[a].in_s).collect();
    let s_nodes: Vec<usize> = (0..r.nodes.len()).filter(|&v| r.nodes[v].in_s).collect();
    let mut pinned = vec![false; r.nodes.len()];
    for v in r.attachment_nodes() {
        pinned[v] = true;
    }
    let comps = r.s_components();
    for comp in &comps {
        if !comp.iter().any(|v| pinned[*v]) {
            pinned[comp[0]] = true;
        }
    }
    let layout = Layout { g: &r, e: placed.at_node.clone(), seg_arcs: seg_arcs.clone(), s_nodes, pinned };

    // per component: (arcs, nodes, degree)
    let mut per_comp: Vec<Vec<(BTreeMap<usize, u32>, BTreeMap<usize, u32>)>> = Vec::new();
    for comp in &comps {
        let arcs: Vec<usize> = seg_arcs.iter().copied().filter(|a| comp.contains(&r.arcs[*a].from)).collect();
        let deg: i64 = comp.iter().map(|v| placed.at_node.get(v).copied().unwrap_or(0)).sum();
        let mut opts = Vec::new();
        for dist in distributions(deg as u32, arcs.len() + comp.len()) {
            let z = arcs.iter().zip(&dist).map(|(a, n)| (*a, *n)).collect();
            let m = comp.iter().zip(&dist[arcs.len()..]).map(|(v, n)| (*v, *n)).collect();
            opts.push((z, m));
        }
        per_comp.push(opts);
    }
    let mut cells = Vec::new();
    let mut pick = vec![0usize; per_comp.len()];
    'outer: loop {
        let mut zeros = BTreeMap::new();
        let mut node_zeros = BTreeMap::new();
        for (k, opts) in per_comp.iter().enumerate() {
            zeros.extend(opts[pick[k]].0.clone());
            node_zeros.extend(opts[pick[k]].1.clone());
        }
        if let Some(c) = layout.cell(&zeros, &node_zeros) {
            cells.push(c);
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                break 'outer;
            }
            pick[k] += 1;
            if pick[k] < per_comp[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }

    let mut space = ConfigSpace { graph: r.clone(), stable: e.clone(), cells: Vec::new() };
    let interiors: Vec<Divisor> = cells.iter().map(|c| space.divisor_at(c, &c.interior)).collect();
    let mut maximal = Vec::new();
    for (i, c) in cells.iter().enumerate() {
        let covered = cells
            .iter()
            .any(|o| o.dim > c.dim && layout.in_closure(o, &interiors[i]));
        if !covered {
            maximal.push(c.clone());
        }
    }
    for c in maximal.iter_mut() {
        c.vertex_divisors = c.vertices.iter().map(|v| space.divisor_at(c, v)).collect();
    }
    maximal.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.pattern.cmp(&b.pattern)));
    space.cells = maximal;
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor_calculus::graph::graph_of_curve;
    use crate::geometry::Point2;
    use crate::parse::parse_poly;
    use crate::rat::q;
    use crate::stable_intersection::{intersect_complex, stable_divisor};
    use crate::tropical_curve::{curve_of, tropicalize_poly};

    fn setup(f: &str, g: &str) -> (MetricGraph, Divisor) {
        let cf = curve_of(&tropicalize_poly(&parse_poly(f).unwrap())).unwrap();
        let cg = curve_of(&tropicalize_poly(&parse_poly(g).unwrap())).unwrap();
        let gr = graph_of_curve(&cf, &intersect_complex(&cf, &cg)).unwrap();
        (gr, stable_divisor(&cf, &cg).unwrap())
    }

    #[test]
    fn segment_family() {
        let (g, e) = setup("1 + x + y", "x + x*y + t*y");
        let space = configuration_space(&g, &e).unwrap();
        assert_eq!(space.cells.len(), 1);
        let c = &space.cells[0];
        assert_eq!(c.dim, 1);
        let mut ends = c.vertex_divisors.clone();
        ends.sort_by_key(|d| d.support().len());
        assert_eq!(ends[0], Divisor::from_points([(Point2::new(q(1, 2), q(0, 1)), 2)]));
        assert_eq!(ends[1], e);
        let mid = space.divisor_at(c, &c.interior);
        assert_eq!(
            mid,
            Divisor::from_points([(Point2::new(q(1, 4), q(0, 1)), 1), (Point2::new(q(3, 4), q(0, 1)), 1)])
        );
    }

    #[test]
    fn single_point() {
        let mut g = MetricGraph::default();
        let a = g.add_node(Point2::origin(), true);
        let b = g.add_node(Point2::ints(1, 0), false);
        g.add_segment(a, b, false).unwrap();
        let e = Divisor::from_points([(Point2::origin(), 1)]);
        let space = configuration_space(&g, &e).unwrap();
        assert_eq!(space.cells.len(), 1);
        assert_eq!(space.cells[0].dim, 0);
        assert_eq!(space.cells[0].vertex_divisors, vec![e]);
    }

    #[test]
    fn unbounded_and_cyclic_are_refused() {
        let (g, e) = setup("1 + x + y", "1 + x + 2*y");
        assert!(matches!(configuration_space(&g, &e), Err(Error::UnboundedSubcomplexUnsupported)));
        let mut c = MetricGraph::default();
        let a = c.add_node(Point2::origin(), true);
        let b = c.add_node(Point2::ints(1, 0), true);
        let d = c.add_node(Point2::ints(0, 1), true);
        c.add_segment(a, b, true).unwrap();
        c.add_segment(b, d, true).unwrap();
        c.add_segment(d, a, true).unwrap();
        let e = Divisor::from_points([(Point2::origin(), 1)]);
        assert!(matches!(configuration_space(&c, &e), Err(Error::CyclicSubcomplexUnsupported)));
    }

    #[test]
    fn star_has_three_triangles() {
        let (g, e) = setup("x + y + x*y", "x + y + x*y + t*(x^2 + y^2 + 1)");
        let space = configuration_space(&g, &e).unwrap();
        assert_eq!(space.cells.len(), 3);
        assert!(space.cells.iter().all(|c| c.dim == 2 && c.vertices.len() == 3));
        let shared: Vec<Vec<&Divisor>> = space
            .cells
            .iter()
            .map(|c| c.vertex_divisors.iter().filter(|d| space.cells.iter().all(|o| o.vertex_divisors.contains(d))).collect())
            .collect();
        assert!(shared.iter().all(|s| s.len() == 2));
        assert!(shared[0].contains(&&e));
    }
}
