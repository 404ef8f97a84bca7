//! Acceptance criteria AC1–AC8. Prints one line per criterion and exits
//! nonzero if any fails. All comparisons are exact.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use troplift::divisor_calculus::EndValue;
use troplift::fixtures::*;
use troplift::stable_intersection::{displacement_candidates, stable_divisor_with};
use troplift::tropical_curve::TropPoly;
use troplift::*;

use common::*;

type Check = Result<(), String>;

const SEED: u64 = 0x7209_1ac5;
const RANDOM_SUPPORTS: usize = 50;
const RANDOM_PLFUNCS: usize = 100;
const STRESS_PER_FAMILY: usize = 20;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn certified(r: &LiftReport) -> Check {
    let h = r.certificate.as_ref().ok_or("no certificate")?;
    h.validate(&r.graph).map_err(|e| e.to_string())?;
    let target = r.image.plus(&r.ray_end_completion).sub(&r.stable);
    ensure!(divisor_of(h, &r.graph) == target, "certificate divisor mismatch");
    Ok(())
}

fn ac1() -> Check {
    let (f, g) = line_conic_generic();
    let (cf, cg) = curves(&f, &g);
    let e = stable_divisor(&cf, &cg).map_err(|e| e.to_string())?;
    let want_e = points(&[(q(0, 1), q(0, 1), 1), (q(1, 1), q(0, 1), 1)]);
    ensure!(e == want_e, "stable divisor {e:?}");
    for r in [q(1, 4), q(1, 3), q(2, 5), q(1, 2), q(3, 4)] {
        let (f, g) = line_conic(&r);
        let rep = verify_main_theorem(&f, &g).map_err(|e| e.to_string())?;
        let want = if r < q(1, 2) {
            points(&[(r.clone(), q(0, 1), 1), (&Rat::one() - &r, q(0, 1), 1)])
        } else {
            points(&[(q(1, 2), q(0, 1), 2)])
        };
        ensure!(rep.image == want, "r = {r}: D = {:?}", rep.image);
        certified(&rep).map_err(|m| format!("r = {r}: {m}"))?;
    }
    Ok(())
}

fn ac2() -> Check {
    let (f, g) = conic_pair();
    let rep = verify_main_theorem(&f, &g).map_err(|e| e.to_string())?;
    let want_d = points(&[
        (q(2, 3), q(2, 3), 1),
        (q(0, 1), q(-2, 3), 1),
        (q(-1, 2), q(0, 1), 1),
        (q(-1, 6), q(0, 1), 1),
    ]);
    let want_e = points(&[
        (q(-1, 1), q(0, 1), 1),
        (q(0, 1), q(-1, 1), 1),
        (q(1, 1), q(1, 1), 1),
        (q(0, 1), q(0, 1), 1),
    ]);
    ensure!(rep.image == want_d, "D = {:?}", rep.image);
    ensure!(rep.stable == want_e, "E = {:?}", rep.stable);
    certified(&rep)?;
    let div = divisor_of(rep.certificate.as_ref().unwrap(), &rep.graph);
    let poles: Divisor = div.iter().filter(|(_, c)| *c < 0).map(|(p, c)| (p.clone(), -c)).collect();
    ensure!(poles == want_e, "poles {poles:?}");
    Ok(())
}

fn ac3() -> Check {
    let (f, g) = conic_pair();
    let (gr, e) = graph_and_stable(&f, &g);
    let space = configuration_space(&gr, &e).map_err(|e| e.to_string())?;
    ensure!(space.cells.len() == 3, "{} maximal cells", space.cells.len());
    ensure!(space.cells.iter().all(|c| c.dim == 2), "dimensions {:?}", space.cells.iter().map(|c| c.dim).collect::<Vec<_>>());
    let verts: Vec<BTreeSet<Divisor>> = space.cells.iter().map(|c| c.vertex_divisors.iter().cloned().collect()).collect();
    let origin4 = points(&[(q(0, 1), q(0, 1), 4)]);
    let shared: BTreeSet<Divisor> = [origin4.clone(), e.clone()].into_iter().collect();
    for i in 0..3 {
        for j in i + 1..3 {
            let common: BTreeSet<Divisor> = verts[i].intersection(&verts[j]).cloned().collect();
            ensure!(common == shared, "cells {i},{j} share {common:?}");
        }
    }
    // family vertex at p = 1, r = 1/2 for types (i), (ii), (iii)
    let far = [
        points(&[(q(-1, 2), q(0, 1), 2), (q(0, 1), q(-1, 1), 1), (q(1, 1), q(1, 1), 1)]),
        points(&[(q(-1, 1), q(0, 1), 1), (q(0, 1), q(-1, 2), 2), (q(1, 1), q(1, 1), 1)]),
        points(&[(q(-1, 1), q(0, 1), 1), (q(0, 1), q(-1, 1), 1), (q(1, 2), q(1, 2), 2)]),
    ];
    for (k, v) in far.iter().enumerate() {
        let want: BTreeSet<Divisor> = [origin4.clone(), e.clone(), v.clone()].into_iter().collect();
        ensure!(verts.contains(&want), "type {} triangle missing", k + 1);
    }
    // interior points are type-(i)-(iii) configurations with 0 < r < p/2
    for c in &space.cells {
        let d = space.divisor_at(c, &c.interior);
        ensure!(d.degree() == 4 && d.is_effective(), "interior {d:?}");
        ensure!(find_certificate(&space.graph, &d, &e).map_err(|e| e.to_string())?.is_some(), "interior not certified");
    }
    Ok(())
}

fn ac4() -> Check {
    for r in [q(1, 2), q(1, 1), q(5, 3)] {
        let wants = [(r.clone(), q(0, 1)), (q(0, 1), r.clone()), (-&r, -&r)];
        for (fam, (x, y)) in wants.into_iter().enumerate() {
            let (f, g) = double_line(fam, &r);
            let rep = verify_main_theorem(&f, &g).map_err(|e| e.to_string())?;
            ensure!(rep.image == points(&[(x, y, 1)]), "family {fam}, r = {r}: D = {:?}", rep.image);
            certified(&rep).map_err(|m| format!("family {fam}, r = {r}: {m}"))?;
        }
    }
    let (f, g) = double_line(0, &q(1, 2));
    let (gr, e) = graph_and_stable(&f, &g);
    for a in (0..gr.arcs.len()).filter(|&a| gr.arcs[a].is_ray()) {
        let end = gr.arcs[a].ray_end().unwrap().clone();
        let d: Divisor = [(DivPoint::RayEnd(end), 1)].into_iter().collect();
        let h = find_certificate(&gr, &d, &e).map_err(|e| e.to_string())?.ok_or("no ray-end certificate")?;
        ensure!(h.arcs[a].slopes == vec![1], "ray slopes {:?}", h.arcs[a].slopes);
        ensure!(h.end_value(&gr, a) == Some(EndValue::PlusInfinity), "end value");
        ensure!(divisor_of(&h, &gr) == d.sub(&e), "ray-end divisor");
    }
    Ok(())
}

fn ac5() -> Check {
    let c = search_cubic_constant(&q(1, 2), &q(1, 4)).map_err(|e| e.to_string())?;
    ensure!(c == Some(CUBIC_CONSTANT), "constant search found {c:?}");
    for (r, s) in [(q(1, 2), q(1, 4)), (q(2, 3), q(1, 3))] {
        let (f, g) = cubic_pair(&r, &s, CUBIC_CONSTANT);
        let rep = verify_main_theorem(&f, &g).map_err(|e| e.to_string())?;
        ensure!(rep.valuations.xvals == cubic_target_xvals(&r, &s), "xvals {:?}", rep.valuations.xvals);
        let one = Rat::one();
        let w3x = &(&r - &s) - &one;
        let w3y = &w3x - &one;
        let target = points(&[
            (&r - &one, one.clone(), 1),
            (&Rat::from(2) - &s, one.clone(), 1),
            (w3x.clone(), w3y.clone(), 1),
        ]);
        ensure!(rep.image == target, "D = {:?}", rep.image);
        let h = find_certificate(&rep.graph, &target, &rep.stable).map_err(|e| e.to_string())?;
        ensure!(h.is_some(), "no witness for δ-sum zero at r = {r}, s = {s}");
        let shift = q(1, 4);
        let off = points(&[
            (&r - &one, one.clone(), 1),
            (&Rat::from(2) - &s, one.clone(), 1),
            (&w3x + &shift, &w3y + &shift, 1),
        ]);
        let none = find_certificate(&rep.graph, &off, &rep.stable).map_err(|e| e.to_string())?;
        ensure!(none.is_none(), "witness for δ-sum nonzero at r = {r}, s = {s}");
    }
    Ok(())
}

fn fixture_pairs() -> Vec<(&'static str, BivariatePoly, BivariatePoly, i64)> {
    let (a, b) = line_conic_generic();
    let (c, d) = conic_pair();
    let (e, f) = double_line(0, &q(1, 2));
    let (g, h) = lines_off_torus();
    let (i, j) = cubic_pair(&q(1, 2), &q(1, 4), CUBIC_CONSTANT);
    vec![
        ("line/conic", a, b, 2),
        ("conic/conic", c, d, 4),
        ("double line", e, f, 1),
        ("lines off torus", g, h, 1),
        ("cubic", i, j, 3),
    ]
}

fn random_trop<R: Rng>(rng: &mut R) -> TropPoly {
    let n = rng.gen_range(2..=6);
    let mut mons = BTreeSet::new();
    while mons.len() < n {
        mons.insert((rng.gen_range(0..=3u32), rng.gen_range(0..=3u32)));
    }
    TropPoly::new(mons.into_iter().map(|m| (m, q(rng.gen_range(-4..=4), rng.gen_range(1..=3)))))
}

fn ac6() -> Check {
    for (name, f, g, want) in fixture_pairs() {
        let (cf, cg) = curves(&f, &g);
        let e = stable_divisor(&cf, &cg).map_err(|e| e.to_string())?;
        let mv = mixed_volume(&NewtonPolygon::from_support(f.support()), &NewtonPolygon::from_support(g.support()));
        ensure!(mv == want && e.degree() == mv, "{name}: deg E = {}, MV = {mv}, expected {want}", e.degree());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for k in 0..RANDOM_SUPPORTS {
        let (t1, t2) = (random_trop(&mut rng), random_trop(&mut rng));
        let c1 = curve_of(&t1).map_err(|e| e.to_string())?;
        let c2 = curve_of(&t2).map_err(|e| e.to_string())?;
        let e = stable_divisor(&c1, &c2).map_err(|e| format!("sample {k}: {e}"))?;
        let n1 = NewtonPolygon::from_support(t1.coeffs.keys().copied());
        let n2 = NewtonPolygon::from_support(t2.coeffs.keys().copied());
        let mv = mixed_volume(&n1, &n2);
        ensure!(e.degree() == mv, "sample {k}: deg E = {}, MV = {mv}", e.degree());
    }
    Ok(())
}

fn ac7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let pairs = fixture_pairs();
    for (name, f, g, _) in &pairs {
        let (cf, cg) = curves(f, g);
        ensure!(check_balanced(&cf) && check_balanced(&cg), "{name}: unbalanced");
        let valid: Vec<Divisor> =
            displacement_candidates().filter_map(|v| stable_divisor_with(&cf, &cg, &v)).collect();
        ensure!(valid.len() >= 2, "{name}: too few generic displacements");
        ensure!(valid.windows(2).all(|w| w[0] == w[1]), "{name}: stable divisor depends on displacement");
    }
    for _ in 0..RANDOM_SUPPORTS {
        let c = curve_of(&random_trop(&mut rng)).map_err(|e| e.to_string())?;
        ensure!(check_balanced(&c), "random curve unbalanced");
    }
    let graphs: Vec<MetricGraph> = pairs.iter().map(|(_, f, g, _)| graph_and_stable(f, g).0).collect();
    for k in 0..RANDOM_PLFUNCS {
        let gr = &graphs[k % graphs.len()];
        let h = random_plfunc(&mut rng, gr);
        h.validate(gr).map_err(|e| format!("random function {k}: {e}"))?;
        let d = divisor_of(&h, gr);
        ensure!(d.degree() == 0, "random function {k}: degree {}", d.degree());
    }
    for (name, f, g, _) in &pairs {
        let rep = verify_main_theorem(f, g).map_err(|e| e.to_string())?;
        certified(&rep).map_err(|m| format!("{name}: {m}"))?;
    }
    Ok(())
}

fn ac8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let families: Vec<(&str, BivariatePoly, BivariatePoly)> = {
        let (a, b) = line_conic_generic();
        let (c, d) = conic_pair();
        let (e, f) = double_line(1, &q(1, 1));
        let (g, h) = cubic_pair(&q(1, 2), &q(1, 4), CUBIC_CONSTANT);
        vec![("line/conic", a, b), ("conic/conic", c, d), ("double line", e, f), ("cubic", g, h)]
    };
    for (name, f, g) in &families {
        for k in 0..STRESS_PER_FAMILY {
            let (pf, pg) = (perturb(&mut rng, f), perturb(&mut rng, g));
            let rep = verify_main_theorem(&pf, &pg).map_err(|e| format!("{name} #{k}: {e}"))?;
            ensure!(!rep.falsified, "{name} #{k}: no certificate for {pf:?} / {pg:?}");
            certified(&rep).map_err(|m| format!("{name} #{k}: {m}"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Check); 8] = [
        ("AC1", "line/conic divisors and certificates", ac1),
        ("AC2", "conic/conic divisor with poles at the stable points", ac2),
        ("AC3", "configuration space is three triangles on one edge", ac3),
        ("AC4", "double line families and ray-end certificate", ac4),
        ("AC5", "cubic x-valuations and the displacement condition", ac5),
        ("AC6", "stable degree equals mixed volume", ac6),
        ("AC7", "balancing, degree zero, soundness, displacement independence", ac7),
        ("AC8", "randomized certificate stress", ac8),
    ];
    let mut failed = 0;
    for (id, what, run) in criteria {
        match run() {
            Ok(()) => println!("[PASS] {id} {what}"),
            Err(m) => {
                failed += 1;
                println!("[FAIL] {id} {what}: {m}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
