use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use troplift::fixtures::*;
use troplift::*;

/// Multiplies every coefficient by a random unit `a + b·t^e` with `a ≠ 0`
/// and `e > 0`, which keeps all valuations and hence the tropical curves.
fn perturb<R: Rng>(rng: &mut R, f: &BivariatePoly) -> BivariatePoly {
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

fn families() -> Vec<(&'static str, (BivariatePoly, BivariatePoly))> {
    vec![
        ("line/conic", line_conic_generic()),
        ("conic/conic", conic_pair()),
        ("double line", double_line(1, &q(1, 1))),
        ("cubic", cubic_pair(&q(1, 2), &q(1, 4), CUBIC_CONSTANT)),
    ]
}

/// Returns false as soon as a perturbed pair has no valid certificate.
pub fn run(seed: u64, count: usize) -> anyhow::Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, (f, g)) in families() {
        for k in 0..count {
            let (pf, pg) = (perturb(&mut rng, &f), perturb(&mut rng, &g));
            let rep = verify_main_theorem(&pf, &pg)?;
            let ok = rep.certificate.as_ref().is_some_and(|h| {
                h.validate(&rep.graph).is_ok()
                    && divisor_of(h, &rep.graph) == rep.image.plus(&rep.ray_end_completion).sub(&rep.stable)
            });
            if !ok {
                println!("{name} #{k}: no certificate");
                println!("  f = {}", print_poly(&pf));
                println!("  g = {}", print_poly(&pg));
                return Ok(false);
            }
        }
        println!("{name}: {count} of {count} certified");
    }
    Ok(true)
}
