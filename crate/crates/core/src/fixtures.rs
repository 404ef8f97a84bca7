//! Worked polynomial pairs with known intersection behaviour.

use crate::error::Result;
use crate::lifting::intersection_valuations;
use crate::parse::parse_poly;
use crate::puiseux::BivariatePoly;
use crate::rat::Rat;

fn p(s: &str) -> BivariatePoly {
    parse_poly(s).expect("fixture parses")
}

/// A line and a conic meeting along a segment of length 1 on the x-axis.
/// With `c1 = 1 − t^r − t` the two intersection points tropicalise to
/// `(r, 0)` and `(1 − r, 0)` for `r ≤ 1/2`, and to `(1/2, 0)` twice otherwise.
pub fn line_conic(r: &Rat) -> (BivariatePoly, BivariatePoly) {
    (p(&format!("1 - t^({r}) - t + x + y")), p("x + x*y + t*y"))
}

/// Line and conic with unit coefficients.
pub fn line_conic_generic() -> (BivariatePoly, BivariatePoly) {
    (p("1 + x + y"), p("x + x*y + t*y"))
}

/// Two conics whose tropical curves share a star with three legs.
pub fn conic_pair() -> (BivariatePoly, BivariatePoly) {
    (p("x + y + x*y"), p("(1 + t^(1/2))*x + (1 + t^(1/3))*y + x*y + t*(x^2 + y^2 + 1)"))
}

/// Two lines with the same tropicalisation, meeting in one torus point that
/// tropicalises to `(r, 0)`, `(0, r)` or `(−r, −r)` for `family` 0, 1, 2.
///
/// Writing `g − f` as a binomial puts the intersection on the wanted ray:
/// `g = 1 + 2x + (1 + t^r)y`, `g = 1 + (1 + t^r)x + 2y` and
/// `g = 1 + (2 + t^r)x + 2y` respectively.
pub fn double_line(family: usize, r: &Rat) -> (BivariatePoly, BivariatePoly) {
    let g = match family {
        0 => format!("1 + 2*x + (1 + t^({r}))*y"),
        1 => format!("1 + (1 + t^({r}))*x + 2*y"),
        2 => format!("1 + (2 + t^({r}))*x + 2*y"),
        _ => panic!("family must be 0, 1 or 2"),
    };
    (p("1 + x + y"), p(&g))
}

/// Line pairs that differ in a single coefficient; they have no common
/// point in the torus.
pub fn double_line_single_change(family: usize, r: &Rat) -> (BivariatePoly, BivariatePoly) {
    let g = match family {
        0 => format!("(1 + t^({r})) + x + y"),
        1 => format!("1 + (1 + t^({r}))*x + y"),
        2 => format!("1 + x + (1 + t^({r}))*y"),
        _ => panic!("family must be 0, 1 or 2"),
    };
    (p("1 + x + y"), p(&g))
}

/// Lines meeting at a point with `y = 0`.
pub fn lines_off_torus() -> (BivariatePoly, BivariatePoly) {
    (p("x + y + 1"), p("x + 2*y + 1"))
}

/// Constant `c` in `d2 = c + 2t^(r−s)`. Found by [`search_cubic_constant`]:
/// the x³ coefficient of `Res_y` is `t²(c1 − d1)(c2 − d2)`, whose valuation
/// is `2 + r` unless `c = c2 = 3`, when it rises to `2 + 2r − s` and the
/// x-valuations become `2 − s`, `r − 1`, `r − s − 1`.
pub const CUBIC_CONSTANT: i64 = 3;

/// `f = xy + t(c1x + c2y² + c3x²y)`, `g = xy + t(d1x + d2y² + d3x²y)` with
/// `c1 = 3 + t^r`, `c2 = 3`, `c3 = 1`, `d1 = 3`, `d2 = c + 2t^(r−s)`, `d3 = 2`.
pub fn cubic_pair(r: &Rat, s: &Rat, c: i64) -> (BivariatePoly, BivariatePoly) {
    let rs = r - s;
    (
        p(&format!("x*y + t*((3 + t^({r}))*x + 3*y^2 + x^2*y)")),
        p(&format!("x*y + t*(3*x + ({c} + 2*t^({rs}))*y^2 + 2*x^2*y)")),
    )
}

/// Expected x-valuations `{2 − s, r − 1, r − s − 1}`, sorted.
pub fn cubic_target_xvals(r: &Rat, s: &Rat) -> Vec<Rat> {
    let one = Rat::one();
    let mut v = vec![&Rat::from(2) - s, r - &one, &(r - s) - &one];
    v.sort();
    v
}

/// Smallest `c ∈ 1..=5` giving the target x-valuations.
pub fn search_cubic_constant(r: &Rat, s: &Rat) -> Result<Option<i64>> {
    let want = cubic_target_xvals(r, s);
    for c in 1..=5 {
        let (f, g) = cubic_pair(r, s, c);
        if intersection_valuations(&f, &g)?.xvals == want {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn cubic_constant_is_unique() {
        let (r, s) = (q(1, 2), q(1, 4));
        assert_eq!(search_cubic_constant(&r, &s).unwrap(), Some(CUBIC_CONSTANT));
        for c in (1..=5).filter(|c| *c != CUBIC_CONSTANT) {
            let (f, g) = cubic_pair(&r, &s, c);
            assert_ne!(intersection_valuations(&f, &g).unwrap().xvals, cubic_target_xvals(&r, &s));
        }
    }

    #[test]
    fn cubic_x_valuations() {
        let (f, g) = cubic_pair(&q(1, 2), &q(1, 4), CUBIC_CONSTANT);
        let v = intersection_valuations(&f, &g).unwrap();
        assert_eq!(v.xvals, vec![q(-3, 4), q(-1, 2), q(7, 4)]);
    }

    #[test]
    fn single_change_lines_miss_the_torus() {
        for fam in 0..3 {
            let (f, g) = double_line_single_change(fam, &q(1, 2));
            let v = intersection_valuations(&f, &g).unwrap();
            assert!(v.xvals.is_empty() || v.yvals.is_empty(), "family {fam}: {v:?}");
        }
    }
}
