//! Text format for bivariate polynomials with Puiseux coefficients.
//!
//! ```text
//! poly     := ["+"|"-"] term (("+"|"-") term)*
//! term     := factor ("*" factor)*
//! factor   := atom ["^" exponent]
//! atom     := rational ["t"] | "t" | "x" | "y" | "(" poly ")"
//! rational := int ["/" posint]
//! exponent := ["-"] rational | "(" ["-"] rational ")"
//! ```
//!
//! `t` may carry any rational exponent; `x`, `y`, numbers and parenthesised
//! groups take natural-number exponents. Whitespace is insignificant.

use num::bigint::BigInt;

use crate::error::{Error, Result};
use crate::puiseux::{BivariatePoly, PuiseuxScalar, Var};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    T,
    X,
    Y,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => n.to_string(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::T => "'t'".into(),
            Tok::X => "'x'".into(),
            Tok::Y => "'y'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            chars.next();
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            chars.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Lexed { tok: Tok::Int(s.parse().unwrap()), line: l0, col: c0 });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            't' => Tok::T,
            'x' => Tok::X,
            'y' => Tok::Y,
            other => {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("unexpected character {other:?}"),
                    expected: vec!["number".into(), "'t'".into(), "'x'".into(), "'y'".into(), "'('".into()],
                })
            }
        };
        chars.next();
        col += 1;
        out.push(Lexed { tok, line: l0, col: c0 });
    }
    out.push(Lexed { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, msg: &str, expected: &[&str]) -> Result<T> {
        let l = &self.toks[self.pos];
        Err(Error::Parse {
            line: l.line,
            col: l.col,
            msg: format!("{msg}, found {}", l.tok.describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn poly(&mut self) -> Result<BivariatePoly> {
        let mut neg = false;
        match self.peek() {
            Tok::Plus => {
                self.bump();
            }
            Tok::Minus => {
                self.bump();
                neg = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if neg { -&first } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivariatePoly> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn rational_tail(&mut self, n: BigInt) -> Result<Rat> {
        if *self.peek() == Tok::Slash {
            self.bump();
            match self.bump() {
                Tok::Int(d) if d != BigInt::from(0) => Ok(Rat::from_big(n, d)),
                _ => {
                    self.pos -= 1;
                    self.fail("expected positive denominator", &["positive integer"])
                }
            }
        } else {
            Ok(Rat::from(n))
        }
    }

    fn signed_rational(&mut self) -> Result<Rat> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let r = self.rational_tail(n)?;
                Ok(if neg { -r } else { r })
            }
            _ => self.fail("expected exponent", &["integer", "'-'"]),
        }
    }

    fn exponent(&mut self) -> Result<Option<Rat>> {
        if *self.peek() != Tok::Caret {
            return Ok(None);
        }
        self.bump();
        if *self.peek() == Tok::LParen {
            self.bump();
            let r = self.signed_rational()?;
            if *self.peek() != Tok::RParen {
                return self.fail("unbalanced parenthesis", &["')'"]);
            }
            self.bump();
            Ok(Some(r))
        } else {
            self.signed_rational().map(Some)
        }
    }

    fn nat_exponent(&mut self) -> Result<u32> {
        let at = self.pos;
        match self.exponent()? {
            None => Ok(1),
            Some(e) => match e.to_i64() {
                Some(k) if (0..=64).contains(&k) => Ok(k as u32),
                _ => {
                    self.pos = at + 1;
                    self.fail("exponent must be a natural number here", &["natural number"])
                }
            },
        }
    }

    fn t_power(&mut self) -> Result<PuiseuxScalar> {
        let e = self.exponent()?.unwrap_or_else(Rat::one);
        Ok(PuiseuxScalar::t_pow(e))
    }

    fn factor(&mut self) -> Result<BivariatePoly> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let r = self.rational_tail(n)?;
                let mut c = PuiseuxScalar::constant(r);
                if *self.peek() == Tok::T {
                    self.bump();
                    c = &c * &self.t_power()?;
                    return Ok(BivariatePoly::constant(c));
                }
                let k = self.nat_exponent()?;
                Ok(BivariatePoly::constant(c.pow(k)))
            }
            Tok::T => {
                self.bump();
                Ok(BivariatePoly::constant(self.t_power()?))
            }
            Tok::X | Tok::Y => {
                let v = if self.bump() == Tok::X { Var::X } else { Var::Y };
                let k = self.nat_exponent()?;
                Ok(BivariatePoly::var(v).pow(k))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.poly()?;
                if *self.peek() != Tok::RParen {
                    return self.fail("unbalanced parenthesis", &["')'", "'+'", "'-'", "'*'"]);
                }
                self.bump();
                let k = self.nat_exponent()?;
                Ok(inner.pow(k))
            }
            _ => self.fail("expected a factor", &["number", "'t'", "'x'", "'y'", "'('"]),
        }
    }
}

pub fn parse_poly(text: &str) -> Result<BivariatePoly> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let poly = p.poly()?;
    if *p.peek() != Tok::End {
        return p.fail("trailing input", &["'+'", "'-'", "'*'", "end of input"]);
    }
    Ok(poly)
}

fn monomial(i: u32, j: u32) -> String {
    let part = |v: &str, k: u32| match k {
        0 => None,
        1 => Some(v.to_string()),
        k => Some(format!("{v}^{k}")),
    };
    [part("x", i), part("y", j)].into_iter().flatten().collect::<Vec<_>>().join("*")
}

/// Canonical text form; `parse_poly(print_poly(p)) == p`.
pub fn print_poly(p: &BivariatePoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&(u32, u32), &PuiseuxScalar)> = p.terms().iter().collect();
    terms.sort_by_key(|((i, j), _)| (std::cmp::Reverse(i + j), std::cmp::Reverse(*i)));
    let mut out = String::new();
    for (k, (&(i, j), c)) in terms.into_iter().enumerate() {
        let mono = monomial(i, j);
        let (neg, body) = if c.terms().len() == 1 {
            let (a, e) = &c.terms()[0];
            let abs = PuiseuxScalar::monomial(a.abs(), e.clone());
            let body = if abs.is_one() && !mono.is_empty() {
                mono.clone()
            } else if mono.is_empty() {
                abs.to_string()
            } else {
                format!("{abs}*{mono}")
            };
            (a.is_negative(), body)
        } else if mono.is_empty() {
            (false, format!("({c})"))
        } else {
            (false, format!("({c})*{mono}"))
        };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn simple_support() {
        let p = parse_poly("x + y + x*y").unwrap();
        assert_eq!(p.support(), vec![(0, 1), (1, 0), (1, 1)]);
        assert!(p.terms().values().all(|c| c.is_one()));
    }

    #[test]
    fn puiseux_coefficients() {
        let g = parse_poly("(1 + t^(1/2))*x + (1 + t^(1/3))*y + x*y + t*(x^2 + y^2 + 1)").unwrap();
        assert_eq!(g.terms().len(), 6);
        assert_eq!(
            g.coeff(1, 0),
            PuiseuxScalar::from_terms([(Rat::one(), q(0, 1)), (Rat::one(), q(1, 2))])
        );
        assert_eq!(g.coeff(2, 0), PuiseuxScalar::t_pow(Rat::one()));
        assert_eq!(g.coeff(0, 0), PuiseuxScalar::t_pow(Rat::one()));
    }

    #[test]
    fn juxtaposed_and_signed() {
        let p = parse_poly("-2t^1/3*x - y^2 + 3/4").unwrap();
        assert_eq!(p.coeff(1, 0), PuiseuxScalar::monomial(q(-2, 1), q(1, 3)));
        assert_eq!(p.coeff(0, 2), PuiseuxScalar::constant(q(-1, 1)));
        assert_eq!(p.coeff(0, 0), PuiseuxScalar::constant(q(3, 4)));
    }

    #[test]
    fn errors_carry_position() {
        match parse_poly("t^(1/2") {
            Err(Error::Parse { line, col, expected, .. }) => {
                assert_eq!((line, col), (1, 7));
                assert!(expected.contains(&"')'".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("x y").is_err());
        assert!(parse_poly("x^(1/2)").is_err());
        assert!(parse_poly("x +\n  ?").is_err());
    }

    #[test]
    fn print_round_trip() {
        for s in [
            "x + y + x*y",
            "(1 + t^(1/2))*x + (1 + t^(1/3))*y + x*y + t*(x^2 + y^2 + 1)",
            "x*y + t*((3 + t^(1/2))*x + 3*y^2 + x^2*y)",
            "-x - 2*t^(-1/3)",
        ] {
            let p = parse_poly(s).unwrap();
            let printed = print_poly(&p);
            assert_eq!(parse_poly(&printed).unwrap(), p, "{printed}");
        }
    }
}
