//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := base ("^" natural)?
//! base   := natural | variable | "(" expr ")" | "-" factor
//! ```
//!
//! Whitespace is ignored and multiplication must be written explicitly, so
//! `xy` is a single variable named `xy`. Unary minus binds looser than `^`:
//! `-x^2` is `-(x^2)`. Literals may be any size and are reduced into the
//! coefficient domain. Positions in errors are 0-based character offsets.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Resource, Result};
use crate::poly::{coefficient_from_natural, Coefficients, PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigUint),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Num(digits.parse().expect("decimal digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'a, C: Coefficients> {
    ring: &'a Arc<PolyRing<C>>,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl<'a, C: Coefficients> Parser<'a, C> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        Error::Syntax {
            pos: self.pos(),
            msg: format!("expected {wanted}, found {}", self.peek().describe()),
        }
    }

    fn expr(&mut self) -> Result<Polynomial<C>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.try_add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<C>> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.try_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<C>> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let start = self.at;
        let (tok, pos) = self.bump();
        let Tok::Num(n) = tok else {
            self.at = start;
            return Err(self.unexpected("a natural exponent"));
        };
        let cap = self.ring.limits().max_pe;
        match n.to_u64() {
            Some(a) if a <= cap => base.pow(a),
            _ => Err(Error::resource(
                Resource::Exponent,
                cap,
                format!("exponent {n} at position {pos}"),
            )),
        }
    }

    fn base(&mut self) -> Result<Polynomial<C>> {
        let start = self.at;
        let (tok, pos) = self.bump();
        match tok {
            Tok::Num(n) => Ok(Polynomial::constant(
                self.ring,
                coefficient_from_natural(self.ring.coeffs(), &n),
            )),
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(Error::UnknownVariable { name, pos }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Minus => Ok(self.factor()?.negate()),
            _ => {
                self.at = start;
                Err(self.unexpected("a number, variable, `(` or `-`"))
            }
        }
    }
}

/// Parses one polynomial expression in `ring`.
pub fn parse_polynomial<C: Coefficients>(ring: &Arc<PolyRing<C>>, text: &str) -> Result<Polynomial<C>> {
    let toks = tokenize(text)?;
    if toks.len() == 1 {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut parser = Parser { ring, toks, at: 0 };
    let f = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(f)
}

/// Parses a `;`-separated list of expressions. Error positions are relative
/// to the whole input.
pub fn parse_polynomial_list<C: Coefficients>(ring: &Arc<PolyRing<C>>, text: &str) -> Result<Vec<Polynomial<C>>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(';') {
        let shift = |e: Error| match e {
            Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
            Error::UnknownVariable { name, pos } => Error::UnknownVariable {
                name,
                pos: pos + offset,
            },
            other => other,
        };
        out.push(parse_polynomial(ring, piece).map_err(shift)?);
        offset += piece.chars().count() + 1;
    }
    Ok(out)
}

/// Canonical text form; [`parse_polynomial`] reads it back to the same value.
pub fn render_polynomial<C: Coefficients>(f: &Polynomial<C>) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{FpRing, Monomial, ZRing};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn ring(p: u64) -> Arc<FpRing> {
        FpRing::fp(p, &["x", "y"]).unwrap()
    }

    #[test]
    fn examples() {
        let r = ring(5);
        assert_eq!(parse_polynomial(&r, "x^2*y + 3").unwrap().to_string(), "x^2*y + 3");
        assert_eq!(parse_polynomial(&r, "-x").unwrap().to_string(), "4*x");
        assert_eq!(parse_polynomial(&ring(2), "(x+y)^2").unwrap().to_string(), "x^2 + y^2");
    }

    #[test]
    fn precedence() {
        let r = ring(7);
        let p = |s| parse_polynomial(&r, s).unwrap();
        assert_eq!(p("-x^2"), p("-(x^2)"));
        assert_eq!(p("-x^2").to_string(), "6*x^2");
        assert_eq!(p("2*x + 3*y - 1"), p("(2*x) + (3*y) - 1"));
        assert_eq!(p("x - y - x"), p("-y"));
        assert_eq!(p("--x"), p("x"));
        assert_eq!(p("  ( x + 1 ) ^ 3 "), p("x^3 + 3*x^2 + 3*x + 1"));
    }

    #[test]
    fn literals_are_reduced() {
        let r = ring(5);
        let p = |s| parse_polynomial(&r, s).unwrap();
        assert_eq!(p("7*x"), p("2*x"));
        assert_eq!(p("-1"), p("4"));
        assert!(p("10 + 5*x").is_zero());
        assert_eq!(p("123456789012345678901234567890"), p("0"));
    }

    #[test]
    fn multi_character_variables() {
        let r = FpRing::fp(3, &["xy", "x", "y"]).unwrap();
        let f = parse_polynomial(&r, "xy + x*y").unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.to_string(), "x*y + xy");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring(5);
        let err = |s| parse_polynomial(&r, s).unwrap_err();
        assert!(matches!(err("x + "), Error::Syntax { pos: 4, .. }));
        assert!(matches!(err("x ** y"), Error::Syntax { pos: 3, .. }));
        assert!(matches!(err("(x + y"), Error::Syntax { pos: 6, .. }));
        assert!(matches!(err("x y"), Error::Syntax { pos: 2, .. }));
        assert!(matches!(err("x^y"), Error::Syntax { pos: 2, .. }));
        assert!(matches!(err("x^-1"), Error::Syntax { pos: 2, .. }));
        assert!(matches!(err("x $ y"), Error::Syntax { pos: 2, .. }));
        assert!(matches!(err("   "), Error::Syntax { pos: 0, .. }));
        assert_eq!(
            err("x + z"),
            Error::UnknownVariable {
                name: "z".into(),
                pos: 4
            }
        );
        assert!(matches!(err("x^2^3"), Error::Syntax { pos: 3, .. }));
    }

    #[test]
    fn exponent_cap() {
        let r = ring(5);
        assert!(matches!(
            parse_polynomial(&r, "x^99999999999999999999"),
            Err(Error::ResourceExceeded {
                resource: Resource::Exponent,
                ..
            })
        ));
    }

    #[test]
    fn generator_lists() {
        let r = ring(7);
        let gens = parse_polynomial_list(&r, "x^2 - y; x*y - 1").unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(
            parse_polynomial_list(&r, "x; y + q").unwrap_err(),
            Error::UnknownVariable {
                name: "q".into(),
                pos: 7
            }
        );
    }

    #[test]
    fn integer_domain() {
        let z = ZRing::integers(&["x"]).unwrap();
        let f = parse_polynomial(&z, "(x - 1)^3").unwrap();
        assert_eq!(f.to_string(), "x^3 - 3*x^2 + 3*x - 1");
        assert_eq!(parse_polynomial(&z, &f.to_string()).unwrap(), f);
    }

    fn arb_poly(p: u64) -> impl Strategy<Value = crate::poly::FpPoly> {
        prop::collection::vec(((0u32..6, 0u32..6), 0..p), 0..8).prop_map(move |ts| {
            let r = ring(p);
            Polynomial::from_terms(&r, ts.into_iter().map(|((a, b), c)| (Monomial::new(vec![a, b]), c)))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn render_round_trip(f in arb_poly(7)) {
            let text = render_polynomial(&f);
            prop_assert_eq!(parse_polynomial(f.ring(), &text).unwrap(), f);
        }

        #[test]
        fn render_round_trip_integers(ts in prop::collection::vec(((0u32..4, 0u32..4), -50i64..50), 0..8)) {
            let z = ZRing::integers(&["x", "y"]).unwrap();
            let f = Polynomial::from_terms(&z, ts.into_iter().map(|((a, b), c)| (Monomial::new(vec![a, b]), BigInt::from(c))));
            prop_assert_eq!(parse_polynomial(&z, &render_polynomial(&f)).unwrap(), f);
        }

        #[test]
        fn garbage_never_panics(s in "[xy0-9+*^() -]{0,20}") {
            let _ = parse_polynomial(&ring(5), &s);
        }
    }
}
