//! Expression syntax for scenario documents.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor | '/' INT)*
//! factor := '-' factor | base ('^' INT)?
//! base   := INT | IDENT | '(' expr ')'
//! ```
//!
//! `IDENT` is either `t` or the scenario's parameter name. Division is by
//! positive integer literals only and associates to the left, so `1/2/3` is
//! `1/6`. Decimal literals are rejected.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{ParamPolynomial, Polynomial, Rational};

const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("identifier '{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'.' || bytes[i] == b'e' || bytes[i] == b'E') {
                    return Err(err(i, "decimal literals are not accepted; write p/q"));
                }
                Tok::Int(text[start..i].parse().expect("digits"))
            }
            b'.' => return Err(err(i, "decimal literals are not accepted; write p/q")),
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..i].to_string())
            }
            _ => {
                i += 1;
                match c {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    _ => {
                        let ch = text[start..].chars().next().unwrap_or('?');
                        return Err(err(start, format!("unexpected character '{ch}'")));
                    }
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    param: &'a str,
}

impl Parser<'_> {
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

    fn expr(&mut self) -> Result<ParamPolynomial> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<ParamPolynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let (tok, pos) = self.bump();
                    match tok {
                        Tok::Int(n) if n.is_zero() => return Err(err(pos, "division by zero")),
                        Tok::Int(n) => acc = acc.scale(&Rational::new(BigInt::from(1), n)?),
                        other => {
                            return Err(err(
                                pos,
                                format!("division is only by integer literals, found {}", describe(&other)),
                            ))
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ParamPolynomial> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => {
                let e = n
                    .to_u32()
                    .filter(|e| *e <= MAX_EXPONENT)
                    .ok_or_else(|| err(pos, format!("exponent {n} exceeds {MAX_EXPONENT}")))?;
                Ok(base.pow(e))
            }
            Tok::Minus => Err(err(pos, "negative exponents are not allowed")),
            Tok::LParen => Err(err(pos, "exponent must be a nonnegative integer literal")),
            other => Err(err(pos, format!("expected an exponent, found {}", describe(&other)))),
        }
    }

    fn base(&mut self) -> Result<ParamPolynomial> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => Ok(ParamPolynomial::constant(Rational::from_int(n))),
            Tok::Ident(name) if name == "t" => Ok(ParamPolynomial::t()),
            Tok::Ident(name) if name == self.param => Ok(ParamPolynomial::s()),
            Tok::Ident(name) => Err(err(
                pos,
                format!("unknown identifier '{name}' (expected 't' or '{}')", self.param),
            )),
            Tok::LParen => {
                let inner = self.expr()?;
                let (close, cpos) = self.bump();
                if close != Tok::RParen {
                    return Err(err(cpos, format!("expected ')', found {}", describe(&close))));
                }
                Ok(inner)
            }
            other => Err(err(pos, format!("expected a number, identifier or '(', found {}", describe(&other)))),
        }
    }
}

fn check_param_name(param: &str) -> Result<()> {
    let mut chars = param.chars();
    let ok_start = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    if !ok_start || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') || param == "t" {
        return Err(Error::invalid(format!("'{param}' is not a usable parameter name")));
    }
    Ok(())
}

/// Parses an expression in `t` and the parameter `param`.
pub fn parse_expr(text: &str, param: &str) -> Result<ParamPolynomial> {
    check_param_name(param)?;
    let mut p = Parser { toks: tokenize(text)?, at: 0, param };
    if *p.peek() == Tok::End {
        return Err(err(0, "empty expression"));
    }
    let value = p.expr()?;
    if *p.peek() != Tok::End {
        let pos = p.pos();
        return Err(err(pos, format!("unexpected {}", describe(p.peek()))));
    }
    Ok(value)
}

/// Parses an expression that may only mention the parameter.
pub fn parse_param_expr(text: &str, param: &str) -> Result<Polynomial> {
    let value = parse_expr(text, param)?;
    value.as_param().ok_or_else(|| {
        let pos = text.find('t').unwrap_or(0);
        err(pos, format!("'{text}' depends on t but only {param} is allowed here"))
    })
}

/// Renders in the same syntax, so `parse_expr(&print_expr(p, x), x) == p`.
pub fn print_expr(p: &ParamPolynomial, param: &str) -> String {
    p.display_with("t", param)
}

pub fn print_param_expr(p: &Polynomial, param: &str) -> String {
    print_expr(&ParamPolynomial::from_param(p.clone()), param)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn t() -> ParamPolynomial {
        ParamPolynomial::t()
    }

    fn s() -> ParamPolynomial {
        ParamPolynomial::s()
    }

    #[test]
    fn simplex_cap() {
        assert_eq!(parse_expr("t^2/2", "eps").unwrap(), t().pow(2).scale(&q("1/2")));
    }

    #[test]
    fn curve_area() {
        let want = (&t().pow(2) - &(&t() - &s()).pow(2).scale(&q("5"))).scale(&q("1/2"));
        assert_eq!(parse_expr("(t^2 - 5*(t - eps)^2)/2", "eps").unwrap(), want);
    }

    #[test]
    fn collapse_tail_area() {
        let inner = &(&ParamPolynomial::constant(q("8")) + &s().scale(&q("8/3"))) - &t().scale(&q("3"));
        let want = inner.pow(2).scale(&q("1/2"));
        assert_eq!(parse_expr("((24 + 8*eps)/3 - 3*t)^2/2", "eps").unwrap(), want);
    }

    #[test]
    fn precedence_and_unary_minus() {
        let p = |x: &str| parse_expr(x, "eps").unwrap();
        assert_eq!(p("-t^2"), -t().pow(2));
        assert_eq!(p("2 - -3"), ParamPolynomial::constant(q("5")));
        assert_eq!(p("1/2/3"), ParamPolynomial::constant(q("1/6")));
        assert_eq!(p("2*3^2"), ParamPolynomial::constant(q("18")));
        assert_eq!(p("t^1/2"), t().scale(&q("1/2")));
        assert_eq!(p("(eps)^0"), ParamPolynomial::constant(q("1")));
        assert_eq!(parse_expr("4*t1/3 - t", "t1").unwrap(), &s().scale(&q("4/3")) - &t());
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |x: &str| match parse_expr(x, "eps") {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("expected parse error for {x:?}, got {other:?}"),
        };
        assert_eq!(pos("t + x"), 4);
        assert_eq!(pos("t^-1"), 2);
        assert_eq!(pos("t^(1/2)"), 2);
        assert_eq!(pos("0.5*t"), 1);
        assert_eq!(pos("t/(2)"), 2);
        assert_eq!(pos("t/0"), 2);
        assert_eq!(pos("(t + 1"), 6);
        assert_eq!(pos("t t"), 2);
        assert_eq!(pos(""), 0);
        assert_eq!(pos("t # 2"), 2);
        assert!(parse_param_expr("6 - t", "eps").is_err());
        assert_eq!(parse_param_expr("6 - eps", "eps").unwrap(), Polynomial::from_ints(&[6, -1]));
        assert!(parse_expr("t", "t").is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..12).prop_map(|(n, d)| Rational::frac(n, d))
    }

    fn arb_param_poly() -> impl Strategy<Value = ParamPolynomial> {
        prop::collection::vec(prop::collection::vec(arb_rational(), 0..4), 0..4).prop_map(|rows| {
            ParamPolynomial::new(rows.into_iter().map(Polynomial::new).collect())
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(p in arb_param_poly()) {
            let text = print_expr(&p, "eps");
            let back = parse_expr(&text, "eps").unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(print_expr(&back, "eps"), text);
        }

        #[test]
        fn parse_is_linear(a in arb_param_poly(), b in arb_param_poly()) {
            let text = format!("({}) - 2*({})", print_expr(&a, "x"), print_expr(&b, "x"));
            prop_assert_eq!(parse_expr(&text, "x").unwrap(), &a - &b.scale(&Rational::from(2)));
        }
    }
}
