//! Polynomial expressions over the coordinates `d1..dn`.
//!
//! Grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := INT ['/' INT] | 'd' INT | '(' expr ')'
//! ```
//!
//! The parser works on a byte offset into a larger source so that the script
//! parser can embed expressions and report positions in its own coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::element::{Rational, WeilElement};
use crate::error::Result;
use crate::object::SimplicialObject;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<SignedTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedTerm {
    pub negative: bool,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// A nonnegative rational literal.
    Num(Rational),
    /// The coordinate `d_i`, 1-based.
    Var(usize),
    Group(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ExprParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}", self.message, self.offset)
    }
}

impl std::error::Error for ExprParseError {}

impl Expr {
    /// Largest coordinate index mentioned, or 0.
    pub fn max_var(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|t| &t.factors)
            .map(|f| match f {
                Factor::Var(i) => *i,
                Factor::Group(e) => e.max_var(),
                Factor::Num(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Evaluates in `W_obj`, with `d_i` read as the generator `X_i`.
    pub fn eval(&self, obj: &SimplicialObject) -> Result<WeilElement> {
        let mut acc = WeilElement::zero(obj);
        for t in &self.terms {
            let mut prod = WeilElement::one(obj);
            for f in &t.factors {
                let v = match f {
                    Factor::Num(q) => WeilElement::constant(obj, q.clone()),
                    Factor::Var(i) => WeilElement::var(obj, *i)?,
                    Factor::Group(e) => e.eval(obj)?,
                };
                prod = prod.mul(&v)?;
            }
            acc = if t.negative { acc.sub(&prod)? } else { acc.add(&prod)? };
        }
        Ok(acc)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            match (k, t.negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            for (j, fac) in t.factors.iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                match fac {
                    Factor::Num(q) if q.denom().is_one() => write!(f, "{}", q.numer())?,
                    Factor::Num(q) => write!(f, "{}/{}", q.numer(), q.denom())?,
                    Factor::Var(i) => write!(f, "d{i}")?,
                    Factor::Group(e) => write!(f, "({e})")?,
                }
            }
        }
        Ok(())
    }
}

/// Renders `e` as an expression over `d1..dn`, e.g. `d1*d2 - 2*d3`.
pub fn element_to_expr(e: &WeilElement) -> Expr {
    let terms = e
        .terms()
        .map(|(m, c)| {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_unit() {
                factors.push(Factor::Num(abs));
            }
            factors.extend(m.iter().map(Factor::Var));
            SignedTerm { negative, factors }
        })
        .collect::<Vec<_>>();
    if terms.is_empty() {
        return Expr {
            terms: vec![SignedTerm {
                negative: false,
                factors: vec![Factor::Num(Rational::zero())],
            }],
        };
    }
    Expr { terms }
}

/// Parses an expression that must span all of `src`.
pub fn parse_expr(src: &str) -> std::result::Result<Expr, ExprParseError> {
    let (e, end) = parse_expr_at(src, 0)?;
    let end = skip_ws(src, end);
    if end != src.len() {
        return Err(ExprParseError {
            offset: end,
            message: format!("unexpected `{}`", src[end..].chars().next().unwrap_or(' ')),
        });
    }
    Ok(e)
}

/// Parses an expression starting at byte `start`; returns it with the offset
/// just past it. Stops before any character that cannot continue the expression.
pub fn parse_expr_at(src: &str, start: usize) -> std::result::Result<(Expr, usize), ExprParseError> {
    let mut p = Cursor { src, pos: start };
    let e = p.expr()?;
    Ok((e, p.pos))
}

fn skip_ws(src: &str, mut pos: usize) -> usize {
    let bytes = src.as_bytes();
    while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    pos
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<u8> {
        self.pos = skip_ws(self.src, self.pos);
        self.src.as_bytes().get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> std::result::Result<T, ExprParseError> {
        Err(ExprParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> std::result::Result<Expr, ExprParseError> {
        let mut terms = Vec::new();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negative = true;
        }
        loop {
            let factors = self.term()?;
            terms.push(SignedTerm { negative, factors });
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(Expr { terms })
    }

    fn term(&mut self) -> std::result::Result<Vec<Factor>, ExprParseError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(factors)
    }

    fn integer(&mut self) -> std::result::Result<BigInt, ExprParseError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(self.src[start..self.pos].parse().expect("digits parse"))
    }

    fn factor(&mut self) -> std::result::Result<Factor, ExprParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(Factor::Group(e))
            }
            Some(b'd') => {
                self.pos += 1;
                let bytes = self.src.as_bytes();
                if !bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return self.err("expected a coordinate index after `d`");
                }
                let at = self.pos;
                let i = self.integer()?;
                match usize::try_from(i) {
                    Ok(i) if i >= 1 => Ok(Factor::Var(i)),
                    _ => Err(ExprParseError {
                        offset: at,
                        message: "coordinate indices start at 1".into(),
                    }),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.integer()?;
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.pos = skip_ws(self.src, self.pos);
                    let denom = self.integer()?;
                    if denom.is_zero() {
                        return self.err("zero denominator");
                    }
                    return Ok(Factor::Num(Rational::new(numer, denom)));
                }
                self.pos = save;
                Ok(Factor::Num(Rational::from_integer(numer)))
            }
            Some(c) => self.err(format!("unexpected `{}` in polynomial", c as char)),
            None => self.err("unexpected end of input in polynomial"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::int;

    #[test]
    fn parses_and_evaluates() {
        let sq = SimplicialObject::cube(2).unwrap();
        let e = parse_expr("d1 + 2*d2 - 1/2*d1*d2").unwrap();
        let v = e.eval(&sq).unwrap();
        assert_eq!(v.coeff_of(&[1]), int(1));
        assert_eq!(v.coeff_of(&[2]), int(2));
        assert_eq!(v.coeff_of(&[1, 2]), Rational::new((-1).into(), 2.into()));
    }

    #[test]
    fn groups_expand() {
        let sq = SimplicialObject::cube(2).unwrap();
        let v = parse_expr("(d1 + d2)*(d1 + d2)").unwrap().eval(&sq).unwrap();
        assert_eq!(v.to_string(), "2*X1*X2");
        let d2 = SimplicialObject::first_order(2).unwrap();
        assert!(parse_expr("(d1+d2)*(d1+d2)").unwrap().eval(&d2).unwrap().is_zero());
    }

    #[test]
    fn stops_at_delimiters() {
        let src = "(d1, d2*d3)";
        let (e, end) = parse_expr_at(src, 1).unwrap();
        assert_eq!(e.to_string(), "d1");
        assert_eq!(&src[end..end + 1], ",");
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_expr("d1 + x").unwrap_err().offset, 5);
        assert_eq!(parse_expr("d0").unwrap_err().offset, 1);
        assert!(parse_expr("1/0").is_err());
        assert!(parse_expr("d1 +").is_err());
        assert!(parse_expr("d1 d2").is_err());
    }

    #[test]
    fn out_of_range_variable_is_an_eval_error() {
        let d = SimplicialObject::d();
        assert!(parse_expr("d2").unwrap().eval(&d).is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["d1", "-d1 + 3/4*d2*d3", "2*(d1 - d2)*d3", "0"] {
            let e = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        }
    }
}
