//! Coefficient expressions: `z` is ζ_N, `s` the adjunct square root.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | 'z' ('^' integer)? | 's' | '(' expr ')' | '-' factor
//! rational := integer ('/' positive-integer)?
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{FieldContext, FieldElement, Rational};
use crate::error::{Error, Result};

/// Parses one coefficient expression in `ctx`.
pub fn parse_element(ctx: &Arc<FieldContext>, text: &str) -> Result<FieldElement> {
    let mut p = Parser::new(ctx, text, 0);
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

/// Parses a colon-separated triple such as `"1:z:-1/2"`.
///
/// Error positions refer to the full literal.
pub fn parse_triple(ctx: &Arc<FieldContext>, text: &str) -> Result<[FieldElement; 3]> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse {
            input: text.to_string(),
            position: text.len(),
            message: format!("expected 3 colon-separated coordinates, found {}", parts.len()),
        });
    }
    let mut offset = 0;
    let mut out = Vec::with_capacity(3);
    for part in parts {
        let mut p = Parser::new(ctx, text, offset);
        p.end = offset + part.len();
        let value = p.expr()?;
        p.skip_ws();
        if p.pos < p.end {
            return Err(p.error("unexpected trailing input in coordinate"));
        }
        out.push(value);
        offset += part.len() + 1;
    }
    let [a, b, c]: [FieldElement; 3] = out.try_into().expect("three coordinates");
    Ok([a, b, c])
}

struct Parser<'a> {
    ctx: &'a Arc<FieldContext>,
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(ctx: &'a Arc<FieldContext>, input: &'a str, start: usize) -> Self {
        Parser {
            ctx,
            input,
            bytes: input.as_bytes(),
            pos: start,
            end: input.len(),
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.end && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        (self.pos < self.end).then(|| self.bytes[self.pos])
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FieldElement> {
        match self.peek() {
            None => Err(self.error("expected a factor, found end of input")),
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'z') => {
                self.pos += 1;
                let mut exponent = 1i64;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let negative = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let digits = self.digits()?;
                    let k: i64 = digits
                        .parse::<i64>()
                        .map_err(|_| self.error("exponent out of range"))?;
                    exponent = if negative { -k } else { k };
                }
                Ok(self.ctx.zeta_power(exponent))
            }
            Some(b's') => {
                let s = self
                    .ctx
                    .sqrt_adjunct()
                    .ok_or_else(|| self.error("'s' used but the field has no adjunct"))?;
                self.pos += 1;
                Ok(s)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits()?.parse().expect("digits");
                let mut den = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let start = self.pos;
                    den = self.digits()?.parse().expect("digits");
                    if den.is_zero() {
                        self.pos = start;
                        return Err(self.error("zero denominator"));
                    }
                }
                Ok(self.ctx.from_rational(&Rational::new(num, den)))
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.end && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.input[start..self.pos].to_string())
    }
}

/// Canonical text form: terms `c*z^k` by increasing k, then the `*s` terms;
/// zero renders as `0`.
pub fn render(x: &FieldElement) -> String {
    let mut terms: Vec<String> = Vec::new();
    let phi = x.ctx().phi();
    for (i, c) in x.coords().into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (k, with_s) = if i < phi { (i, false) } else { (i - phi, true) };
        let mut factors: Vec<String> = Vec::new();
        match k {
            0 => {}
            1 => factors.push("z".into()),
            _ => factors.push(format!("z^{k}")),
        }
        if with_s {
            factors.push("s".into());
        }
        terms.push(monomial(&c, &factors.join("*")));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        if !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(t);
    }
    out
}

fn monomial(c: &Rational, factor: &str) -> String {
    if factor.is_empty() {
        return rational_str(c);
    }
    if c.is_one() {
        factor.to_string()
    } else if (-c).is_one() {
        format!("-{factor}")
    } else {
        format!("{}*{factor}", rational_str(c))
    }
}

fn rational_str(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        let sign = if c.is_negative() { "-" } else { "" };
        format!("{sign}{}/{}", c.numer().abs(), c.denom())
    }
}
