//! Text syntax for Laurent polynomials.
//!
//! ```text
//! expr    := ['+'|'-'] term { ('+'|'-') term }
//! term    := power { ['*'] power }
//! power   := primary [ '^' ['-'] digits ]
//! primary := digits | 't' [digits] | '(' expr ')'
//! ```
//!
//! `t` alone means `t1`. Negative powers are allowed only on monomials.

use num_bigint::BigInt;
use thiserror::Error;

use super::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial parse error at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

/// Intermediate sparse representation with a growable variable count.
#[derive(Clone)]
struct Raw(Vec<(Vec<i64>, BigInt)>);

impl Raw {
    fn width(&self) -> usize {
        self.0.iter().map(|(e, _)| e.len()).max().unwrap_or(0)
    }

    fn into_poly(self, nvars: usize) -> LaurentPoly {
        LaurentPoly::from_terms(
            nvars,
            self.0.into_iter().map(|(mut e, c)| {
                e.resize(nvars, 0);
                (e, c)
            }),
        )
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub(super) fn parse(s: &str, nvars: Option<usize>) -> Result<LaurentPoly, ParsePolyError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.err("empty polynomial"));
    }
    let raw = p.expr()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    let width = raw.width().max(1);
    let n = match nvars {
        Some(n) if n < width => {
            return Err(ParsePolyError { pos: 0, msg: format!("uses t{width} but only {n} variables declared") })
        }
        Some(n) => n,
        None => width,
    };
    Ok(raw.into_poly(n))
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParsePolyError {
        ParsePolyError { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).map_or(false, |c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<Raw, ParsePolyError> {
        self.skip_ws();
        let mut neg = false;
        match self.peek() {
            Some(b'-') => {
                neg = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            negate(&mut acc);
        }
        loop {
            self.skip_ws();
            let neg = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
            let mut t = self.term()?;
            if neg {
                negate(&mut t);
            }
            acc.0.extend(t.0);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Raw, ParsePolyError> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_digit() || c == b't' || c == b'(' => {}
                _ => break,
            }
            let rhs = self.power()?;
            acc = multiply(&acc, &rhs);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Raw, ParsePolyError> {
        let base = self.primary()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let k: i64 = self
            .digits()
            .ok_or_else(|| self.err("expected exponent"))?
            .parse()
            .map_err(|_| ParsePolyError { pos: at, msg: "exponent too large".into() })?;
        let k = if neg { -k } else { k };
        if k >= 0 {
            let mut acc = Raw(vec![(vec![], BigInt::from(1))]);
            for _ in 0..k {
                acc = multiply(&acc, &base);
            }
            return Ok(acc);
        }
        if base.0.len() != 1 {
            return Err(ParsePolyError { pos: at, msg: "negative power of a non-monomial".into() });
        }
        let (e, c) = &base.0[0];
        if c != &BigInt::from(1) {
            return Err(ParsePolyError { pos: at, msg: "negative power of a non-unit coefficient".into() });
        }
        Ok(Raw(vec![(e.iter().map(|x| x * k).collect(), c.clone())]))
    }

    fn primary(&mut self) -> Result<Raw, ParsePolyError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                let at = self.pos;
                let idx: usize = match self.digits() {
                    None => 1,
                    Some(d) => d.parse().map_err(|_| ParsePolyError { pos: at, msg: "bad variable index".into() })?,
                };
                if idx == 0 {
                    return Err(ParsePolyError { pos: at, msg: "variables are numbered from t1".into() });
                }
                let mut e = vec![0; idx];
                e[idx - 1] = 1;
                Ok(Raw(vec![(e, BigInt::from(1))]))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                Ok(Raw(vec![(vec![], d.parse::<BigInt>().unwrap())]))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn negate(r: &mut Raw) {
    for (_, c) in r.0.iter_mut() {
        *c = -std::mem::take(c);
    }
}

fn multiply(a: &Raw, b: &Raw) -> Raw {
    let mut out = Vec::with_capacity(a.0.len() * b.0.len());
    for (ea, ca) in &a.0 {
        for (eb, cb) in &b.0 {
            let n = ea.len().max(eb.len());
            let e = (0..n).map(|i| ea.get(i).unwrap_or(&0) + eb.get(i).unwrap_or(&0)).collect();
            out.push((e, ca * cb));
        }
    }
    Raw(out)
}
