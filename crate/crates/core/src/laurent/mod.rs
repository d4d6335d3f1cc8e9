//! Multivariate Laurent polynomials over ℤ.
//!
//! [`LaurentPoly`] is an element of `ℤ[t1^±1, …, tμ^±1]` stored sparsely as a
//! map from exponent tuples to nonzero integer coefficients. Units of the ring
//! are `±t^a`; [`LaurentPoly::normalize`] picks a canonical associate so that
//! "equal up to a unit" becomes plain equality of the normalized polynomial.

mod factor;
mod gcd;
mod parse;
pub(crate) mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use factor::{factor, Factorization};
pub use gcd::{gcd, gcd_many};
pub use parse::ParsePolyError;

pub type Exponents = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("cannot evaluate at a point with a zero coordinate (index {0})")]
    ZeroCoordinate(usize),
    #[error("point has {got} coordinates, polynomial has {expected} variables")]
    PointArity { expected: usize, got: usize },
    #[error("factorization unavailable: {0}")]
    FactorizationUnavailable(String),
    #[error("cannot factor the zero polynomial")]
    FactorZero,
}

/// Element of `ℤ[t1^±1, …, tμ^±1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

/// Canonical associate of a Laurent polynomial: `original = sign · t^shift · poly`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitNormalForm {
    pub poly: LaurentPoly,
    pub sign: i8,
    pub shift: Exponents,
}

/// Graded lexicographic comparison with `t1 > t2 > … > tμ`.
pub fn grlex_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `t_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, 1)
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars);
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map_or(false, |(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    /// Terms in ascending lexicographic order of exponent tuples.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// True when the polynomial is `c · t^a` for some integer `c`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True when the polynomial is a unit `±t^a`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().map_or(false, |c| c.abs().is_one())
    }

    /// Constant polynomial value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Reinterpret in a ring with more variables (new variables unused).
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(nvars, 0);
                (e, c.clone())
            })
            .collect();
        LaurentPoly { nvars, terms }
    }

    /// The ring involution `t_i ↦ t_i^{-1}`.
    pub fn involve(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone())).collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    /// Multiply by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Componentwise minimum exponent (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn max_exponents(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.max(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Degree span `max - min` of variable `i`.
    pub fn degree_span(&self, i: usize) -> i64 {
        if self.is_zero() {
            return 0;
        }
        self.max_exponents()[i] - self.min_exponents()[i]
    }

    /// Total degree of the shifted ordinary polynomial (`t^-min · p`).
    pub fn total_degree(&self) -> i64 {
        let m = self.min_exponents();
        self.terms
            .keys()
            .map(|e| e.iter().zip(&m).map(|(a, b)| a - b).sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    /// Indices of variables whose exponent is not constant across terms.
    pub fn active_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.degree_span(i) > 0).collect()
    }

    pub fn is_ordinary(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Leading term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x / &c)).collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    /// Canonical associate: minimal exponent zero in every variable and
    /// positive leading coefficient under graded lex.
    pub fn normalize(&self) -> UnitNormalForm {
        if self.is_zero() {
            return UnitNormalForm { poly: self.clone(), sign: 1, shift: vec![0; self.nvars] };
        }
        let shift = self.min_exponents();
        let neg: Exponents = shift.iter().map(|x| -x).collect();
        let mut poly = self.shift(&neg);
        let sign = if poly.leading_term().unwrap().1.is_negative() { -1 } else { 1 };
        if sign < 0 {
            poly = -poly;
        }
        UnitNormalForm { poly, sign, shift }
    }

    /// Shorthand for `normalize().poly`.
    pub fn normalized(&self) -> Self {
        self.normalize().poly
    }

    /// Equality up to multiplication by a unit `±t^a` (the relation `≐`).
    pub fn associates(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.normalized() == other.normalized()
    }

    /// Partial derivative with respect to variable `i` (Laurent exponents allowed).
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * BigInt::from(e[i]));
            }
        }
        out
    }

    /// Exact quotient `self / divisor` in the Laurent ring, or `None` when the
    /// division is not exact.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        // The quotient's exponent box is determined by the spans of both operands.
        let (amin, amax) = (self.min_exponents(), self.max_exponents());
        let (bmin, bmax) = (divisor.min_exponents(), divisor.max_exponents());
        let qmin: Exponents = amin.iter().zip(&bmin).map(|(a, b)| a - b).collect();
        let qmax: Exponents = amax.iter().zip(&bmax).map(|(a, b)| a - b).collect();
        if qmin.iter().zip(&qmax).any(|(lo, hi)| lo > hi) {
            return None;
        }
        let (be, bc) = divisor.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            let (q, r) = rc.div_rem(bc);
            if !r.is_zero() {
                return None;
            }
            let qe: Exponents = re.iter().zip(be).map(|(a, b)| a - b).collect();
            if qe.iter().zip(qmin.iter().zip(&qmax)).any(|(x, (lo, hi))| x < lo || x > hi) {
                return None;
            }
            let mut sub = Self::zero(self.nvars);
            for (e, c) in &divisor.terms {
                sub.terms.insert(e.iter().zip(&qe).map(|(a, b)| a + b).collect(), c * &q);
            }
            rem = &rem - &sub;
            quot.add_term(qe, q);
        }
        Some(quot)
    }

    /// True when `divisor` divides `self` in the Laurent ring.
    pub fn divisible_by(&self, divisor: &Self) -> bool {
        self.exact_div(divisor).is_some()
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, LaurentError> {
        if point.len() != self.nvars {
            return Err(LaurentError::PointArity { expected: self.nvars, got: point.len() });
        }
        if let Some(i) = point.iter().position(|x| x.is_zero()) {
            return Err(LaurentError::ZeroCoordinate(i));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                term *= rational_pow(x, k);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Value at an integer point whose coordinates are all `±1`.
    pub fn evaluate_signs(&self, signs: &[i8]) -> BigInt {
        assert_eq!(signs.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let neg = e.iter().zip(signs).filter(|(k, s)| **s < 0 && *k % 2 != 0).count() % 2 == 1;
                if neg {
                    -c.clone()
                } else {
                    c.clone()
                }
            })
            .sum()
    }

    /// `p(1, …, 1)`.
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `p(-1, …, -1)`.
    pub fn eval_at_minus_ones(&self) -> BigInt {
        self.evaluate_signs(&vec![-1; self.nvars])
    }

    /// Order used to sort factor lists: total degree, then printed form.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.to_string().cmp(&other.to_string()))
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "mixing Laurent polynomials with different variable counts");
    }
}

fn rational_pow(x: &BigRational, k: i64) -> BigRational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut out = LaurentPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex_cmp(b.0, a.0));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let name = if self.nvars == 1 { "t".to_string() } else { format!("t{}", i + 1) };
                factors.push(if x == 1 { name } else { format!("{name}^{x}") });
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.nvars, self)
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = ParsePolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s, None)
    }
}

impl LaurentPoly {
    /// Parse with an explicit variable count (at least the largest index used).
    pub fn parse_with_vars(s: &str, nvars: usize) -> Result<Self, ParsePolyError> {
        parse::parse(s, Some(nvars))
    }
}


#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn involve_examples() {
        assert_eq!(p("t").involve(), p("t^-1"));
        assert_eq!(p("t^2 - t + 1").involve(), p("t^-2 - t^-1 + 1"));
    }

    #[test]
    fn normalize_examples() {
        // -t^-1 (t-1)^2 = -t + 2 - t^-1
        let n = p("-t + 2 - t^-1").normalize();
        assert_eq!(n.poly, p("t^2 - 2*t + 1"));
        assert_eq!(n.sign, -1);
        assert_eq!(n.shift, vec![-1]);

        let z = LaurentPoly::zero(3).normalize();
        assert!(z.poly.is_zero());
        assert_eq!((z.sign, z.shift), (1, vec![0, 0, 0]));

        let one = p("1").normalize();
        assert_eq!((one.poly, one.sign, one.shift), (p("1"), 1, vec![0]));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("t^2 - t + 1").evaluate(&[q(1)]).unwrap(), q(1));
        assert_eq!(p("t^2 - t + 1").evaluate(&[q(-1)]).unwrap(), q(3));
        assert_eq!(p("t1*t2 - 1").evaluate(&[q(1), q(1)]).unwrap(), q(0));
        assert_eq!(
            p("t^-1 + 1").evaluate(&[BigRational::new(1.into(), 2.into())]).unwrap(),
            q(3)
        );
        assert_eq!(p("t + 1").evaluate(&[q(0)]), Err(LaurentError::ZeroCoordinate(0)));
        assert!(matches!(p("t + 1").evaluate(&[q(1), q(1)]), Err(LaurentError::PointArity { .. })));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("t^2 - 1").exact_div(&p("t - 1")), Some(p("t + 1")));
        assert_eq!(p("t^-2 - 1").exact_div(&p("t - 1")), Some(p("-t^-2 - t^-1")));
        assert_eq!(p("t^2 + 1").exact_div(&p("t - 1")), None);
        assert_eq!(p("2*t").exact_div(&p("4")), None);
        assert_eq!(p2("t1^2 - t2^2").exact_div(&p2("t1 + t2")), Some(p2("t1 - t2")));
    }

    #[test]
    fn display_format() {
        assert_eq!(p2("3*t1^2*t2^-1 - 1").to_string(), "3*t1^2*t2^-1 - 1");
        assert_eq!(p("-t^2 + 2*t - 1").to_string(), "-t^2 + 2*t - 1");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
    }

    proptest! {
        #[test]
        fn involve_is_ring_involution(a in arb_poly(2, 5, 3, 5), b in arb_poly(2, 5, 3, 5)) {
            prop_assert_eq!(a.involve().involve(), a.clone());
            prop_assert_eq!((&a + &b).involve(), &a.involve() + &b.involve());
            prop_assert_eq!((&a * &b).involve(), &a.involve() * &b.involve());
        }

        #[test]
        fn normalize_reconstructs_and_ignores_units(a in arb_poly(2, 5, 3, 5), u in arb_unit(2)) {
            let n = a.normalize();
            let back = n.poly.shift(&n.shift).scale(&BigInt::from(n.sign));
            prop_assert_eq!(back, a.clone());
            prop_assert_eq!(n.poly.normalized(), n.poly.clone());
            prop_assert_eq!((&a * &u).normalized(), n.poly);
        }

        #[test]
        fn evaluate_is_multiplicative(a in arb_poly(2, 4, 2, 4), b in arb_poly(2, 4, 2, 4),
                                      x in 1i64..5, y in -4i64..-1) {
            let pt = [q(x), BigRational::new(1.into(), y.into())];
            prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), a.evaluate(&pt).unwrap() * b.evaluate(&pt).unwrap());
        }

        #[test]
        fn print_parse_round_trip(a in arb_poly(3, 6, 3, 20)) {
            prop_assert_eq!(LaurentPoly::parse_with_vars(&a.to_string(), 3).unwrap(), a);
        }

        #[test]
        fn exact_div_recovers_factor(a in arb_poly(2, 4, 2, 5), b in arb_poly(2, 4, 2, 5)) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&b), Some(a));
        }
    }
}
