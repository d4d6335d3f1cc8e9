//! Greatest common divisors in `ℤ[t1^±1, …, tμ^±1]`.
//!
//! Monomials are units in the Laurent ring, so both inputs are first shifted
//! to ordinary polynomials without monomial factors. The gcd of those in
//! `ℤ[t1, …, tμ]` is computed recursively: split off the content with respect
//! to a main variable (itself a gcd in fewer variables), then run a primitive
//! pseudo-remainder sequence on the primitive parts.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::LaurentPoly;

/// Unit-normalized gcd. `gcd(p, 0) = normalize(p)`, `gcd(0, 0) = 0`.
pub fn gcd(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    assert_eq!(p.nvars(), q.nvars());
    let a = p.normalized();
    let b = q.normalized();
    gcd_ordinary(&a, &b).normalized()
}

/// Gcd of a sequence, folding left with an early exit at 1.
/// The gcd of an empty sequence is 0.
pub fn gcd_many<'a, I>(nvars: usize, items: I) -> LaurentPoly
where
    I: IntoIterator<Item = &'a LaurentPoly>,
{
    let mut acc = LaurentPoly::zero(nvars);
    for p in items {
        acc = gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Highest exponent of variable `v` (inputs are ordinary polynomials).
pub(super) fn deg_in(p: &LaurentPoly, v: usize) -> i64 {
    p.terms().map(|(e, _)| e[v]).max().unwrap_or(0)
}

/// Coefficients of `p` viewed as a polynomial in `v`; keys are `v`-degrees.
pub(super) fn coeffs_in(p: &LaurentPoly, v: usize) -> BTreeMap<i64, LaurentPoly> {
    let mut out: BTreeMap<i64, Vec<_>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut e2 = e.clone();
        e2[v] = 0;
        out.entry(e[v]).or_default().push((e2, c.clone()));
    }
    out.into_iter().map(|(k, ts)| (k, LaurentPoly::from_terms(p.nvars(), ts))).collect()
}

/// Content with respect to `v`: gcd of the coefficients in the other variables.
pub(super) fn content_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(p.nvars());
    for c in coeffs_in(p, v).values() {
        acc = gcd_ordinary(&acc, c);
        if acc.as_constant().map_or(false, |k| k.is_one() || (-k).is_one()) {
            return LaurentPoly::one(p.nvars());
        }
    }
    acc
}

fn primitive_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides")
}

fn var_power(nvars: usize, v: usize, k: i64) -> Vec<i64> {
    let mut e = vec![0; nvars];
    e[v] = k;
    e
}

/// Sparse pseudo-remainder of `f` by `g` with respect to `v`.
fn prem(f: &LaurentPoly, g: &LaurentPoly, v: usize) -> LaurentPoly {
    let dg = deg_in(g, v);
    let lc = coeffs_in(g, v).remove(&dg).unwrap();
    let mut r = f.clone();
    while !r.is_zero() {
        let dr = deg_in(&r, v);
        if dr < dg {
            break;
        }
        let lr = coeffs_in(&r, v).remove(&dr).unwrap();
        let shifted = g.shift(&var_power(g.nvars(), v, dr - dg));
        r = &(&lc * &r) - &(&lr * &shifted);
    }
    r
}

/// Gcd in `ℤ[t1, …, tμ]` of two ordinary polynomials, up to sign.
pub(super) fn gcd_ordinary(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() || a.as_constant().is_some() || b.as_constant().is_some() {
        return gcd_prs(a, b);
    }
    // Split off monomial factors, which the heuristic cannot certify.
    let (ma, mb) = (a.min_exponents(), b.min_exponents());
    let m: Vec<i64> = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
    let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
    let a0 = a.shift(&neg(&ma));
    let b0 = b.shift(&neg(&mb));
    let (ca, cb) = (a0.content(), b0.content());
    let c = ca.gcd(&cb);
    let (a1, b1) = (a0.primitive_part(), b0.primitive_part());
    let h = heuristic(&a1, &b1).unwrap_or_else(|| gcd_prs(&a1, &b1).primitive_part());
    h.scale(&c).shift(&m)
}

/// Bits allowed in an evaluation point before the heuristic gives up.
const HEU_MAX_BITS: u64 = 4096;

/// Heuristic gcd of primitive ordinary polynomials without monomial
/// factors: evaluate one variable at a large integer, recurse, and rebuild by
/// symmetric ξ-adic expansion. Returns `None` when no evaluation point is
/// certified by trial division.
fn heuristic(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let n = a.nvars();
    let Some(v) = (0..n).rev().find(|&i| deg_in(a, i) > 0 || deg_in(b, i) > 0) else {
        return Some(LaurentPoly::constant(n, a.as_constant()?.gcd(&b.as_constant()?)));
    };
    let norm = |p: &LaurentPoly| p.terms().map(|(_, c)| c.abs()).max().unwrap_or_default();
    let mut xi: BigInt = 2 * norm(a).min(norm(b)) + 2u32;
    for _ in 0..6 {
        if xi.bits() > HEU_MAX_BITS {
            return None;
        }
        let ea = eval_var(a, v, &xi);
        let eb = eval_var(b, v, &xi);
        if !ea.is_zero() && !eb.is_zero() {
            let g = if ea.as_constant().is_some() && eb.as_constant().is_some() {
                Some(LaurentPoly::constant(n, ea.as_constant().unwrap().gcd(&eb.as_constant().unwrap())))
            } else {
                heuristic_any(&ea, &eb)
            };
            if let Some(g) = g {
                let h = expand_adic(&g, v, &xi).primitive_part();
                if !h.is_zero()
                    && h.min_exponents().iter().all(|&e| e == 0)
                    && a.divisible_by(&h)
                    && b.divisible_by(&h)
                {
                    return Some(h);
                }
            }
        }
        xi = &xi * 73794u32 / 27011u32;
    }
    None
}

/// Heuristic gcd of arbitrary ordinary polynomials (content and monomial
/// factors handled here).
fn heuristic_any(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let (ma, mb) = (a.min_exponents(), b.min_exponents());
    let m: Vec<i64> = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
    let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
    let a0 = a.shift(&neg(&ma));
    let b0 = b.shift(&neg(&mb));
    let (ca, cb) = (a0.content(), b0.content());
    let h = heuristic(&a0.primitive_part(), &b0.primitive_part())?;
    Some(h.scale(&ca.gcd(&cb)).shift(&m))
}

/// Substitute the integer `x` for variable `v`.
fn eval_var(p: &LaurentPoly, v: usize, x: &BigInt) -> LaurentPoly {
    LaurentPoly::from_terms(
        p.nvars(),
        p.terms().map(|(e, c)| {
            let mut e2 = e.clone();
            e2[v] = 0;
            (e2, c * x.pow(e[v] as u32))
        }),
    )
}

/// Inverse of [`eval_var`] for small coefficients: symmetric base-`x` digits
/// of every coefficient become the coefficients of powers of variable `v`.
fn expand_adic(g: &LaurentPoly, v: usize, x: &BigInt) -> LaurentPoly {
    let half = x >> 1u32;
    let mut terms = Vec::new();
    let mut rest = g.clone();
    let mut k = 0i64;
    while !rest.is_zero() {
        let mut digit = Vec::new();
        let mut next = Vec::new();
        for (e, c) in rest.terms() {
            let mut d = c.mod_floor(x);
            if d > half {
                d -= x;
            }
            next.push((e.clone(), (c - &d) / x));
            if !d.is_zero() {
                let mut e2 = e.clone();
                e2[v] = k;
                digit.push((e2, d));
            }
        }
        terms.extend(digit);
        rest = LaurentPoly::from_terms(g.nvars(), next);
        k += 1;
    }
    LaurentPoly::from_terms(g.nvars(), terms)
}

/// Primitive pseudo-remainder sequence gcd.
fn gcd_prs(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if let (Some(x), Some(y)) = (a.as_constant(), b.as_constant()) {
        return LaurentPoly::constant(a.nvars(), x.gcd(&y));
    }
    let n = a.nvars();
    let v = (0..n).find(|&i| deg_in(a, i) > 0 || deg_in(b, i) > 0).unwrap();
    if deg_in(a, v) == 0 {
        return gcd_ordinary(a, &content_in(b, v));
    }
    if deg_in(b, v) == 0 {
        return gcd_ordinary(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_ordinary(&ca, &cb);
    let mut f = a.exact_div(&ca).unwrap();
    let mut g = b.exact_div(&cb).unwrap();
    if deg_in(&f, v) < deg_in(&g, v) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        if deg_in(&g, v) == 0 {
            // g is primitive and free of v, hence a unit: the primitive gcd is 1.
            f = LaurentPoly::one(n);
            break;
        }
        let r = prem(&f, &g, v);
        f = g;
        g = if r.is_zero() { r } else { primitive_in(&r, v) };
    }
    &c * &f
}
