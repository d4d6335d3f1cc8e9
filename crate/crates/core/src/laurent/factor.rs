//! Irreducible factorization in the Laurent ring.
//!
//! Pipeline: unit-normalize, split integer content, square-free decomposition
//! (content with respect to a main variable, then Yun), and for each
//! square-free part either univariate Zassenhaus or, for two or more active
//! variables, a Kronecker substitution followed by recombination of the
//! univariate factors of the image with trial division in the Laurent ring.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gcd::{content_in, deg_in, gcd_ordinary};
use super::univariate::{self, Dense};
use super::{LaurentError, LaurentPoly};
use crate::budget::{Budget, BudgetExceeded};

/// Largest degree of the Kronecker image attempted.
const MAX_IMAGE_DEGREE: i64 = 400;

/// `content · ∏ factor^mult`, equal to the input up to a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(LaurentPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, nvars: usize) -> LaurentPoly {
        let mut acc = LaurentPoly::constant(nvars, self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

impl From<BudgetExceeded> for LaurentError {
    fn from(e: BudgetExceeded) -> Self {
        LaurentError::FactorizationUnavailable(e.0)
    }
}

/// Factor `p` into integer content and unit-normalized irreducibles,
/// sorted by total degree and then printed form.
pub fn factor(p: &LaurentPoly, budget: &Budget) -> Result<Factorization, LaurentError> {
    if p.is_zero() {
        return Err(LaurentError::FactorZero);
    }
    let q = p.normalized();
    let content = q.content();
    let q = q.primitive_part();
    if q.is_one() {
        return Ok(Factorization { content, factors: vec![] });
    }
    if q.total_degree() > i64::from(budget.max_total_degree) {
        return Err(LaurentError::FactorizationUnavailable(format!(
            "total degree {} exceeds limit {}",
            q.total_degree(),
            budget.max_total_degree
        )));
    }
    let mut acc: BTreeMap<String, (LaurentPoly, u32)> = BTreeMap::new();
    for (part, mult) in squarefree(&q) {
        budget.check("factorization")?;
        let irr = if part.active_vars().len() <= budget.max_vars {
            split_squarefree(&part, budget)?
        } else if part.total_degree() == 1 {
            vec![part]
        } else {
            return Err(LaurentError::FactorizationUnavailable(format!(
                "{} active variables exceed limit {}",
                part.active_vars().len(),
                budget.max_vars
            )));
        };
        for g in irr {
            let g = g.normalized();
            acc.entry(g.to_string()).or_insert_with(|| (g, 0)).1 += mult;
        }
    }
    let mut factors: Vec<_> = acc.into_values().collect();
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Factorization { content, factors })
}

/// Square-free decomposition of a primitive, normalized polynomial.
/// Returns pairs `(part, multiplicity)` with nonconstant parts.
pub(crate) fn squarefree(f: &LaurentPoly) -> Vec<(LaurentPoly, u32)> {
    let Some(&v) = f.active_vars().first() else {
        return vec![];
    };
    let cont = content_in(f, v).normalized();
    let prim = f.exact_div(&cont).unwrap().normalized();
    let mut out = squarefree(&cont);
    out.extend(yun(&prim, v));
    out
}

fn exact(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a.exact_div(b).expect("exact division in square-free decomposition")
}

/// Yun's algorithm with respect to `v`; `f` is primitive in `v` and has no
/// monomial factor, so every intermediate gcd is an ordinary polynomial.
fn yun(f: &LaurentPoly, v: usize) -> Vec<(LaurentPoly, u32)> {
    let mut out = Vec::new();
    let fp = f.derivative(v);
    let a0 = gcd_ordinary(f, &fp).normalized();
    let mut b = exact(f, &a0);
    let mut c = exact(&fp, &a0);
    let mut d = &c - &b.derivative(v);
    let mut i = 1;
    while deg_in(&b, v) > 0 {
        let a = gcd_ordinary(&b, &d).normalized();
        if deg_in(&a, v) > 0 {
            out.push((a.clone(), i));
        }
        b = exact(&b, &a);
        c = exact(&d, &a);
        d = &c - &b.derivative(v);
        i += 1;
    }
    out
}

/// Irreducible factors of a square-free, primitive, normalized polynomial.
fn split_squarefree(f: &LaurentPoly, budget: &Budget) -> Result<Vec<LaurentPoly>, LaurentError> {
    let vars = f.active_vars();
    let n = f.nvars();
    let maxe = f.max_exponents();
    // Mixed-radix Kronecker map: t_{v_j} ↦ x^{s_j}.
    let mut strides = Vec::with_capacity(vars.len());
    let mut s: i64 = 1;
    for (k, &v) in vars.iter().enumerate() {
        strides.push(s);
        if k + 1 < vars.len() {
            s = s.checked_mul(maxe[v] + 1).unwrap_or(i64::MAX);
        }
    }
    let image_deg: i64 = vars.iter().zip(&strides).map(|(&v, &s)| maxe[v].saturating_mul(s)).sum();
    if image_deg > MAX_IMAGE_DEGREE {
        return Err(LaurentError::FactorizationUnavailable(format!("substitution degree {image_deg} too large")));
    }
    let mut image = vec![BigInt::zero(); image_deg as usize + 1];
    for (e, c) in f.terms() {
        let k: i64 = vars.iter().zip(&strides).map(|(&v, &s)| e[v] * s).sum();
        image[k as usize] += c;
    }
    let unmap = |g: &[BigInt]| -> LaurentPoly {
        LaurentPoly::from_terms(
            n,
            g.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
                let mut e = vec![0i64; n];
                let mut k = k as i64;
                for j in (0..vars.len()).rev() {
                    e[vars[j]] = k / strides[j];
                    k %= strides[j];
                }
                (e, c.clone())
            }),
        )
    };

    let items = factor_univariate(&image, budget)?;
    if vars.len() == 1 {
        return Ok(items.into_iter().flat_map(|(g, m)| std::iter::repeat(unmap(&g)).take(m as usize)).collect());
    }

    // Sub-multisets of the image factors, by increasing size.
    let mut avail: Vec<u32> = items.iter().map(|(_, m)| *m).collect();
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut tries: u64 = 0;
    let mut size = 1u32;
    'outer: while 2 * size <= avail.iter().sum::<u32>() {
        let mut picks = Vec::new();
        submultisets(&avail, size, &mut vec![0; avail.len()], 0, &mut picks);
        for pick in picks {
            tries += 1;
            if tries > budget.max_recombinations {
                return Err(LaurentError::FactorizationUnavailable("multivariate recombination".into()));
            }
            budget.check("multivariate recombination")?;
            let mut g: Dense = vec![BigInt::one()];
            for (k, &e) in pick.iter().enumerate() {
                for _ in 0..e {
                    g = univariate::mul_z(&g, &items[k].0);
                }
            }
            let cand = unmap(&g).normalized();
            if cand.is_unit() {
                continue;
            }
            if let Some(q) = rest.exact_div(&cand) {
                rest = q.normalized();
                found.push(cand);
                for (a, e) in avail.iter_mut().zip(&pick) {
                    *a -= e;
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    if !rest.is_unit() {
        found.push(rest);
    }
    Ok(found)
}

fn submultisets(avail: &[u32], left: u32, cur: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    if k == avail.len() {
        return;
    }
    for e in (0..=avail[k].min(left)).rev() {
        cur[k] = e;
        submultisets(avail, left - e, cur, k + 1, out);
    }
    cur[k] = 0;
}

/// Factor a primitive univariate polynomial (any multiplicities) over ℤ.
fn factor_univariate(f: &[BigInt], budget: &Budget) -> Result<Vec<(Dense, u32)>, LaurentError> {
    let lp = LaurentPoly::from_terms(
        1,
        f.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (vec![k as i64], c.clone())),
    );
    let shift = lp.min_exponents()[0] as usize;
    let mut out = Vec::new();
    if shift > 0 {
        out.push((vec![BigInt::zero(), BigInt::one()], shift as u32));
    }
    let lp = lp.normalized().primitive_part();
    for (part, m) in squarefree(&lp) {
        let mut dense = vec![BigInt::zero(); part.max_exponents()[0] as usize + 1];
        for (e, c) in part.terms() {
            dense[e[0] as usize] = c.clone();
        }
        for g in univariate::factor_squarefree(&dense, budget)? {
            out.push((g, m));
        }
    }
    Ok(out)
}
