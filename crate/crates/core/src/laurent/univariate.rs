//! Dense univariate polynomials over ℤ and ℤ/P, and Zassenhaus factorization
//! of square-free primitive polynomials.
//!
//! Coefficient vectors are stored lowest degree first with no trailing zeros.
//! Factoring splits modulo a small prime (the best of a few candidates) with
//! distinct-degree plus Cantor–Zassenhaus equal-degree splitting, Hensel
//! lifts the factors past the Mignotte bound, then recombines subsets of
//! lifted factors by trial division over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::{Budget, BudgetExceeded};

pub(crate) type Dense = Vec<BigInt>;

pub(crate) fn trim(v: &mut Dense) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn degree(v: &[BigInt]) -> usize {
    v.len().saturating_sub(1)
}

pub(crate) fn mul_z(a: &[BigInt], b: &[BigInt]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact quotient `a / b` over ℤ, or `None`.
pub(crate) fn div_exact_z(a: &[BigInt], b: &[BigInt]) -> Option<Dense> {
    assert!(!b.is_empty());
    if a.is_empty() {
        return Some(vec![]);
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r: Dense = a.to_vec();
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &r[k + b.len() - 1];
        let (qq, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !qq.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] -= &qq * y;
            }
        }
        q[k] = qq;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

fn content_z(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive_z(v: &[BigInt]) -> Dense {
    let c = content_z(v);
    if c.is_zero() {
        return vec![];
    }
    let c = if v.last().unwrap().is_negative() { -c } else { c };
    v.iter().map(|x| x / &c).collect()
}

/// Arithmetic in `(ℤ/p)[x]` for a word-size prime `p`.
struct Zp {
    p: u64,
}

type Small = Vec<u64>;

fn trim_s(v: &mut Small) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Zp {
    fn from_z(&self, a: &[BigInt]) -> Small {
        let p = BigInt::from(self.p);
        let mut v: Small = a.iter().map(|c| c.mod_floor(&p).try_into().unwrap()).collect();
        trim_s(&mut v);
        v
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        r
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Small {
        let n = a.len().max(b.len());
        let mut v: Small = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        trim_s(&mut v);
        v
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Small {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim_s(&mut out);
        out
    }

    fn scale(&self, a: &[u64], c: u64) -> Small {
        let mut v: Small = a.iter().map(|&x| x * c % self.p).collect();
        trim_s(&mut v);
        v
    }

    fn monic(&self, a: &[u64]) -> Small {
        match a.last() {
            None => vec![],
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    fn divrem(&self, a: &[u64], b: &[u64]) -> (Small, Small) {
        assert!(!b.is_empty());
        let mut r: Small = a.to_vec();
        if r.len() < b.len() {
            return (vec![], r);
        }
        let li = self.inv(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let c = r[k + b.len() - 1] * li % self.p;
            if c != 0 {
                for (j, &y) in b.iter().enumerate() {
                    r[k + j] = (r[k + j] + self.p - c * y % self.p) % self.p;
                }
            }
            q[k] = c;
        }
        trim_s(&mut q);
        trim_s(&mut r);
        (q, r)
    }

    fn rem(&self, a: &[u64], b: &[u64]) -> Small {
        self.divrem(a, b).1
    }

    fn gcd(&self, a: &[u64], b: &[u64]) -> Small {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(s, t)` with `s a + t b = 1`, for coprime `a`, `b`.
    fn bezout(&self, a: &[u64], b: &[u64]) -> (Small, Small) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (Small, Small) = (vec![1], vec![]);
        let (mut t0, mut t1): (Small, Small) = (vec![], vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        assert_eq!(r0.len(), 1, "bezout inputs must be coprime");
        let c = self.inv(r0[0]);
        (self.scale(&s0, c), self.scale(&t0, c))
    }

    fn powmod(&self, base: &[u64], e: &BigInt, m: &[u64]) -> Small {
        let mut acc = vec![1u64];
        let mut b = self.rem(base, m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
            if i + 1 < bits {
                b = self.rem(&self.mul(&b, &b), m);
            }
        }
        self.rem(&acc, m)
    }

    fn derivative(&self, a: &[u64]) -> Small {
        let mut v: Small = a.iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % self.p) % self.p).collect();
        trim_s(&mut v);
        v
    }
}

/// Coefficient bound for factors of `f` (Mignotte), times the leading
/// coefficient, doubled for symmetric representatives.
fn factor_bound(f: &[BigInt]) -> BigInt {
    let n = degree(f);
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1u32;
    let lc = f.last().unwrap().abs();
    (BigInt::one() << n) * norm2 * &lc * 2u32
}

/// Split a monic square-free `f` over ℤ/p into monic irreducible factors.
fn factor_mod(zp: &Zp, f: &[u64], rng: &mut ChaCha8Rng, budget: &Budget) -> Result<Vec<Small>, BudgetExceeded> {
    let x = vec![0u64, 1];
    let p = BigInt::from(zp.p);
    let mut rest = f.to_vec();
    let mut h = x.clone();
    let mut d = 0usize;
    let mut out = Vec::new();
    while degree_s(&rest) >= 2 * (d + 1) {
        budget.check("distinct-degree factorization")?;
        d += 1;
        h = zp.powmod(&h, &p, &rest);
        let g = zp.gcd(&zp.sub(&h, &x), &rest);
        if degree_s(&g) > 0 {
            rest = zp.divrem(&rest, &g).0;
            h = zp.rem(&h, &rest);
            out.extend(equal_degree(zp, &g, d, rng, budget)?);
        }
    }
    if degree_s(&rest) > 0 {
        out.push(zp.monic(&rest));
    }
    Ok(out)
}

fn degree_s(v: &[u64]) -> usize {
    v.len().saturating_sub(1)
}

fn equal_degree(
    zp: &Zp,
    g: &[u64],
    d: usize,
    rng: &mut ChaCha8Rng,
    budget: &Budget,
) -> Result<Vec<Small>, BudgetExceeded> {
    if degree_s(g) == d {
        return Ok(vec![zp.monic(g)]);
    }
    let e: BigInt = (BigInt::from(zp.p).pow(d as u32) - 1u32) / 2u32;
    loop {
        budget.check("equal-degree factorization")?;
        let mut a: Small = (0..degree_s(g)).map(|_| rng.gen_range(0..zp.p)).collect();
        trim_s(&mut a);
        if degree_s(&a) == 0 {
            continue;
        }
        let b = zp.sub(&zp.powmod(&a, &e, g), &[1]);
        let h = zp.gcd(&b, g);
        if degree_s(&h) > 0 && degree_s(&h) < degree_s(g) {
            let other = zp.divrem(g, &h).0;
            let mut out = equal_degree(zp, &h, d, rng, budget)?;
            out.extend(equal_degree(zp, &other, d, rng, budget)?);
            return Ok(out);
        }
    }
}

/// Polynomial arithmetic modulo an integer `m`.
fn reduce_m(a: &[BigInt], m: &BigInt) -> Dense {
    let mut v: Dense = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut v);
    v
}

fn add_z(a: &[BigInt], b: &[BigInt]) -> Dense {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut v: Dense = (0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect();
    trim(&mut v);
    v
}

fn sub_z(a: &[BigInt], b: &[BigInt]) -> Dense {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut v: Dense = (0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect();
    trim(&mut v);
    v
}

/// Division by a monic `b` modulo `m`.
fn divrem_monic_m(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Dense, Dense) {
    let mut r = reduce_m(a, m);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + b.len() - 1].mod_floor(m);
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
            }
        }
        q[k] = c;
    }
    trim(&mut q);
    let mut r = reduce_m(&r, m);
    trim(&mut r);
    (q, r)
}

fn inv_m(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient must be invertible");
    e.x.mod_floor(m)
}

/// One quadratic Hensel step: from `f ≡ g h`, `s g + t h ≡ 1 (mod m)` with
/// `h` monic to the same relations modulo `m²`.
fn hensel_step(f: &[BigInt], g: &[BigInt], h: &[BigInt], s: &[BigInt], t: &[BigInt], m: &BigInt) -> [Dense; 4] {
    let m2 = m * m;
    let e = reduce_m(&sub_z(f, &mul_z(g, h)), &m2);
    let (q, r) = divrem_monic_m(&mul_z(s, &e), h, &m2);
    let g2 = reduce_m(&add_z(&add_z(g, &mul_z(t, &e)), &mul_z(&q, g)), &m2);
    let h2 = reduce_m(&add_z(h, &r), &m2);
    let b = reduce_m(&sub_z(&add_z(&mul_z(s, &g2), &mul_z(t, &h2)), &[BigInt::one()]), &m2);
    let (c, d) = divrem_monic_m(&mul_z(s, &b), &h2, &m2);
    let s2 = reduce_m(&sub_z(s, &d), &m2);
    let t2 = reduce_m(&sub_z(&sub_z(t, &mul_z(t, &b)), &mul_z(&c, &g2)), &m2);
    [g2, h2, s2, t2]
}

fn to_big(a: &[u64]) -> Dense {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift `f ≡ lc(f) ∏ fac (mod p)` to monic factors modulo `modulus`, a power
/// of `p`.
fn multi_lift(f: &[BigInt], fac: &[Small], zp: &Zp, modulus: &BigInt) -> Vec<Dense> {
    if fac.len() == 1 {
        let f = reduce_m(f, modulus);
        let li = inv_m(f.last().unwrap(), modulus);
        return vec![reduce_m(&f.iter().map(|c| c * &li).collect::<Vec<_>>(), modulus)];
    }
    let k = fac.len() / 2;
    let lc = zp.from_z(&[f.last().unwrap().clone()]);
    let g0 = fac[..k].iter().fold(lc, |acc, u| zp.mul(&acc, u));
    let h0 = fac[k..].iter().fold(vec![1u64], |acc, u| zp.mul(&acc, u));
    let (s0, t0) = zp.bezout(&g0, &h0);
    let (mut g, mut h, mut s, mut t) = (to_big(&g0), to_big(&h0), to_big(&s0), to_big(&t0));
    let mut m = BigInt::from(zp.p);
    while &m < modulus {
        [g, h, s, t] = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let g = reduce_m(&g, modulus);
    let h = reduce_m(&h, modulus);
    let mut out = multi_lift(&g, &fac[..k], zp, modulus);
    out.extend(multi_lift(&h, &fac[k..], zp, modulus));
    out
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r > half {
        r - m
    } else {
        r
    }
}

/// Primes tried for modular factorization.
fn small_primes() -> impl Iterator<Item = u64> {
    (11u64..60_000).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Number of candidate primes compared; the one with fewest factors wins.
const PRIME_TRIALS: usize = 4;

/// Irreducible factors over ℤ of a square-free primitive `f` with positive
/// leading coefficient. Output factors are primitive with positive leading
/// coefficients; their product is `f`.
pub(crate) fn factor_squarefree(f: &[BigInt], budget: &Budget) -> Result<Vec<Dense>, BudgetExceeded> {
    let n = degree(f);
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut best: Option<(Zp, Vec<Small>)> = None;
    let mut trials = 0;
    for p in small_primes() {
        let zp = Zp { p };
        let fm = zp.from_z(f);
        if degree_s(&fm) != n || degree_s(&zp.gcd(&fm, &zp.derivative(&fm))) != 0 {
            continue;
        }
        let modular = factor_mod(&zp, &zp.monic(&fm), &mut rng, budget)?;
        if modular.len() == 1 {
            return Ok(vec![f.to_vec()]);
        }
        if best.as_ref().map_or(true, |(_, b)| modular.len() < b.len()) {
            best = Some((zp, modular));
        }
        trials += 1;
        if trials == PRIME_TRIALS {
            break;
        }
    }
    let (zp, mut small) = best.expect("some prime keeps a square-free polynomial square-free");
    small.sort_by_key(|m| degree_s(m));
    let bound = factor_bound(f);
    let pb = BigInt::from(zp.p);
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
    }
    let mut modular = multi_lift(f, &small, &zp, &modulus);

    let half = &modulus >> 1u32;
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut tries: u64 = 0;
    let mut s = 1;
    'outer: while 2 * s <= modular.len() {
        let idx: Vec<usize> = (0..modular.len()).collect();
        for subset in itertools::Itertools::combinations(idx.into_iter(), s) {
            tries += 1;
            if tries > budget.max_recombinations {
                return Err(BudgetExceeded("modular factor recombination".into()));
            }
            if tries % 256 == 0 {
                budget.check("modular factor recombination")?;
            }
            let lcr = rest.last().unwrap().clone();
            // Constant-term test before the full product.
            let c0 = subset.iter().fold(lcr.clone(), |acc, &k| (acc * &modular[k][0]).mod_floor(&modulus));
            let c0 = symmetric(&c0, &modulus, &half);
            if c0.is_zero() || !(&lcr * &rest[0]).is_multiple_of(&c0) {
                continue;
            }
            let mut g = vec![lcr];
            for &k in &subset {
                g = reduce_m(&mul_z(&g, &modular[k]), &modulus);
            }
            let g: Dense = g.iter().map(|c| symmetric(c, &modulus, &half)).collect();
            let g = primitive_z(&g);
            if let Some(q) = div_exact_z(&rest, &g) {
                out.push(g);
                rest = q;
                modular = modular.iter().enumerate().filter(|(k, _)| !subset.contains(k)).map(|(_, m)| m.clone()).collect();
                continue 'outer;
            }
        }
        s += 1;
    }
    out.push(primitive_z(&rest));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[i64]) -> Dense {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn exact_division() {
        assert_eq!(div_exact_z(&d(&[-1, 0, 1]), &d(&[-1, 1])), Some(d(&[1, 1])));
        assert_eq!(div_exact_z(&d(&[1, 0, 1]), &d(&[-1, 1])), None);
    }

    #[test]
    fn splits_products_of_known_irreducibles() {
        let b = Budget::default();
        // (x^2 + 1)(x^2 - 2)(3x + 1)(x^4 + x^3 + x^2 + x + 1)
        let parts = [d(&[1, 0, 1]), d(&[-2, 0, 1]), d(&[1, 3]), d(&[1, 1, 1, 1, 1])];
        let f = parts.iter().fold(d(&[1]), |acc, q| mul_z(&acc, q));
        let mut got = factor_squarefree(&f, &b).unwrap();
        got.sort();
        let mut want = parts.to_vec();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn irreducible_with_many_modular_factors() {
        // x^4 + 1 splits modulo every prime but is irreducible over ℤ.
        let f = d(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_squarefree(&f, &Budget::default()).unwrap(), vec![f]);
    }
}
