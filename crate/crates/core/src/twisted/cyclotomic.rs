//! `ℚ(ζ_{q^l}) = ℚ[x]/Φ_{q^l}(x)` and polynomials over it.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

fn q_pow(q: u64, l: u32) -> u64 {
    q.pow(l)
}

/// Element of `ℚ(ζ_m)`, `m = q^l` with `q` prime, as coefficients of
/// `1, ζ, …, ζ^{φ(m)-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyc {
    q: u64,
    l: u32,
    c: Vec<BigRational>,
}

type QPoly = Vec<BigRational>;

fn trim_q(p: &mut QPoly) {
    while p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
}

/// Quotient and remainder in `ℚ[x]`.
fn divrem_q(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    trim_q(&mut r);
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut quo = vec![BigRational::zero(); r.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let f = r.last().unwrap() / &lc;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &f * bi;
        }
        quo[k] = f;
        trim_q(&mut r);
    }
    (quo, r)
}

fn mul_q(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_q(&mut out);
    out
}

fn sub_q(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim_q(&mut out);
    out
}

impl Cyc {
    /// `Φ_{q^l}(x) = Σ_{i<q} x^{i q^{l-1}}`.
    pub fn cyclotomic_poly(q: u64, l: u32) -> Vec<BigRational> {
        let r = q_pow(q, l - 1) as usize;
        let mut p = vec![BigRational::zero(); (q as usize - 1) * r + 1];
        for i in 0..q as usize {
            p[i * r] = BigRational::one();
        }
        p
    }

    pub fn degree_of(q: u64, l: u32) -> usize {
        ((q - 1) * q_pow(q, l - 1)) as usize
    }

    pub fn order(&self) -> u64 {
        q_pow(self.q, self.l)
    }

    pub fn zero(q: u64, l: u32) -> Self {
        Cyc { q, l, c: vec![BigRational::zero(); Self::degree_of(q, l)] }
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.q, self.l)
    }

    pub fn from_int(q: u64, l: u32, k: i64) -> Self {
        let mut z = Self::zero(q, l);
        z.c[0] = BigRational::from_integer(k.into());
        z
    }

    /// `ζ^k`.
    pub fn zeta_pow(q: u64, l: u32, k: i64) -> Self {
        let m = q_pow(q, l) as i64;
        let e = k.rem_euclid(m) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        Self::reduce(q, l, raw)
    }

    fn reduce(q: u64, l: u32, mut raw: Vec<BigRational>) -> Self {
        let deg = Self::degree_of(q, l);
        let r = q_pow(q, l - 1) as usize;
        // x^deg = -Σ_{i<q-1} x^{i r}
        for e in (deg..raw.len()).rev() {
            let v = std::mem::take(&mut raw[e]);
            if v.is_zero() {
                continue;
            }
            for i in 0..(q as usize - 1) {
                raw[e - deg + i * r] -= &v;
            }
        }
        raw.resize(deg, BigRational::zero());
        Cyc { q, l, c: raw }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Cyc { q: self.q, l: self.l, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Cyc { q: self.q, l: self.l, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut raw = vec![BigRational::zero(); 2 * self.c.len()];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Self::reduce(self.q, self.l, raw)
    }

    /// Inverse by the extended Euclidean algorithm against `Φ`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi = Self::cyclotomic_poly(self.q, self.l);
        let mut a = self.c.clone();
        trim_q(&mut a);
        // invariant: s·self ≡ r (mod Φ)
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (QPoly, QPoly) = (vec![], vec![BigRational::one()]);
        while r1.len() > 1 {
            let (quo, rem) = divrem_q(&r0, &r1);
            let s2 = sub_q(&s0, &mul_q(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = r1[0].clone();
        let s: QPoly = s1.iter().map(|x| x / &c).collect();
        Some(Self::reduce(self.q, self.l, s))
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| format!("{x}*z^{i}")).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Polynomial in `s` over `ℚ(ζ_m)`, low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycPoly {
    q: u64,
    l: u32,
    c: Vec<Cyc>,
}

impl CycPoly {
    pub fn zero(q: u64, l: u32) -> Self {
        CycPoly { q, l, c: vec![] }
    }

    /// `a s^k`.
    pub fn monomial(a: Cyc, k: usize) -> Self {
        let (q, l) = (a.q, a.l);
        let mut c = vec![Cyc::zero(q, l); k + 1];
        c[k] = a;
        let mut p = CycPoly { q, l, c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
}

impl crate::linalg::ExactRing for CycPoly {
    fn zero_like(&self) -> Self {
        CycPoly::zero(self.q, self.l)
    }

    fn one_like(&self) -> Self {
        CycPoly::monomial(Cyc::from_int(self.q, self.l, 1), 0)
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = Cyc::zero(self.q, self.l);
        let c = (0..n).map(|i| self.c.get(i).unwrap_or(&z).add(o.c.get(i).unwrap_or(&z))).collect();
        let mut p = CycPoly { q: self.q, l: self.l, c };
        p.trim();
        p
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = Cyc::zero(self.q, self.l);
        let c = (0..n).map(|i| self.c.get(i).unwrap_or(&z).sub(o.c.get(i).unwrap_or(&z))).collect();
        let mut p = CycPoly { q: self.q, l: self.l, c };
        p.trim();
        p
    }

    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return self.zero_like();
        }
        let mut c = vec![Cyc::zero(self.q, self.l); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        let mut p = CycPoly { q: self.q, l: self.l, c };
        p.trim();
        p
    }

    fn exact_div(&self, o: &Self) -> Self {
        let d = o.c.len() - 1;
        let inv = o.c[d].inv().expect("nonzero leading coefficient");
        let mut r = self.clone();
        let mut quo = vec![Cyc::zero(self.q, self.l); self.c.len().saturating_sub(d)];
        while r.c.len() > d && !r.c.is_empty() {
            let k = r.c.len() - 1 - d;
            let f = r.c.last().unwrap().mul(&inv);
            for (i, b) in o.c.iter().enumerate() {
                r.c[k + i] = r.c[k + i].sub(&f.mul(b));
            }
            quo[k] = f;
            r.trim();
        }
        debug_assert!(r.c.is_empty(), "inexact division");
        let mut p = CycPoly { q: self.q, l: self.l, c: quo };
        p.trim();
        p
    }
}
