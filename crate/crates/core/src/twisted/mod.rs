//! Free chain complexes over abelian group rings, mod-`q` homology, twisted
//! homology with coefficients in an induced representation over
//! `ℚ(ζ_{q^l})(s)`, and the dimension inequality relating the two.

mod cyclotomic;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{bareiss_rank, IntMatrix};

pub use cyclotomic::{Cyc, CycPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistedError {
    #[error("torsion factor {0} must be greater than 1")]
    BadFactor(u64),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("boundary maps do not compose to zero at degree {0}")]
    NotAComplex(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported group data: {0}")]
    Unsupported(String),
    #[error("inconsistent representation data: {0}")]
    Inconsistent(String),
    #[error("input {0} is not a cycle")]
    NotACycle(usize),
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `ℤ^s ⊕ ⊕ ℤ/d_i`; elements are coordinate vectors, free part first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupSpec {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl AbelianGroupSpec {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self, TwistedError> {
        if let Some(&d) = torsion.iter().find(|&&d| d <= 1) {
            return Err(TwistedError::BadFactor(d));
        }
        Ok(AbelianGroupSpec { free_rank, torsion })
    }

    /// `ℤ`.
    pub fn integers() -> Self {
        AbelianGroupSpec { free_rank: 1, torsion: vec![] }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    fn reduce(&self, g: &mut [i64]) {
        for (x, &d) in g[self.free_rank..].iter_mut().zip(&self.torsion) {
            *x = x.rem_euclid(d as i64);
        }
    }
}

/// Finite formal sum `Σ c_g g` with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, BigInt)>>(g: &AbelianGroupSpec, terms: I) -> Self {
        let mut out = Self::zero();
        for (mut e, c) in terms {
            g.reduce(&mut e);
            out.add_term(e, c);
        }
        out
    }

    /// `Σ c_k x^k` in `ℤ[ℤ]`.
    pub fn laurent(coeffs: &[(i64, i64)]) -> Self {
        Self::from_terms(&AbelianGroupSpec::integers(), coeffs.iter().map(|&(k, c)| (vec![k], BigInt::from(c))))
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, o: &Self, g: &AbelianGroupSpec) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                g.reduce(&mut e);
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// Matrix over `ℤG`. Row vectors are module elements; a map `C_n → C_{n-1}`
/// is a `rank C_n × rank C_{n-1}` matrix acting on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingMatrix {
    group: AbelianGroupSpec,
    rows: usize,
    cols: usize,
    data: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zeros(group: &AbelianGroupSpec, rows: usize, cols: usize) -> Self {
        GroupRingMatrix { group: group.clone(), rows, cols, data: vec![GroupRingElement::zero(); rows * cols] }
    }

    pub fn from_rows(group: &AbelianGroupSpec, cols: usize, rows: Vec<Vec<GroupRingElement>>) -> Result<Self, TwistedError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(TwistedError::Shape(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            for x in r {
                if x.terms.keys().any(|e| e.len() != group.dim()) {
                    return Err(TwistedError::Shape("group element of the wrong dimension".into()));
                }
                data.push(GroupRingElement::from_terms(group, x.terms.iter().map(|(e, c)| (e.clone(), c.clone()))));
            }
        }
        Ok(GroupRingMatrix { group: group.clone(), rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[GroupRingElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &GroupRingMatrix) -> GroupRingMatrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = GroupRingMatrix::zeros(&self.group, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(o.get(k, j), &self.group));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Stack the rows of `self` over those of `o`.
    pub fn vstack(&self, o: &GroupRingMatrix) -> GroupRingMatrix {
        assert_eq!(self.cols, o.cols, "vstack shape");
        GroupRingMatrix {
            group: self.group.clone(),
            rows: self.rows + o.rows,
            cols: self.cols,
            data: [self.data.clone(), o.data.clone()].concat(),
        }
    }

    /// Entrywise augmentation `g ↦ 1`.
    pub fn augmentation(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.augmentation()).collect()).collect();
        IntMatrix::from_rows(self.cols, &rows)
    }
}

/// `C_lo ← C_{lo+1} ← …` with `boundaries[k] = ∂_{lo+k+1}`.
#[derive(Debug, Clone)]
pub struct FreeChainComplex {
    group: AbelianGroupSpec,
    lowest: usize,
    ranks: Vec<usize>,
    boundaries: Vec<GroupRingMatrix>,
}

impl FreeChainComplex {
    pub fn new(
        group: AbelianGroupSpec,
        lowest: usize,
        ranks: Vec<usize>,
        boundaries: Vec<GroupRingMatrix>,
    ) -> Result<Self, TwistedError> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(TwistedError::Shape(format!("{} ranks need {} boundaries", ranks.len(), ranks.len().max(1) - 1)));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows != ranks[k + 1] || b.cols != ranks[k] || b.group != group {
                return Err(TwistedError::Shape(format!("boundary into degree {}", lowest + k)));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k].mul(&boundaries[k - 1]).is_zero() {
                return Err(TwistedError::NotAComplex(lowest + k + 1));
            }
        }
        Ok(FreeChainComplex { group, lowest, ranks, boundaries })
    }

    pub fn zero(group: AbelianGroupSpec) -> Self {
        FreeChainComplex { group, lowest: 0, ranks: vec![], boundaries: vec![] }
    }

    pub fn group(&self) -> &AbelianGroupSpec {
        &self.group
    }

    pub fn rank(&self, n: usize) -> usize {
        n.checked_sub(self.lowest).and_then(|k| self.ranks.get(k)).copied().unwrap_or(0)
    }

    /// `∂_n: C_n → C_{n-1}`, if both ends are in range.
    pub fn boundary(&self, n: usize) -> Option<&GroupRingMatrix> {
        n.checked_sub(self.lowest + 1).and_then(|k| self.boundaries.get(k))
    }

    pub fn is_cycle(&self, n: usize, x: &[GroupRingElement]) -> bool {
        match self.boundary(n) {
            None => true,
            Some(b) => {
                let m = GroupRingMatrix { group: self.group.clone(), rows: 1, cols: b.rows, data: x.to_vec() };
                m.mul(b).is_zero()
            }
        }
    }
}

/// Rank over `ℤ/q` by Gaussian elimination.
pub fn rank_mod(m: &IntMatrix, q: u64) -> usize {
    let qb = BigInt::from(q);
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.mod_floor(&qb).to_u64().expect("reduced")).collect())
        .collect();
    let cols = m.cols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        let inv = mod_inv(a[rank][c], q);
        for x in a[rank].iter_mut() {
            *x = *x * inv % q;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..cols {
                    a[r][j] = (a[r][j] + (q - f) * a[rank][j]) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inv(a: u64, q: u64) -> u64 {
    let e = i128::from(a).extended_gcd(&i128::from(q));
    e.x.rem_euclid(i128::from(q)) as u64
}

fn rank_mod_q(m: Option<&GroupRingMatrix>, q: u64) -> usize {
    m.map_or(0, |b| rank_mod(&b.augmentation(), q))
}

/// `dim_{ℤ/q} H_n(ℤ/q ⊗_{ℤG} C)` with the trivial `G`-action on `ℤ/q`.
pub fn homology_dim_modq(c: &FreeChainComplex, n: usize, q: u64) -> Result<usize, TwistedError> {
    if !is_prime(q) {
        return Err(TwistedError::NotPrime(q));
    }
    Ok(c.rank(n) - rank_mod_q(c.boundary(n), q) - rank_mod_q(c.boundary(n + 1), q))
}

/// Character `α` of `K = tℤ ⊂ ℤ`: `α(x^t) = ζ^exponent`, `ζ = e^{2πi/q^l}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterData {
    pub q: u64,
    pub l: u32,
    pub exponent: u64,
}

impl CharacterData {
    pub fn trivial(q: u64) -> Self {
        CharacterData { q, l: 1, exponent: 0 }
    }
}

/// Induced representation `α′` of `G = ℤ = ⟨x⟩` from `K = ker(G → ℤ/t)`,
/// on the basis `v ⊗ x^{-i}`, `0 ≤ i < t`, with `G` acting on row vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedRep {
    pub alpha: CharacterData,
    pub index: usize,
    /// Exponents of the transversal `x^{-i}`.
    pub transversal: Vec<i64>,
    /// `α′(x)`.
    pub generator: Vec<Vec<Cyc>>,
}

impl InducedRep {
    /// `d·t` with `d = 1`.
    pub fn dim(&self) -> usize {
        self.index
    }

    /// `α′(x^k)`: `(v ⊗ x^{-i})·x^k = v ⊗ x^{k-i} = α(x^{t c}) (v ⊗ x^{-j})` where
    /// `k - i = t c - j`, `0 ≤ j < t`.
    pub fn eval(&self, k: i64) -> Vec<Vec<Cyc>> {
        let t = self.index as i64;
        let CharacterData { q, l, exponent } = self.alpha;
        let mut m = vec![vec![Cyc::zero(q, l); self.index]; self.index];
        for (i, row) in m.iter_mut().enumerate() {
            let e = k - i as i64;
            let c = -(-e).div_euclid(t);
            let j = (t * c - e) as usize;
            row[j] = Cyc::zeta_pow(q, l, exponent as i64 * c);
        }
        m
    }
}

fn mat_mul(a: &[Vec<Cyc>], b: &[Vec<Cyc>]) -> Vec<Vec<Cyc>> {
    let n = a.len();
    let mut out = vec![vec![a[0][0].zero_like(); b[0].len()]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..b[0].len() {
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
            }
        }
    }
    out
}

/// Induce `α` along `φ: ℤ → A`, where `g` must be `ℤ`, `a` must be cyclic
/// (or trivial) and `phi` is the image of the generator. Multiplicativity
/// is verified on the generator and its inverse.
pub fn induce(
    g: &AbelianGroupSpec,
    a: &AbelianGroupSpec,
    phi: i64,
    alpha: CharacterData,
) -> Result<InducedRep, TwistedError> {
    if *g != AbelianGroupSpec::integers() {
        return Err(TwistedError::Unsupported("induction is implemented for G = Z".into()));
    }
    if a.free_rank != 0 || a.torsion.len() > 1 {
        return Err(TwistedError::Unsupported("A must be finite cyclic".into()));
    }
    if !is_prime(alpha.q) || alpha.l == 0 {
        return Err(TwistedError::Inconsistent(format!("character order {}^{} is not a prime power", alpha.q, alpha.l)));
    }
    let t = a.torsion.first().copied().unwrap_or(1);
    if phi.unsigned_abs().gcd(&t) != 1 {
        return Err(TwistedError::Inconsistent(format!("{phi} does not generate Z/{t}")));
    }
    let t = t as usize;
    let mut rep = InducedRep { alpha, index: t, transversal: (0..t as i64).map(|i| -i).collect(), generator: vec![] };
    rep.generator = rep.eval(1);
    let id = rep.eval(0);
    if mat_mul(&rep.generator, &rep.eval(-1)) != id || mat_mul(&rep.eval(2), &rep.eval(-1)) != rep.generator {
        return Err(TwistedError::Inconsistent("induced matrices are not multiplicative".into()));
    }
    Ok(rep)
}

/// `φ′: ℤ → ℋ′`: `Some(w)` for `ℋ′ = ℤ` with `x ↦ w`, `None` for `ℋ′ = 0`.
pub type HPrime = Option<i64>;

fn check_twist(rho: &InducedRep, hprime: HPrime) -> Result<(), TwistedError> {
    match hprime {
        Some(0) => Err(TwistedError::Inconsistent("phi' must be onto a nonzero group".into())),
        None if rho.index != 1 => {
            Err(TwistedError::Inconsistent("G -> A must factor through phi', impossible with H' = 0".into()))
        }
        _ => Ok(()),
    }
}

/// Replace each entry `Σ c_k x^k` by the block `Σ c_k α′(x^k) s^{w k}`,
/// multiplied through by a common power of `s` to clear negative exponents.
fn twist_matrix(m: &GroupRingMatrix, rho: &InducedRep, hprime: HPrime) -> Vec<Vec<CycPoly>> {
    let dt = rho.dim();
    let CharacterData { q, l, .. } = rho.alpha;
    let w = hprime.unwrap_or(0);
    let shift = m.data.iter().flat_map(|x| x.terms.keys().map(|e| w * e[0])).min().unwrap_or(0);
    let mut out = vec![vec![CycPoly::zero(q, l); m.cols * dt]; m.rows * dt];
    for i in 0..m.rows {
        for j in 0..m.cols {
            for (e, c) in &m.get(i, j).terms {
                let block = rho.eval(e[0]);
                let deg = (w * e[0] - shift) as usize;
                let cq = Cyc::from_int(q, l, c.to_i64().expect("small coefficient"));
                for (a, brow) in block.iter().enumerate() {
                    for (b, v) in brow.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let term = CycPoly::monomial(v.mul(&cq), deg);
                        let cell = &mut out[i * dt + a][j * dt + b];
                        *cell = crate::linalg::ExactRing::add(cell, &term);
                    }
                }
            }
        }
    }
    out
}

fn twisted_rank(m: Option<&GroupRingMatrix>, rho: &InducedRep, hprime: HPrime) -> usize {
    match m {
        Some(b) if b.rows > 0 && b.cols > 0 => bareiss_rank(&twist_matrix(b, rho, hprime)),
        _ => 0,
    }
}

/// `dim_{Q(ℋ′)} H_n(Q(ℋ′)^{dt} ⊗_{ℤG} C)`.
pub fn homology_dim_twisted(
    c: &FreeChainComplex,
    n: usize,
    rho: &InducedRep,
    hprime: HPrime,
) -> Result<usize, TwistedError> {
    check_twist(rho, hprime)?;
    if *c.group() != AbelianGroupSpec::integers() && c.rank(n) > 0 {
        return Err(TwistedError::Unsupported("twisted coefficients are implemented for G = Z".into()));
    }
    let dt = rho.dim();
    Ok(dt * c.rank(n) - twisted_rank(c.boundary(n), rho, hprime) - twisted_rank(c.boundary(n + 1), rho, hprime))
}

/// Both sides of the dimension inequality for the span of `cycles`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thm23Report {
    /// `dim H_n(twisted) / M`.
    pub left: usize,
    /// `dt · dim H_n(mod q) / M̄`.
    pub right: usize,
    pub holds: bool,
}

/// With `f: (ℤG)^I ⊕ C_{n+1} → C_n`, `(e_i, v) ↦ x_i + ∂v`, both quotients
/// are `ker ∂_n / im f` after the respective coefficient change.
pub fn check_thm23(
    c: &FreeChainComplex,
    rho: &InducedRep,
    hprime: HPrime,
    q: u64,
    cycles: &[Vec<GroupRingElement>],
    n: usize,
) -> Result<Thm23Report, TwistedError> {
    if !is_prime(q) {
        return Err(TwistedError::NotPrime(q));
    }
    check_twist(rho, hprime)?;
    let rank_n = c.rank(n);
    for (i, x) in cycles.iter().enumerate() {
        if x.len() != rank_n {
            return Err(TwistedError::Shape(format!("cycle {i} has {} coordinates, C_{n} has rank {rank_n}", x.len())));
        }
        if !c.is_cycle(n, x) {
            return Err(TwistedError::NotACycle(i));
        }
    }
    let xs = GroupRingMatrix::from_rows(c.group(), rank_n, cycles.to_vec())?;
    let f = match c.boundary(n + 1) {
        Some(b) => xs.vstack(b),
        None => xs,
    };
    let dt = rho.dim();
    let left = dt * rank_n - twisted_rank(c.boundary(n), rho, hprime) - twisted_rank(Some(&f), rho, hprime);
    let right = dt * (rank_n - rank_mod_q(c.boundary(n), q) - rank_mod_q(Some(&f), q));
    Ok(Thm23Report { left, right, holds: left <= right })
}

/// `(dt · rank_{ℤ/q} f, rank_{Q(ℋ′)} f)` for a module map given by `f`.
pub fn image_dims(f: &GroupRingMatrix, rho: &InducedRep, hprime: HPrime, q: u64) -> (usize, usize) {
    (rho.dim() * rank_mod_q(Some(f), q), twisted_rank(Some(f), rho, hprime))
}

/// A seeded random instance over `G = ℤ`, `A = ℤ/p`.
#[derive(Debug, Clone)]
pub struct Thm23Instance {
    pub complex: FreeChainComplex,
    pub rep: InducedRep,
    pub hprime: HPrime,
    pub q: u64,
    pub n: usize,
    pub cycles: Vec<Vec<GroupRingElement>>,
}

fn random_element(rng: &mut ChaCha8Rng, max_terms: usize) -> GroupRingElement {
    let k = rng.gen_range(0..=max_terms);
    GroupRingElement::laurent(
        &(0..k).map(|_| (rng.gen_range(-2..=2), *[-2, -1, 1, 2].get(rng.gen_range(0..4)).unwrap())).collect::<Vec<_>>(),
    )
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<GroupRingElement>> {
    (0..rows).map(|_| (0..cols).map(|_| random_element(rng, 2)).collect()).collect()
}

/// `C_2 → C_1 → C_0` with `∂_2 = [X 0] E`, `∂_1 = E⁻¹ [0; Z]` for an
/// elementary `E`, and cycles drawn from `ℤG`-combinations of the rows of
/// `[I 0] E`. Resampled until every entry has at most three terms.
pub fn random_instance(rng: &mut ChaCha8Rng) -> Thm23Instance {
    let g = AbelianGroupSpec::integers();
    let p = if rng.gen_bool(0.5) { 2 } else { 3 };
    let q = if rng.gen_bool(0.5) { 2 } else { 3 };
    let l = rng.gen_range(1..=2);
    let alpha = CharacterData { q, l, exponent: rng.gen_range(0..q.pow(l)) };
    let rep = induce(&g, &AbelianGroupSpec::new(0, vec![p]).expect("p > 1"), 1, alpha).expect("valid induction data");
    loop {
        let b1 = rng.gen_range(0..=2);
        let b2 = rng.gen_range(0..=4 - b1);
        let b = b1 + b2;
        if b == 0 {
            continue;
        }
        let a = rng.gen_range(0..=4);
        let c0 = rng.gen_range(0..=4);
        let x = random_matrix(rng, a, b1);
        let z = random_matrix(rng, b2, c0);
        let zero = GroupRingElement::zero;
        let d2_rows: Vec<Vec<GroupRingElement>> =
            x.iter().map(|r| r.iter().cloned().chain((0..b2).map(|_| zero())).collect()).collect();
        let d1_rows: Vec<Vec<GroupRingElement>> =
            (0..b1).map(|_| (0..c0).map(|_| zero()).collect()).chain(z.iter().cloned()).collect();
        // E = I + u x^k e_{r s}, E⁻¹ = I - u x^k e_{r s}
        let mut e = GroupRingMatrix::from_rows(&g, b, identity_rows(b)).expect("square");
        let mut e_inv = e.clone();
        if b >= 2 {
            let (r, s) = (rng.gen_range(0..b), rng.gen_range(0..b));
            if r != s {
                let u = GroupRingElement::laurent(&[(rng.gen_range(-1..=1), if rng.gen_bool(0.5) { 1 } else { -1 })]);
                e.data[r * b + s] = u.clone();
                e_inv.data[r * b + s] = u.neg();
            }
        }
        let d2 = GroupRingMatrix::from_rows(&g, b, d2_rows).expect("shape").mul(&e);
        let d1 = e_inv.mul(&GroupRingMatrix::from_rows(&g, c0, d1_rows).expect("shape"));
        let basic = GroupRingMatrix::from_rows(&g, b, identity_rows(b)[..b1].to_vec()).expect("shape").mul(&e);
        let ncycles = rng.gen_range(0..=2);
        let cycles: Vec<Vec<GroupRingElement>> = (0..ncycles)
            .map(|_| {
                let coeffs: Vec<GroupRingElement> = (0..b1).map(|_| random_element(rng, 1)).collect();
                (0..b)
                    .map(|j| {
                        (0..b1).fold(GroupRingElement::zero(), |acc, i| acc.add(&coeffs[i].mul(basic.get(i, j), &g)))
                    })
                    .collect()
            })
            .collect();
        let too_big = |m: &GroupRingMatrix| m.data.iter().any(|x| x.num_terms() > 3);
        if too_big(&d1) || too_big(&d2) || cycles.iter().flatten().any(|x| x.num_terms() > 3) {
            continue;
        }
        let complex = FreeChainComplex::new(g.clone(), 0, vec![c0, b, a], vec![d1, d2]).expect("d1 d2 = 0 by construction");
        return Thm23Instance { complex, rep, hprime: Some(1), q, n: 1, cycles };
    }
}

fn identity_rows(n: usize) -> Vec<Vec<GroupRingElement>> {
    (0..n)
        .map(|i| {
            (0..n).map(|j| if i == j { GroupRingElement::laurent(&[(0, 1)]) } else { GroupRingElement::zero() }).collect()
        })
        .collect()
}

/// Runs `count` seeded instances.
pub fn random_suite(count: usize, seed: u64) -> Vec<(Thm23Instance, Thm23Report)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let inst = random_instance(&mut rng);
            let rep = check_thm23(&inst.complex, &inst.rep, inst.hprime, inst.q, &inst.cycles, inst.n)
                .expect("generated instances are consistent");
            (inst, rep)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> AbelianGroupSpec {
        AbelianGroupSpec::integers()
    }

    fn a(t: u64) -> AbelianGroupSpec {
        AbelianGroupSpec::new(0, vec![t]).unwrap()
    }

    fn x_minus_1() -> GroupRingElement {
        GroupRingElement::laurent(&[(1, 1), (0, -1)])
    }

    fn single(e: GroupRingElement) -> FreeChainComplex {
        let d = GroupRingMatrix::from_rows(&z(), 1, vec![vec![e]]).unwrap();
        FreeChainComplex::new(z(), 0, vec![1, 1], vec![d]).unwrap()
    }

    fn trivial_rep(t: u64, q: u64) -> InducedRep {
        let quotient = if t == 1 { AbelianGroupSpec::new(0, vec![]).unwrap() } else { a(t) };
        induce(&z(), &quotient, 1, CharacterData::trivial(q)).unwrap()
    }

    #[test]
    fn modq_examples() {
        assert_eq!(homology_dim_modq(&FreeChainComplex::zero(z()), 0, 2).unwrap(), 0);
        let c = FreeChainComplex::new(z(), 3, vec![1], vec![]).unwrap();
        assert_eq!(homology_dim_modq(&c, 3, 2).unwrap(), 1);
        assert_eq!(homology_dim_modq(&c, 2, 2).unwrap(), 0);
        let c = single(x_minus_1());
        assert_eq!(homology_dim_modq(&c, 0, 2).unwrap(), 1);
        assert_eq!(homology_dim_modq(&c, 1, 2).unwrap(), 1);
        assert!(homology_dim_modq(&c, 0, 4).is_err());
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = GroupRingMatrix::from_rows(&z(), 1, vec![vec![x_minus_1()]]).unwrap();
        let d2 = GroupRingMatrix::from_rows(&z(), 1, vec![vec![GroupRingElement::laurent(&[(0, 1)])]]).unwrap();
        assert!(matches!(
            FreeChainComplex::new(z(), 0, vec![1, 1, 1], vec![d1.clone(), d2]),
            Err(TwistedError::NotAComplex(2))
        ));
        assert!(FreeChainComplex::new(z(), 0, vec![1, 2], vec![d1]).is_err());
    }

    #[test]
    fn induced_examples() {
        let rho = induce(&z(), &a(2), 1, CharacterData { q: 3, l: 1, exponent: 1 }).unwrap();
        let zeta = Cyc::zeta_pow(3, 1, 1);
        let (zero, one) = (Cyc::zero(3, 1), Cyc::from_int(3, 1, 1));
        assert_eq!(rho.generator, vec![vec![zero.clone(), zeta.clone()], vec![one, zero.clone()]]);
        let sq = mat_mul(&rho.generator, &rho.generator);
        assert_eq!(sq, vec![vec![zeta.clone(), zero.clone()], vec![zero, zeta]]);
        // trivial α gives the permutation representation
        let perm = trivial_rep(3, 2);
        for k in -4..=4 {
            let m = perm.eval(k);
            for row in &m {
                assert_eq!(row.iter().filter(|v| !v.is_zero()).count(), 1);
                assert!(row.iter().all(|v| v.is_zero() || *v == Cyc::from_int(2, 1, 1)));
            }
        }
        assert!(induce(&z(), &a(4), 2, CharacterData::trivial(2)).is_err());
        assert!(induce(&z(), &a(2), 1, CharacterData { q: 4, l: 1, exponent: 1 }).is_err());
        assert!(induce(&AbelianGroupSpec::new(2, vec![]).unwrap(), &a(2), 1, CharacterData::trivial(2)).is_err());
    }

    #[test]
    fn induced_restriction_and_multiplicativity() {
        for (t, q, l) in [(2u64, 2u64, 2u32), (3, 3, 1), (3, 2, 1), (2, 3, 2)] {
            for e in 0..q.pow(l) {
                let alpha = CharacterData { q, l, exponent: e };
                let rho = induce(&z(), &a(t), 1, alpha).unwrap();
                for k in -3i64..=3 {
                    let m = rho.eval(k * t as i64);
                    let want = Cyc::zeta_pow(q, l, e as i64 * k);
                    for (i, row) in m.iter().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            assert_eq!(*v, if i == j { want.clone() } else { Cyc::zero(q, l) });
                        }
                    }
                    for j in -3i64..=3 {
                        assert_eq!(mat_mul(&rho.eval(k), &rho.eval(j)), rho.eval(k + j));
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_examples() {
        let rho = trivial_rep(2, 3);
        assert_eq!(homology_dim_twisted(&FreeChainComplex::zero(z()), 0, &rho, Some(1)).unwrap(), 0);
        let c = FreeChainComplex::new(z(), 2, vec![1], vec![]).unwrap();
        assert_eq!(homology_dim_twisted(&c, 2, &rho, Some(1)).unwrap(), 2);
        let c = single(x_minus_1());
        assert_eq!(homology_dim_twisted(&c, 0, &rho, Some(1)).unwrap(), 0);
        assert!(homology_dim_twisted(&c, 0, &rho, None).is_err());
    }

    #[test]
    fn thm23_examples() {
        let rho = trivial_rep(2, 3);
        let r = check_thm23(&FreeChainComplex::zero(z()), &rho, Some(1), 3, &[], 0).unwrap();
        assert_eq!((r.left, r.right, r.holds), (0, 0, true));
        let c = single(x_minus_1());
        let r = check_thm23(&c, &rho, Some(1), 3, &[], 0).unwrap();
        assert_eq!((r.left, r.right, r.holds), (0, 2, true));
        // 1 is not a 1-cycle of ∂ = x - 1
        let one = vec![GroupRingElement::laurent(&[(0, 1)])];
        assert!(matches!(check_thm23(&c, &rho, Some(1), 3, &[one.clone()], 1), Err(TwistedError::NotACycle(0))));
        // every 0-chain is a cycle; spanning C_0 kills H_0 on both sides
        let r = check_thm23(&c, &rho, Some(1), 3, &[one], 0).unwrap();
        assert_eq!((r.left, r.right), (0, 0));
    }

    /// With `t = 1`, trivial `α` and `ℋ′ = 0` the twisted homology is
    /// rational homology of the augmented complex, computed here by the
    /// integer Smith form.
    #[test]
    fn trivial_twist_is_rational_homology() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rho = trivial_rep(1, 2);
        for _ in 0..40 {
            let inst = random_instance(&mut rng);
            let c = &inst.complex;
            for n in 0..=2 {
                let snf_rank = |m: Option<&GroupRingMatrix>| m.map_or(0, |b| crate::linalg::smith_normal_form(&b.augmentation()).rank());
                let want = c.rank(n) - snf_rank(c.boundary(n)) - snf_rank(c.boundary(n + 1));
                assert_eq!(homology_dim_twisted(c, n, &rho, None).unwrap(), want);
            }
        }
    }

    #[test]
    fn random_instances_satisfy_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let inst = random_instance(&mut rng);
            let r = check_thm23(&inst.complex, &inst.rep, inst.hprime, inst.q, &inst.cycles, inst.n).unwrap();
            assert!(r.holds, "{r:?}");
            for b in [inst.complex.boundary(1), inst.complex.boundary(2)].into_iter().flatten() {
                let (lhs, rhs) = image_dims(b, &inst.rep, inst.hprime, inst.q);
                assert!(lhs <= rhs, "{lhs} > {rhs}");
            }
        }
    }

    #[test]
    fn suite_is_deterministic() {
        let a: Vec<Thm23Report> = random_suite(10, 7).into_iter().map(|(_, r)| r).collect();
        let b: Vec<Thm23Report> = random_suite(10, 7).into_iter().map(|(_, r)| r).collect();
        assert_eq!(a, b);
    }
}
