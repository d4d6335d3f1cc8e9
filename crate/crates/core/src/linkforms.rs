//! Finite ℚ/ℤ-valued linking forms: orthogonal complements, metabolizer
//! search, characters vanishing on a subgroup and Witt equivalence. Forms
//! over the Laurent ring are handled only through certificate checks.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::laurent::{gcd, LaurentPoly};
use crate::linalg::{laplace_det, minors, smith_normal_form, IntMatrix, PolyMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkformError {
    #[error("presentation matrix is singular")]
    Singular,
    #[error("presentation matrix is not symmetric")]
    NotSymmetric,
    #[error("invariant factor {0} must be greater than 1")]
    BadFactor(u64),
    #[error("gram entry ({0}, {1}) is not killed by the order of e_{0}")]
    IllDefined(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("form is singular; Witt equivalence is only decided for nonsingular forms")]
    SingularForm,
    #[error("group order does not fit in 64 bits")]
    Overflow,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Finite abelian group `⊕ ℤ/d_i` with elements stored as mixed-radix codes.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Ab {
    d: Vec<u64>,
    order: usize,
}

impl Ab {
    fn new(d: &[u64]) -> Self {
        Ab { d: d.to_vec(), order: d.iter().map(|&x| x as usize).product() }
    }

    fn encode(&self, x: &[u64]) -> usize {
        self.d.iter().zip(x).rev().fold(0, |acc, (&d, &v)| acc * d as usize + (v % d) as usize)
    }

    fn decode(&self, mut c: usize) -> Vec<u64> {
        self.d
            .iter()
            .map(|&d| {
                let v = (c % d as usize) as u64;
                c /= d as usize;
                v
            })
            .collect()
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = x.iter().zip(&y).zip(&self.d).map(|((p, q), d)| (p + q) % d).collect();
        self.encode(&s)
    }

    /// Subgroup generated by `gens`, as a membership mask.
    fn span(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut elems = vec![0usize];
        for &g in gens {
            if mask[g] {
                continue;
            }
            let base = elems.clone();
            let mut shift = g;
            while !mask[shift] {
                for &e in &base {
                    let s = self.add(e, shift);
                    if !mask[s] {
                        mask[s] = true;
                        elems.push(s);
                    }
                }
                shift = self.add(shift, g);
            }
        }
        mask
    }
}

/// A subgroup: sorted element codes and a generating set chosen greedily in
/// code order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    group: Vec<u64>,
    elements: Vec<usize>,
    generators: Vec<Vec<u64>>,
}

impl Subgroup {
    fn from_mask(ab: &Ab, mask: &[bool]) -> Self {
        let elements: Vec<usize> = (0..ab.order).filter(|&c| mask[c]).collect();
        let mut gens = Vec::new();
        let mut cur = ab.span(&[]);
        for &c in &elements {
            if !cur[c] {
                gens.push(c);
                cur = ab.span(&gens);
            }
        }
        Subgroup { group: ab.d.clone(), elements, generators: gens.iter().map(|&c| ab.decode(c)).collect() }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        let ab = Ab::new(&self.group);
        self.elements.iter().map(|&c| ab.decode(c)).collect()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        let ab = Ab::new(&self.group);
        self.elements.binary_search(&ab.encode(x)).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|c| other.elements.binary_search(c).is_ok())
    }
}

/// Symmetric pairing on `⊕ ℤ/d_i`, stored as numerators over the exponent
/// `N = lcm d_i`: `b(e_i, e_j) = num[i][j] / N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLinkingForm {
    group: Vec<u64>,
    modulus: u64,
    num: Vec<Vec<u64>>,
}

fn frac_mod1(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl FiniteLinkingForm {
    pub fn new(group: Vec<u64>, gram: Vec<Vec<BigRational>>) -> Result<Self, LinkformError> {
        let n = group.len();
        if let Some(&d) = group.iter().find(|&&d| d <= 1) {
            return Err(LinkformError::BadFactor(d));
        }
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(LinkformError::Shape(format!("gram must be {n}x{n}")));
        }
        group.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d)).ok_or(LinkformError::Overflow)?;
        let modulus = group.iter().fold(1u64, |acc, &d| acc.lcm(&d));
        let mut num = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let g = frac_mod1(&gram[i][j]);
                if g != frac_mod1(&gram[j][i]) {
                    return Err(LinkformError::NotSymmetric);
                }
                if !(&g * BigRational::from_integer(group[i].into())).is_integer() {
                    return Err(LinkformError::IllDefined(i, j));
                }
                let v = g * BigRational::from_integer(modulus.into());
                num[i][j] = v.to_integer().to_u64().expect("numerator below modulus");
            }
        }
        Ok(FiniteLinkingForm { group, modulus, num })
    }

    /// The zero form on the trivial group.
    pub fn trivial() -> Self {
        FiniteLinkingForm { group: vec![], modulus: 1, num: vec![] }
    }

    /// Form on `coker A` with `b(x, y) = xᵀ A⁻¹ y mod ℤ`, written in the
    /// Smith basis: if `U A V = D` then `b(e_k, e_l) = (U⁻ᵀ V)_{kl} / d_l`.
    pub fn from_presentation(a: &IntMatrix) -> Result<Self, LinkformError> {
        let n = a.rows();
        if a.cols() != n {
            return Err(LinkformError::Shape("presentation matrix must be square".into()));
        }
        if a.transpose() != *a {
            return Err(LinkformError::NotSymmetric);
        }
        if a.det().is_zero() {
            return Err(LinkformError::Singular);
        }
        let snf = smith_normal_form(a);
        let d = snf.diagonal();
        let m = snf.u_inv.transpose().mul(&snf.v);
        let keep: Vec<usize> = (0..n).filter(|&k| !d[k].is_one()).collect();
        let mut group = Vec::with_capacity(keep.len());
        for &k in &keep {
            group.push(d[k].to_u64().ok_or(LinkformError::Overflow)?);
        }
        let gram = keep
            .iter()
            .map(|&k| keep.iter().map(|&l| BigRational::new(m.get(k, l).clone(), d[l].clone())).collect())
            .collect();
        FiniteLinkingForm::new(group, gram)
    }

    /// Orders of the cyclic summands.
    pub fn group(&self) -> &[u64] {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.iter().product()
    }

    pub fn gram(&self) -> Vec<Vec<BigRational>> {
        self.num
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::new(v.into(), self.modulus.into())).collect())
            .collect()
    }

    fn pair_num(&self, x: &[u64], y: &[u64]) -> u64 {
        let n = u128::from(self.modulus);
        let mut s = 0u128;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                s = (s + u128::from(xi) * u128::from(yj) % n * u128::from(self.num[i][j])) % n;
            }
        }
        s as u64
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn pair(&self, x: &[u64], y: &[u64]) -> BigRational {
        BigRational::new(self.pair_num(x, y).into(), self.modulus.into())
    }

    pub fn negate(&self) -> Self {
        let m = self.modulus;
        let num = self.num.iter().map(|r| r.iter().map(|&v| (m - v) % m).collect()).collect();
        FiniteLinkingForm { group: self.group.clone(), modulus: m, num }
    }

    /// Orthogonal sum. Summand orders are concatenated, so the result need
    /// not be in invariant-factor order.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let m = self.modulus.lcm(&o.modulus);
        let (s1, s2) = (m / self.modulus, m / o.modulus);
        let (n1, n2) = (self.group.len(), o.group.len());
        let mut num = vec![vec![0u64; n1 + n2]; n1 + n2];
        for i in 0..n1 {
            for j in 0..n1 {
                num[i][j] = self.num[i][j] * s1;
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                num[n1 + i][n1 + j] = o.num[i][j] * s2;
            }
        }
        FiniteLinkingForm { group: [self.group.clone(), o.group.clone()].concat(), modulus: m, num }
    }

    /// `G^⊥ = 0`.
    pub fn is_nonsingular(&self) -> bool {
        let ab = Ab::new(&self.group);
        let basis = self.basis();
        (1..ab.order).all(|c| {
            let x = ab.decode(c);
            basis.iter().any(|e| self.pair_num(&x, e) != 0)
        })
    }

    fn basis(&self) -> Vec<Vec<u64>> {
        let n = self.group.len();
        (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
    }

    fn check_elements(&self, xs: &[Vec<u64>]) -> Result<(), LinkformError> {
        for x in xs {
            if x.len() != self.group.len() {
                return Err(LinkformError::Shape(format!(
                    "element has {} coordinates, group has {}",
                    x.len(),
                    self.group.len()
                )));
            }
        }
        Ok(())
    }

    /// Subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[Vec<u64>]) -> Result<Subgroup, LinkformError> {
        self.check_elements(gens)?;
        let ab = Ab::new(&self.group);
        let codes: Vec<usize> = gens.iter().map(|g| ab.encode(g)).collect();
        Ok(Subgroup::from_mask(&ab, &ab.span(&codes)))
    }
}

/// `{m | b(p, m) = 0 for every generator p}`.
pub fn orthogonal(f: &FiniteLinkingForm, gens: &[Vec<u64>]) -> Result<Subgroup, LinkformError> {
    f.check_elements(gens)?;
    let ab = Ab::new(&f.group);
    let mask: Vec<bool> = (0..ab.order)
        .map(|c| {
            let x = ab.decode(c);
            gens.iter().all(|g| f.pair_num(g, &x) == 0)
        })
        .collect();
    Ok(Subgroup::from_mask(&ab, &mask))
}

fn is_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

fn search(f: &FiniteLinkingForm, budget: &Budget, first_only: bool) -> Result<Vec<Subgroup>, LinkformError> {
    let order = f.order();
    if order > budget.max_group_order {
        return Err(BudgetExceeded(format!("group order {order} above limit {}", budget.max_group_order)).into());
    }
    let nonsingular = f.is_nonsingular();
    if nonsingular && !is_square(order) {
        return Ok(vec![]);
    }
    let ab = Ab::new(&f.group);
    let elems: Vec<Vec<u64>> = (0..ab.order).map(|c| ab.decode(c)).collect();
    let isotropic: Vec<usize> = (0..ab.order).filter(|&c| f.pair_num(&elems[c], &elems[c]) == 0).collect();
    let target = order.sqrt() as usize;
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut queue: VecDeque<(Vec<bool>, Vec<usize>)> = VecDeque::new();
    let zero = ab.span(&[]);
    seen.insert(zero.clone());
    queue.push_back((zero, vec![]));
    let mut found = Vec::new();
    let mut steps = 0u64;
    while let Some((mask, gens)) = queue.pop_front() {
        let size = mask.iter().filter(|&&b| b).count();
        let perp = orthogonal(f, &gens.iter().map(|&g| elems[g].clone()).collect::<Vec<_>>())?;
        if perp.order() == size {
            found.push(Subgroup::from_mask(&ab, &mask));
            if first_only {
                break;
            }
        }
        if nonsingular && size >= target {
            continue;
        }
        let mut covered = mask.clone();
        for &x in &isotropic {
            if covered[x] || !perp.elements.binary_search(&x).is_ok() {
                continue;
            }
            steps += 1;
            if steps % 64 == 0 {
                budget.check("metabolizer search")?;
            }
            let mut g2 = gens.clone();
            g2.push(x);
            let t = ab.span(&g2);
            for (c, &b) in covered.iter_mut().zip(&t) {
                *c |= b;
            }
            if seen.insert(t.clone()) {
                queue.push_back((t, g2));
            }
        }
    }
    found.sort_by(|a, b| a.elements.cmp(&b.elements));
    Ok(found)
}

/// All subgroups `P` with `P^⊥ = P`. Only isotropic subgroups are grown,
/// and for nonsingular forms the search stops at order `√|G|`.
pub fn metabolizers(f: &FiniteLinkingForm, budget: &Budget) -> Result<Vec<Subgroup>, LinkformError> {
    search(f, budget, false)
}

pub fn has_metabolizer(f: &FiniteLinkingForm, budget: &Budget) -> Result<bool, LinkformError> {
    Ok(!search(f, budget, true)?.is_empty())
}

/// Homomorphisms `δ: ⊕ ℤ/d_i → ℤ/q^k` with `δ(P) = 0`, given by their values
/// on the summand generators.
pub fn characters_vanishing(
    group: &[u64],
    p: &Subgroup,
    q: u64,
    k: u32,
    budget: &Budget,
) -> Result<Vec<Vec<u64>>, LinkformError> {
    if p.group != group {
        return Err(LinkformError::Shape("subgroup lives in a different group".into()));
    }
    let m = q.checked_pow(k).ok_or(LinkformError::Overflow)?;
    // δ(e_i) must be a multiple of m / gcd(d_i, m).
    let steps: Vec<u64> = group.iter().map(|&d| m / d.gcd(&m)).collect();
    let counts: Vec<u64> = group.iter().map(|&d| d.gcd(&m)).collect();
    let total: u64 = counts.iter().product();
    if total > budget.max_group_order {
        return Err(BudgetExceeded(format!("{total} candidate characters above limit {}", budget.max_group_order)).into());
    }
    let mut out = Vec::new();
    for idx in 0..total {
        if idx % 256 == 0 {
            budget.check("character enumeration")?;
        }
        let mut r = idx;
        let chi: Vec<u64> = counts
            .iter()
            .zip(&steps)
            .map(|(&c, &s)| {
                let v = (r % c) * s;
                r /= c;
                v
            })
            .collect();
        let vanishes = p.generators.iter().all(|g| {
            let s: u128 = g.iter().zip(&chi).map(|(&a, &b)| u128::from(a) * u128::from(b)).sum();
            s % u128::from(m) == 0
        });
        if vanishes {
            out.push(chi);
        }
    }
    Ok(out)
}

/// `F₁ ⊕ (−F₂)` admits a metabolizer. Both forms must be nonsingular.
pub fn witt_equivalent(f1: &FiniteLinkingForm, f2: &FiniteLinkingForm, budget: &Budget) -> Result<bool, LinkformError> {
    if !f1.is_nonsingular() || !f2.is_nonsingular() {
        return Err(LinkformError::SingularForm);
    }
    let order = f1.order().checked_mul(f2.order()).ok_or(LinkformError::Overflow)?;
    if order > budget.max_group_order {
        return Err(BudgetExceeded(format!("combined order {order} above limit {}", budget.max_group_order)).into());
    }
    has_metabolizer(&f1.direct_sum(&f2.negate()), budget)
}

/// Outcome of checking a proposed neutral submodule `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeutralCheck {
    /// `N ⊆ N^⊥`.
    pub isotropic: bool,
    /// Order condition: `|N|² = |G|` for finite forms, `Δ(M) ≐ Δ(M/N)·Δ(M/N)‾`
    /// for Laurent-valued forms.
    pub order_condition: bool,
    /// Extra structural requirement (`N^⊥ = N` for finite forms, hermitian
    /// presentation for Laurent-valued ones).
    pub structure: bool,
}

impl NeutralCheck {
    pub fn holds(&self) -> bool {
        self.isotropic && self.order_condition && self.structure
    }
}

/// Checks that the subgroup generated by `gens` is a metabolizer, without
/// searching.
pub fn verify_neutral_certificate(f: &FiniteLinkingForm, gens: &[Vec<u64>]) -> Result<NeutralCheck, LinkformError> {
    let n = f.subgroup(gens)?;
    let isotropic = gens.iter().all(|x| gens.iter().all(|y| f.pair_num(x, y) == 0));
    let order_condition = (n.order() as u64) * (n.order() as u64) == f.order();
    let structure = orthogonal(f, gens)? == n;
    Ok(NeutralCheck { isotropic, order_condition, structure })
}

/// `f` is `±t^a ∏ (t_i - 1)^{k_i}`, a unit of `Λ_S`.
fn is_local_unit(f: &LaurentPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    let nv = f.nvars();
    let mut f = f.clone();
    for i in 0..nv {
        let s = LaurentPoly::var(nv, i) - LaurentPoly::one(nv);
        while let Some(q) = f.exact_div(&s) {
            f = q;
        }
    }
    f.is_unit()
}

fn dot(x: &[LaurentPoly], m: &[Vec<LaurentPoly>], y: &[LaurentPoly], nvars: usize) -> LaurentPoly {
    let mut s = LaurentPoly::zero(nvars);
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            s = s + &(xi * &m[i][j]) * yj;
        }
    }
    s
}

/// Checks a neutrality certificate for the pairing on `M = coker A` given by
/// `b(x, y) = xᵀ Ā⁻¹ ȳ` with values in `𝒦 / Λ_S`, where `S` is generated by
/// the `t_i - 1`. `A` must be square with `Aᵀ = Ā`;
/// `gens` are vectors in `Λⁿ` spanning the proposed `N`.
pub fn verify_blanchfield_certificate(a: &PolyMatrix, gens: &[Vec<LaurentPoly>]) -> Result<NeutralCheck, LinkformError> {
    let n = a.rows();
    let nv = a.nvars();
    if a.cols() != n {
        return Err(LinkformError::Shape("presentation matrix must be square".into()));
    }
    if gens.iter().any(|g| g.len() != n) {
        return Err(LinkformError::Shape(format!("generators must have {n} coordinates")));
    }
    let one = LaurentPoly::one(nv);
    let abar: Vec<Vec<LaurentPoly>> = a.to_rows().iter().map(|r| r.iter().map(|p| p.involve()).collect()).collect();
    let det = laplace_det(&abar, &one);
    if det.is_zero() {
        return Err(LinkformError::Singular);
    }
    let hermitian = (0..n).all(|i| (0..n).all(|j| *a.get(j, i) == abar[i][j]));
    // adj(Ā)[i][j] = (-1)^{i+j} det(Ā without row j, column i)
    let adj: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let sub: Vec<Vec<LaurentPoly>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| abar[r][c].clone()).collect())
                        .collect();
                    let m = laplace_det(&sub, &one);
                    if (i + j) % 2 == 0 {
                        m
                    } else {
                        -m
                    }
                })
                .collect()
        })
        .collect();
    let isotropic = gens.iter().all(|x| {
        gens.iter().all(|y| {
            let ybar: Vec<LaurentPoly> = y.iter().map(|p| p.involve()).collect();
            let num = dot(x, &adj, &ybar, nv);
            if num.is_zero() {
                return true;
            }
            let g = gcd(&num, &det);
            is_local_unit(&det.exact_div(&g).expect("gcd divides"))
        })
    });
    let mut rows = a.to_rows();
    for (r, row) in rows.iter_mut().enumerate() {
        row.extend(gens.iter().map(|g| g[r].clone()));
    }
    let aug = PolyMatrix::from_rows(n + gens.len(), nv, rows);
    let quot = minors(&aug, n).expect("n x n minors exist").fold(LaurentPoly::zero(nv), |acc, m| gcd(&acc, &m));
    let order_condition = if quot.is_zero() {
        false
    } else {
        let r = &quot * &quot.involve();
        let g = gcd(&r, &det);
        is_local_unit(&r.exact_div(&g).expect("gcd divides")) && is_local_unit(&det.exact_div(&g).expect("gcd divides"))
    };
    Ok(NeutralCheck { isotropic, order_condition, structure: hermitian })
}

/// Integer helper for tests and callers: `x` as a `BigInt` rational mod 1.
pub fn rational_mod1(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    frac_mod1(&BigRational::new(num.into(), den.into()))
}
