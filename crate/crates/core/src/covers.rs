//! Finite abelian covers: admissible homomorphisms onto `ℤ/pⁱ ⊕ ℤ/pʲ`,
//! Reidemeister–Schreier presentations of their kernels, and `H₁` of the
//! covers.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{smith_normal_form, IntMatrix};
use crate::presentation::{abelianize, GroupPresentation, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoversError {
    #[error("expected H1 = Z^3, got {0}")]
    NotZ3(String),
    #[error("meridian images do not extend to a basis of H1")]
    MeridiansNotPrimitive,
    #[error("homomorphism does not kill relator {0}")]
    IllDefined(usize),
    #[error("bad target: {0}")]
    BadTarget(String),
}

/// A homomorphism from a presented group onto a finite abelian group
/// `⊕ ℤ/d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringData {
    pub base: GroupPresentation,
    /// Orders `d_k` of the cyclic summands (1 allowed for a zero summand).
    pub target: Vec<u64>,
    /// Image of each generator, one residue per summand.
    pub hom: Vec<Vec<u64>>,
}

impl CoveringData {
    pub fn new(base: GroupPresentation, target: Vec<u64>, hom: Vec<Vec<u64>>) -> Result<Self, CoversError> {
        if target.iter().any(|&d| d == 0) {
            return Err(CoversError::BadTarget("summand orders must be positive".into()));
        }
        if hom.len() != base.num_generators() || hom.iter().any(|h| h.len() != target.len()) {
            return Err(CoversError::BadTarget("one image per generator, one residue per summand".into()));
        }
        let hom = hom.into_iter().map(|h| h.iter().zip(&target).map(|(x, d)| x % d).collect()).collect();
        let c = CoveringData { base, target, hom };
        for (k, r) in c.base.relators().iter().enumerate() {
            if c.word_image(r) != vec![0; c.target.len()] {
                return Err(CoversError::IllDefined(k));
            }
        }
        // Surjectivity: the generator images must reach every element.
        let mut seen = vec![false; c.index()];
        let zero = vec![0u64; c.target.len()];
        seen[c.encode(&zero)] = true;
        let mut stack = vec![zero];
        while let Some(v) = stack.pop() {
            for g in 0..c.base.num_generators() {
                let w = c.act(&v, Letter::new(g));
                let k = c.encode(&w);
                if !seen[k] {
                    seen[k] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(CoversError::BadTarget("homomorphism is not onto".into()));
        }
        Ok(c)
    }

    /// `t = |A|`.
    pub fn index(&self) -> usize {
        self.target.iter().product::<u64>() as usize
    }

    pub fn word_image(&self, w: &[Letter]) -> Vec<u64> {
        let mut v = vec![0u64; self.target.len()];
        for l in w {
            v = self.act(&v, *l);
        }
        v
    }

    fn act(&self, v: &[u64], l: Letter) -> Vec<u64> {
        v.iter()
            .zip(&self.hom[l.gen])
            .zip(&self.target)
            .map(|((a, h), d)| if l.inv { (a + d - h) % d } else { (a + h) % d })
            .collect()
    }

    fn encode(&self, v: &[u64]) -> usize {
        v.iter().zip(&self.target).fold(0usize, |acc, (x, d)| acc * *d as usize + *x as usize)
    }
}

/// Homomorphisms `H₁ → ℤ/pⁱ ⊕ ℤ/pʲ` sending the two meridians to `(1,0)` and
/// `(0,1)`, one for each image of a third basis vector: `p^{i+j}` in all.
pub fn admissible_homs(
    base: &GroupPresentation,
    meridians: [&[Letter]; 2],
    p: u64,
    i: u32,
    j: u32,
) -> Result<Vec<CoveringData>, CoversError> {
    if p < 2 {
        return Err(CoversError::BadTarget(format!("p = {p} is not a prime")));
    }
    let ab = abelianize(base);
    if !ab.is_free_of_rank(3) {
        return Err(CoversError::NotZ3(ab.describe()));
    }
    let img = |w: &[Letter]| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); 3];
        for l in w {
            for (a, b) in v.iter_mut().zip(&ab.generator_images[l.gen]) {
                if l.inv {
                    *a -= b;
                } else {
                    *a += b;
                }
            }
        }
        v
    };
    let (m1, m2) = (img(meridians[0]), img(meridians[1]));
    // Extend (m1, m2) to a basis: third row of V⁻¹ where U M V = [I 0].
    let m = IntMatrix::from_rows(3, &[m1.clone(), m2.clone()]);
    let snf = smith_normal_form(&m);
    if snf.diagonal().iter().take(2).any(|d| d != &BigInt::from(1)) || snf.diagonal().len() < 2 {
        return Err(CoversError::MeridiansNotPrimitive);
    }
    let e3: Vec<BigInt> = snf.v_inv.row(2).to_vec();
    let basis = IntMatrix::from_rows(3, &[m1, m2, e3]);
    // Coordinates of each generator in the new basis: c = x B, so x = c B⁻¹.
    let binv = unimodular_inverse(&basis);
    let coords: Vec<Vec<BigInt>> = ab
        .generator_images
        .iter()
        .map(|c| (0..3).map(|k| (0..3).map(|r| &c[r] * binv.get(r, k)).sum()).collect())
        .collect();
    let (di, dj) = (p.pow(i), p.pow(j));
    let target = vec![di, dj];
    let mut out = Vec::new();
    for a in 0..di {
        for b in 0..dj {
            let hom = coords
                .iter()
                .map(|x| {
                    let u = (&x[0] + &x[2] * BigInt::from(a)).mod_floor(&BigInt::from(di));
                    let v = (&x[1] + &x[2] * BigInt::from(b)).mod_floor(&BigInt::from(dj));
                    vec![u.to_u64().unwrap(), v.to_u64().unwrap()]
                })
                .collect();
            out.push(CoveringData::new(base.clone(), target.clone(), hom)?);
        }
    }
    Ok(out)
}

/// Inverse of a unimodular integer matrix through its Smith form.
fn unimodular_inverse(b: &IntMatrix) -> IntMatrix {
    // U B V = I, so B⁻¹ = V U.
    let s = smith_normal_form(b);
    s.v.mul(&s.u)
}

/// Kernel presentation produced by Reidemeister–Schreier.
#[derive(Debug, Clone)]
pub struct SchreierPresentation {
    pub presentation: GroupPresentation,
    /// `(coset, generator)` behind each Schreier generator.
    pub labels: Vec<(usize, usize)>,
    /// Coset representative words, by coset index.
    pub transversal: Vec<Word>,
}

/// Presentation of `ker(φ)`: generators `s_{c,x} = rep(c) x rep(cx)⁻¹` for
/// non-tree edges of the breadth-first transversal, and every relator
/// rewritten from every coset.
pub fn reidemeister_schreier(c: &CoveringData) -> SchreierPresentation {
    let t = c.index();
    let n = c.base.num_generators();
    let zero = vec![0u64; c.target.len()];
    let mut rep: Vec<Option<Word>> = vec![None; t];
    let mut elem: Vec<Vec<u64>> = vec![Vec::new(); t];
    // tree[coset][gen] is true when s_{coset,gen} is freely trivial.
    let mut tree = vec![vec![false; n]; t];
    let start = c.encode(&zero);
    rep[start] = Some(Vec::new());
    elem[start] = zero;
    let mut queue = VecDeque::from([start]);
    while let Some(k) = queue.pop_front() {
        for g in 0..n {
            for inv in [false, true] {
                let l = Letter { gen: g, inv };
                let v = c.act(&elem[k], l);
                let kv = c.encode(&v);
                if rep[kv].is_none() {
                    let mut w = rep[k].clone().unwrap();
                    w.push(l);
                    rep[kv] = Some(w);
                    elem[kv] = v;
                    if inv {
                        tree[kv][g] = true;
                    } else {
                        tree[k][g] = true;
                    }
                    queue.push_back(kv);
                }
            }
        }
    }
    let transversal: Vec<Word> = rep.into_iter().map(|r| r.expect("φ is onto")).collect();
    let mut id = vec![vec![usize::MAX; n]; t];
    let mut labels = Vec::new();
    for (k, row) in tree.iter().enumerate() {
        for g in 0..n {
            if !row[g] {
                id[k][g] = labels.len();
                labels.push((k, g));
            }
        }
    }
    let mut relators = Vec::with_capacity(t * c.base.relators().len());
    for r in c.base.relators() {
        for k0 in 0..t {
            let mut cur = elem[k0].clone();
            let mut w = Word::new();
            for &l in r {
                if l.inv {
                    cur = c.act(&cur, l);
                    let k = c.encode(&cur);
                    if !tree[k][l.gen] {
                        w.push(Letter { gen: id[k][l.gen], inv: true });
                    }
                } else {
                    let k = c.encode(&cur);
                    if !tree[k][l.gen] {
                        w.push(Letter::new(id[k][l.gen]));
                    }
                    cur = c.act(&cur, l);
                }
            }
            relators.push(w);
        }
    }
    let names = labels.iter().map(|(k, g)| format!("{}_{k}", c.base.generators()[*g])).collect();
    let presentation = GroupPresentation::new(names, relators).expect("Schreier generators are declared");
    SchreierPresentation { presentation, labels, transversal }
}

/// Invariant factors of `H₁` of the cover (0 for each free summand).
pub fn cover_h1(c: &CoveringData) -> Vec<BigInt> {
    abelianize(&reidemeister_schreier(c).presentation).invariants
}
