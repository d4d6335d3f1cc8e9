//! Fox calculus over the Laurent ring, the Alexander module rank, elementary
//! ideal gcds `Δ_k` and the torsion Alexander polynomial.

use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::laurent::{gcd, LaurentPoly};
use crate::linalg::{minors, rank_over_k, PolyMatrix};
use crate::presentation::{GroupPresentation, Letter, MeridianMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("k = {k} out of range 0..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

fn monomial(m: &MeridianMap, v: &[i64]) -> LaurentPoly {
    LaurentPoly::monomial(m.rank(), v.to_vec(), 1)
}

/// Abelianized free derivative `∂w/∂x`, with generator `g` sent to
/// `t^{images[g]}`.
pub fn fox_derivative(w: &[Letter], x: usize, m: &MeridianMap) -> LaurentPoly {
    let nv = m.rank();
    let mut acc = LaurentPoly::zero(nv);
    let mut prefix = vec![0i64; nv];
    for l in w {
        let img = &m.images[l.gen];
        if l.inv {
            for (a, b) in prefix.iter_mut().zip(img) {
                *a -= b;
            }
            if l.gen == x {
                acc = acc - monomial(m, &prefix);
            }
        } else {
            if l.gen == x {
                acc = acc + monomial(m, &prefix);
            }
            for (a, b) in prefix.iter_mut().zip(img) {
                *a += b;
            }
        }
    }
    acc
}

/// Fox matrix: rows are relators, columns are generators.
#[derive(Debug, Clone)]
pub struct FoxMatrix {
    pub matrix: PolyMatrix,
    pub meridian_map: MeridianMap,
}

impl FoxMatrix {
    pub fn num_generators(&self) -> usize {
        self.matrix.cols()
    }

    /// `Σ_j J[r][j] (t^{c(j)} - 1) = 0` on every row.
    pub fn fundamental_identity_holds(&self) -> bool {
        let nv = self.meridian_map.rank();
        (0..self.matrix.rows()).all(|r| {
            let mut s = LaurentPoly::zero(nv);
            for j in 0..self.matrix.cols() {
                let e = monomial(&self.meridian_map, &self.meridian_map.images[j]) - LaurentPoly::one(nv);
                s = s + self.matrix.get(r, j) * &e;
            }
            s.is_zero()
        })
    }
}

pub fn fox_matrix(p: &GroupPresentation, m: &MeridianMap) -> FoxMatrix {
    let n = p.num_generators();
    let rows = p.relators().iter().map(|r| (0..n).map(|j| fox_derivative(r, j, m)).collect()).collect();
    FoxMatrix { matrix: PolyMatrix::from_rows(n, m.rank(), rows), meridian_map: m.clone() }
}

/// `rank H₁(X; Λ) = (n - 1) - rank J`.
pub fn h1_rank(j: &FoxMatrix) -> usize {
    (j.num_generators().saturating_sub(1)).saturating_sub(rank_over_k(&j.matrix))
}

/// Gcd of all `s×s` minors, unit-normalized. `s = 0` gives 1; `s` larger
/// than the matrix gives 0.
fn minor_gcd(m: &PolyMatrix, s: usize, budget: &Budget) -> Result<LaurentPoly, AlexanderError> {
    let nv = m.nvars();
    let Ok(it) = minors(m, s) else { return Ok(LaurentPoly::zero(nv)) };
    let mut acc = LaurentPoly::zero(nv);
    for (k, d) in it.enumerate() {
        if k % 16 == 0 {
            budget.check("minor gcd")?;
        }
        acc = gcd(&acc, &d);
        if acc.is_one() {
            break;
        }
    }
    Ok(acc)
}

/// `Δ_k(coker J)`: gcd of the `(n-k)×(n-k)` minors.
pub fn elementary_gcd(j: &FoxMatrix, k: usize, budget: &Budget) -> Result<LaurentPoly, AlexanderError> {
    let n = j.num_generators();
    if k > n {
        return Err(AlexanderError::KOutOfRange { k, n });
    }
    minor_gcd(&j.matrix, n - k, budget)
}

/// `Δᵀ`: gcd of the `r×r` minors of `J`, `r = rank J`. The torsion of
/// `H₁(X)` equals that of `H₁(X, ∗) = coker J`, whose rank is `n - r`.
pub fn torsion_alexander(j: &FoxMatrix, budget: &Budget) -> Result<LaurentPoly, AlexanderError> {
    let r = rank_over_k(&j.matrix);
    minor_gcd(&j.matrix, r, budget)
}

/// `Δ ≐ Δ̄`.
pub fn symmetry_holds(d: &LaurentPoly) -> bool {
    d.associates(&d.involve())
}
