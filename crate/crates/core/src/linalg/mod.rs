//! Exact matrix kernels: integer Smith normal form, fraction-free rank and
//! determinant over any exact integral domain, and minor enumeration.

mod int;
mod poly;

pub use int::{cokernel_invariants, kernel_basis, smith_normal_form, IntMatrix, SmithForm};
pub use poly::{minors, rank_over_k, PolyMatrix};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorSize { k: usize, rows: usize, cols: usize },
    #[error("matrix dimensions do not match: {0}")]
    Shape(String),
}

/// Ring operations needed by fraction-free elimination. `exact_div` is only
/// called when the quotient is known to exist.
pub trait ExactRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn exact_div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }
}

impl ExactRing for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn exact_div(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(Zero::is_zero(&r));
        q
    }
}

impl ExactRing for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
}

impl ExactRing for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one(self.nvars())
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn exact_div(&self, o: &Self) -> Self {
        LaurentPoly::exact_div(self, o).expect("fraction-free step must divide exactly")
    }
}

/// Bareiss elimination with full pivoting, in place. Returns the rank and
/// the sign of the row/column permutation applied.
fn bareiss<T: ExactRing>(a: &mut [Vec<T>]) -> (usize, i32) {
    let m = a.len();
    if m == 0 {
        return (0, 1);
    }
    let n = a[0].len();
    let mut sign = 1;
    let mut prev: Option<T> = None;
    let mut k = 0;
    while k < m.min(n) {
        let pivot = (k..m).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
        let Some((pi, pj)) = pivot else { break };
        if pi != k {
            a.swap(pi, k);
            sign = -sign;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = match &prev {
                    Some(p) => num.exact_div(p),
                    None => num,
                };
            }
            a[i][k] = a[i][k].zero_like();
        }
        prev = Some(a[k][k].clone());
        k += 1;
    }
    (k, sign)
}

/// Rank over the fraction field by fraction-free elimination.
pub fn bareiss_rank<T: ExactRing>(rows: &[Vec<T>]) -> usize {
    let mut a = rows.to_vec();
    bareiss(&mut a).0
}

/// Determinant of a square matrix by fraction-free elimination.
pub fn bareiss_det<T: ExactRing>(rows: &[Vec<T>], one: &T) -> T {
    let n = rows.len();
    if n == 0 {
        return one.one_like();
    }
    assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut a = rows.to_vec();
    let (rank, sign) = bareiss(&mut a);
    if rank < n {
        return one.zero_like();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        d.neg()
    } else {
        d
    }
}

/// Determinant by Laplace expansion along rows, memoized over column subsets.
/// Division-free, so it serves as an independent check of [`bareiss_det`].
pub fn laplace_det<T: ExactRing>(rows: &[Vec<T>], one: &T) -> T {
    let n = rows.len();
    if n == 0 {
        return one.one_like();
    }
    assert!(n < 24, "Laplace expansion limited to small minors");
    // dp[S] = det of the submatrix on the last |S| rows and columns S.
    let full = 1usize << n;
    let mut dp: Vec<Option<T>> = vec![None; full];
    dp[0] = Some(one.one_like());
    for s in 1..full {
        let r = n - s.count_ones() as usize;
        let mut acc = one.zero_like();
        let mut pos = 0;
        for c in 0..n {
            if s & (1 << c) == 0 {
                continue;
            }
            let e = &rows[r][c];
            if !e.is_zero() {
                let sub = dp[s & !(1 << c)].as_ref().unwrap();
                let term = e.mul(sub);
                acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            pos += 1;
        }
        dp[s] = Some(acc);
    }
    dp.pop().unwrap().unwrap()
}
