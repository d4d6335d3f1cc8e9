use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Build from rows; `cols` is needed to describe matrices with no rows.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn rank(&self) -> usize {
        crate::linalg::bareiss_rank(&self.to_rows())
    }

    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        crate::linalg::bareiss_det(&self.to_rows(), &BigInt::one())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            self.data[i * self.cols + dst] += v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{}", self.rows, self.cols, self)
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d1 | d2 | …`, all nonnegative. Inverses of `U` and `V` are kept too.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1, …, d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Snf {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
}

impl Snf {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row(dst, src, k);
        self.u.add_row(dst, src, k);
        self.u_inv.add_col(src, dst, &-k);
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col(dst, src, k);
        self.v.add_col(dst, src, k);
        self.v_inv.add_row(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.a.cols {
            let x = -self.a.get(i, j);
            self.a.set(i, j, x);
        }
        for j in 0..self.u.cols {
            let x = -self.u.get(i, j);
            self.u.set(i, j, x);
        }
        for r in 0..self.u_inv.rows {
            let x = -self.u_inv.get(r, i);
            self.u_inv.set(r, i, x);
        }
    }
}

/// Smith normal form with transformation matrices. Pivots are chosen by
/// smallest nonzero absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut s = Snf {
        a: a.clone(),
        u: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        u_inv: IntMatrix::identity(m),
        v_inv: IntMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = s.a.get(i, j);
                    if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < s.a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(s);
            };
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);
            let p = s.a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = s.a.get(i, t).div_floor(&p);
                if !q.is_zero() {
                    s.add_row(i, t, &-q);
                }
                clean &= s.a.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = s.a.get(t, j).div_floor(&p);
                if !q.is_zero() {
                    s.add_col(j, t, &-q);
                }
                clean &= s.a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => s.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if s.a.get(t, t).is_negative() {
            s.negate_row(t);
        }
    }
    finish(s)
}

fn finish(s: Snf) -> SmithForm {
    SmithForm { d: s.a, u: s.u, v: s.v, u_inv: s.u_inv, v_inv: s.v_inv }
}

/// Invariant factors of `ℤ^cols / rowspace(a)`, dropping units; `0` marks a
/// free summand.
pub fn cokernel_invariants(a: &IntMatrix) -> Vec<BigInt> {
    let diag = smith_normal_form(a).diagonal();
    (0..a.cols)
        .map(|i| diag.get(i).cloned().unwrap_or_else(BigInt::zero))
        .filter(|d| !d.is_one())
        .collect()
}

/// Basis of the integer lattice `{x ∈ ℤ^cols : a·x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    (r..a.cols).map(|j| (0..a.cols).map(|i| snf.v.get(i, j).clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn m(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(cols, rows)
    }

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    #[test]
    fn documented_examples() {
        assert_eq!(check(&IntMatrix::identity(3)).d, IntMatrix::identity(3));
        assert_eq!(check(&m(2, &[vec![2, 0], vec![0, 3]])).d, m(2, &[vec![1, 0], vec![0, 6]]));
        assert_eq!(check(&m(1, &[vec![0]])).d, m(1, &[vec![0]]));
        check(&IntMatrix::zeros(0, 3));
        assert_eq!(cokernel_invariants(&IntMatrix::zeros(0, 2)), vec![BigInt::zero(), BigInt::zero()]);
        assert_eq!(cokernel_invariants(&m(1, &[vec![3]])), vec![BigInt::from(3)]);
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(3, &[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in k {
            let col = IntMatrix::from_rows(1, &v.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>());
            assert!(a.mul(&col).is_zero());
        }
    }

    /// gcd of all k×k minors, by direct expansion.
    fn minor_gcd(a: &IntMatrix, k: usize) -> BigInt {
        let one = BigInt::one();
        let mut g = BigInt::zero();
        for rs in (0..a.rows()).combinations(k) {
            for cs in (0..a.cols()).combinations(k) {
                let sub: Vec<Vec<BigInt>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
                g = g.gcd(&crate::linalg::laplace_det(&sub, &one));
            }
        }
        g
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
                IntMatrix::from_rows(c, &rows)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn invariant_factors_match_minor_gcds(a in arb_matrix()) {
            let s = check(&a);
            let diag = s.diagonal();
            let mut prev = BigInt::one();
            for k in 1..=diag.len() {
                let g = minor_gcd(&a, k);
                let expect = if g.is_zero() { BigInt::zero() } else { &g / &prev };
                prop_assert_eq!(&diag[k - 1], &expect);
                if g.is_zero() {
                    break;
                }
                prev = g;
            }
        }
    }
}
