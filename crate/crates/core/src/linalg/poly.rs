use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;

use super::{bareiss_rank, laplace_det, LinalgError};
use crate::laurent::{LaurentError, LaurentPoly};

/// Dense matrix of Laurent polynomials in a fixed number of variables.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, nvars, data: vec![LaurentPoly::zero(nvars); rows * cols] }
    }

    pub fn from_rows(cols: usize, nvars: usize, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            assert!(r.iter().all(|p| p.nvars() == nvars), "mixed variable counts");
            data.extend(r);
        }
        PolyMatrix { rows: nrows, cols, nvars, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        assert_eq!(p.nvars(), self.nvars);
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Substitute a rational point into every entry.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<Vec<Vec<BigRational>>, LaurentError> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| p.evaluate(point)).collect()).collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            (0..self.rows).map(|i| format!("[{}]", self.row(i).iter().map(|p| p.to_string()).join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{}x{}{}", self.rows, self.cols, self)
    }
}

/// Rank over the fraction field of the Laurent ring.
pub fn rank_over_k(m: &PolyMatrix) -> usize {
    bareiss_rank(&m.to_rows())
}

/// All `k×k` minors, row index sets outermost, both in lexicographic order.
/// `k = 0` yields the single empty minor `1`.
pub fn minors(m: &PolyMatrix, k: usize) -> Result<impl Iterator<Item = LaurentPoly> + '_, LinalgError> {
    if k > m.rows.min(m.cols) {
        return Err(LinalgError::MinorSize { k, rows: m.rows, cols: m.cols });
    }
    let one = LaurentPoly::one(m.nvars);
    let it = (0..m.rows).combinations(k).flat_map(move |rs| {
        let one = one.clone();
        (0..m.cols).combinations(k).map(move |cs| {
            let sub: Vec<Vec<LaurentPoly>> =
                rs.iter().map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
            laplace_det(&sub, &one)
        })
    });
    Ok(it)
}

#[cfg(test)]
mod tests {
    use super::super::bareiss_det;
    use super::*;
    use crate::laurent::testutil::arb_poly;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn pm(nvars: usize, rows: &[&[&str]]) -> PolyMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|s| LaurentPoly::parse_with_vars(s, nvars).unwrap()).collect())
            .collect();
        PolyMatrix::from_rows(cols, nvars, data)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_over_k(&pm(1, &[&["t - 1", "1 - t"]])), 1);
        assert_eq!(rank_over_k(&pm(1, &[&["t - 1"], &["t^2 - t"]])), 1);
        assert_eq!(rank_over_k(&PolyMatrix::zeros(3, 2, 2)), 0);
        assert_eq!(rank_over_k(&pm(2, &[&["t1 - 1", "t2"], &["t2", "t1^-1"]])), 2);
    }

    #[test]
    fn minor_examples() {
        let a = pm(1, &[&["1", "t"], &["t", "1"]]);
        assert_eq!(minors(&a, 2).unwrap().collect::<Vec<_>>(), vec![LaurentPoly::parse_with_vars("1 - t^2", 1).unwrap()]);
        let b = pm(1, &[&["1", "2", "3"], &["4", "5", "6"]]);
        let got: Vec<String> = minors(&b, 2).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(got, vec!["-3", "-6", "-3"]);
        assert_eq!(minors(&b, 1).unwrap().count(), 6);
        assert!(matches!(minors(&b, 3), Err(LinalgError::MinorSize { .. })));
        assert_eq!(minors(&b, 0).unwrap().collect::<Vec<_>>(), vec![LaurentPoly::one(1)]);
        assert_eq!(a.to_string(), "[[1, t], [t, 1]]");
    }

    fn arb_pmatrix(max: usize) -> impl Strategy<Value = PolyMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop_oneof![Just(None), arb_poly(2, 2, 1, 3).prop_map(Some)], r * c).prop_map(
                move |v| {
                    let v: Vec<LaurentPoly> = v.into_iter().map(|p| p.unwrap_or_else(|| LaurentPoly::zero(2))).collect();
                    PolyMatrix::from_rows(c, 2, v.chunks(c).map(|x| x.to_vec()).collect())
                },
            )
        })
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn determinant_by_minor_matches_elimination(a in arb_pmatrix(4)) {
            let n = a.rows().min(a.cols());
            let sq: Vec<Vec<LaurentPoly>> = (0..n).map(|i| a.row(i)[..n].to_vec()).collect();
            let sq = PolyMatrix::from_rows(n, 2, sq);
            let via_minor = minors(&sq, n).unwrap().next().unwrap();
            prop_assert_eq!(via_minor, bareiss_det(&sq.to_rows(), &LaurentPoly::one(2)));
        }

        #[test]
        fn rank_matches_random_specializations(a in arb_pmatrix(6)) {
            // Generic rank is the maximum over specializations; three unrelated
            // points all agreeing with the symbolic rank is overwhelmingly likely.
            let r = rank_over_k(&a);
            for pt in [[q(17, 3), q(-29, 7)], [q(-41, 11), q(53, 5)], [q(101, 13), q(67, 19)]] {
                let num = a.evaluate(&pt).unwrap();
                prop_assert_eq!(bareiss_rank(&num), r);
            }
        }
    }
}
