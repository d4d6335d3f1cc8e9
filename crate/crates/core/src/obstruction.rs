//! Norm-factorization tests `Δ ≐ f f̄` with `|f(1,…,1)| = 1`, the two-link
//! pair condition, and the Hopf-comparison report.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::alexander::{fox_matrix, h1_rank, torsion_alexander, AlexanderError};
use crate::budget::{Budget, BudgetExceeded};
use crate::laurent::{factor, LaurentError, LaurentPoly};
use crate::link::LinkDiagram;
use crate::presentation::wirtinger;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("the zero polynomial has no norm decomposition")]
    ZeroPolynomial,
    #[error("polynomials in {0} and {1} variables cannot be compared")]
    VariableMismatch(usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

impl From<AlexanderError> for ObstructionError {
    fn from(e: AlexanderError) -> Self {
        match e {
            AlexanderError::Budget(b) => ObstructionError::Budget(b),
            other => ObstructionError::Precondition(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormVerdict {
    Yes(LaurentPoly),
    No(String),
    Unknown(String),
}

impl NormVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            NormVerdict::Yes(_) => "yes",
            NormVerdict::No(_) => "no",
            NormVerdict::Unknown(_) => "unknown",
        }
    }

    pub fn witness(&self) -> Option<&LaurentPoly> {
        match self {
            NormVerdict::Yes(f) => Some(f),
            _ => None,
        }
    }
}

/// `Δ ≐ f·f̄` and `|f(1,…,1)| = 1`.
pub fn verify_norm_certificate(d: &LaurentPoly, f: &LaurentPoly) -> bool {
    d.nvars() == f.nvars() && f.eval_at_ones().abs().is_one() && d.associates(&(f * &f.involve()))
}

/// Checks that any norm `±t^a f f̄` with `|f(1,…,1)| = 1` must pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessaryReport {
    pub value_at_ones: BigInt,
    pub value_at_minus_ones: BigInt,
    pub unit_at_ones: bool,
    pub square_at_minus_ones: bool,
    pub symmetric: bool,
}

impl NecessaryReport {
    pub fn passed(&self) -> bool {
        self.unit_at_ones && self.square_at_minus_ones && self.symmetric
    }

    /// First failing check, if any.
    pub fn failure(&self) -> Option<String> {
        if !self.unit_at_ones {
            Some(format!("|Δ(1,…,1)| = {} ≠ 1", self.value_at_ones.abs()))
        } else if !self.square_at_minus_ones {
            Some(format!("Δ(-1,…,-1) = {} is not ± a square", self.value_at_minus_ones))
        } else if !self.symmetric {
            Some("Δ is not symmetric".into())
        } else {
            None
        }
    }
}

fn is_square(n: &BigInt) -> bool {
    let a = n.abs();
    let r = a.sqrt();
    &r * &r == a
}

pub fn necessary_conditions(d: &LaurentPoly) -> Result<NecessaryReport, ObstructionError> {
    if d.is_zero() {
        return Err(ObstructionError::ZeroPolynomial);
    }
    let one = d.eval_at_ones();
    let minus = d.eval_at_minus_ones();
    Ok(NecessaryReport {
        unit_at_ones: one.abs().is_one(),
        square_at_minus_ones: is_square(&minus),
        symmetric: d.associates(&d.involve()),
        value_at_ones: one,
        value_at_minus_ones: minus,
    })
}

/// Irreducible factors with multiplicities, keyed by normal form.
type Divisor = BTreeMap<LaurentPoly, i64>;

enum Factored {
    Ok(BigInt, Divisor),
    Unavailable(String),
}

fn factored(d: &LaurentPoly, budget: &Budget) -> Result<Factored, ObstructionError> {
    match factor(d, budget) {
        Ok(f) => {
            let mut div = Divisor::new();
            for (p, e) in f.factors {
                *div.entry(p).or_default() += i64::from(e);
            }
            Ok(Factored::Ok(f.content.abs(), div))
        }
        Err(LaurentError::FactorizationUnavailable(msg)) => Ok(Factored::Unavailable(msg)),
        Err(e) => Err(ObstructionError::Precondition(e.to_string())),
    }
}

fn conjugate(p: &LaurentPoly) -> LaurentPoly {
    p.involve().normalized()
}

/// Splits a divisor into a norm: returns `f` with `N(f) = div`, or the reason
/// it is not a norm. Factors of `f` must satisfy `|π(1,…,1)| = 1`.
fn half_of(nvars: usize, div: &Divisor) -> Result<LaurentPoly, String> {
    let mut f = LaurentPoly::one(nvars);
    for (p, &e) in div {
        if e == 0 {
            continue;
        }
        let q = conjugate(p);
        if &q == p {
            if e % 2 != 0 {
                return Err(format!("self-conjugate factor {p} has odd multiplicity {e}"));
            }
            f = f * p.pow((e / 2) as u32);
        } else {
            let eq = div.get(&q).copied().unwrap_or(0);
            if eq != e {
                return Err(format!("factor {p} (multiplicity {e}) and its conjugate {q} (multiplicity {eq}) do not pair"));
            }
            // Witness takes the first of each conjugate pair.
            if p.canonical_cmp(&q).is_lt() {
                f = f * p.pow(e as u32);
            }
        }
        if !p.eval_at_ones().abs().is_one() {
            return Err(format!("factor {p} has |value at (1,…,1)| ≠ 1"));
        }
    }
    Ok(f.normalized())
}

/// Decide `Δ ≐ f f̄` with `|f(1,…,1)| = 1` by factoring.
pub fn exact_norm_test(d: &LaurentPoly, budget: &Budget) -> Result<NormVerdict, ObstructionError> {
    if d.is_zero() {
        return Err(ObstructionError::ZeroPolynomial);
    }
    let v = d.eval_at_ones();
    if !v.abs().is_one() {
        return Ok(NormVerdict::No(format!("|Δ(1,…,1)| = {} ≠ 1", v.abs())));
    }
    let (content, div) = match factored(d, budget)? {
        Factored::Ok(c, div) => (c, div),
        Factored::Unavailable(m) => return Ok(NormVerdict::Unknown(m)),
    };
    if !is_square(&content) {
        return Ok(NormVerdict::No(format!("content {content} is not a square")));
    }
    Ok(match half_of(d.nvars(), &div) {
        Ok(f) => NormVerdict::Yes(f.scale(&content.sqrt())),
        Err(reason) => NormVerdict::No(reason),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairVerdict {
    Yes { f0: LaurentPoly, f1: LaurentPoly },
    No(String),
    Unknown(String),
}

impl PairVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            PairVerdict::Yes { .. } => "yes",
            PairVerdict::No(_) => "no",
            PairVerdict::Unknown(_) => "unknown",
        }
    }
}

/// `Δ₀ f₀ f̄₀ ≐ Δ₁ f₁ f̄₁` and `|f_i(1,…,1)| = 1`.
pub fn verify_pair_certificate(d0: &LaurentPoly, d1: &LaurentPoly, f0: &LaurentPoly, f1: &LaurentPoly) -> bool {
    [f0, f1].iter().all(|f| f.nvars() == d0.nvars() && f.eval_at_ones().abs().is_one())
        && (d0 * &(f0 * &f0.involve())).associates(&(d1 * &(f1 * &f1.involve())))
}

/// Decide whether `Δ₀ f₀ f̄₀ ≐ Δ₁ f₁ f̄₁` has a solution with
/// `|f_i(1,…,1)| = 1`. Common factors cancel; what remains on each side
/// must be a norm of factors with unit value at `(1,…,1)`.
pub fn pair_test(d0: &LaurentPoly, d1: &LaurentPoly, budget: &Budget) -> Result<PairVerdict, ObstructionError> {
    if d0.is_zero() || d1.is_zero() {
        return Err(ObstructionError::ZeroPolynomial);
    }
    if d0.nvars() != d1.nvars() {
        return Err(ObstructionError::VariableMismatch(d0.nvars(), d1.nvars()));
    }
    let (c0, m0) = match factored(d0, budget)? {
        Factored::Ok(c, m) => (c, m),
        Factored::Unavailable(m) => return Ok(PairVerdict::Unknown(m)),
    };
    let (c1, m1) = match factored(d1, budget)? {
        Factored::Ok(c, m) => (c, m),
        Factored::Unavailable(m) => return Ok(PairVerdict::Unknown(m)),
    };
    if c0 != c1 {
        return Ok(PairVerdict::No(format!("contents {c0} and {c1} differ")));
    }
    // Excess on side 0 must be supplied by f₁, and vice versa.
    let mut for_f1 = Divisor::new();
    let mut for_f0 = Divisor::new();
    for p in m0.keys().chain(m1.keys()) {
        let e = m0.get(p).copied().unwrap_or(0) - m1.get(p).copied().unwrap_or(0);
        if e > 0 {
            for_f1.insert(p.clone(), e);
        } else if e < 0 {
            for_f0.insert(p.clone(), -e);
        }
    }
    let n = d0.nvars();
    match (half_of(n, &for_f0), half_of(n, &for_f1)) {
        (Ok(f0), Ok(f1)) => Ok(PairVerdict::Yes { f0, f1 }),
        (Err(r), _) => Ok(PairVerdict::No(format!("second polynomial: {r}"))),
        (_, Err(r)) => Ok(PairVerdict::No(format!("first polynomial: {r}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopfVerdict {
    Obstructed,
    PassesAbelian,
    Inconclusive,
}

impl fmt::Display for HopfVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HopfVerdict::Obstructed => "OBSTRUCTED",
            HopfVerdict::PassesAbelian => "PASSES_ABELIAN",
            HopfVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfReport {
    /// `None` when only a polynomial was supplied.
    pub rank: Option<usize>,
    pub torsion_poly: LaurentPoly,
    pub norm: NormVerdict,
    pub necessary: NecessaryReport,
    pub verdict: HopfVerdict,
}

impl HopfReport {
    pub fn rank_zero(&self) -> bool {
        self.rank.map_or(true, |r| r == 0)
    }
}

/// Report for a torsion polynomial with a known (or assumed zero) rank.
pub fn hopf_test_poly(d: &LaurentPoly, rank: Option<usize>, budget: &Budget) -> Result<HopfReport, ObstructionError> {
    let necessary = necessary_conditions(d)?;
    let norm = exact_norm_test(d, budget)?;
    let verdict = match (&norm, rank.unwrap_or(0)) {
        (_, r) if r != 0 => HopfVerdict::Obstructed,
        (NormVerdict::No(_), _) => HopfVerdict::Obstructed,
        (NormVerdict::Unknown(_), _) => HopfVerdict::Inconclusive,
        (NormVerdict::Yes(_), _) => HopfVerdict::PassesAbelian,
    };
    Ok(HopfReport { rank, torsion_poly: d.clone(), norm, necessary, verdict })
}

/// Abelian obstructions to `L` being related to the Hopf link: rank of the
/// Alexander module and the norm condition on `Δᵀ`.
pub fn hopf_test(d: &LinkDiagram, budget: &Budget) -> Result<HopfReport, ObstructionError> {
    if d.num_components() != 2 {
        return Err(ObstructionError::Precondition(format!(
            "needs a 2-component link, got {} components",
            d.num_components()
        )));
    }
    let lk = d.linking_number(0, 1);
    if lk != 1 {
        return Err(ObstructionError::Precondition(format!("needs linking number 1, got {lk}")));
    }
    let w = wirtinger(d);
    let j = fox_matrix(&w.presentation, &w.meridian_map);
    let rank = h1_rank(&j);
    let delta = torsion_alexander(&j, budget)?;
    hopf_test_poly(&delta, Some(rank), budget)
}

/// Integer square root helper used by tests and reports.
pub fn is_perfect_square(n: &BigInt) -> bool {
    !n.is_negative() && is_square(n) || n.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::testutil::{arb_poly, p, p2};
    use crate::link::builtin;
    use proptest::prelude::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn certificates() {
        assert!(verify_norm_certificate(&p("1"), &p("1")));
        assert!(verify_norm_certificate(&p("-2*t + 5 - 2*t^-1"), &p("2*t - 1")));
        assert!(!verify_norm_certificate(&p("t + 1"), &p("1")));
        // Right product, wrong value at 1.
        assert!(!verify_norm_certificate(&p("-3*t + 10 - 3*t^-1"), &p("3*t - 1")));
    }

    #[test]
    fn necessary_battery() {
        assert!(necessary_conditions(&p("1")).unwrap().passed());
        let r = necessary_conditions(&p("t - 3 + t^-1")).unwrap();
        assert!(r.unit_at_ones);
        assert_eq!(r.value_at_minus_ones, BigInt::from(-5));
        assert!(!r.square_at_minus_ones);
        let r = necessary_conditions(&p("2*t - 1")).unwrap();
        assert!(!r.symmetric && !r.passed());
        assert!(necessary_conditions(&p("0")).is_err());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(exact_norm_test(&p("1"), &b()).unwrap(), NormVerdict::Yes(p("1")));
        assert_eq!(exact_norm_test(&p("-2*t + 5 - 2*t^-1"), &b()).unwrap(), NormVerdict::Yes(p("2*t - 1")));
        assert!(matches!(exact_norm_test(&p("t^2 - t + 1"), &b()).unwrap(), NormVerdict::No(_)));
        assert!(matches!(exact_norm_test(&p2("t1*t2 - t1 - t2 + 3"), &b()).unwrap(), NormVerdict::No(_)));
        let d = p2("(t1 - 2*t2)*(t1^-1 - 2*t2^-1)");
        let f = exact_norm_test(&d, &b()).unwrap().witness().cloned().unwrap();
        assert!(verify_norm_certificate(&d, &f));
        let sq = p("(t^2 - t + 1)^2");
        let v = exact_norm_test(&sq, &b()).unwrap();
        assert_eq!(v, NormVerdict::Yes(p("t^2 - t + 1")));
        let mut tight = b();
        tight.max_total_degree = 2;
        assert!(matches!(exact_norm_test(&sq, &tight).unwrap(), NormVerdict::Unknown(_)));
    }

    #[test]
    fn pair_examples() {
        assert!(matches!(pair_test(&p("1"), &p("1"), &b()).unwrap(), PairVerdict::Yes { .. }));
        let PairVerdict::Yes { f0, f1 } = pair_test(&p("1"), &p("-2*t + 5 - 2*t^-1"), &b()).unwrap() else {
            panic!()
        };
        assert_eq!((f0.clone(), f1.clone()), (p("2*t - 1"), p("1")));
        assert!(verify_pair_certificate(&p("1"), &p("-2*t + 5 - 2*t^-1"), &f0, &f1));
        assert!(matches!(pair_test(&p("1"), &p("t - 3 + t^-1"), &b()).unwrap(), PairVerdict::No(_)));
        assert!(matches!(pair_test(&p("4"), &p("1"), &b()).unwrap(), PairVerdict::No(_)));
        assert!(pair_test(&p("1"), &p2("1"), &b()).is_err());
    }

    #[test]
    fn hopf_reports() {
        let r = hopf_test(&builtin("hopf").unwrap(), &b()).unwrap();
        assert_eq!(r.rank, Some(0));
        assert_eq!(r.torsion_poly, p2("1"));
        assert_eq!(r.norm, NormVerdict::Yes(p2("1")));
        assert_eq!(r.verdict, HopfVerdict::PassesAbelian);
        for bad in ["unlink2", "solomon", "trefoil", "hopf_negative"] {
            assert!(matches!(hopf_test(&builtin(bad).unwrap(), &b()), Err(ObstructionError::Precondition(_))), "{bad}");
        }
        let r = hopf_test(&builtin("hopf_sum_trefoil").unwrap(), &b()).unwrap();
        assert_eq!(r.verdict, HopfVerdict::Obstructed);
        let r = hopf_test_poly(&p2("t1*t2 - t1 - t2 + 3"), None, &b()).unwrap();
        assert_eq!(r.verdict, HopfVerdict::Obstructed);
        assert_eq!(hopf_test_poly(&p("1"), None, &b()).unwrap().verdict, HopfVerdict::PassesAbelian);
        assert_eq!(hopf_test_poly(&p("1"), Some(1), &b()).unwrap().verdict, HopfVerdict::Obstructed);
    }

    fn arb_norm() -> impl Strategy<Value = (LaurentPoly, LaurentPoly)> {
        (arb_poly(2, 4, 2, 3), 0i64..3, -2i64..3, any::<bool>()).prop_filter_map(
            "g(1,1) must be ±1",
            |(g, a, b, neg)| {
                let g = g.normalized();
                if !g.eval_at_ones().abs().is_one() {
                    return None;
                }
                let u = LaurentPoly::monomial(2, vec![a, b], if neg { -1 } else { 1 });
                Some((&(&g * &g.involve()) * &u, g))
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn yes_is_sound((d, _g) in arb_norm()) {
            let v = exact_norm_test(&d, &b()).unwrap();
            let f = v.witness().expect("a constructed norm is a norm").clone();
            prop_assert!(verify_norm_certificate(&d, &f));
            prop_assert!(necessary_conditions(&d).unwrap().passed());
        }

        #[test]
        fn pair_is_symmetric(a in arb_poly(1, 3, 2, 3), c in arb_poly(1, 3, 2, 3)) {
            prop_assume!(!a.is_zero() && !c.is_zero());
            let x = pair_test(&a, &c, &b()).unwrap();
            let y = pair_test(&c, &a, &b()).unwrap();
            prop_assert_eq!(x.status(), y.status());
            if let PairVerdict::Yes { f0, f1 } = x {
                prop_assert!(verify_pair_certificate(&a, &c, &f0, &f1));
            }
        }

        #[test]
        fn pair_with_self(g in arb_poly(2, 3, 2, 3)) {
            prop_assume!(!g.is_zero());
            let d = &g * &g.involve();
            if d.eval_at_ones().abs().is_one() {
                let yes = matches!(pair_test(&d, &d, &b()).unwrap(), PairVerdict::Yes { .. });
                prop_assert!(yes);
            }
        }
    }
}
