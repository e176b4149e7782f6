//! Exact checks of the inequality chain showing that the smallest breakpoint
//! value is `h(n, 1)`.
//!
//! Every check returns a [`LemmaWitness`] holding both sides of the relation as
//! exact rationals. The chain is:
//!
//! * `d(m) = h(n, m+1) - h(n, m) >= 0`, with `d(m) = d(n - m)`;
//! * `d(m) >= 0` rewritten as `q^m (1-q)^{n-m} >= m * int_{1-q}^{1-p} g(t) dt`
//!   where `g(t) = t^{n-m} (1-t)^{m-1}`, `p = m/(n+1)`, `q = (m+1)/(n+1)`;
//! * the integral bounded by interval length times `max g`, which sits at
//!   `1 - p` when `m <= (n+1)/2` and at `t* = (n-m)/(n-1)` otherwise;
//! * the two resulting integer inequalities (case 1 and case 2), which reduce
//!   to comparisons of `w(x) = (1 + 1/x)^x`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::beta::{incomplete_beta, BetaParams};
use crate::error::{Error, Result};
use crate::exact::{binomial, frac, int, rational_pow, Rational};
use crate::minimizer::h_value;
use crate::report::{fraction_serde, VerificationReport};

/// Which check a witness belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    PascalIdentity,
    EBracketNesting,
    EBracketAccuracy,
    OracleEquality,
    HeterogeneousConsistency,
    FRange,
    IntervalDecrease,
    DerivativeClosedForm,
    DerivativeSign,
    LeftContinuity,
    BreakpointJump,
    FloorIdentification,
    BreakpointOptimality,
    FirstStep,
    OneOverECertificate,
    FloorMonotone,
    HValueConsistency,
    BetaRepresentation,
    AbsorptionIdentity,
    BetaMonotone,
    BetaSymmetry,
    BetaCompleteness,
    DNonnegative,
    DSymmetry,
    ComplementIdentity,
    IntegrationByParts,
    WOrder,
    GArgmaxDominance,
    GArgmaxRegime,
    RectangleBound,
    Case1,
    Case2,
    BDecreasing,
    BRatio,
    BoundaryChain,
    ChainConsistency,
    McProximity,
}

impl LemmaId {
    /// The snake_case name used in JSON reports.
    pub fn name(self) -> String {
        match serde_json::to_value(self) {
            Ok(serde_json::Value::String(s)) => s,
            _ => format!("{self:?}"),
        }
    }
}

/// Relation that `lhs` must satisfy against `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            Relation::Lt => ord == Ordering::Less,
            Relation::Le => ord != Ordering::Greater,
            Relation::Eq => ord == Ordering::Equal,
            Relation::Ge => ord != Ordering::Less,
            Relation::Gt => ord == Ordering::Greater,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaWitness {
    pub lemma_id: LemmaId,
    pub n: Option<u32>,
    pub m: Option<u32>,
    /// Evaluation point, when the check is taken at a particular `p`, `z` or `t`.
    #[serde(with = "fraction_serde::option", default)]
    pub point: Option<Rational>,
    pub relation: Relation,
    #[serde(with = "fraction_serde")]
    pub lhs: Rational,
    #[serde(with = "fraction_serde")]
    pub rhs: Rational,
    pub holds: bool,
}

impl LemmaWitness {
    pub fn new(
        lemma_id: LemmaId,
        n: Option<u32>,
        m: Option<u32>,
        relation: Relation,
        lhs: Rational,
        rhs: Rational,
    ) -> Self {
        let holds = relation.holds(lhs.cmp(&rhs));
        Self {
            lemma_id,
            n,
            m,
            point: None,
            relation,
            lhs,
            rhs,
            holds,
        }
    }

    pub fn at(mut self, point: Rational) -> Self {
        self.point = Some(point);
        self
    }
}

fn check_inner_m(n: u32, m: u32) -> Result<()> {
    if n < 2 || m < 1 || m >= n {
        return Err(Error::out_of_range("m", m, 1, i64::from(n) - 1));
    }
    Ok(())
}

fn pow_int(base: u64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

/// `d(m) = h(n, m+1) - h(n, m)` for `1 <= m <= n-1`.
pub fn d_value(n: u32, m: u32) -> Result<Rational> {
    check_inner_m(n, m)?;
    Ok(h_value(n, m + 1)?.value - h_value(n, m)?.value)
}

/// Checks `d(m) = d(n-m)` for every `1 <= m <= n-1`, and the complement identity
/// behind it on both scales: `H(n,m) + H(n,n+1-m) = (n+1)^n` and
/// `h(n,m) + h(n,n+1-m) = 1`. For `n < 2` the report is empty.
pub fn symmetry_check(n: u32) -> VerificationReport {
    let mut report = VerificationReport::new("symmetry").with_parameter("n", n);
    if n < 2 {
        return report;
    }
    let values: Vec<_> = (1..=n).map(|m| h_value(n, m).expect("1 <= m <= n")).collect();
    let d = |m: u32| &values[m as usize].value - &values[m as usize - 1].value;
    for m in 1..n {
        report.record(LemmaWitness::new(LemmaId::DSymmetry, Some(n), Some(m), Relation::Eq, d(m), d(n - m)));
    }
    let full = pow_int(u64::from(n) + 1, n);
    for m in 1..=n {
        let a = &values[m as usize - 1];
        let b = &values[(n - m) as usize];
        report.record(LemmaWitness::new(
            LemmaId::ComplementIdentity,
            Some(n),
            Some(m),
            Relation::Eq,
            int(&a.unnormalized + &b.unnormalized),
            int(full.clone()),
        ));
        report.record(LemmaWitness::new(
            LemmaId::ComplementIdentity,
            Some(n),
            Some(m),
            Relation::Eq,
            &a.value + &b.value,
            Rational::one(),
        ));
    }
    report
}

/// `w(x) = (1 + 1/x)^x` at a positive integer.
pub fn w_value(x: u32) -> Rational {
    rational_pow(&frac(i64::from(x) + 1, i64::from(x)), x)
}

/// Compares `w(a)` with `w(b)` via `(a+1)^a b^b` against `a^a (b+1)^b`.
pub fn w_compare(a: u32, b: u32) -> Ordering {
    let (a64, b64) = (u64::from(a), u64::from(b));
    let left = pow_int(a64 + 1, a) * pow_int(b64, b);
    let right = pow_int(a64, a) * pow_int(b64 + 1, b);
    left.cmp(&right)
}

/// `g(t) = t^{n-m} (1-t)^{m-1}`.
pub fn g_value(n: u32, m: u32, t: &Rational) -> Rational {
    rational_pow(t, n - m) * rational_pow(&(Rational::one() - t), m - 1)
}

/// The integration interval `[1-q, 1-p]` with `p = m/(n+1)`, `q = (m+1)/(n+1)`.
pub fn g_interval(n: u32, m: u32) -> (Rational, Rational) {
    let den = i64::from(n) + 1;
    let lo = frac(den - i64::from(m) - 1, den);
    let hi = frac(den - i64::from(m), den);
    (lo, hi)
}

/// Maximizer of `g` on `[1-q, 1-p]`: the stationary point `(n-m)/(n-1)` clamped
/// into the interval. For `m = 1`, `g(t) = t^{n-1}` and the clamp gives `1-p`.
pub fn g_argmax(n: u32, m: u32) -> Result<Rational> {
    check_inner_m(n, m)?;
    let (lo, hi) = g_interval(n, m);
    let stationary = frac(i64::from(n - m), i64::from(n) - 1);
    Ok(stationary.clamp(lo, hi))
}

/// `g(argmax)` against the largest `g` over both endpoints, the stationary
/// point when it lies inside, and 64 equally spaced points of the interval.
pub fn g_dominance_check(n: u32, m: u32) -> Result<LemmaWitness> {
    let argmax = g_argmax(n, m)?;
    let (lo, hi) = g_interval(n, m);
    let step = Rational::new(BigInt::one(), BigInt::from(63 * (u64::from(n) + 1)));
    let mut candidates: Vec<Rational> = (0..64).map(|j| &lo + int(j) * &step).collect();
    let stationary = frac(i64::from(n - m), i64::from(n) - 1);
    if lo <= stationary && stationary <= hi {
        candidates.push(stationary);
    }
    candidates.push(lo);
    candidates.push(hi);
    let best = candidates
        .iter()
        .map(|t| g_value(n, m, t))
        .max()
        .expect("non-empty");
    Ok(LemmaWitness::new(LemmaId::GArgmaxDominance, Some(n), Some(m), Relation::Ge, g_value(n, m, &argmax), best).at(argmax))
}

/// The maximizer sits at `1-p` exactly when `m <= (n+1)/2`, and strictly to its
/// left otherwise.
pub fn g_regime_check(n: u32, m: u32) -> Result<LemmaWitness> {
    let argmax = g_argmax(n, m)?;
    let (_, hi) = g_interval(n, m);
    let relation = if 2 * m <= n + 1 { Relation::Eq } else { Relation::Lt };
    Ok(LemmaWitness::new(LemmaId::GArgmaxRegime, Some(n), Some(m), relation, argmax, hi))
}

/// `q^m (1-q)^{n-m}` against `m [B(1-p; n-m+1, m) - B(1-q; n-m+1, m)]`.
pub fn rectangle_bound_check(n: u32, m: u32) -> Result<LemmaWitness> {
    check_inner_m(n, m)?;
    let (lo, hi) = g_interval(n, m);
    // q = 1 - lo
    let q = Rational::one() - &lo;
    let lhs = rational_pow(&q, m) * rational_pow(&lo, n - m);
    let beta = |z: Rational| incomplete_beta(&BetaParams::new(z, n - m + 1, m).expect("valid beta parameters"));
    let rhs = int(m) * (beta(hi) - beta(lo));
    Ok(LemmaWitness::new(LemmaId::RectangleBound, Some(n), Some(m), Relation::Ge, lhs, rhs))
}

/// `d(m) = C(n,m) [q^m (1-q)^{n-m} - m int_{1-q}^{1-p} g]`, obtained by
/// integrating `d/dt (t^{n-m} (1-t)^m)` over `[0, 1-q]`.
pub fn integration_by_parts_check(n: u32, m: u32) -> Result<LemmaWitness> {
    let rect = rectangle_bound_check(n, m)?;
    let rhs = int(binomial(n, i64::from(m))) * (rect.lhs - rect.rhs);
    Ok(LemmaWitness::new(LemmaId::IntegrationByParts, Some(n), Some(m), Relation::Eq, d_value(n, m)?, rhs))
}

/// `(m+1)^m (n-m)^{n-m} >= (n+1-m)^{n-m} m^m`. Holds exactly when `m >= n - m`.
pub fn case1_check(n: u32, m: u32) -> Result<LemmaWitness> {
    check_inner_m(n, m)?;
    let (n64, m64) = (u64::from(n), u64::from(m));
    let lhs = pow_int(m64 + 1, m) * pow_int(n64 - m64, n - m);
    let rhs = pow_int(n64 + 1 - m64, n - m) * pow_int(m64, m);
    Ok(LemmaWitness::new(LemmaId::Case1, Some(n), Some(m), Relation::Ge, int(lhs), int(rhs)))
}

/// `(m+1)^m (n-1)^{n-1} >= m (m-1)^{m-1} (n+1)^{n-1}` (with `0^0 = 1` at `m = 1`).
pub fn case2_check(n: u32, m: u32) -> Result<LemmaWitness> {
    check_inner_m(n, m)?;
    let (n64, m64) = (u64::from(n), u64::from(m));
    let lhs = pow_int(m64 + 1, m) * pow_int(n64 - 1, n - 1);
    let rhs = BigInt::from(m64) * pow_int(m64 - 1, m - 1) * pow_int(n64 + 1, n - 1);
    Ok(LemmaWitness::new(LemmaId::Case2, Some(n), Some(m), Relation::Ge, int(lhs), int(rhs)))
}

/// `b(m) = m (m-1)^{m-1} / (m+1)^m`, with `b(1) = 1/2`.
pub fn b_value(m: u32) -> Rational {
    let m64 = u64::from(m);
    Rational::new(BigInt::from(m64) * pow_int(m64.saturating_sub(1), m - 1), pow_int(m64 + 1, m))
}

/// `b(m) > b(m+1)` and `b(m)/b(m+1) = w(m+1)/w(m-1)` for `2 <= m < m_max`.
pub fn b_monotone_check(m_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new("b_monotone").with_parameter("m_max", m_max);
    for m in 2..m_max {
        let (b_m, b_next) = (b_value(m), b_value(m + 1));
        report.record(LemmaWitness::new(LemmaId::BDecreasing, None, Some(m), Relation::Gt, b_m.clone(), b_next.clone()));
        report.record(LemmaWitness::new(
            LemmaId::BRatio,
            None,
            Some(m),
            Relation::Eq,
            b_m / b_next,
            w_value(m + 1) / w_value(m - 1),
        ));
    }
    report
}

/// Case 2 at its boundary `n = 2m - 1`: `(m+1)^m (m-1)^{m-1} >= m^{2m-1}`.
pub fn case_boundary_chain_check(m: u32) -> Result<LemmaWitness> {
    if m < 2 {
        return Err(Error::out_of_range("m", m, 2, i64::from(u32::MAX)));
    }
    let m64 = u64::from(m);
    let lhs = pow_int(m64 + 1, m) * pow_int(m64 - 1, m - 1);
    let rhs = pow_int(m64, 2 * m - 1);
    Ok(LemmaWitness::new(LemmaId::BoundaryChain, Some(2 * m - 1), Some(m), Relation::Ge, int(lhs), int(rhs)))
}

/// `d(n, m) >= 0`; strictness is reported through [`d_is_strict`].
pub fn d_nonnegative_check(n: u32, m: u32) -> Result<LemmaWitness> {
    Ok(LemmaWitness::new(LemmaId::DNonnegative, Some(n), Some(m), Relation::Ge, d_value(n, m)?, Rational::zero()))
}

pub fn d_is_strict(n: u32, m: u32) -> Result<bool> {
    Ok(d_value(n, m)? > Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn d_examples() {
        assert_eq!(d_value(4, 1).unwrap(), frac(41, 625));
        assert_eq!(d_value(4, 2).unwrap(), frac(31, 625));
        assert_eq!(d_value(4, 3).unwrap(), frac(41, 625));
        assert!(d_value(4, 4).is_err());
        assert!(d_value(4, 0).is_err());
        assert!(d_value(1, 1).is_err());
    }

    #[test]
    fn symmetry_examples() {
        let r4 = symmetry_check(4);
        assert!(r4.passed(), "{:?}", r4.failures);
        assert_eq!(r4.checks_run, 3 + 2 * 4);
        assert!(symmetry_check(2).passed());
        assert_eq!(symmetry_check(1).checks_run, 0);
        let h = |m| h_value(4, m).unwrap().unnormalized;
        assert_eq!(h(2) + h(3), BigInt::from(625));
    }

    #[test]
    fn w_compare_examples() {
        assert_eq!(w_compare(1, 2), Ordering::Less);
        assert_eq!(w_compare(3, 3), Ordering::Equal);
        assert_eq!(w_compare(3, 2), Ordering::Greater);
        assert_eq!(w_value(1), int(2));
        assert_eq!(w_value(2), frac(9, 4));
    }

    #[test]
    fn w_compare_matches_rational_comparison() {
        for a in 1..=30 {
            for b in 1..=30 {
                assert_eq!(w_compare(a, b), w_value(a).cmp(&w_value(b)));
                assert_eq!(w_compare(a, b), a.cmp(&b));
            }
        }
    }

    #[test]
    fn g_argmax_examples() {
        assert_eq!(g_argmax(4, 2).unwrap(), frac(3, 5));
        assert_eq!(g_argmax(4, 3).unwrap(), frac(1, 3));
        assert_eq!(g_argmax(3, 2).unwrap(), frac(1, 2));
        // g(t) = t on [1/3, 2/3]
        assert_eq!(g_argmax(2, 1).unwrap(), frac(2, 3));
        assert!(g_argmax(1, 1).is_err());
        assert!(g_argmax(5, 5).is_err());
    }

    #[test]
    fn g_dominance_small() {
        for n in 2..=12 {
            for m in 1..n {
                assert!(g_dominance_check(n, m).unwrap().holds, "n={n} m={m}");
                assert!(g_regime_check(n, m).unwrap().holds, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn rectangle_examples() {
        let w = rectangle_bound_check(4, 2).unwrap();
        assert_eq!(w.lhs, frac(36, 625));
        assert_eq!(w.rhs, frac(37, 750));
        assert!(w.holds);
        let w = rectangle_bound_check(2, 1).unwrap();
        assert_eq!(w.lhs, frac(2, 9));
        assert_eq!(w.rhs, frac(1, 6));
        assert!(w.holds);
        assert!(rectangle_bound_check(3, 2).unwrap().holds);
    }

    #[test]
    fn integration_by_parts_small() {
        for n in 2..=15 {
            for m in 1..n {
                assert!(integration_by_parts_check(n, m).unwrap().holds, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn case1_examples() {
        let w = case1_check(4, 2).unwrap();
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(36), int(36)));
        assert!(w.holds);
        let w = case1_check(4, 3).unwrap();
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(64), int(54)));
        let w = case1_check(2, 1).unwrap();
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(2), int(2)));
        assert!(!case1_check(4, 1).unwrap().holds);
    }

    #[test]
    fn case1_holds_iff_m_at_least_half() {
        for n in 2..=30 {
            for m in 1..n {
                assert_eq!(case1_check(n, m).unwrap().holds, m >= n - m, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn case2_examples() {
        let w = case2_check(5, 3).unwrap();
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(16384), int(15552)));
        let w = case2_check(3, 2).unwrap();
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(36), int(32)));
        let w = case2_check(7, 4).unwrap();
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(29_160_000), int(28_311_552)));
        // below the case-2 regime the inequality can fail
        let w = case2_check(4, 2).unwrap();
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(243), int(250)));
        assert!(!w.holds);
        // m = 1 uses 0^0 = 1
        assert_eq!(case2_check(3, 1).unwrap().rhs, int(16));
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_value(1), frac(1, 2));
        assert_eq!(b_value(2), frac(2, 9));
        assert_eq!(b_value(3), frac(3, 16));
        assert_eq!(b_value(4), frac(108, 625));
        assert_eq!(b_value(3) / b_value(4), frac(625, 576));
        assert_eq!(w_value(4) / w_value(2), frac(625, 576));
        let report = b_monotone_check(40);
        assert!(report.passed());
        assert_eq!(report.checks_run, 2 * 38);
    }

    #[test]
    fn boundary_chain_examples() {
        let w = case_boundary_chain_check(2).unwrap();
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(9), int(8)));
        let w = case_boundary_chain_check(3).unwrap();
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(256), int(243)));
        let w = case_boundary_chain_check(4).unwrap();
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(16875), int(16384)));
        assert!(case_boundary_chain_check(1).is_err());
    }

    #[test]
    fn boundary_chain_is_case2_at_odd_n() {
        for m in 2..=20u32 {
            let chain = case_boundary_chain_check(m).unwrap();
            let case2 = case2_check(2 * m - 1, m).unwrap();
            assert_eq!(chain.holds, case2.holds);
            assert_eq!(chain.holds, w_compare(m, m - 1) != Ordering::Less);
        }
    }

    #[test]
    fn d_is_positive_small() {
        for n in 2..=20 {
            for m in 1..n {
                assert!(d_nonnegative_check(n, m).unwrap().holds);
                assert!(!d_value(n, m).unwrap().is_negative());
            }
            assert!(d_is_strict(n, 1).unwrap());
        }
    }

    #[test]
    fn relation_semantics() {
        use Ordering::*;
        assert!(Relation::Ge.holds(Equal) && Relation::Ge.holds(Greater) && !Relation::Ge.holds(Less));
        assert!(!Relation::Gt.holds(Equal));
        assert!(Relation::Le.holds(Less) && !Relation::Le.holds(Greater));
        assert!(Relation::Lt.holds(Less) && !Relation::Lt.holds(Equal));
        assert!(Relation::Eq.holds(Equal) && !Relation::Eq.holds(Less));
    }
}
