//! Global minimum of the sawtooth over `(0, 1)`.
//!
//! `f` decreases on every interval `((m-1)/(n+1), m/(n+1)]`, so its infimum is
//! attained at one of the breakpoints `p = m/(n+1)`, where it equals
//! `h(n, m) = H(n, m) / (n+1)^n` with
//! `H(n, m) = sum_{k<m} C(n,k) m^k (n+1-m)^{n-k}`.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{e_bracket, frac, int, Rational};
use crate::lemmas::{LemmaId, LemmaWitness, Relation};
use crate::report::VerificationReport;

pub const DEFAULT_E_TERMS: u32 = 25;
/// Upper limit for the doubling retry in [`certify_with_retry`].
pub const MAX_E_TERMS: u32 = 1 << 10;

pub(crate) fn check_breakpoint_index(n: u32, m: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyN);
    }
    if m < 1 || m > n {
        return Err(Error::out_of_range("m", m, 1, i64::from(n)));
    }
    Ok(())
}

/// Value of `f` at the breakpoint `m/(n+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakpointValue {
    pub n: u32,
    pub m: u32,
    pub p_star: Rational,
    pub value: Rational,
    /// `H(n, m)`, the numerator of `value` over `(n+1)^n` (not reduced).
    pub unnormalized: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinResult {
    pub n: u32,
    pub argmin_p: Rational,
    pub min_value: Rational,
    pub certified_above_1_over_e: bool,
    pub e_terms_used: u32,
}

pub fn h_value(n: u32, m: u32) -> Result<BreakpointValue> {
    check_breakpoint_index(n, m)?;
    let (n64, m64) = (u64::from(n), u64::from(m));
    let rest = n64 + 1 - m64;
    // term_k = C(n,k) m^k rest^{n-k}; each step divides exactly
    let mut term = BigInt::from(rest).pow(n);
    let mut unnormalized = term.clone();
    for k in 1..m64 {
        term = term * ((n64 - k + 1) * m64) / (k * rest);
        unnormalized += &term;
    }
    let value = Rational::new(unnormalized.clone(), BigInt::from(n64 + 1).pow(n));
    Ok(BreakpointValue {
        n,
        m,
        p_star: frac(i64::from(m), i64::from(n) + 1),
        value,
        unnormalized,
    })
}

/// `h(n, 1) = (n/(n+1))^n`.
pub fn h_floor(n: u32) -> Rational {
    assert!(n >= 1, "h_floor needs n >= 1");
    let n64 = u64::from(n);
    Rational::new(BigInt::from(n64).pow(n), BigInt::from(n64 + 1).pow(n))
}

/// Certifies `h_floor(n) > 1/e` by checking `(1 + 1/n)^n < lower(e)`, i.e.
/// `(n+1)^n * den < num * n^n`. `false` means inconclusive at this precision
/// (also returned for `terms < 2`).
pub fn certify_above_1_over_e(n: u32, terms: u32) -> bool {
    let Ok(bracket) = e_bracket(terms) else {
        return false;
    };
    let n64 = u64::from(n);
    let lower = &bracket.lower;
    BigInt::from(n64 + 1).pow(n) * lower.denom() < lower.numer() * BigInt::from(n64).pow(n)
}

/// Certifies `value > 1/e`, doubling the number of Taylor terms from `start`
/// up to [`MAX_E_TERMS`]. Returns the number of terms that succeeded.
pub fn certify_value_with_retry(value: &Rational, start: u32) -> std::result::Result<u32, u32> {
    let mut terms = start.max(2);
    loop {
        let bracket = e_bracket(terms).expect("terms >= 2");
        if bracket.certifies_above_reciprocal(value) {
            return Ok(terms);
        }
        if terms >= MAX_E_TERMS {
            return Err(terms);
        }
        terms = (terms * 2).min(MAX_E_TERMS);
    }
}

/// [`certify_above_1_over_e`] with the doubling retry policy.
pub fn certify_with_retry(n: u32, start: u32) -> std::result::Result<u32, u32> {
    let mut terms = start.max(2);
    loop {
        if certify_above_1_over_e(n, terms) {
            return Ok(terms);
        }
        if terms >= MAX_E_TERMS {
            return Err(terms);
        }
        terms = (terms * 2).min(MAX_E_TERMS);
    }
}

/// Scans every breakpoint and keeps the smallest `h(n, m)` (smallest `m` on ties).
pub fn global_min(n: u32) -> MinResult {
    global_min_with_terms(n, DEFAULT_E_TERMS)
}

pub fn global_min_with_terms(n: u32, e_terms: u32) -> MinResult {
    assert!(n >= 1, "global_min needs n >= 1");
    let values: Vec<BreakpointValue> = (1..=n)
        .into_par_iter()
        .map(|m| h_value(n, m).expect("1 <= m <= n"))
        .collect();
    let best = values
        .into_iter()
        .reduce(|best, v| if v.value < best.value { v } else { best })
        .expect("n >= 1");
    let (certified, e_terms_used) = match certify_value_with_retry(&best.value, e_terms) {
        Ok(terms) => (true, terms),
        Err(terms) => (false, terms),
    };
    MinResult {
        n,
        argmin_p: best.p_star,
        min_value: best.value,
        certified_above_1_over_e: certified,
        e_terms_used,
    }
}

/// `h_floor(n) > h_floor(n+1)` for `1 <= n < n_max`, via
/// `n^n (n+2)^{n+1} > (n+1)^{2n+1}`.
pub fn floor_monotone_check(n_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new("floor_monotone").with_parameter("n_max", n_max);
    let witnesses: Vec<LemmaWitness> = (1..n_max)
        .into_par_iter()
        .map(|n| {
            let n64 = u64::from(n);
            let lhs = BigInt::from(n64).pow(n) * BigInt::from(n64 + 2).pow(n + 1);
            let rhs = BigInt::from(n64 + 1).pow(2 * n + 1);
            LemmaWitness::new(LemmaId::FloorMonotone, Some(n), None, Relation::Gt, int(lhs), int(rhs))
        })
        .collect();
    for w in witnesses {
        report.record(w);
    }
    report
}

/// Witness form of [`certify_above_1_over_e`]: `h_floor(n) * lower(e) > 1`.
pub fn certificate_witness(n: u32, terms: u32) -> LemmaWitness {
    let lower = e_bracket(terms.max(2)).expect("terms >= 2").lower;
    LemmaWitness::new(
        LemmaId::OneOverECertificate,
        Some(n),
        None,
        Relation::Gt,
        h_floor(n) * lower,
        Rational::one(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_pow;
    use crate::tail::{f_of_p, IidTwoPointInstance};

    #[test]
    fn h_value_examples() {
        let v = h_value(4, 1).unwrap();
        assert_eq!(v.unnormalized, BigInt::from(256));
        assert_eq!(v.value, frac(256, 625));
        let v = h_value(4, 2).unwrap();
        assert_eq!(v.unnormalized, BigInt::from(297));
        assert_eq!(v.value, frac(297, 625));
        assert_eq!(v.p_star, frac(2, 5));
        assert_eq!(h_value(1, 1).unwrap().value, frac(1, 2));
        let table: Vec<_> = (1..=4).map(|m| h_value(4, m).unwrap().unnormalized).collect();
        assert_eq!(table, [256, 297, 328, 369].map(BigInt::from));
        assert!(h_value(4, 0).is_err());
        assert!(h_value(4, 5).is_err());
        assert!(h_value(0, 1).is_err());
    }

    #[test]
    fn h_value_matches_binomial_sum() {
        use crate::exact::binomial;
        for n in 1..=40u32 {
            for m in 1..=n {
                let rest = BigInt::from(n + 1 - m);
                let direct: BigInt = (0..m)
                    .map(|k| binomial(n, i64::from(k)) * BigInt::from(m).pow(k) * rest.pow(n - k))
                    .sum();
                assert_eq!(h_value(n, m).unwrap().unnormalized, direct, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn h_value_is_f_at_breakpoint() {
        for n in 1..=25 {
            for m in 1..=n {
                let v = h_value(n, m).unwrap();
                let inst = IidTwoPointInstance::new(n, v.p_star.clone()).unwrap();
                assert_eq!(v.value, f_of_p(&inst), "n={n} m={m}");
                assert!(v.value > Rational::from_integer(0.into()) && v.value <= int(1));
            }
        }
    }

    #[test]
    fn h_floor_examples() {
        assert_eq!(h_floor(1), frac(1, 2));
        assert_eq!(h_floor(2), frac(4, 9));
        assert_eq!(h_floor(10), frac(10_000_000_000, 25_937_424_601));
        assert!((crate::exact::to_f64(&h_floor(10)) - 0.385543).abs() < 1e-6);
        for n in 1..=30 {
            assert_eq!(h_floor(n), h_value(n, 1).unwrap().value);
            assert_eq!(h_floor(n), rational_pow(&frac(i64::from(n), i64::from(n) + 1), n));
        }
    }

    #[test]
    fn global_min_examples() {
        let r = global_min(4);
        assert_eq!(r.argmin_p, frac(1, 5));
        assert_eq!(r.min_value, frac(256, 625));
        assert!(r.certified_above_1_over_e);
        assert_eq!(r.e_terms_used, DEFAULT_E_TERMS);
        let r = global_min(1);
        assert_eq!(r.argmin_p, frac(1, 2));
        assert_eq!(r.min_value, frac(1, 2));
        let r = global_min(10);
        assert_eq!(r.min_value, rational_pow(&frac(10, 11), 10));
    }

    #[test]
    fn certificate_examples() {
        assert!(certify_above_1_over_e(10, 20));
        assert!(certify_above_1_over_e(1, 3));
        assert!(certify_above_1_over_e(1000, 20));
        // terms = 2 gives lower = 5/2, below (1 + 1/10)^10 ~ 2.5937
        assert!(!certify_above_1_over_e(10, 2));
        assert!(!certify_above_1_over_e(10, 1));
        assert_eq!(certify_with_retry(10, 2), Ok(4));
        assert!(certificate_witness(10, 25).holds);
        assert!(!certificate_witness(10, 2).holds);
    }

    #[test]
    fn retry_gives_up_when_value_is_below_reciprocal() {
        // 1/3 < 1/e, so no bracket can certify it
        assert_eq!(certify_value_with_retry(&frac(1, 3), 25), Err(MAX_E_TERMS));
        assert_eq!(certify_value_with_retry(&frac(1, 2), 2), Ok(2));
    }

    #[test]
    fn floor_monotone_examples() {
        let r = floor_monotone_check(100);
        assert!(r.passed());
        assert_eq!(r.checks_run, 99);
        // n = 1 against n = 2: 1 * 3^2 = 9 > 8 = 2^3
        let r = floor_monotone_check(3);
        assert_eq!(r.checks_run, 2);
        assert!(h_floor(1) > h_floor(2) && h_floor(2) > h_floor(3));
    }
}
