//! The verification battery: every identity and inequality, checked exactly
//! over parameter ranges, collected into [`VerificationReport`]s.
//!
//! The minimality conclusion is checked twice: once through the lemma chain
//! ([`geometry_suite`], [`d_suite`], [`b_suite`]) and once directly from the
//! breakpoint values ([`chain_consistency`], [`floor_identification`]).

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::beta::{absorption_identity_check, h_via_beta, incomplete_beta, BetaParams};
use crate::exact::{binomial, e_bracket, frac, int, parse_rational, Rational};
use crate::lemmas::{
    b_monotone_check, case1_check, case2_check, case_boundary_chain_check, d_is_strict, d_nonnegative_check,
    g_dominance_check, g_regime_check, integration_by_parts_check, rectangle_bound_check, symmetry_check, w_compare,
    LemmaId, LemmaWitness, Relation,
};
use crate::minimizer::{certificate_witness, floor_monotone_check, global_min, h_floor, h_value};
use crate::report::{Tally, VerificationReport, VerifyBundle};
use crate::tail::{
    breakpoints, brute_force_iid, exact_heterogeneous, f_of_p, partial_tail, tail_derivative,
    tail_derivative_closed_form, HeterogeneousInstance, IidTwoPointInstance, TailSpec,
};

pub const DEFAULT_SEED: u64 = 42;
pub const RANDOM_POINTS_PER_N: usize = 200;

fn timed(f: impl FnOnce() -> VerificationReport) -> VerificationReport {
    let start = Instant::now();
    let mut report = f();
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Runs `check` for every item in parallel and merges the tallies in item order.
fn scan<T: Sync, F>(items: &[T], check: F) -> Tally
where
    F: Fn(&T, &mut Tally) + Sync,
{
    items
        .par_iter()
        .map(|item| {
            let mut tally = Tally::default();
            check(item, &mut tally);
            tally
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

fn iid(n: u32, p: &Rational) -> IidTwoPointInstance {
    IidTwoPointInstance::new(n, p.clone()).expect("p in (0, 1)")
}

fn eq(id: LemmaId, n: Option<u32>, m: Option<u32>, lhs: Rational, rhs: Rational) -> LemmaWitness {
    LemmaWitness::new(id, n, m, Relation::Eq, lhs, rhs)
}

fn flag(id: LemmaId, n: Option<u32>, m: Option<u32>, ok: bool) -> LemmaWitness {
    eq(id, n, m, int(u8::from(ok)), Rational::one())
}

/// Breakpoints of `n` together with `j/64`, `j = 1..63`.
pub fn sample_points(n: u32) -> Vec<Rational> {
    let mut ps = breakpoints(n);
    ps.extend((1..64).map(|j| frac(j, 64)));
    ps.sort();
    ps.dedup();
    ps
}

pub fn exact_core_suite(pascal_n: u32, e_terms_max: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("exact_core")
            .with_parameter("pascal_n", pascal_n)
            .with_parameter("e_terms_max", e_terms_max);
        for n in 1..=pascal_n {
            for k in 1..=i64::from(n) {
                let lhs = int(binomial(n, k));
                let rhs = int(binomial(n - 1, k - 1) + binomial(n - 1, k));
                report.record(eq(LemmaId::PascalIdentity, Some(n), Some(k as u32), lhs, rhs));
            }
        }
        for t in 2..e_terms_max {
            let (outer, inner) = (e_bracket(t).expect("t >= 2"), e_bracket(t + 1).expect("t >= 2"));
            report.record(LemmaWitness::new(LemmaId::EBracketNesting, Some(t), None, Relation::Gt, inner.lower, outer.lower));
            report.record(LemmaWitness::new(LemmaId::EBracketNesting, Some(t), None, Relation::Lt, inner.upper, outer.upper));
        }
        let b20 = e_bracket(20).expect("20 >= 2");
        let lo = parse_rational("2.718281828").expect("decimal");
        let hi = parse_rational("2.7182818285").expect("decimal");
        report.record(LemmaWitness::new(LemmaId::EBracketAccuracy, Some(20), None, Relation::Gt, b20.lower.clone(), lo));
        report.record(LemmaWitness::new(LemmaId::EBracketAccuracy, Some(20), None, Relation::Lt, b20.upper.clone(), hi));
        let factorial: BigInt = (1..=20u32).fold(BigInt::one(), |acc, k| acc * k);
        report.record(eq(
            LemmaId::EBracketAccuracy,
            Some(20),
            None,
            b20.width(),
            Rational::new(BigInt::one(), factorial * 20),
        ));
        report
    })
}

/// `f = brute force` at every sample point; `0 < f <= 1`; `f = 1` above `n/(n+1)`.
pub fn oracle_equality(n_max: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("oracle_equality").with_parameter("n_max", n_max);
        let ns: Vec<u32> = (1..=n_max).collect();
        report.absorb(scan(&ns, |&n, tally| {
            let last = frac(i64::from(n), i64::from(n) + 1);
            for p in sample_points(n) {
                let inst = iid(n, &p);
                let value = f_of_p(&inst);
                tally.record(eq(LemmaId::OracleEquality, Some(n), None, value.clone(), brute_force_iid(&inst)).at(p.clone()));
                tally.record(LemmaWitness::new(LemmaId::FRange, Some(n), None, Relation::Gt, value.clone(), Rational::zero()).at(p.clone()));
                tally.record(LemmaWitness::new(LemmaId::FRange, Some(n), None, Relation::Le, value.clone(), Rational::one()).at(p.clone()));
                if p > last {
                    tally.record(eq(LemmaId::FRange, Some(n), None, value, Rational::one()).at(p));
                }
            }
        }));
        report
    })
}

/// Replicated-`x` enumeration equals `f(1/x)`.
pub fn heterogeneous_consistency(n_max: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("heterogeneous_consistency").with_parameter("n_max", n_max);
        let ns: Vec<u32> = (1..=n_max).collect();
        report.absorb(scan(&ns, |&n, tally| {
            for p in sample_points(n) {
                let inst = HeterogeneousInstance::replicated(p.recip(), n as usize).expect("x > 1");
                let enumerated = exact_heterogeneous(&inst).expect("n within cap");
                tally.record(eq(LemmaId::HeterogeneousConsistency, Some(n), None, enumerated, f_of_p(&iid(n, &p))).at(p));
            }
        }));
        report
    })
}

/// Strict decrease of `f` across 8 equally spaced interior points of every
/// interval `((m-1)/(n+1), m/(n+1))`, `m <= n`.
pub fn interval_decrease(n_max: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("interval_decrease").with_parameter("n_max", n_max);
        let ns: Vec<u32> = (1..=n_max).collect();
        report.absorb(scan(&ns, |&n, tally| {
            let width = i64::from(n) + 1;
            for m in 1..=i64::from(n) {
                let values: Vec<(Rational, Rational)> = (1..=8)
                    .map(|j| {
                        let p = frac(9 * (m - 1) + j, 9 * width);
                        let v = f_of_p(&iid(n, &p));
                        (p, v)
                    })
                    .collect();
                for pair in values.windows(2) {
                    tally.record(
                        LemmaWitness::new(LemmaId::IntervalDecrease, Some(n), Some(m as u32), Relation::Gt, pair[0].1.clone(), pair[1].1.clone())
                            .at(pair[0].0.clone()),
                    );
                }
            }
        }));
        report
    })
}

/// Term-wise derivative = closed form; negative below `m = n`, zero at `m = n`.
pub fn derivative_checks(n_max: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("derivative").with_parameter("n_max", n_max);
        let ns: Vec<u32> = (1..=n_max).collect();
        let points = [frac(1, 7), frac(1, 3), frac(1, 2), frac(5, 8)];
        report.absorb(scan(&ns, |&n, tally| {
            for m in 0..=n {
                let spec = TailSpec::new(n, m).expect("m <= n");
                for p in &points {
                    let termwise = tail_derivative(spec, p).expect("p in (0, 1)");
                    let closed = tail_derivative_closed_form(spec, p).expect("p in (0, 1)");
                    tally.record(eq(LemmaId::DerivativeClosedForm, Some(n), Some(m), termwise.clone(), closed).at(p.clone()));
                    let relation = if m < n { Relation::Lt } else { Relation::Eq };
                    tally.record(LemmaWitness::new(LemmaId::DerivativeSign, Some(n), Some(m), relation, termwise, Rational::zero()).at(p.clone()));
                }
            }
        }));
        report
    })
}

/// Left-continuity at each breakpoint and a strict upward jump just right of it.
pub fn continuity_checks(n_max: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("continuity").with_parameter("n_max", n_max);
        let ns: Vec<u32> = (1..=n_max).collect();
        report.absorb(scan(&ns, |&n, tally| {
            let nudge = Rational::new(BigInt::one(), BigInt::from(8 * (u64::from(n) + 1)));
            for (idx, bp) in breakpoints(n).iter().enumerate() {
                let m = idx as u32 + 1;
                let at = f_of_p(&iid(n, bp));
                let left_formula = partial_tail(TailSpec::new(n, m - 1).expect("m - 1 <= n"), bp).expect("bp in (0, 1)");
                tally.record(eq(LemmaId::LeftContinuity, Some(n), Some(m), at.clone(), left_formula).at(bp.clone()));
                let right = f_of_p(&iid(n, &(bp + &nudge)));
                tally.record(LemmaWitness::new(LemmaId::BreakpointJump, Some(n), Some(m), Relation::Gt, right, at).at(bp.clone()));
            }
        }));
        report
    })
}

/// `global_min(n)` lands on `p = 1/(n+1)` with value `h_floor(n)`.
///
/// With `inject_fault`, the `n = 2` value comparison is made against
/// `h_floor(2) + 1/10^9`, which must be reported as exactly one failure.
pub fn floor_identification(n_max: u32, inject_fault: bool) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("floor_identification").with_parameter("n_max", n_max);
        if inject_fault {
            report = report.with_parameter("self_test_fault", "n=2");
        }
        let ns: Vec<u32> = (1..=n_max).collect();
        report.absorb(scan(&ns, |&n, tally| {
            let result = global_min(n);
            tally.record(eq(LemmaId::FloorIdentification, Some(n), None, result.argmin_p.clone(), frac(1, i64::from(n) + 1)));
            let mut expected = h_floor(n);
            if inject_fault && n == 2 {
                expected += frac(1, 1_000_000_000);
            }
            tally.record(eq(LemmaId::FloorIdentification, Some(n), Some(1), result.min_value, expected));
        }));
        report
    })
}

/// `points_per_n` pseudo-random rationals `a/b`, `2 <= b <= 1000`, `0 < a < b`,
/// drawn from ChaCha8 keyed by `seed` on stream `n`.
pub fn random_points(n: u32, points_per_n: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(n));
    (0..points_per_n)
        .map(|_| {
            let den: i64 = rng.gen_range(2..=1000);
            let num: i64 = rng.gen_range(1..den);
            frac(num, den)
        })
        .collect()
}

/// `global_min(n).min_value <= f(p)` at random rational `p`.
pub fn breakpoint_optimality(n_max: u32, points_per_n: usize, seed: u64) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("breakpoint_optimality")
            .with_parameter("n_max", n_max)
            .with_parameter("points_per_n", points_per_n)
            .with_parameter("seed", seed);
        let ns: Vec<u32> = (1..=n_max).collect();
        report.absorb(scan(&ns, |&n, tally| {
            let min = global_min(n).min_value;
            for p in random_points(n, points_per_n, seed) {
                let value = f_of_p(&iid(n, &p));
                tally.record(LemmaWitness::new(LemmaId::BreakpointOptimality, Some(n), None, Relation::Le, min.clone(), value).at(p));
            }
        }));
        report
    })
}

/// `h(n, 1) < h(n, 2)` for `2 <= n <= n_max`.
pub fn first_step(n_max: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("first_step").with_parameter("n_max", n_max);
        let ns: Vec<u32> = (2..=n_max).collect();
        report.absorb(scan(&ns, |&n, tally| {
            let h1 = h_value(n, 1).expect("n >= 1").value;
            let h2 = h_value(n, 2).expect("n >= 2").value;
            tally.record(LemmaWitness::new(LemmaId::FirstStep, Some(n), Some(1), Relation::Lt, h1, h2));
        }));
        report
    })
}

/// Certified `h_floor(n) > 1/e` for `1 <= n <= n_max` at a fixed number of terms.
pub fn certificate_range(n_max: u32, terms: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("one_over_e_certificate")
            .with_parameter("n_max", n_max)
            .with_parameter("e_terms", terms);
        let ns: Vec<u32> = (1..=n_max).collect();
        report.absorb(scan(&ns, |&n, tally| tally.record(certificate_witness(n, terms))));
        report
    })
}

/// `h_value(n, m) = f(m/(n+1))` for `1 <= m <= n <= n_max`.
pub fn h_consistency(n_max: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("h_consistency").with_parameter("n_max", n_max);
        let ns: Vec<u32> = (1..=n_max).collect();
        report.absorb(scan(&ns, |&n, tally| {
            for m in 1..=n {
                let v = h_value(n, m).expect("1 <= m <= n");
                let direct = f_of_p(&iid(n, &v.p_star));
                tally.record(eq(LemmaId::HValueConsistency, Some(n), Some(m), v.value, direct).at(v.p_star));
            }
        }));
        report
    })
}

/// Beta representation of `h(n, m)` for `n <= rep_n`, plus structural beta
/// identities for `a + b <= ab_sum`.
pub fn beta_suite(rep_n: u32, ab_sum: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("beta")
            .with_parameter("rep_n", rep_n)
            .with_parameter("ab_sum", ab_sum);
        let ns: Vec<u32> = (1..=rep_n).collect();
        report.absorb(scan(&ns, |&n, tally| {
            for m in 1..=n {
                let via_beta = h_via_beta(n, m).expect("1 <= m <= n");
                tally.record(eq(LemmaId::BetaRepresentation, Some(n), Some(m), via_beta, h_value(n, m).expect("1 <= m <= n").value));
                tally.record(flag(LemmaId::AbsorptionIdentity, Some(n), Some(m), absorption_identity_check(n, m).expect("1 <= m <= n")));
            }
        }));
        let beta = |z: &Rational, a: u32, b: u32| incomplete_beta(&BetaParams::new(z.clone(), a, b).expect("valid parameters"));
        let zs: Vec<Rational> = (1..=16).map(|j| frac(j, 17)).collect();
        for a in 1..ab_sum {
            for b in 1..=(ab_sum - a) {
                for pair in zs.windows(2) {
                    let (lo, hi) = (beta(&pair[0], a, b), beta(&pair[1], a, b));
                    report.record(LemmaWitness::new(LemmaId::BetaMonotone, Some(a), Some(b), Relation::Lt, lo, hi).at(pair[0].clone()));
                }
                let full = beta(&Rational::one(), a, b);
                for z in &zs {
                    let sum = beta(z, a, b) + beta(&(Rational::one() - z), b, a);
                    report.record(eq(LemmaId::BetaSymmetry, Some(a), Some(b), sum, full.clone()).at(z.clone()));
                }
            }
        }
        // completeness B(1; a, b) = (a-1)! (b-1)! / (a+b-1)!
        let fact = |k: u32| (1..=k).fold(BigInt::one(), |acc, i| acc * i);
        for a in 1..=ab_sum + 1 {
            for b in 1..=(ab_sum + 2).saturating_sub(a) {
                let expected = Rational::new(fact(a - 1) * fact(b - 1), fact(a + b - 1));
                report.record(eq(LemmaId::BetaCompleteness, Some(a), Some(b), beta(&Rational::one(), a, b), expected));
            }
        }
        report
    })
}

/// `d(m) >= 0` and `d(m) = d(n - m)` (with the complement identity) for
/// `2 <= n <= n_max`. Strictness of `d` is recorded as an observation.
pub fn d_suite(n_max: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("d_sign_and_symmetry").with_parameter("n_max", n_max);
        let ns: Vec<u32> = (2..=n_max).collect();
        let parts: Vec<(Tally, usize, usize)> = ns
            .par_iter()
            .map(|&n| {
                let mut tally = Tally::default();
                let mut strict = 0;
                for m in 1..n {
                    tally.record(d_nonnegative_check(n, m).expect("1 <= m < n"));
                    strict += usize::from(d_is_strict(n, m).expect("1 <= m < n"));
                }
                let sym = symmetry_check(n);
                tally.checks += sym.checks_run;
                tally.failures.extend(sym.failures);
                (tally, strict, (n - 1) as usize)
            })
            .collect();
        let (mut strict, mut total) = (0, 0);
        for (tally, s, t) in parts {
            report.absorb(tally);
            strict += s;
            total += t;
        }
        report.observe("d_strictly_positive", format!("{strict}/{total}"));
        report
    })
}

/// `w(a)` against `w(b)` orders exactly like `a` against `b`.
pub fn w_order(max: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("w_order").with_parameter("max", max);
        let rows: Vec<u32> = (1..=max).collect();
        let ordinal = |o: Ordering| int(o as i8);
        report.absorb(scan(&rows, |&a, tally| {
            for b in 1..=max {
                tally.record(eq(LemmaId::WOrder, Some(a), Some(b), ordinal(w_compare(a, b)), ordinal(a.cmp(&b))));
            }
        }));
        report
    })
}

/// The geometric part of the chain for `2 <= n <= n_max`, `1 <= m <= n-1`:
/// rectangle bound, integration-by-parts identity, case 1 (holds iff
/// `m >= n - m`), case 2 in its regime `2 <= m`, `2m >= n + 1`, the location of
/// the maximum of `g`, and its dominance over a 64-point grid.
///
/// Case 2 outside its regime is not asserted; the number of pairs where it
/// still holds is recorded as an observation.
pub fn geometry_suite(n_max: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("geometry").with_parameter("n_max", n_max);
        let ns: Vec<u32> = (2..=n_max).collect();
        let parts: Vec<(Tally, usize, usize)> = ns
            .par_iter()
            .map(|&n| {
                let mut tally = Tally::default();
                let (mut outside, mut outside_holds) = (0, 0);
                for m in 1..n {
                    tally.record(rectangle_bound_check(n, m).expect("1 <= m < n"));
                    tally.record(integration_by_parts_check(n, m).expect("1 <= m < n"));
                    let c1 = case1_check(n, m).expect("1 <= m < n");
                    if m >= n - m {
                        tally.record(c1);
                    } else {
                        let LemmaWitness { lhs, rhs, .. } = c1;
                        tally.record(LemmaWitness::new(LemmaId::Case1, Some(n), Some(m), Relation::Lt, lhs, rhs));
                    }
                    let c2 = case2_check(n, m).expect("1 <= m < n");
                    if m >= 2 && 2 * m > n {
                        tally.record(c2);
                    } else {
                        outside += 1;
                        outside_holds += usize::from(c2.holds);
                    }
                    tally.record(g_dominance_check(n, m).expect("1 <= m < n"));
                    tally.record(g_regime_check(n, m).expect("1 <= m < n"));
                }
                (tally, outside, outside_holds)
            })
            .collect();
        let (mut outside, mut outside_holds) = (0, 0);
        for (tally, o, h) in parts {
            report.absorb(tally);
            outside += o;
            outside_holds += h;
        }
        report.observe("case2_outside_regime_holds", format!("{outside_holds}/{outside}"));
        report
    })
}

/// `b(m)` decreasing with its ratio identity for `m < m_max`, and the case-2
/// boundary inequality for `2 <= m <= m_max`.
pub fn b_suite(m_max: u32) -> VerificationReport {
    timed(|| {
        let mut report = b_monotone_check(m_max);
        report.suite = "b_and_boundary".into();
        let ms: Vec<u32> = (2..=m_max).collect();
        report.absorb(scan(&ms, |&m, tally| {
            let chain = case_boundary_chain_check(m).expect("m >= 2");
            let via_w = w_compare(m, m - 1) != Ordering::Less;
            tally.record(flag(LemmaId::BoundaryChain, Some(2 * m - 1), Some(m), chain.holds == via_w));
            tally.record(chain);
        }));
        report
    })
}

/// `h(n, 1) <= h(n, m)` for all `m`, straight from the breakpoint values.
pub fn chain_consistency(n_max: u32) -> VerificationReport {
    timed(|| {
        let mut report = VerificationReport::new("chain_consistency").with_parameter("n_max", n_max);
        let ns: Vec<u32> = (1..=n_max).collect();
        report.absorb(scan(&ns, |&n, tally| {
            let floor = h_value(n, 1).expect("n >= 1").value;
            for m in 1..=n {
                let v = h_value(n, m).expect("1 <= m <= n").value;
                tally.record(LemmaWitness::new(LemmaId::ChainConsistency, Some(n), Some(m), Relation::Le, floor.clone(), v));
            }
        }));
        report
    })
}

/// Every suite up to `n = n_max`. Ranges that are expensive or bounded by
/// construction are capped: enumeration at 16, derivatives at 30, interval
/// sampling at 40, beta representation at 50, geometry at 60.
pub fn run_battery(n_max: u32, inject_fault: bool) -> VerifyBundle {
    let n = n_max.max(2);
    let reports = vec![
        exact_core_suite(60, 30),
        oracle_equality(n.min(16)),
        heterogeneous_consistency(n.min(16)),
        interval_decrease(n.min(40)),
        derivative_checks(n.min(30)),
        continuity_checks(n),
        floor_identification(n, inject_fault),
        breakpoint_optimality(n, RANDOM_POINTS_PER_N, DEFAULT_SEED),
        first_step(n),
        certificate_range(n, crate::minimizer::DEFAULT_E_TERMS),
        floor_monotone_check(n),
        h_consistency(n.min(60)),
        beta_suite(n.min(50), 12),
        d_suite(n),
        geometry_suite(n.min(60)),
        b_suite(200),
        w_order(200),
        chain_consistency(n),
    ];
    VerifyBundle::new(n_max, reports)
}

/// Removes the non-deterministic timing fields.
pub fn strip_timing(bundle: &mut VerifyBundle) {
    for r in &mut bundle.reports {
        r.elapsed_ms = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn small_battery_passes() {
        let bundle = run_battery(8, false);
        assert_eq!(bundle.failure_count(), 0, "{:#?}", bundle.reports.iter().filter(|r| !r.passed()).collect::<Vec<_>>());
        assert!(bundle.checks_run() > 1000);
    }

    #[test]
    fn fault_injection_yields_exactly_one_failure() {
        let report = floor_identification(5, true);
        assert_eq!(report.failures.len(), 1);
        let w = &report.failures[0];
        assert_eq!((w.lemma_id, w.n), (LemmaId::FloorIdentification, Some(2)));
        assert!(floor_identification(5, false).passed());
    }

    #[test]
    fn random_points_are_reproducible_and_in_range() {
        let a = random_points(7, 50, 42);
        assert_eq!(a, random_points(7, 50, 42));
        assert_ne!(a, random_points(8, 50, 42));
        assert!(a.iter().all(|p| p.is_positive() && *p < Rational::one()));
    }

    #[test]
    fn sample_points_include_breakpoints() {
        let ps = sample_points(3);
        assert!(ps.contains(&frac(1, 4)) && ps.contains(&frac(3, 4)) && ps.contains(&frac(1, 64)));
        // 1/4, 1/2, 3/4 are both breakpoints and multiples of 1/64
        assert_eq!(ps.len(), 63);
    }

    #[test]
    fn geometry_records_case2_outside_regime() {
        let report = geometry_suite(10);
        assert!(report.passed());
        assert!(report.observations.contains_key("case2_outside_regime_holds"));
    }
}
