//! Monte Carlo estimation of `P(X_1 + ... + X_n < n + 1)` for independent
//! two-point variables with unit means.
//!
//! # Random stream contract
//!
//! Randomness comes from ChaCha8 (`rand_chacha`). The key is
//! `ChaCha8Rng::seed_from_u64(seed)` and trial `i` reads the ChaCha stream with
//! id `i` from word position 0, so every trial depends only on `(seed, i)`.
//! Within a trial, variable `j` with `x_j = a_j / b_j` succeeds when a uniform
//! draw from `0..a_j` is below `b_j`; that is an exact Bernoulli(`1/x_j`).
//! Sums are compared exactly after scaling by the lcm of the denominators.
//! Because the hit count is order-free, the estimate does not depend on the
//! number of workers.

use std::thread;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{e_bracket, fraction_string, int, parse_rational, Rational};
use crate::lemmas::{LemmaId, LemmaWitness, Relation};
use crate::report::VerificationReport;
use crate::tail::{exact_heterogeneous, HeterogeneousInstance};

pub const DEFAULT_TRIALS: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            trials: DEFAULT_TRIALS,
            seed: 0,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub p_hat: f64,
    pub std_error: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub trials: u64,
    pub seed: u64,
    /// Number of trials with `S_n < n + 1`.
    pub hits: u64,
}

impl McEstimate {
    fn from_hits(hits: u64, trials: u64, seed: u64) -> Self {
        let p_hat = hits as f64 / trials as f64;
        let std_error = (p_hat * (1.0 - p_hat) / trials as f64).sqrt();
        let half = 1.96 * std_error;
        Self {
            p_hat,
            std_error,
            ci95_low: (p_hat - half).max(0.0),
            ci95_high: (p_hat + half).min(1.0),
            trials,
            seed,
            hits,
        }
    }

    /// `hits / trials` as an exact rational.
    pub fn p_hat_exact(&self) -> Rational {
        Rational::new(BigInt::from(self.hits), BigInt::from(self.trials))
    }

    /// `(p_hat - exact) / sqrt(exact (1 - exact) / trials)`; zero when the
    /// exact probability is 0 or 1 and the estimate agrees.
    pub fn z_score(&self, exact: f64) -> f64 {
        let sigma = (exact * (1.0 - exact) / self.trials as f64).sqrt();
        let dev = self.p_hat - exact;
        if sigma == 0.0 {
            if dev == 0.0 {
                0.0
            } else {
                f64::INFINITY.copysign(dev)
            }
        } else {
            dev / sigma
        }
    }
}

/// Per-variable success test and scaled step, in machine words when they fit.
enum Sampler {
    Word {
        // (a, b): success iff uniform(0..a) < b
        odds: Vec<(u64, u64)>,
        steps: Vec<u128>,
        threshold: u128,
    },
    Big {
        odds: Vec<(BigUint, BigUint)>,
        steps: Vec<BigUint>,
        threshold: BigUint,
    },
}

impl Sampler {
    fn new(inst: &HeterogeneousInstance) -> Self {
        let xs = inst.xs();
        let scale = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let to_uint = |v: &BigInt| v.to_biguint().expect("support points are positive");
        let odds: Vec<(BigUint, BigUint)> = xs.iter().map(|x| (to_uint(x.numer()), to_uint(x.denom()))).collect();
        let steps: Vec<BigUint> = xs.iter().map(|x| to_uint(&(x.numer() * (&scale / x.denom())))).collect();
        let threshold = to_uint(&(BigInt::from(xs.len() + 1) * &scale));

        let total: BigUint = steps.iter().sum::<BigUint>() + &threshold;
        let word_odds: Option<Vec<(u64, u64)>> = odds.iter().map(|(a, b)| Some((a.to_u64()?, b.to_u64()?))).collect();
        match (word_odds, total.to_u128()) {
            (Some(word_odds), Some(_)) => Sampler::Word {
                odds: word_odds,
                steps: steps.iter().map(|s| s.to_u128().expect("bounded by total")).collect(),
                threshold: threshold.to_u128().expect("bounded by total"),
            },
            _ => Sampler::Big {
                odds,
                steps,
                threshold,
            },
        }
    }

    fn trial(&self, rng: &mut ChaCha8Rng) -> bool {
        match self {
            Sampler::Word {
                odds,
                steps,
                threshold,
            } => {
                let mut sum = 0u128;
                for (&(a, b), &step) in odds.iter().zip(steps) {
                    if rng.gen_range(0..a) < b {
                        sum += step;
                    }
                }
                sum < *threshold
            }
            Sampler::Big {
                odds,
                steps,
                threshold,
            } => {
                let mut sum = BigUint::zero();
                for ((a, b), step) in odds.iter().zip(steps) {
                    if rng.gen_biguint_below(a) < *b {
                        sum += step;
                    }
                }
                sum < *threshold
            }
        }
    }
}

fn count_hits(sampler: &Sampler, key: &ChaCha8Rng, trials: std::ops::Range<u64>) -> u64 {
    let mut hits = 0;
    for trial in trials {
        let mut rng = key.clone();
        rng.set_stream(trial);
        rng.set_word_pos(0);
        if sampler.trial(&mut rng) {
            hits += 1;
        }
    }
    hits
}

/// Estimates `P(S_n < n + 1)` from `cfg.trials` independent draws.
pub fn simulate(inst: &HeterogeneousInstance, cfg: &McConfig) -> Result<McEstimate> {
    if cfg.trials == 0 {
        return Err(Error::ZeroTrials);
    }
    if cfg.workers == 0 {
        return Err(Error::ZeroWorkers);
    }
    let sampler = Sampler::new(inst);
    let key = ChaCha8Rng::seed_from_u64(cfg.seed);
    let workers = (cfg.workers as u64).min(cfg.trials);
    let chunk = cfg.trials.div_ceil(workers);
    let hits = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let start = w * chunk;
                let end = ((w + 1) * chunk).min(cfg.trials);
                let (sampler, key) = (&sampler, &key);
                scope.spawn(move || count_hits(sampler, key, start..end))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    });
    Ok(McEstimate::from_hits(hits, cfg.trials, cfg.seed))
}

/// SplitMix64 finalizer, used to derive per-instance seeds.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McBatteryConfig {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub trials: u64,
    pub workers: usize,
}

impl Default for McBatteryConfig {
    fn default() -> Self {
        Self {
            count: 20,
            n_min: 2,
            n_max: 12,
            seed: 42,
            trials: DEFAULT_TRIALS,
            workers: 1,
        }
    }
}

/// Draws the battery's instances: `n` uniform in `[n_min, n_max]`, each
/// `x = num/den` with `den` uniform in `1..=4` and `num` uniform in `den..=20 den`.
pub fn battery_instances(cfg: &McBatteryConfig) -> Vec<HeterogeneousInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.count)
        .map(|_| {
            let n = rng.gen_range(cfg.n_min..=cfg.n_max);
            let xs = (0..n)
                .map(|_| {
                    let den: i64 = rng.gen_range(1..=4);
                    let num: i64 = rng.gen_range(den..=20 * den);
                    Rational::new(num.into(), den.into())
                })
                .collect();
            HeterogeneousInstance::new(xs).expect("generated points are >= 1")
        })
        .collect()
}

/// Compares [`simulate`] with [`exact_heterogeneous`] on generated instances.
///
/// An instance is flagged when `(p_hat - P)^2 > 16 P (1 - P) / trials`, i.e.
/// the estimate sits more than four oracle standard errors from the exact
/// probability `P` (checked exactly, since `p_hat = hits / trials`). Whether
/// each exact value is above `1/e` is recorded as an observation only.
pub fn mc_vs_exact_battery(cfg: &McBatteryConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("mc_vs_exact")
        .with_parameter("count", cfg.count)
        .with_parameter("n_range", format!("{}..={}", cfg.n_min, cfg.n_max))
        .with_parameter("seed", cfg.seed)
        .with_parameter("trials", cfg.trials);
    let bracket = e_bracket(25).expect("25 >= 2");
    let mut above = 0usize;
    for (i, inst) in battery_instances(cfg).iter().enumerate() {
        let exact = exact_heterogeneous(inst)?;
        let mc_cfg = McConfig {
            trials: cfg.trials,
            seed: splitmix64(cfg.seed.wrapping_add(i as u64 + 1)),
            workers: cfg.workers,
        };
        let estimate = simulate(inst, &mc_cfg)?;
        let dev = estimate.p_hat_exact() - &exact;
        let allowed = int(16) * &exact * (Rational::one() - &exact) / int(cfg.trials);
        report.record(
            LemmaWitness::new(LemmaId::McProximity, Some(inst.len() as u32), None, Relation::Le, &dev * &dev, allowed)
                .at(exact.clone()),
        );
        let side = if bracket.certifies_above_reciprocal(&exact) {
            above += 1;
            "above"
        } else if bracket.certifies_below_reciprocal(&exact) {
            "below"
        } else {
            "inconclusive"
        };
        let xs: Vec<String> = inst.xs().iter().map(|x| x.to_string()).collect();
        report.observe(
            &format!("instance_{i:03}"),
            format!(
                "x=[{}] exact={} p_hat={} z={:.3} vs_1_over_e={side}",
                xs.join(","),
                fraction_string(&exact),
                estimate.p_hat,
                estimate.z_score(crate::exact::to_f64(&exact)),
            ),
        );
    }
    report.observe("exact_above_1_over_e", format!("{above}/{}", cfg.count));
    Ok(report)
}

/// Parses an instance file: a JSON object `{"x": [...]}` whose entries are
/// rational strings (`"3"`, `"5/2"`, `"2.5"`) or JSON integers.
pub fn parse_instance_spec(text: &str) -> Result<HeterogeneousInstance> {
    let field_err = |field: &str, reason: String| Error::SpecField {
        field: field.to_string(),
        reason,
    };
    let doc: Value = serde_json::from_str(text).map_err(|e| field_err("<document>", e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| field_err("<document>", "expected a JSON object".into()))?;
    if let Some(extra) = obj.keys().find(|k| k.as_str() != "x") {
        return Err(field_err(extra, "unknown field".into()));
    }
    let list = obj
        .get("x")
        .ok_or_else(|| field_err("x", "missing".into()))?
        .as_array()
        .ok_or_else(|| field_err("x", "expected a list of rational strings".into()))?;
    if list.is_empty() {
        return Err(field_err("x", "must contain at least one support point".into()));
    }
    let mut xs = Vec::with_capacity(list.len());
    for (i, item) in list.iter().enumerate() {
        let field = format!("x[{i}]");
        let x = match item {
            Value::String(s) => parse_rational(s).map_err(|e| field_err(&field, e.to_string()))?,
            Value::Number(num) if num.is_i64() || num.is_u64() => {
                parse_rational(&num.to_string()).map_err(|e| field_err(&field, e.to_string()))?
            }
            _ => {
                return Err(field_err(
                    &field,
                    "expected a rational string such as \"3\", \"5/2\" or \"2.5\"".into(),
                ))
            }
        };
        if x < Rational::one() {
            return Err(field_err(&field, format!("support point {x} is below 1")));
        }
        xs.push(x);
    }
    HeterogeneousInstance::new(xs)
}
