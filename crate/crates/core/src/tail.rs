//! The sawtooth `f(p) = P(S_n < n + 1)` for `n` i.i.d. two-point variables that
//! take the value `1/p` with probability `p` and `0` otherwise.
//!
//! `f` is a partial binomial sum `F_{n,m}(p)` whose upper index
//! `m = ceil((n+1) p) - 1` jumps at every breakpoint `p = j/(n+1)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, int, rational_pow, Rational};

/// Largest instance accepted by [`exact_heterogeneous`].
pub const ENUMERATION_CAP: usize = 25;

fn check_probability(p: &Rational) -> Result<()> {
    if p.is_positive() && *p < Rational::one() {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange(p.to_string()))
    }
}

/// `n` i.i.d. copies of `X` with `P(X = 1/p) = p`, `P(X = 0) = 1 - p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IidTwoPointInstance {
    n: u32,
    p: Rational,
}

impl IidTwoPointInstance {
    pub fn new(n: u32, p: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyN);
        }
        check_probability(&p)?;
        Ok(Self { n, p })
    }

    /// Builds the instance from the support point `x > 1` (so `p = 1/x`).
    pub fn from_support(n: u32, x: &Rational) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ProbabilityOutOfRange("1/0".into()));
        }
        Self::new(n, x.recip())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn support(&self) -> Rational {
        self.p.recip()
    }
}

/// Parameters `(n, m)` of `F_{n,m}(p) = sum_{k=0}^{m} C(n,k) p^k (1-p)^{n-k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailSpec {
    n: u32,
    m: u32,
}

impl TailSpec {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyN);
        }
        if m > n {
            return Err(Error::out_of_range("m", m, 0, i64::from(n)));
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }
}

/// Independent two-point variables: `X_i = x_i` with probability `1/x_i`, else 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeterogeneousInstance {
    xs: Vec<Rational>,
}

impl HeterogeneousInstance {
    pub fn new(xs: Vec<Rational>) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if let Some(x) = xs.iter().find(|x| **x < Rational::one()) {
            return Err(Error::SupportBelowOne(x.to_string()));
        }
        Ok(Self { xs })
    }

    /// `n` copies of the same support point.
    pub fn replicated(x: Rational, n: usize) -> Result<Self> {
        Self::new(vec![x; n])
    }

    pub fn xs(&self) -> &[Rational] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// The event threshold `n + 1`.
    pub fn threshold(&self) -> Rational {
        int(self.xs.len() + 1)
    }
}

/// `ceil((n+1) p) - 1`, the last summation index of `f(p)`. Lies in `[0, n]`.
pub fn tail_cutoff(n: u32, p: &Rational) -> Result<u32> {
    check_probability(p)?;
    let scaled = int(u64::from(n) + 1) * p;
    let cutoff = scaled.ceil().to_integer() - 1;
    // 0 < (n+1)p < n+1, so the cutoff is in [0, n]
    Ok(u32::try_from(cutoff).expect("cutoff lies in [0, n]"))
}

/// `sum_{k=0}^{m} C(n,k) a^k c^{n-k}` for `p = a/b`, `c = b - a`.
fn tail_numerator(n: u32, m: u32, a: &BigInt, c: &BigInt) -> BigInt {
    let mut c_pows = Vec::with_capacity(n as usize + 1);
    c_pows.push(BigInt::one());
    for i in 0..n as usize {
        let next = &c_pows[i] * c;
        c_pows.push(next);
    }
    let mut sum = BigInt::zero();
    let mut coeff = BigInt::one();
    let mut a_pow = BigInt::one();
    for k in 0..=m {
        sum += &coeff * &a_pow * &c_pows[(n - k) as usize];
        coeff = coeff * (n - k) / (k + 1);
        a_pow *= a;
    }
    sum
}

/// Exact `F_{n,m}(p)`.
pub fn partial_tail(spec: TailSpec, p: &Rational) -> Result<Rational> {
    check_probability(p)?;
    let a = p.numer();
    let b = p.denom();
    let numer = tail_numerator(spec.n, spec.m, a, &(b - a));
    Ok(Rational::new(numer, b.pow(spec.n)))
}

/// Exact `f(p) = P(S_n < n + 1)`.
pub fn f_of_p(inst: &IidTwoPointInstance) -> Rational {
    let cutoff = tail_cutoff(inst.n, &inst.p).expect("instance holds a valid probability");
    let spec = TailSpec::new(inst.n, cutoff).expect("cutoff lies in [0, n]");
    partial_tail(spec, &inst.p).expect("instance holds a valid probability")
}

/// `d/dp F_{n,m}(p)` summed term by term:
/// `d/dp p^k (1-p)^{n-k} = k p^{k-1} (1-p)^{n-k} - (n-k) p^k (1-p)^{n-k-1}`.
pub fn tail_derivative(spec: TailSpec, p: &Rational) -> Result<Rational> {
    check_probability(p)?;
    let n = spec.n;
    let q = Rational::one() - p;
    let mut sum = Rational::zero();
    for k in 0..=spec.m {
        let mut term = Rational::zero();
        if k > 0 {
            term += int(k) * rational_pow(p, k - 1) * rational_pow(&q, n - k);
        }
        if k < n {
            term -= int(n - k) * rational_pow(p, k) * rational_pow(&q, n - k - 1);
        }
        sum += int(binomial(n, i64::from(k))) * term;
    }
    Ok(sum)
}

/// Telescoped derivative `-n C(n-1, m) p^m (1-p)^{n-1-m}` (zero when `m = n`).
pub fn tail_derivative_closed_form(spec: TailSpec, p: &Rational) -> Result<Rational> {
    check_probability(p)?;
    let (n, m) = (spec.n, spec.m);
    if m == n {
        return Ok(Rational::zero());
    }
    let q = Rational::one() - p;
    Ok(-int(n) * int(binomial(n - 1, i64::from(m))) * rational_pow(p, m) * rational_pow(&q, n - 1 - m))
}

/// Discontinuities of `f` in `(0, 1)`: `1/(n+1), ..., n/(n+1)`.
pub fn breakpoints(n: u32) -> Vec<Rational> {
    let den = BigInt::from(u64::from(n) + 1);
    (1..=n)
        .map(|j| Rational::new(BigInt::from(j), den.clone()))
        .collect()
}

/// Evaluates the event `k * (1/p) < n + 1` directly for each success count `k`.
pub fn brute_force_iid(inst: &IidTwoPointInstance) -> Rational {
    let n = inst.n;
    let x = inst.support();
    let q = Rational::one() - &inst.p;
    let threshold = int(u64::from(n) + 1);
    (0..=n)
        .filter(|&k| int(k) * &x < threshold)
        .map(|k| int(binomial(n, i64::from(k))) * rational_pow(&inst.p, k) * rational_pow(&q, n - k))
        .sum()
}

/// Exact `P(sum X_i < n + 1)` over all `2^n` success patterns.
///
/// Subsets are walked variable by variable. Patterns whose exact partial sums
/// coincide are merged, and any pattern whose sum already reaches `n + 1` is
/// dropped (every `x_i` is non-negative, so it can never come back below).
/// Sums are compared as integers after scaling by the lcm of the support
/// denominators.
pub fn exact_heterogeneous(inst: &HeterogeneousInstance) -> Result<Rational> {
    let n = inst.len();
    if n > ENUMERATION_CAP {
        return Err(Error::TooManyVariables {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let scale = inst
        .xs
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let threshold = BigInt::from(n + 1) * &scale;

    // x_i = a_i/b_i, success weight b_i and failure weight a_i - b_i over a_i
    let mut states: BTreeMap<BigInt, BigInt> = BTreeMap::new();
    states.insert(BigInt::zero(), BigInt::one());
    let mut total_denominator = BigInt::one();
    for x in &inst.xs {
        let (a, b) = (x.numer(), x.denom());
        let step = a * (&scale / b);
        let fail_weight = a - b;
        let mut next: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        for (sum, weight) in states {
            if !fail_weight.is_zero() {
                *next.entry(sum.clone()).or_default() += &weight * &fail_weight;
            }
            let hit = &sum + &step;
            if hit < threshold {
                *next.entry(hit).or_default() += weight * b;
            }
        }
        states = next;
        total_denominator *= a;
    }
    let favourable: BigInt = states.into_values().sum();
    Ok(Rational::new(favourable, total_denominator))
}
