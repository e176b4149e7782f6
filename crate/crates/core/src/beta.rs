//! Incomplete beta function `B(z; a, b) = int_0^z t^{a-1} (1-t)^{b-1} dt` at
//! positive integer parameters (not regularized).

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, frac, int, rational_pow, Rational};
use crate::minimizer::check_breakpoint_index;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaParams {
    z: Rational,
    a: u32,
    b: u32,
}

impl BetaParams {
    pub fn new(z: Rational, a: u32, b: u32) -> Result<Self> {
        if z.is_negative() || z > Rational::one() {
            return Err(Error::ProbabilityOutOfRange(z.to_string()));
        }
        if a == 0 {
            return Err(Error::out_of_range("a", a, 1, i64::from(u32::MAX)));
        }
        if b == 0 {
            return Err(Error::out_of_range("b", b, 1, i64::from(u32::MAX)));
        }
        Ok(Self { z, a, b })
    }

    pub fn z(&self) -> &Rational {
        &self.z
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }
}

/// Expands `(1-t)^{b-1}` and integrates term by term:
/// `sum_{j=0}^{b-1} C(b-1, j) (-1)^j z^{a+j} / (a+j)`.
pub fn incomplete_beta(params: &BetaParams) -> Rational {
    let BetaParams { z, a, b } = params;
    let mut sum = Rational::zero();
    for j in 0..*b {
        let term = int(binomial(b - 1, i64::from(j))) * rational_pow(z, a + j) / int(a + j);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// `h(n, m) = (n-m+1) C(n, m-1) B(1 - m/(n+1); n-m+1, m)`.
pub fn h_via_beta(n: u32, m: u32) -> Result<Rational> {
    check_breakpoint_index(n, m)?;
    let z = Rational::one() - frac(i64::from(m), i64::from(n) + 1);
    let params = BetaParams::new(z, n - m + 1, m)?;
    Ok(int(n - m + 1) * int(binomial(n, i64::from(m) - 1)) * incomplete_beta(&params))
}

/// `(n-m+1) C(n, m-1) = m C(n, m)`.
pub fn absorption_identity_check(n: u32, m: u32) -> Result<bool> {
    check_breakpoint_index(n, m)?;
    let left = binomial(n, i64::from(m) - 1) * (n - m + 1);
    let right = binomial(n, i64::from(m)) * m;
    Ok(left == right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimizer::h_value;
    use num_bigint::BigInt;

    fn beta(z: Rational, a: u32, b: u32) -> Rational {
        incomplete_beta(&BetaParams::new(z, a, b).unwrap())
    }

    fn factorial(k: u32) -> BigInt {
        (1..=k).fold(BigInt::one(), |acc, i| acc * i)
    }

    /// Antiderivative of the expanded integrand, built from the power basis of
    /// `t^{a-1} (1-t)^{b-1}` by repeated multiplication instead of binomials.
    fn beta_by_polynomial(z: &Rational, a: u32, b: u32) -> Rational {
        let mut coeffs = vec![Rational::zero(); (a - 1) as usize];
        coeffs.push(Rational::one());
        for _ in 1..b {
            let mut next = vec![Rational::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c;
            }
            coeffs = next;
        }
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * rational_pow(z, i as u32 + 1) / int(i as u32 + 1))
            .sum()
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(int(1), 1, 1), int(1));
        for z in [frac(0, 1), frac(1, 7), frac(3, 5), frac(1, 1)] {
            assert_eq!(beta(z.clone(), 1, 1), z);
        }
        assert_eq!(beta(frac(3, 5), 3, 2), frac(99, 2500));
    }

    #[test]
    fn beta_rejects_bad_parameters() {
        assert!(BetaParams::new(frac(3, 2), 1, 1).is_err());
        assert!(BetaParams::new(frac(-1, 2), 1, 1).is_err());
        assert!(BetaParams::new(frac(1, 2), 0, 1).is_err());
        assert!(BetaParams::new(frac(1, 2), 1, 0).is_err());
    }

    #[test]
    fn beta_matches_polynomial_oracle() {
        for a in 1..=8 {
            for b in 1..=8 {
                for z in [frac(1, 3), frac(5, 8), frac(9, 10)] {
                    assert_eq!(beta(z.clone(), a, b), beta_by_polynomial(&z, a, b), "a={a} b={b} z={z}");
                }
            }
        }
    }

    #[test]
    fn beta_completeness() {
        for a in 1..=13u32 {
            for b in 1..=(14 - a) {
                let expected = Rational::new(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1));
                assert_eq!(beta(int(1), a, b), expected);
            }
        }
    }

    #[test]
    fn beta_reflection_and_monotone() {
        let zs: Vec<Rational> = (1..=16).map(|j| frac(j, 17)).collect();
        for a in 1..=11u32 {
            for b in 1..=(12 - a) {
                let full = beta(int(1), a, b);
                let values: Vec<_> = zs.iter().map(|z| beta(z.clone(), a, b)).collect();
                assert!(values.windows(2).all(|w| w[0] < w[1]));
                for (z, v) in zs.iter().zip(&values) {
                    assert_eq!(v + beta(Rational::one() - z, b, a), full);
                }
            }
        }
    }

    #[test]
    fn h_via_beta_examples() {
        assert_eq!(h_via_beta(4, 2).unwrap(), frac(297, 625));
        assert_eq!(h_via_beta(1, 1).unwrap(), frac(1, 2));
        assert_eq!(h_via_beta(4, 1).unwrap(), frac(256, 625));
        assert!(h_via_beta(4, 5).is_err());
        assert!(h_via_beta(4, 0).is_err());
    }

    #[test]
    fn h_via_beta_matches_h_value() {
        for n in 1..=20 {
            for m in 1..=n {
                assert_eq!(h_via_beta(n, m).unwrap(), h_value(n, m).unwrap().value);
            }
        }
    }

    #[test]
    fn absorption_examples() {
        assert!(absorption_identity_check(4, 2).unwrap());
        assert!(absorption_identity_check(7, 5).unwrap());
        for n in 1..=40 {
            assert!(absorption_identity_check(n, 1).unwrap());
            for m in 1..=n {
                assert!(absorption_identity_check(n, m).unwrap());
            }
        }
        assert!(absorption_identity_check(3, 4).is_err());
    }
}
