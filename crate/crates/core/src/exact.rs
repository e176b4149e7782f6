//! Exact arithmetic: arbitrary-precision rationals, binomial coefficients,
//! integer powers, and a certified rational bracket around `e`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational in canonical form (positive denominator, reduced).
pub type Rational = BigRational;

/// Shorthand for a small rational constant.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u32, k: i64) -> BigInt {
    if k < 0 || k > i64::from(n) {
        return BigInt::zero();
    }
    let n = u64::from(n);
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    BigInt::from(acc)
}

/// `r^e` with `0^0 = 1`.
pub fn rational_pow(r: &Rational, e: u32) -> Rational {
    // numerator and denominator stay coprime under powering
    Rational::new_raw(r.numer().pow(e), r.denom().pow(e))
}

/// Rational enclosure `lower < e < upper` from the Taylor series of `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EBracket {
    pub lower: Rational,
    pub upper: Rational,
    pub terms: u32,
}

impl EBracket {
    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    /// `true` when `value > 1/e` is certified, i.e. `value * lower > 1`.
    pub fn certifies_above_reciprocal(&self, value: &Rational) -> bool {
        value * &self.lower > Rational::one()
    }

    /// `true` when `value < 1/e` is certified, i.e. `value * upper < 1`.
    pub fn certifies_below_reciprocal(&self, value: &Rational) -> bool {
        value * &self.upper < Rational::one()
    }
}

/// `lower = sum_{k=0}^{terms} 1/k!`, `upper = lower + 1/(terms! * terms)`.
///
/// The tail `sum_{k>T} 1/k!` is strictly below `1/(T! T)`, so `e` lies strictly
/// inside the bracket.
pub fn e_bracket(terms: u32) -> Result<EBracket> {
    if terms < 2 {
        return Err(Error::TooFewTerms(terms));
    }
    // sum_{k=0}^{T} T!/k! over T!
    let mut numer = BigInt::zero();
    let mut falling = BigInt::one();
    for k in (0..=terms).rev() {
        numer += &falling;
        if k > 0 {
            falling *= k;
        }
    }
    let factorial = falling;
    let lower = Rational::new(numer, factorial.clone());
    let upper = &lower + Rational::new(BigInt::one(), factorial * terms);
    Ok(EBracket {
        lower,
        upper,
        terms,
    })
}

/// Parses an integer (`"3"`), a fraction (`"5/2"`), or a finite decimal
/// (`"2.5"`) into an exact rational. Binary floating point is never involved.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let s = text.trim();
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let digits = |d: &str| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) {
            return Err(bad());
        }
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Rational::new(num.parse().map_err(|_| bad())?, den)
    } else if let Some((whole, fraction)) = body.split_once('.') {
        if !digits(whole) || !digits(fraction) {
            return Err(bad());
        }
        let scale = BigInt::from(10u32).pow(fraction.len() as u32);
        let numer: BigInt = format!("{whole}{fraction}").parse().map_err(|_| bad())?;
        Rational::new(numer, scale)
    } else {
        if !digits(body) {
            return Err(bad());
        }
        Rational::from_integer(body.parse().map_err(|_| bad())?)
    };
    Ok(if negative { -value } else { value })
}

/// Always `"num/den"`, including integers (`"1/1"`).
pub fn fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Inverse of [`fraction_string`]; also accepts anything [`parse_rational`] does.
pub fn parse_fraction_string(text: &str) -> Result<Rational> {
    parse_rational(text)
}

/// Nearest `f64` to an exact rational (round half to even).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(if r.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn is_canonical(r: &Rational) -> bool {
        r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(5, 7), BigInt::from(0));
        assert_eq!(binomial(5, -1), BigInt::from(0));
        assert_eq!(binomial(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
    }

    #[test]
    fn pascal_identity() {
        for n in 1..=60u32 {
            for k in 1..=i64::from(n) {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn pow_examples() {
        assert_eq!(rational_pow(&frac(2, 3), 2), frac(4, 9));
        assert_eq!(rational_pow(&frac(5, 7), 0), int(1));
        assert_eq!(rational_pow(&int(0), 0), int(1));
        assert_eq!(rational_pow(&int(0), 3), int(0));
        assert_eq!(rational_pow(&frac(-1, 2), 3), frac(-1, 8));
    }

    #[test]
    fn e_bracket_examples() {
        let b3 = e_bracket(3).unwrap();
        assert_eq!(b3.lower, frac(8, 3));
        assert_eq!(b3.upper, frac(49, 18));
        let b2 = e_bracket(2).unwrap();
        assert_eq!(b2.lower, frac(5, 2));
        assert_eq!(b2.upper, frac(11, 4));
        assert_eq!(e_bracket(1), Err(Error::TooFewTerms(1)));
    }

    #[test]
    fn e_bracket_width_and_accuracy() {
        let mut factorial = BigInt::one();
        for t in 2..=40u32 {
            factorial *= t;
            let b = e_bracket(t).unwrap();
            assert_eq!(b.width(), Rational::new(BigInt::one(), &factorial * t));
            assert!(b.lower < b.upper);
        }
        let b20 = e_bracket(20).unwrap();
        assert!(b20.lower > parse_rational("2.718281828").unwrap());
        assert!(b20.upper < parse_rational("2.7182818285").unwrap());
    }

    #[test]
    fn e_bracket_nests() {
        let brackets: Vec<_> = (2..=30).map(|t| e_bracket(t).unwrap()).collect();
        for pair in brackets.windows(2) {
            assert!(pair[1].lower > pair[0].lower);
            assert!(pair[1].upper < pair[0].upper);
        }
    }

    #[test]
    fn parse_accepts_integer_fraction_decimal() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("5/2").unwrap(), frac(5, 2));
        assert_eq!(parse_rational("2.5").unwrap(), frac(5, 2));
        assert_eq!(parse_rational(" 0.125 ").unwrap(), frac(1, 8));
        assert_eq!(parse_rational("-4/6").unwrap(), frac(-2, 3));
        assert_eq!(parse_rational("10/4").unwrap(), frac(5, 2));
        for bad in ["", "1/0", "abc", "1.", ".5", "1e3", "2/-3", "1/2/3", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn fraction_string_examples() {
        assert_eq!(fraction_string(&int(1)), "1/1");
        assert_eq!(fraction_string(&frac(-6, 4)), "-3/2");
    }

    #[test]
    fn to_f64_rounds_to_nearest() {
        assert_eq!(to_f64(&frac(1, 3)), 1.0 / 3.0);
        let big = Rational::new(BigInt::from(10u64).pow(40) + 1, BigInt::from(3u64) * BigInt::from(10u64).pow(40));
        assert_eq!(to_f64(&big), 1.0 / 3.0);
    }

    proptest! {
        #[test]
        fn arithmetic_stays_canonical(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000, e in 0u32..12) {
            let x = frac(a, b);
            let y = frac(c, d);
            prop_assert!(is_canonical(&x));
            prop_assert!(is_canonical(&(&x + &y)));
            prop_assert!(is_canonical(&(&x * &y)));
            prop_assert!(is_canonical(&rational_pow(&x, e)));
        }

        #[test]
        fn fraction_string_round_trips(a in any::<i64>(), b in 1i64..i64::MAX) {
            let x = frac(a, b);
            prop_assert_eq!(parse_fraction_string(&fraction_string(&x)).unwrap(), x);
        }

        #[test]
        fn decimal_parse_is_exact(whole in 0u32..1000, fraction in 0u32..1000) {
            let text = format!("{whole}.{fraction:03}");
            let expected = frac(i64::from(whole) * 1000 + i64::from(fraction), 1000);
            prop_assert_eq!(parse_rational(&text).unwrap(), expected);
        }
    }
}
