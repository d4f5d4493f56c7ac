//! Exact integers, rationals and the combinatorial primitives used by the
//! character formulas.
//!
//! `Integer` and `Rational` are `num-bigint` / `num-rational` types. The
//! canonical text form of an `Integer` is its decimal string and of a
//! `Rational` is `p/q` (or just `p` when the denominator is one).

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(Integer::from(v))
}

/// `num / den`, normalized. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

/// Binomial coefficient with the combinatorial convention that anything
/// outside `0 <= k <= n` is zero.
pub fn binomial(n: i64, k: i64) -> Integer {
    if n < 0 || k < 0 || k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: i64) -> Result<Integer> {
    if n < 0 {
        return Err(Error::domain(format!("factorial of negative number {n}")));
    }
    Ok((1..=n).fold(Integer::one(), |acc, i| acc * i))
}

/// Exact integer power of a rational. `0^0 = 1`.
pub fn int_pow(base: &Rational, e: i64) -> Result<Rational> {
    if e >= 0 {
        return Ok(pow_u(base, e as u64));
    }
    if base.is_zero() {
        return Err(Error::domain("zero raised to a negative power"));
    }
    Ok(pow_u(&base.recip(), e.unsigned_abs()))
}

/// Non-negative power of an integer; `0^0 = 1`.
pub fn ipow(base: i64, e: u32) -> Integer {
    num_traits::pow(Integer::from(base), e as usize)
}

fn pow_u(base: &Rational, mut e: u64) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

pub fn parse_integer(s: &str) -> Result<Integer> {
    Integer::from_str(s.trim()).map_err(|_| Error::usage(format!("not an integer: {s:?}")))
}

/// Accepts `p`, `p/q` or a plain decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::usage(format!("not a rational: {s:?}"));
    if let Some((whole, fracpart)) = s.split_once('.') {
        if fracpart.is_empty() || !fracpart.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), fracpart);
        let num = Integer::from_str(&digits).map_err(|_| bad())?;
        let den = num_traits::pow(Integer::from(10), fracpart.len());
        let r = Rational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    let r = Rational::from_str(s).map_err(|_| bad())?;
    Ok(r)
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Sign as -1, 0 or +1.
pub fn signum(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter writing a `Rational` as its `p/q` string.
pub mod rational_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 5), int(0));
        assert_eq!(binomial(7, 0), int(1));
        assert_eq!(binomial(-1, 0), int(0));
        assert_eq!(binomial(4, -1), int(0));
        assert_eq!(binomial(30, 15), int(155117520));
    }

    #[test]
    fn pascal_and_row_sums() {
        for n in 1..=30 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
        for n in 0..=12 {
            let sum: Integer = (0..=n).map(|k| binomial(n, k)).sum();
            assert_eq!(sum, ipow(2, n as u32));
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0).unwrap(), int(1));
        assert_eq!(factorial(5).unwrap(), int(120));
        assert_eq!(factorial(10).unwrap(), int(3628800));
        assert!(matches!(factorial(-1), Err(Error::Domain(_))));
    }

    #[test]
    fn powers() {
        assert_eq!(int_pow(&rat(-2), 3).unwrap(), rat(-8));
        assert_eq!(int_pow(&frac(3, 4), -2).unwrap(), frac(16, 9));
        assert_eq!(int_pow(&rat(0), 0).unwrap(), rat(1));
        assert!(int_pow(&rat(0), -1).is_err());
        assert_eq!(ipow(0, 0), int(1));
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("0.25").unwrap(), frac(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&frac(10, -4)), "-5/2");
        assert_eq!(format_rational(&rat(3)), "3");
        let big = "123456789012345678901234567890";
        assert_eq!(parse_integer(big).unwrap().to_string(), big);
    }
}
