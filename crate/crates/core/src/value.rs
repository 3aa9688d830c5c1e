// Copyright 2026 The divrank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Rank values and how they are compared.
//!
//! Three representations coexist. Exact rationals cover integer-valued
//! models and explicit tables. Relational ranks are `log2(count)` and are
//! kept as the count, so that sums of ranks become products of counts and
//! never leave the integers. Entropy, and explicit tables declared as
//! floating point, are plain `f64` compared with an absolute tolerance.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_EPSILON: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum RankValue {
    Exact(BigRational),
    /// `log2` of a positive count.
    LogCount(u64),
    Approx(f64),
}

impl RankValue {
    pub fn zero() -> Self {
        RankValue::Exact(BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        RankValue::Exact(BigRational::from_integer(n.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        RankValue::Exact(BigRational::new(num.into(), den.into()))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RankValue::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            RankValue::LogCount(c) => (*c as f64).log2(),
            RankValue::Approx(v) => *v,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            RankValue::Exact(q) => q.is_negative(),
            RankValue::LogCount(_) => false,
            RankValue::Approx(v) => *v < 0.0 || v.is_nan(),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            RankValue::Exact(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_count(&self) -> Option<u64> {
        match self {
            RankValue::LogCount(c) => Some(*c),
            _ => None,
        }
    }

    /// Sum of two ranks in the tightest common representation. Two
    /// `LogCount`s add by multiplying their counts.
    pub fn add(&self, other: &RankValue) -> RankValue {
        match (self, other) {
            (RankValue::Exact(a), RankValue::Exact(b)) => RankValue::Exact(a + b),
            (RankValue::LogCount(a), RankValue::LogCount(b)) => match a.checked_mul(*b) {
                Some(c) => RankValue::LogCount(c),
                None => RankValue::Approx(self.to_f64() + other.to_f64()),
            },
            (RankValue::LogCount(1), v) | (v, RankValue::LogCount(1)) => v.clone(),
            (RankValue::Exact(q), v) | (v, RankValue::Exact(q)) if q.is_zero() => v.clone(),
            _ => RankValue::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn sum<'a>(values: impl IntoIterator<Item = &'a RankValue>) -> RankValue {
        values
            .into_iter()
            .fold(RankValue::zero(), |acc, v| acc.add(v))
    }
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankValue::Exact(q) => f.write_str(&format_rational(q)),
            RankValue::LogCount(1) => f.write_str("0"),
            RankValue::LogCount(c) => write!(f, "log2({c})"),
            RankValue::Approx(v) => write!(f, "{v}"),
        }
    }
}

/// How a model decides equality and order between sums of ranks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Comparison {
    Exact,
    Epsilon(f64),
}

impl Comparison {
    pub fn epsilon(self) -> Option<f64> {
        match self {
            Comparison::Exact => None,
            Comparison::Epsilon(e) => Some(e),
        }
    }

    /// Compares `Σ lhs` with `Σ rhs`. In exact mode, rationals and counts
    /// are compared without rounding; values that cannot share an exact
    /// representation fall back to the default tolerance.
    pub fn cmp_sums(self, lhs: &[&RankValue], rhs: &[&RankValue]) -> Ordering {
        if let Comparison::Exact = self {
            if let Some(ord) = exact_cmp(lhs, rhs) {
                return ord;
            }
        }
        let eps = self.epsilon().unwrap_or(DEFAULT_EPSILON);
        let a: f64 = lhs.iter().map(|v| v.to_f64()).sum();
        let b: f64 = rhs.iter().map(|v| v.to_f64()).sum();
        float_cmp(a, b, eps)
    }

    pub fn eq_sums(self, lhs: &[&RankValue], rhs: &[&RankValue]) -> bool {
        self.cmp_sums(lhs, rhs) == Ordering::Equal
    }

    pub fn le_sums(self, lhs: &[&RankValue], rhs: &[&RankValue]) -> bool {
        self.cmp_sums(lhs, rhs) != Ordering::Greater
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Exact => f.write_str("exact"),
            Comparison::Epsilon(e) => write!(f, "epsilon({e:e})"),
        }
    }
}

pub(crate) fn float_cmp(a: f64, b: f64, eps: f64) -> Ordering {
    if (a - b).abs() <= eps {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn exact_cmp(lhs: &[&RankValue], rhs: &[&RankValue]) -> Option<Ordering> {
    // A count of 1 and a rational 0 are the same rank; drop them so that
    // the remaining terms share one representation.
    let trivial = |v: &&&RankValue| match v {
        RankValue::LogCount(1) => true,
        RankValue::Exact(q) => q.is_zero(),
        _ => false,
    };
    let lhs: Vec<&RankValue> = lhs.iter().filter(|v| !trivial(v)).copied().collect();
    let rhs: Vec<&RankValue> = rhs.iter().filter(|v| !trivial(v)).copied().collect();
    let all = lhs.iter().chain(rhs.iter());
    if all.clone().all(|v| matches!(v, RankValue::Exact(_))) {
        let sum = |side: &[&RankValue]| {
            side.iter()
                .filter_map(|v| v.as_exact())
                .fold(BigRational::zero(), |acc, q| acc + q)
        };
        return Some(sum(&lhs).cmp(&sum(&rhs)));
    }
    if all.clone().all(|v| matches!(v, RankValue::LogCount(_))) {
        let prod = |side: &[&RankValue]| {
            side.iter()
                .filter_map(|v| v.as_count())
                .fold(BigUint::one(), |acc, c| acc * c)
        };
        return Some(prod(&lhs).cmp(&prod(&rhs)));
    }
    None
}

/// Parses `"3"`, `"-2"`, `"3/4"`, `"2.1"` or `"1.5e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::parse(format!("`{text}`"), "expected an integer, `num/den`, or a decimal");
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::parse(format!("`{text}`"), "zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (
            &text[..i],
            text[i + 1..].parse::<i32>().map_err(|_| bad())?,
        ),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = all_digits.parse().map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let q = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(q)
}

/// Renders a rational as a terminating decimal when it has one, and as
/// `num/den` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        return q.numer().to_string();
    }
    let mut den = q.denom().clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", q.numer(), q.denom());
    }
    let places = twos.max(fives);
    let scaled = q * BigRational::from_integer(num_traits::pow(BigInt::from(10u32), places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let sign = if q.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!(q("2.1"), BigRational::new(21.into(), 10.into()));
        assert_eq!(q("1.65"), BigRational::new(33.into(), 20.into()));
        assert_eq!(q("3/6"), BigRational::new(1.into(), 2.into()));
        assert_eq!(q("1.5e-1"), BigRational::new(3.into(), 20.into()));
        assert_eq!(q("-4"), BigRational::from_integer((-4).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&q("21/10")), "2.1");
        assert_eq!(format_rational(&q("3")), "3");
        assert_eq!(format_rational(&q("1/3")), "1/3");
        assert_eq!(format_rational(&q("3/128")), "0.0234375");
        assert_eq!(format_rational(&q("-1/4")), "-0.25");
    }

    #[test]
    fn log_counts_sum_by_product() {
        let v = RankValue::LogCount(5).add(&RankValue::LogCount(2));
        assert_eq!(v, RankValue::LogCount(10));
        assert_eq!(v.to_string(), "log2(10)");
        assert_eq!(RankValue::LogCount(1).to_string(), "0");
    }

    #[test]
    fn exact_sums_never_round() {
        // 0.1 + 0.2 == 0.3 exactly, unlike f64.
        let a = RankValue::Exact(q("0.1"));
        let b = RankValue::Exact(q("0.2"));
        let c = RankValue::Exact(q("0.3"));
        assert!(Comparison::Exact.eq_sums(&[&a, &b], &[&c]));
        // log2(3) + log2(3) = log2(9) < log2(10)
        let three = RankValue::LogCount(3);
        let ten = RankValue::LogCount(10);
        assert_eq!(
            Comparison::Exact.cmp_sums(&[&three, &three], &[&ten]),
            Ordering::Less
        );
    }

    #[test]
    fn zero_mixes_with_counts() {
        let z = RankValue::zero();
        let one = RankValue::LogCount(1);
        assert!(Comparison::Exact.eq_sums(&[&z], &[&one]));
        assert!(Comparison::Exact.eq_sums(&[&RankValue::LogCount(4), &z], &[&RankValue::LogCount(4)]));
    }

    #[test]
    fn epsilon_mode_tolerates_rounding() {
        let a = RankValue::Approx(1.0);
        let b = RankValue::Approx(1.0 + 1e-12);
        assert!(Comparison::Epsilon(1e-9).eq_sums(&[&a], &[&b]));
        assert!(!Comparison::Epsilon(1e-15).eq_sums(&[&a], &[&b]));
    }
}
