//! Extended values: hop lengths and costs that may be symbolically infinite.
//!
//! A missing path is never replaced by a large constant. Lengths carry an
//! explicit infinite variant and costs count their infinite terms
//! separately from the finite remainder, so "unbounded" is decided exactly.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational used for every cost computation.
pub type Rational = num_rational::Ratio<i128>;

/// A hop count, or the infinite length of a path that does not exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtLength {
    Finite(u32),
    Infinite,
}

impl ExtLength {
    pub const ZERO: ExtLength = ExtLength::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtLength::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            ExtLength::Finite(v) => Some(v),
            ExtLength::Infinite => None,
        }
    }

    pub fn from_option(v: Option<u32>) -> Self {
        v.map_or(ExtLength::Infinite, ExtLength::Finite)
    }
}

impl Add for ExtLength {
    type Output = ExtLength;

    fn add(self, rhs: ExtLength) -> ExtLength {
        match (self, rhs) {
            (ExtLength::Finite(a), ExtLength::Finite(b)) => ExtLength::Finite(a + b),
            _ => ExtLength::Infinite,
        }
    }
}

impl fmt::Display for ExtLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtLength::Finite(v) => write!(f, "{v}"),
            ExtLength::Infinite => f.write_str("Q"),
        }
    }
}

/// A cost of the form `infinite_terms · Q + finite` with `Q → ∞`.
///
/// Ordering is lexicographic: the infinite multiplicity first, then the
/// finite part. Differences of costs use the same type and may carry a
/// negative multiplicity (a change that removes infinite terms).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtCost {
    pub infinite_terms: i64,
    pub finite: Rational,
}

impl ExtCost {
    pub fn zero() -> Self {
        ExtCost {
            infinite_terms: 0,
            finite: Rational::zero(),
        }
    }

    pub fn finite(value: Rational) -> Self {
        ExtCost {
            infinite_terms: 0,
            finite: value,
        }
    }

    pub fn new(infinite_terms: i64, finite: Rational) -> Self {
        ExtCost {
            infinite_terms,
            finite,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.infinite_terms > 0
    }

    pub fn is_negative(&self) -> bool {
        *self < ExtCost::zero()
    }

    pub fn is_positive(&self) -> bool {
        *self > ExtCost::zero()
    }

    /// Finite part as a float, ignoring infinite terms. For display only.
    pub fn finite_approx(&self) -> f64 {
        rational_to_f64(&self.finite)
    }
}

impl Default for ExtCost {
    fn default() -> Self {
        ExtCost::zero()
    }
}

impl Add for ExtCost {
    type Output = ExtCost;

    fn add(self, rhs: ExtCost) -> ExtCost {
        ExtCost {
            infinite_terms: self.infinite_terms + rhs.infinite_terms,
            finite: self.finite + rhs.finite,
        }
    }
}

impl<'a> Add<&'a ExtCost> for &'a ExtCost {
    type Output = ExtCost;

    fn add(self, rhs: &ExtCost) -> ExtCost {
        ExtCost {
            infinite_terms: self.infinite_terms + rhs.infinite_terms,
            finite: self.finite + rhs.finite,
        }
    }
}

impl AddAssign<&ExtCost> for ExtCost {
    fn add_assign(&mut self, rhs: &ExtCost) {
        self.infinite_terms += rhs.infinite_terms;
        self.finite += rhs.finite;
    }
}

impl AddAssign for ExtCost {
    fn add_assign(&mut self, rhs: ExtCost) {
        *self += &rhs;
    }
}

impl Sub for ExtCost {
    type Output = ExtCost;

    fn sub(self, rhs: ExtCost) -> ExtCost {
        ExtCost {
            infinite_terms: self.infinite_terms - rhs.infinite_terms,
            finite: self.finite - rhs.finite,
        }
    }
}

impl<'a> Sub<&'a ExtCost> for &'a ExtCost {
    type Output = ExtCost;

    fn sub(self, rhs: &ExtCost) -> ExtCost {
        ExtCost {
            infinite_terms: self.infinite_terms - rhs.infinite_terms,
            finite: self.finite - rhs.finite,
        }
    }
}

impl Neg for ExtCost {
    type Output = ExtCost;

    fn neg(self) -> ExtCost {
        ExtCost {
            infinite_terms: -self.infinite_terms,
            finite: -self.finite,
        }
    }
}

impl core::iter::Sum for ExtCost {
    fn sum<I: Iterator<Item = ExtCost>>(iter: I) -> ExtCost {
        iter.fold(ExtCost::zero(), |acc, c| acc + c)
    }
}

impl fmt::Display for ExtCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.infinite_terms {
            0 => write!(f, "{}", self.finite),
            q if self.finite.is_zero() => write!(f, "{q}Q"),
            q => write!(f, "{q}Q + {}", self.finite),
        }
    }
}

/// Ratio of two extended costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtRatio {
    Finite(Rational),
    /// Finite denominator, unbounded numerator.
    Infinite,
    /// The denominator is unbounded or zero.
    Undefined,
}

impl ExtRatio {
    pub fn of(numerator: &ExtCost, denominator: &ExtCost) -> Self {
        if denominator.infinite_terms != 0 || denominator.finite.is_zero() {
            return ExtRatio::Undefined;
        }
        if numerator.infinite_terms > 0 {
            return ExtRatio::Infinite;
        }
        ExtRatio::Finite(numerator.finite / denominator.finite)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRatio::Infinite)
    }

    pub fn as_finite(&self) -> Option<Rational> {
        match self {
            ExtRatio::Finite(r) => Some(*r),
            _ => None,
        }
    }

    /// Comparison for ratios that are both defined. `Undefined` compares as
    /// `None`.
    pub fn partial_cmp_defined(&self, other: &ExtRatio) -> Option<Ordering> {
        match (self, other) {
            (ExtRatio::Finite(a), ExtRatio::Finite(b)) => Some(a.cmp(b)),
            (ExtRatio::Finite(_), ExtRatio::Infinite) => Some(Ordering::Less),
            (ExtRatio::Infinite, ExtRatio::Finite(_)) => Some(Ordering::Greater),
            (ExtRatio::Infinite, ExtRatio::Infinite) => Some(Ordering::Equal),
            _ => None,
        }
    }
}

impl fmt::Display for ExtRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRatio::Finite(r) => write!(f, "{r}"),
            ExtRatio::Infinite => f.write_str("inf"),
            ExtRatio::Undefined => f.write_str("undefined"),
        }
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    let num = r.numer().to_f64().unwrap_or(f64::NAN);
    let den = r.denom().to_f64().unwrap_or(f64::NAN);
    num / den
}

/// Parses `7`, `-3/4` or a plain decimal such as `1.25` into an exact
/// rational. Exponents are not accepted.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::input(alloc::format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits_ok = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if !digits_ok(int_part) || !digits_ok(frac_part) || frac_part.len() > 30 {
        return Err(bad());
    }
    let int: i128 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| bad())?
    };
    let mut value = Rational::from_integer(int);
    if !frac_part.is_empty() {
        let frac: i128 = frac_part.parse().map_err(|_| bad())?;
        let scale = 10i128.pow(frac_part.len() as u32);
        value += Rational::new(frac, scale);
    }
    Ok(if negative { -value } else { value })
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> alloc::string::String {
    if r.is_integer() {
        alloc::format!("{}", r.numer())
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_length_dominates() {
        assert!(ExtLength::Infinite > ExtLength::Finite(u32::MAX));
        assert_eq!(
            ExtLength::Infinite + ExtLength::Finite(3),
            ExtLength::Infinite
        );
        assert_eq!(
            ExtLength::Finite(2) + ExtLength::Finite(3),
            ExtLength::Finite(5)
        );
    }

    #[test]
    fn cost_order_is_lexicographic() {
        let big = ExtCost::finite(Rational::from_integer(1_000_000));
        let one_q = ExtCost::new(1, Rational::zero());
        assert!(one_q > big);
        let delta = ExtCost::new(-1, Rational::from_integer(50));
        assert!(delta.is_negative());
    }

    #[test]
    fn ratio_cases() {
        let a = ExtCost::finite(Rational::from_integer(3));
        let b = ExtCost::finite(Rational::from_integer(2));
        assert_eq!(ExtRatio::of(&a, &b), ExtRatio::Finite(Rational::new(3, 2)));
        assert_eq!(
            ExtRatio::of(&ExtCost::new(1, Rational::zero()), &b),
            ExtRatio::Infinite
        );
        assert_eq!(
            ExtRatio::of(&a, &ExtCost::new(2, Rational::zero())),
            ExtRatio::Undefined
        );
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3/2").unwrap(), Rational::new(3, 2));
        assert_eq!(parse_rational("1.5").unwrap(), Rational::new(3, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), Rational::new(-1, 4));
        assert_eq!(parse_rational(".5").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("4").unwrap(), Rational::from_integer(4));
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }
}
