//! Exact nonnegative rationals with small numerator and denominator.
//!
//! Parameter derivations compare quantities like `s*t < eps*d` where `d` is a
//! big integer and `eps` comes from a command-line flag. Floating point would
//! make those comparisons unreliable, so flags are parsed into exact
//! fractions and every comparison cross-multiplies.

use num_bigint::BigUint;
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac {
    num: u64,
    den: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FracError {
    #[error("cannot parse {0:?} as a decimal or fraction")]
    Parse(String),
    #[error("denominator must be nonzero")]
    ZeroDenominator,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Frac {
    pub fn new(num: u64, den: u64) -> Result<Self, FracError> {
        if den == 0 {
            return Err(FracError::ZeroDenominator);
        }
        let g = gcd(num, den).max(1);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn one() -> Self {
        Self { num: 1, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// Parses either a decimal literal ("0.25") or a slash fraction ("1/4").
    pub fn parse(text: &str) -> Result<Self, FracError> {
        let t = text.trim();
        if let Some((a, b)) = t.split_once('/') {
            let num: u64 = a.trim().parse().map_err(|_| FracError::Parse(t.into()))?;
            let den: u64 = b.trim().parse().map_err(|_| FracError::Parse(t.into()))?;
            return Frac::new(num, den);
        }
        match t.split_once('.') {
            None => {
                let num: u64 = t.parse().map_err(|_| FracError::Parse(t.into()))?;
                Frac::new(num, 1)
            }
            Some((whole, frac)) => {
                if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(FracError::Parse(t.into()));
                }
                let whole: u64 = if whole.is_empty() {
                    0
                } else {
                    whole.parse().map_err(|_| FracError::Parse(t.into()))?
                };
                let frac_val: u64 = frac.parse().map_err(|_| FracError::Parse(t.into()))?;
                let den = 10u64.pow(frac.len() as u32);
                let num = whole
                    .checked_mul(den)
                    .and_then(|w| w.checked_add(frac_val))
                    .ok_or_else(|| FracError::Parse(t.into()))?;
                Frac::new(num, den)
            }
        }
    }
}

impl std::ops::Add for Frac {
    type Output = Frac;

    fn add(self, other: Frac) -> Frac {
        let num = (self.num as u128) * other.den as u128 + (other.num as u128) * self.den as u128;
        let den = self.den as u128 * other.den as u128;
        Self::from_u128(num, den)
    }
}

impl std::ops::Mul for Frac {
    type Output = Frac;

    fn mul(self, other: Frac) -> Frac {
        Self::from_u128(
            self.num as u128 * other.num as u128,
            self.den as u128 * other.den as u128,
        )
    }
}

impl Frac {
    /// Saturating subtraction: returns zero when `other > self`.
    pub fn sub_or_zero(self, other: Frac) -> Frac {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        if lhs <= rhs {
            return Frac::zero();
        }
        Self::from_u128(lhs - rhs, self.den as u128 * other.den as u128)
    }

    pub fn checked_div(self, other: Frac) -> Result<Frac, FracError> {
        if other.num == 0 {
            return Err(FracError::ZeroDenominator);
        }
        Ok(Self::from_u128(
            self.num as u128 * other.den as u128,
            self.den as u128 * other.num as u128,
        ))
    }

    fn from_u128(num: u128, den: u128) -> Frac {
        fn gcd128(a: u128, b: u128) -> u128 {
            if b == 0 {
                a
            } else {
                gcd128(b, a % b)
            }
        }
        let g = gcd128(num, den).max(1);
        let num = num / g;
        let den = den / g;
        assert!(
            num <= u64::MAX as u128 && den <= u64::MAX as u128,
            "fraction overflow"
        );
        Frac {
            num: num as u64,
            den: den as u64,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Strict comparison of `self` against `p / q` for plain integers.
    pub fn cmp_ratio(&self, p: u64, q: u64) -> Ordering {
        (self.num as u128 * q as u128).cmp(&(p as u128 * self.den as u128))
    }

    /// Compares `self * big` against `rhs` exactly.
    pub fn cmp_times_big(&self, big: &BigUint, rhs: &BigUint) -> Ordering {
        (BigUint::from(self.num) * big).cmp(&(BigUint::from(self.den) * rhs))
    }

    /// Exact ceiling of `self * big`.
    pub fn ceil_times_big(&self, big: &BigUint) -> BigUint {
        let num = BigUint::from(self.num) * big;
        let den = BigUint::from(self.den);
        (&num + &den - BigUint::from(1u8)) / den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_decimal_forms() {
        assert_eq!(Frac::parse("0.9").unwrap(), Frac::new(9, 10).unwrap());
        assert_eq!(Frac::parse("0.25").unwrap(), Frac::new(1, 4).unwrap());
        assert_eq!(Frac::parse("1").unwrap(), Frac::new(1, 1).unwrap());
        assert_eq!(Frac::parse("2/5").unwrap(), Frac::new(2, 5).unwrap());
        assert_eq!(Frac::parse(".5").unwrap(), Frac::new(1, 2).unwrap());
        assert!(Frac::parse("abc").is_err());
        assert!(Frac::parse("1/0").is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let half = Frac::new(1, 2).unwrap();
        let two_fifths = Frac::new(2, 5).unwrap();
        assert_eq!(half.sub_or_zero(two_fifths), Frac::new(1, 10).unwrap());
        assert_eq!(two_fifths.sub_or_zero(half), Frac::zero());
        assert_eq!(half * two_fifths, Frac::new(1, 5).unwrap());
        assert_eq!(
            Frac::new(11, 10)
                .unwrap()
                .checked_div(Frac::new(19, 10).unwrap())
                .unwrap(),
            Frac::new(11, 19).unwrap()
        );
    }

    #[test]
    fn big_comparisons() {
        let tenth = Frac::new(1, 10).unwrap();
        let big = BigUint::from(1024u32);
        assert_eq!(tenth.ceil_times_big(&big), BigUint::from(103u32));
        assert_eq!(
            tenth.cmp_times_big(&big, &BigUint::from(102u32)),
            Ordering::Greater
        );
        assert_eq!(
            tenth.cmp_times_big(&big, &BigUint::from(103u32)),
            Ordering::Less
        );
    }
}
