//! Exact elements of Q/Z.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational number modulo 1, kept as `numerator / denominator` with
/// `0 <= numerator < denominator` and coprime parts. Zero is `0/1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QZValue {
    num: u64,
    den: u64,
}

impl QZValue {
    pub const ZERO: QZValue = QZValue { num: 0, den: 1 };

    /// Reduces `num / den` into canonical form. `den` must be positive.
    pub fn new(num: i128, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidFraction(format!("{num}/0")));
        }
        Ok(Self::reduce(num.rem_euclid(den as i128) as u64, den))
    }

    /// `1/k` in Q/Z.
    pub fn unit_fraction(k: u64) -> Self {
        Self::reduce(1 % k.max(1), k.max(1))
    }

    fn reduce(num: u64, den: u64) -> Self {
        let num = num % den;
        if num == 0 {
            return Self::ZERO;
        }
        let g = num.gcd(&den);
        QZValue {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Additive order of the value in Q/Z, which is its reduced denominator.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn scale(&self, n: i128) -> Self {
        let den = self.den as i128;
        let prod = (n.rem_euclid(den) as u128 * self.num as u128) % self.den as u128;
        Self::reduce(prod as u64, self.den)
    }

    /// The numerator after rescaling to denominator `den`, if `den` is a
    /// multiple of the reduced denominator.
    pub fn numerator_over(&self, den: u64) -> Option<u64> {
        if !den.is_multiple_of(self.den) {
            return None;
        }
        Some(self.num * (den / self.den))
    }
}

impl Default for QZValue {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for QZValue {
    type Output = QZValue;

    fn add(self, rhs: QZValue) -> QZValue {
        let den = self.den.lcm(&rhs.den);
        let a = self.num as u128 * (den / self.den) as u128;
        let b = rhs.num as u128 * (den / rhs.den) as u128;
        QZValue::reduce(((a + b) % den as u128) as u64, den)
    }
}

impl AddAssign for QZValue {
    fn add_assign(&mut self, rhs: QZValue) {
        *self = *self + rhs;
    }
}

impl Neg for QZValue {
    type Output = QZValue;

    fn neg(self) -> QZValue {
        QZValue::reduce(self.den - self.num, self.den)
    }
}

impl Sub for QZValue {
    type Output = QZValue;

    fn sub(self, rhs: QZValue) -> QZValue {
        self + (-rhs)
    }
}

impl std::iter::Sum for QZValue {
    fn sum<I: Iterator<Item = QZValue>>(iter: I) -> QZValue {
        iter.fold(QZValue::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for QZValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for QZValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `a/b` with any integer `a` and positive `b`, or a bare integer.
impl FromStr for QZValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFraction(s.to_string());
        let t = s.trim();
        let (a, b) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let a: i128 = a.parse().map_err(|_| bad())?;
        let b: u64 = b.parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        QZValue::new(a, b)
    }
}

impl Serialize for QZValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QZValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
