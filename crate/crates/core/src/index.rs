//! Half-integer indices and Z/2 parities.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::ParseError;
use crate::scalar::Scalar;

/// An index in `Z ∪ (Z + 1/2)`, stored as twice its value.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn from_doubled(d: i64) -> Self {
        HalfInt(d)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// The integer value, if this index is an integer.
    pub const fn as_int(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    pub fn to_scalar(self) -> Scalar {
        Scalar::frac(self.0, 2)
    }

    /// All indices `i` with `|i| <= bound` and `i` in the integer
    /// (`half_odd == false`) or half-odd lattice, ascending.
    pub fn lattice_points(bound: HalfInt, half_odd: bool) -> impl Iterator<Item = HalfInt> {
        let b = bound.0;
        (-b..=b)
            .filter(move |d| (d.rem_euclid(2) == 1) == half_odd)
            .map(HalfInt)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = ParseError;

    /// Accepts integers and `p/2` literals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Scalar = s.parse().map_err(|_| ParseError::HalfInt(s.to_string()))?;
        let doubled = &v * &Scalar::from_int(2);
        doubled
            .to_i64()
            .map(HalfInt)
            .ok_or_else(|| ParseError::HalfInt(s.to_string()))
    }
}

/// The Z/2-degree of a homogeneous element.
///
/// `+` is addition mod 2 and `*` is multiplication mod 2, so Koszul signs
/// such as `(-1)^{|y|(|f|+|x|)}` read as `(y * (f + x)).sign()`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^self` as an integer.
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn sign_scalar(self) -> Scalar {
        Scalar::from_int(self.sign())
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Mul for Parity {
    type Output = Parity;
    fn mul(self, rhs: Parity) -> Parity {
        if self.is_odd() && rhs.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}
