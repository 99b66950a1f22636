//! Extended-real scalars of the max-plus semiring.
//!
//! A [`MaxPlus`] value is either a finite `f64` or the bottom element ε,
//! stored as `f64::NEG_INFINITY`. Under this encoding ordinary `max` and `+`
//! already implement ⊕ and ⊗ without producing NaN, as long as `+∞` and NaN
//! are never admitted, which the constructors enforce.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::Error;

/// An element of ℝ ∪ {ε}.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct MaxPlus(f64);

impl MaxPlus {
    /// The additive identity ε = −∞.
    pub const EPS: MaxPlus = MaxPlus(f64::NEG_INFINITY);
    /// The multiplicative identity 0.
    pub const ZERO: MaxPlus = MaxPlus(0.0);

    /// Wraps a finite value or `-inf`. Panics on NaN and `+inf`.
    pub fn new(value: f64) -> Self {
        Self::try_new(value).expect("max-plus scalar must be finite or -inf")
    }

    pub fn try_new(value: f64) -> Result<Self, Error> {
        if value.is_nan() || value == f64::INFINITY {
            Err(Error::InvalidScalar(value))
        } else {
            Ok(MaxPlus(value))
        }
    }

    pub fn is_eps(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn is_finite(self) -> bool {
        !self.is_eps()
    }

    /// The underlying `f64`; ε maps to `-inf`.
    pub fn value(self) -> f64 {
        self.0
    }

    /// The value as a real number, or `None` for ε.
    pub fn finite(self) -> Option<f64> {
        if self.is_eps() {
            None
        } else {
            Some(self.0)
        }
    }

    /// a ⊕ b = max(a, b).
    pub fn oplus(self, other: Self) -> Self {
        if self.0 >= other.0 {
            self
        } else {
            other
        }
    }

    /// a ⊗ b = a + b, absorbing at ε.
    pub fn otimes(self, other: Self) -> Self {
        if self.is_eps() || other.is_eps() {
            MaxPlus::EPS
        } else {
            MaxPlus(self.0 + other.0)
        }
    }

    /// The ⊗-inverse −a of a finite scalar; `None` for ε.
    pub fn inverse(self) -> Option<Self> {
        self.finite().map(|v| MaxPlus(-v))
    }

    /// Real power a^r = r·a. ε stays ε for r > 0.
    pub fn pow(self, r: f64) -> Self {
        if self.is_eps() {
            MaxPlus::EPS
        } else {
            MaxPlus(r * self.0)
        }
    }

    /// Total order on ℝ ∪ {ε} with ε at the bottom.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl From<f64> for MaxPlus {
    fn from(value: f64) -> Self {
        MaxPlus::new(value)
    }
}

impl fmt::Debug for MaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shortest decimal that round-trips; ε prints as `eps`, and `-0` as `0`.
impl fmt::Display for MaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.finite() {
            None => f.write_str("eps"),
            Some(0.0) => f.write_str("0"),
            Some(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for MaxPlus {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.finite() {
            None => serializer.serialize_str("eps"),
            Some(v) => serializer.serialize_f64(if v == 0.0 { 0.0 } else { v }),
        }
    }
}

impl<'de> Deserialize<'de> for MaxPlus {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ScalarVisitor;

        impl Visitor<'_> for ScalarVisitor {
            type Value = MaxPlus;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a finite number or the string \"eps\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<MaxPlus, E> {
                MaxPlus::try_new(v).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<MaxPlus, E> {
                Ok(MaxPlus(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<MaxPlus, E> {
                Ok(MaxPlus(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<MaxPlus, E> {
                match v {
                    "eps" | "-inf" => Ok(MaxPlus::EPS),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }

        deserializer.deserialize_any(ScalarVisitor)
    }
}

/// Absolute tolerance for comparing finite scalars.
///
/// Two finite values are equal when they differ by at most `tau`; ε is equal
/// only to ε. Every verdict-producing operation takes one of these.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-9);

    pub fn new(tau: f64) -> Result<Self, Error> {
        if tau.is_finite() && tau >= 0.0 {
            Ok(Tolerance(tau))
        } else {
            Err(Error::InvalidTolerance(tau))
        }
    }

    pub fn tau(self) -> f64 {
        self.0
    }

    pub fn eq(self, a: MaxPlus, b: MaxPlus) -> bool {
        match (a.finite(), b.finite()) {
            (None, None) => true,
            (Some(x), Some(y)) => (x - y).abs() <= self.0,
            _ => false,
        }
    }

    /// `a ≤ b` up to the tolerance.
    pub fn le(self, a: MaxPlus, b: MaxPlus) -> bool {
        match (a.finite(), b.finite()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(x), Some(y)) => x <= y + self.0,
        }
    }

    pub fn is_zero(self, a: MaxPlus) -> bool {
        self.eq(a, MaxPlus::ZERO)
    }

    pub fn eq_slices(self, a: &[MaxPlus], b: &[MaxPlus]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| self.eq(x, y))
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}
