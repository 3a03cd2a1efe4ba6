//! Scalar kinds shared by the dense kernels.
//!
//! Two kinds exist: `f64` for kernels and spectra, and [`Rational`] for the
//! exact identities. A pipeline is generic over one `S: Scalar` so kinds are
//! never mixed silently; converting between them goes through
//! [`Scalar::to_f64`] or [`Scalar::from_param`] explicitly.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Float,
    Rational,
}

impl std::str::FromStr for ScalarKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float" => Ok(ScalarKind::Float),
            "rational" => Ok(ScalarKind::Rational),
            other => Err(Error::Config(format!("unknown scalar mode `{other}`"))),
        }
    }
}

pub trait Scalar: Num + Signed + Clone + Debug + std::fmt::Display + PartialOrd + Send + Sync + 'static {
    const KIND: ScalarKind;

    /// Converts a user-supplied parameter. Rational mode reads the shortest
    /// decimal representation, so `0.4` becomes `2/5` rather than the binary
    /// expansion of the nearest double.
    fn from_param(value: f64) -> Result<Self>;

    fn from_i64(value: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// `exp` of a number; `None` when the result leaves the scalar kind.
    fn exp(&self) -> Option<Self>;

    fn ln(&self) -> Option<Self>;

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    fn is_exact() -> bool {
        Self::KIND == ScalarKind::Rational
    }
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Float;

    fn from_param(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Domain(format!("non-finite parameter {value}")))
        }
    }

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn exp(&self) -> Option<Self> {
        Some(f64::exp(*self))
    }

    fn ln(&self) -> Option<Self> {
        (*self > 0.0).then(|| f64::ln(*self))
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn from_param(value: f64) -> Result<Self> {
        decimal_to_rational(value)
    }

    fn from_i64(value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // numerator/denominator beyond f64 range: fall back on a ratio of logs
            let n = self.numer().to_f64().unwrap_or(f64::INFINITY);
            let d = self.denom().to_f64().unwrap_or(f64::INFINITY);
            n / d
        })
    }

    fn exp(&self) -> Option<Self> {
        self.is_zero().then(Rational::one)
    }

    fn ln(&self) -> Option<Self> {
        self.is_one().then(Rational::zero)
    }
}

fn decimal_to_rational(value: f64) -> Result<Rational> {
    if !value.is_finite() {
        return Err(Error::Domain(format!("non-finite parameter {value}")));
    }
    // `Display` for f64 is the shortest string that round-trips.
    let text = format!("{value}");
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.as_str()),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let numer: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| Error::Domain(format!("cannot read {value} as a decimal")))?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = Rational::new(numer, denom);
    Ok(if negative { -r } else { r })
}

/// Rational from a ratio of small integers; convenience for tests and presets.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parameters_become_short_fractions() {
        assert_eq!(Rational::from_param(0.4).unwrap(), ratio(2, 5));
        assert_eq!(Rational::from_param(0.25).unwrap(), ratio(1, 4));
        assert_eq!(Rational::from_param(-1.5).unwrap(), ratio(-3, 2));
        assert_eq!(Rational::from_param(3.0).unwrap(), ratio(3, 1));
        assert!(Rational::from_param(f64::NAN).is_err());
    }

    #[test]
    fn exp_stays_inside_the_kind() {
        assert_eq!(Rational::zero().exp(), Some(Rational::one()));
        assert_eq!(ratio(1, 2).exp(), None);
        assert!((1.0f64.exp() - std::f64::consts::E).abs() < 1e-15);
    }
}
