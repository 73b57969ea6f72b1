//! Scalar fields for representation matrices.
//!
//! Everything that touches matrix entries is generic over [`Scalar`]. The
//! exact instance ([`num_rational::BigRational`]) is what the decomposition
//! engine uses; `Rational64` and `f64` are provided for small or quick
//! experiments where overflow or rounding is acceptable.

use std::fmt::Debug;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num};

pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    /// Whether the value should be treated as zero by elimination.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// Parses `"p/q"`, `"p"` or a decimal literal for float instances.
    fn parse_scalar(s: &str) -> Option<Self>;

    /// Renders the value in the form accepted by [`Scalar::parse_scalar`].
    fn to_scalar_string(&self) -> String;
}

impl Scalar for BigRational {
    fn parse_scalar(s: &str) -> Option<Self> {
        let s = s.trim();
        let r = BigRational::from_str(s).ok()?;
        Some(r)
    }

    fn to_scalar_string(&self) -> String {
        if self.denom() == &BigInt::from(1) {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for Rational64 {
    fn parse_scalar(s: &str) -> Option<Self> {
        Rational64::from_str(s.trim()).ok()
    }

    fn to_scalar_string(&self) -> String {
        if *self.denom() == 1 {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

const F64_EPS: f64 = 1e-9;

impl Scalar for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() < F64_EPS
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let q: f64 = q.trim().parse().ok()?;
                if q == 0.0 {
                    return None;
                }
                Some(p.trim().parse::<f64>().ok()? / q)
            }
            None => s.parse().ok(),
        }
    }

    fn to_scalar_string(&self) -> String {
        format!("{self}")
    }
}

/// Converts a small integer into any scalar.
pub fn from_i64<F: Scalar>(v: i64) -> F {
    F::from_i64(v).expect("integer fits every scalar field")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals() {
        let r = BigRational::parse_scalar("1/2").unwrap();
        assert_eq!(r.to_scalar_string(), "1/2");
        let r = BigRational::parse_scalar("-4/2").unwrap();
        assert_eq!(r.to_scalar_string(), "-2");
        assert!(BigRational::parse_scalar("1/0").is_none());
        assert!(BigRational::parse_scalar("x").is_none());
        assert_eq!(f64::parse_scalar("3/4"), Some(0.75));
        assert_eq!(Rational64::parse_scalar("6/4").unwrap().to_scalar_string(), "3/2");
    }

    #[test]
    fn float_negligible() {
        assert!(1e-12f64.is_negligible());
        assert!(!1e-3f64.is_negligible());
        assert_eq!(from_i64::<BigRational>(-1).to_scalar_string(), "-1");
    }
}
