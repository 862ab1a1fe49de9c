//! Scalar traits shared by the chain, normal-form and LP code.
//!
//! Everything numeric in the crate is generic over one of three traits:
//! [`Coefficient`] for chain coefficients, [`IntegerScalar`] for the Smith
//! normal form, and [`ExactField`] for the simplex method. The crate root
//! fixes the usual instantiations (`BigInt`, `BigRational`).

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// A commutative ring element usable as a chain coefficient.
pub trait Coefficient: Num + Signed + Clone + Debug + Display + FromPrimitive {
    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("coefficient type cannot represent an i64")
    }
}

impl<T> Coefficient for T where T: Num + Signed + Clone + Debug + Display + FromPrimitive {}

/// Euclidean integers: `i64`, `i128`, `BigInt`.
pub trait IntegerScalar: Coefficient + Integer + Ord {}

impl<T> IntegerScalar for T where T: Coefficient + Integer + Ord {}

/// An ordered field with exact comparisons, e.g. `Ratio<BigInt>`.
pub trait ExactField: Coefficient + PartialOrd {
    fn floor(&self) -> Self;
    fn ceil(&self) -> Self;
    fn is_integral(&self) -> bool;
    /// Distance to the nearest integer, in `[0, 1/2]`.
    fn fractionality(&self) -> Self {
        let down = self.clone() - self.floor();
        let up = self.ceil() - self.clone();
        if down < up {
            down
        } else {
            up
        }
    }
}

impl<T> ExactField for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Display,
    Ratio<T>: FromPrimitive,
{
    fn floor(&self) -> Self {
        Ratio::floor(self)
    }

    fn ceil(&self) -> Self {
        Ratio::ceil(self)
    }

    fn is_integral(&self) -> bool {
        Ratio::is_integer(self)
    }
}

/// Formats a rational as `"num/den"` (always with a denominator).
pub fn ratio_string<T: Clone + Integer + Display>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"3"`, `"-1/20"` or `"0.05"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<crate::Rational> {
    use num_bigint::BigInt;
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(Ratio::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.trim_start().starts_with('-');
        let int_part: BigInt = match int {
            "" | "-" | "+" => BigInt::from(0),
            s => s.parse().ok()?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part: BigInt = frac.parse().ok()?;
        let magnitude = int_part.abs() * &scale + frac_part;
        let numer = if negative { -magnitude } else { magnitude };
        return Some(Ratio::new(numer, scale));
    }
    let n: BigInt = text.parse().ok()?;
    Some(Ratio::from_integer(n))
}
