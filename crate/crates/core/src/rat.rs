//! Exact rationals and the `num/den` text form used in every output format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Always `num/den`, including for integers (`-33/1`).
pub fn format(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::invalid(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn ceil_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator or denominator too large for a direct conversion
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn in_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}
