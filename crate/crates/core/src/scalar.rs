//! Scalar abstraction shared by the exact (rational) and numerical (f64) engines.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Tolerance used for rank and sign decisions in floating-point mode.
pub const FLOAT_TOL: f64 = 1e-10;

/// Field element used by the linear algebra, LP and cone code.
///
/// Rationals decide signs exactly; floats treat anything within
/// [`FLOAT_TOL`] of zero as zero.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when this is the exact field.
    const EXACT: bool;

    fn is_negligible(&self) -> bool;

    fn is_pos(&self) -> bool {
        !self.is_negligible() && self.is_positive()
    }

    fn is_neg(&self) -> bool {
        !self.is_negligible() && self.is_negative()
    }

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer conversion")
    }

    fn ratio(p: i64, q: i64) -> Self;

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Approximate a float. Exact for floats, dyadic-exact for rationals.
    fn from_float(v: f64) -> Option<Self> {
        Self::from_f64(v)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn ratio(p: i64, q: i64) -> Self {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn is_negligible(&self) -> bool {
        self.abs() <= FLOAT_TOL
    }

    fn ratio(p: i64, q: i64) -> Self {
        p as f64 / q as f64
    }
}

pub fn zero<S: Scalar>() -> S {
    S::zero()
}

pub fn one<S: Scalar>() -> S {
    S::one()
}

/// Parse a rational from `"p/q"`, `"p"`, or a decimal literal such as `"0.25"`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let num: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(num, den);
        return Some(if neg { -r } else { r });
    }
    let p: BigInt = t.parse().ok()?;
    Some(BigRational::from_integer(p))
}

/// Render a rational as `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
