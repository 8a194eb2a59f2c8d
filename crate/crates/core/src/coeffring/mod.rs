//! Exact scalar arithmetic.
//!
//! Three coefficient rings are used throughout the crate:
//!
//! - [`Rational`]: arbitrary precision rationals (backed by `num-rational`),
//! - [`MultiPoly`]: sparse multivariate polynomials with rational coefficients,
//! - [`PolyFraction`]: ratios of such polynomials, compared by cross-multiplication.
//!
//! All of them implement [`Scalar`], which is the only bound the generic
//! free-module and algebra code relies on.

mod fraction;
mod poly;

pub use fraction::PolyFraction;
pub use poly::{binomial_poly, qbinomial, qint, Monomial, MultiPoly, Var};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{parse_err, Result};

/// Arbitrary precision rational number.
pub type Rational = num_rational::BigRational;

/// Commutative ring with unit, as needed for coefficients of formal sums.
pub trait Scalar:
    Clone + PartialEq + Zero + One + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// JSON number for integers, string otherwise.
    fn to_json_compact(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

/// A [`Scalar`] in which nonzero elements can be inverted.
pub trait FieldScalar: Scalar {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
}

impl Scalar for Rational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn to_json_compact(&self) -> serde_json::Value {
        rational_json(self)
    }
}

impl FieldScalar for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Shorthand for the rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = |why: &str| parse_err(t, why);
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad("not a rational number"))?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Canonical text of a rational: `"3"`, `"-1/2"`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// JSON value of a rational: an integer literal when it fits, else a `"p/q"` string.
pub fn rational_json(r: &Rational) -> serde_json::Value {
    if r.is_integer() {
        if let Ok(v) = r.numer().to_string().parse::<i64>() {
            return serde_json::Value::from(v);
        }
    }
    serde_json::Value::String(fmt_rational(r))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient as a big integer (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
