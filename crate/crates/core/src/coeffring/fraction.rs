use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{rational_json, FieldScalar, MultiPoly, Rational, Scalar, Var};
use crate::error::{parse_err, HopfError, Result};

/// Quotient of two polynomials.
///
/// No polynomial gcd is ever taken. The only normalization is dividing both
/// sides by the content of the denominator, so that it has coprime integer
/// coefficients and a positive leading coefficient. Equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct PolyFraction {
    num: MultiPoly,
    den: MultiPoly,
}

impl PolyFraction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(HopfError::Pole { den: "0".into() });
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return PolyFraction {
                num,
                den: MultiPoly::from_int(1),
            };
        }
        let c = den.content();
        if c.is_one() {
            return PolyFraction { num, den };
        }
        let inv = c.recip();
        PolyFraction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        PolyFraction {
            num: p,
            den: MultiPoly::from_int(1),
        }
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    /// The polynomial value when the denominator is a constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        self.den
            .as_constant()
            .map(|c| self.num.scale(&c.recip()))
    }

    pub fn as_rational(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn div(&self, other: &PolyFraction) -> Result<PolyFraction> {
        let inv = other.inv().ok_or(HopfError::Pole {
            den: other.to_string(),
        })?;
        Ok(self.mul_ref(&inv))
    }

    /// Exact value at a point binding every variable.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Rational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(HopfError::Pole {
                den: self.den.to_string(),
            });
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Substitutes the bound variables, keeping the rest symbolic.
    pub fn subst(&self, point: &BTreeMap<Var, Rational>) -> Result<PolyFraction> {
        let d = self.den.subst(point);
        if d.is_zero() {
            return Err(HopfError::Pole {
                den: self.den.to_string(),
            });
        }
        Ok(Self::normalized(self.num.subst(point), d))
    }

    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_json_terms(), "den": self.den.to_json_terms()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let num = v
            .get("num")
            .ok_or_else(|| parse_err(v.to_string(), "missing `num`"))?;
        let den = v
            .get("den")
            .ok_or_else(|| parse_err(v.to_string(), "missing `den`"))?;
        Self::new(
            MultiPoly::from_json_terms(num)?,
            MultiPoly::from_json_terms(den)?,
        )
    }
}

impl PartialEq for PolyFraction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for PolyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_poly() {
            return write!(f, "{p}");
        }
        let wrap = |p: &MultiPoly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl Zero for PolyFraction {
    fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for PolyFraction {
    fn one() -> Self {
        Self::from_poly(MultiPoly::from_int(1))
    }
}

impl std::ops::Add for PolyFraction {
    type Output = PolyFraction;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl std::ops::Mul for PolyFraction {
    type Output = PolyFraction;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Scalar for PolyFraction {
    fn add_ref(&self, other: &Self) -> Self {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::zero();
        }
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg_ref(&self) -> Self {
        PolyFraction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(MultiPoly::constant(r.clone()))
    }
    fn to_json_compact(&self) -> Value {
        match self.as_rational() {
            Some(r) => rational_json(&r),
            None => Value::String(self.to_string()),
        }
    }
}

impl FieldScalar for PolyFraction {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }
}
