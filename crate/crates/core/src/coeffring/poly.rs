use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{fmt_rational, parse_rational, rational_json, Rational, Scalar};
use crate::error::{parse_err, HopfError, Result};

/// A polynomial variable. The derived order is the global variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A,
    B,
    Q,
    T,
    S,
    /// Indexed variable `z_i`, `i >= 1`.
    Z(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::A => f.write_str("a"),
            Var::B => f.write_str("b"),
            Var::Q => f.write_str("q"),
            Var::T => f.write_str("t"),
            Var::S => f.write_str("s"),
            Var::Z(i) => write!(f, "z{i}"),
        }
    }
}

impl std::str::FromStr for Var {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "a" => Ok(Var::A),
            "b" => Ok(Var::B),
            "q" => Ok(Var::Q),
            "t" => Ok(Var::T),
            "s" => Ok(Var::S),
            _ => {
                let idx = t
                    .strip_prefix('z')
                    .and_then(|d| d.trim_start_matches('_').parse::<u32>().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| parse_err(t, "unknown variable"))?;
                Ok(Var::Z(idx))
            }
        }
    }
}

/// Monomial as a sorted list of `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Display order: higher total degree first, then lexicographically larger
    /// exponent vectors (in variable order) first.
    pub fn graded_cmp(&self, other: &Monomial) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => match eb.cmp(&ea) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            o => return o,
                        },
                    },
                }
            }
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::from_int(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Leading term in display order (highest degree, lex-largest).
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().min_by(|a, b| a.0.graded_cmp(b.0))
    }

    /// Positive rational `c` (times the sign of the leading coefficient) such that
    /// `self / c` has coprime integer coefficients and a positive leading coefficient.
    pub fn content(&self) -> Rational {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return Rational::one();
        }
        let c = Rational::new(g, l);
        match self.leading() {
            Some((_, lc)) if lc.is_negative() => -c,
            _ => c,
        }
    }

    /// Evaluates with every variable bound.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Rational> {
        let mut acc = Rational::zero();
        let mut cache: BTreeMap<(Var, u32), Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = point
                    .get(&v)
                    .ok_or_else(|| HopfError::UnboundVariable(v.to_string()))?;
                let p = cache
                    .entry((v, e))
                    .or_insert_with(|| num_traits::pow(x.clone(), e as usize));
                t *= &*p;
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes the bound variables, leaving the others symbolic.
    pub fn subst(&self, point: &BTreeMap<Var, Rational>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in m.pairs() {
                match point.get(&v) {
                    Some(x) => coeff *= num_traits::pow(x.clone(), e as usize),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial(rest), coeff);
        }
        out
    }

    /// Substitutes a single variable by a value in an arbitrary coefficient ring.
    /// The polynomial must involve no other variable.
    pub fn eval_in<C: Scalar>(&self, v: Var, x: &C) -> Result<C> {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = C::from_rational(c);
            for &(w, e) in m.pairs() {
                if w != v {
                    return Err(HopfError::UnboundVariable(w.to_string()));
                }
                for _ in 0..e {
                    t = t.mul_ref(x);
                }
            }
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }

    /// Terms sorted in display order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.graded_cmp(b.0));
        v
    }

    pub fn to_json_terms(&self) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(m, c)| {
                    let exps: serde_json::Map<String, Value> = m
                        .pairs()
                        .iter()
                        .map(|(v, e)| (v.to_string(), json!(e)))
                        .collect();
                    json!({"coeff": fmt_rational(c), "exps": exps})
                })
                .collect(),
        )
    }

    pub fn from_json_terms(v: &Value) -> Result<MultiPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| parse_err(v.to_string(), "expected an array of terms"))?;
        let mut out = MultiPoly::zero();
        for t in arr {
            let c = t
                .get("coeff")
                .and_then(|c| match c {
                    Value::String(s) => parse_rational(s).ok(),
                    Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())),
                    _ => None,
                })
                .ok_or_else(|| parse_err(t.to_string(), "bad coefficient"))?;
            let mut pairs = Vec::new();
            if let Some(exps) = t.get("exps").and_then(Value::as_object) {
                for (k, e) in exps {
                    let var: Var = k.parse()?;
                    let e = e
                        .as_u64()
                        .ok_or_else(|| parse_err(e.to_string(), "bad exponent"))?;
                    pairs.push((var, e as u32));
                }
            }
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::from_int(1)
    }
}

impl std::ops::Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: Self) -> Self {
        MultiPoly::add(&self, &rhs)
    }
}

impl std::ops::Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: Self) -> Self {
        MultiPoly::mul(&self, &rhs)
    }
}

impl Scalar for MultiPoly {
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(r.clone())
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn to_json_compact(&self) -> Value {
        match self.as_constant() {
            Some(r) => rational_json(&r),
            None => Value::String(self.to_string()),
        }
    }
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn qint(n: u32) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for i in 0..n {
        out.add_term(Monomial::var(Var::Q, i), Rational::one());
    }
    out
}

/// Gaussian binomial coefficient in `q`, by the recurrence
/// `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
pub fn qbinomial(n: i64, k: i64) -> Result<MultiPoly> {
    if n < 0 || k < 0 || k > n {
        return Err(HopfError::OutOfRange(format!(
            "q-binomial needs 0 <= k <= n, got n={n}, k={k}"
        )));
    }
    let (n, k) = (n as usize, k as usize);
    // row[j] = [m, j] for the current m
    let mut row = vec![MultiPoly::from_int(1)];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let left = if j > 0 { row[j - 1].clone() } else { MultiPoly::zero() };
            let right = if j < m {
                row[j].mul_monomial(&Monomial::var(Var::Q, j as u32))
            } else {
                MultiPoly::zero()
            };
            next.push(left.add(&right));
        }
        row = next;
    }
    Ok(row.swap_remove(k))
}

/// `t (t-1) ... (t-k+1) / k!` as a polynomial in `var`.
pub fn binomial_poly(var: Var, k: u32) -> MultiPoly {
    let t = MultiPoly::var(var);
    let mut acc = MultiPoly::from_int(1);
    for i in 0..k {
        acc = acc.mul(&t.sub(&MultiPoly::from_int(i as i64)));
    }
    acc.scale(&Rational::new(BigInt::one(), super::factorial(k as u64)))
}
