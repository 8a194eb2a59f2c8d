//! Formal linear combinations over arbitrary label types.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::coeffring::{Rational, Scalar};
use crate::error::{HopfError, Result};

/// A basis label with a grade and a distinguished unit label of grade 0.
pub trait GradedLabel: Ord + Clone + fmt::Debug + fmt::Display + Send + Sync {
    fn grade(&self) -> usize;
    fn unit() -> Self;
}

/// Finite formal sum `Σ c_l · l`. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct LinComb<L: Ord, C = Rational> {
    terms: BTreeMap<L, C>,
}

/// Element of the tensor square, keyed by ordered label pairs.
pub type TensorComb<L, C = Rational> = LinComb<(L, L), C>;

impl<L: Ord, C> Default for LinComb<L, C> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<L: Ord + Clone, C: Scalar> LinComb<L, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(l: L) -> Self {
        Self::term(l, C::one())
    }

    pub fn term(l: L, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(l, c);
        out
    }

    pub fn from_terms(it: impl IntoIterator<Item = (L, C)>) -> Self {
        let mut out = Self::zero();
        for (l, c) in it {
            out.add_term(l, c);
        }
        out
    }

    /// Sums each label with multiplicity one per occurrence.
    pub fn from_labels(it: impl IntoIterator<Item = L>) -> Self {
        let mut out = Self::zero();
        for l in it {
            out.add_term(l, C::one());
        }
        out
    }

    pub fn add_term(&mut self, l: L, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(l) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (l, x) in &other.terms {
            let v = if unit { x.clone() } else { x.mul_ref(c) };
            self.add_term(l.clone(), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &C)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<L, C> {
        self.terms
    }

    pub fn coeff(&self, l: &L) -> C {
        self.terms.get(l).cloned().unwrap_or_else(C::zero)
    }

    pub fn get(&self, l: &L) -> Option<&C> {
        self.terms.get(l)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &C::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &C::one().neg_ref());
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|x| x.mul_ref(c))
    }

    /// Applies a coefficient map, dropping terms that become zero.
    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> LinComb<L, D> {
        LinComb::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), f(c))))
    }

    /// Fallible coefficient map.
    pub fn try_map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> Result<D>) -> Result<LinComb<L, D>> {
        let mut out = LinComb::zero();
        for (l, c) in &self.terms {
            out.add_term(l.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Relabels terms one to one (or many to one, summing).
    pub fn map_labels<M: Ord + Clone>(&self, f: impl Fn(&L) -> M) -> LinComb<M, C> {
        LinComb::from_terms(self.terms.iter().map(|(l, c)| (f(l), c.clone())))
    }

    /// Relabels with a sign: `f` returns the new label and whether to negate.
    pub fn map_labels_signed<M: Ord + Clone>(&self, f: impl Fn(&L) -> (M, bool)) -> LinComb<M, C> {
        LinComb::from_terms(self.terms.iter().map(|(l, c)| {
            let (m, neg) = f(l);
            (m, if neg { c.neg_ref() } else { c.clone() })
        }))
    }

    /// Linear extension of a map from labels to combinations.
    pub fn apply<M: Ord + Clone>(&self, f: impl Fn(&L) -> LinComb<M, C>) -> LinComb<M, C> {
        let mut out = LinComb::zero();
        for (l, c) in &self.terms {
            out.add_scaled(&f(l), c);
        }
        out
    }

    /// Linear extension of a map from labels to combinations with rational coefficients.
    pub fn apply_rational<M: Ord + Clone>(
        &self,
        f: impl Fn(&L) -> LinComb<M, Rational>,
    ) -> LinComb<M, C> {
        let mut out = LinComb::zero();
        for (l, c) in &self.terms {
            for (m, r) in f(l).iter() {
                out.add_term(m.clone(), c.mul_ref(&C::from_rational(r)));
            }
        }
        out
    }

    /// Bilinear extension of a map on pairs of labels.
    pub fn bilinear<M: Ord + Clone, R: Ord + Clone>(
        &self,
        other: &LinComb<M, C>,
        f: impl Fn(&L, &M) -> LinComb<R, C>,
    ) -> LinComb<R, C> {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_scaled(&f(a, b), &ca.mul_ref(cb));
            }
        }
        out
    }

    /// Bilinear extension where the label product has rational coefficients.
    pub fn bilinear_rational<M: Ord + Clone, R: Ord + Clone>(
        &self,
        other: &LinComb<M, C>,
        f: impl Fn(&L, &M) -> LinComb<R, Rational>,
    ) -> LinComb<R, C> {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca.mul_ref(cb);
                for (r, x) in f(a, b).iter() {
                    out.add_term(r.clone(), c.mul_ref(&C::from_rational(x)));
                }
            }
        }
        out
    }

    /// Keeps the terms whose label satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&L) -> bool) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| keep(l))
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// Pointwise tensor of two combinations.
    pub fn tensor<M: Ord + Clone>(&self, other: &LinComb<M, C>) -> LinComb<(L, M), C> {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term((a.clone(), b.clone()), ca.mul_ref(cb));
            }
        }
        out
    }

    /// Pairing where distinct labels are orthogonal and each label pairs to one with itself.
    pub fn pairing_diagonal(&self, other: &Self) -> C {
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = C::zero();
        for (l, c) in &small.terms {
            if let Some(d) = big.terms.get(l) {
                acc = acc.add_ref(&c.mul_ref(d));
            }
        }
        acc
    }

    /// Bilinear pairing given its values on label pairs.
    pub fn pairing_with<M: Ord + Clone>(&self, other: &LinComb<M, C>, pair: impl Fn(&L, &M) -> C) -> C {
        let mut acc = C::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let p = pair(a, b);
                if !p.is_zero() {
                    acc = acc.add_ref(&ca.mul_ref(cb).mul_ref(&p));
                }
            }
        }
        acc
    }
}

impl<L: GradedLabel, C: Scalar> LinComb<L, C> {
    pub fn unit() -> Self {
        Self::basis(L::unit())
    }

    pub fn scalar(c: C) -> Self {
        Self::term(L::unit(), c)
    }

    /// Homogeneous component of the given grade.
    pub fn component(&self, grade: usize) -> Self {
        self.filter(|l| l.grade() == grade)
    }

    pub fn is_homogeneous(&self, grade: usize) -> bool {
        self.labels().all(|l| l.grade() == grade)
    }

    pub fn max_grade(&self) -> Option<usize> {
        self.labels().map(GradedLabel::grade).max()
    }

    /// `{basis, terms: [{label, coeff}]}` with integer coefficients as JSON numbers.
    pub fn to_json(&self, basis: &str) -> Value {
        let terms: Vec<Value> = self
            .iter()
            .map(|(l, c)| json!({"label": l.to_string(), "coeff": c.to_json_compact()}))
            .collect();
        json!({"basis": basis, "terms": terms})
    }

    /// `{basis: {label: coeff}}`.
    pub fn to_json_map(&self, basis: &str) -> Value {
        let m: serde_json::Map<String, Value> = self
            .iter()
            .map(|(l, c)| (l.to_string(), c.to_json_compact()))
            .collect();
        json!({ basis: m })
    }

    /// Human readable form `c*P[label] + ...` with the given basis prefix.
    pub fn render(&self, prefix: &str) -> String {
        render_terms(self.iter().map(|(l, c)| (format!("{prefix}[{l}]"), c)))
    }
}

impl<L: GradedLabel, C: Scalar> LinComb<(L, L), C> {
    /// `Σ x ⊗ 1 + 1 ⊗ x`.
    pub fn primitive_tensor(x: &LinComb<L, C>) -> Self {
        let mut out = Self::zero();
        for (l, c) in x.iter() {
            out.add_term((l.clone(), L::unit()), c.clone());
            out.add_term((L::unit(), l.clone()), c.clone());
        }
        out
    }

    pub fn render_tensor(&self, prefix: &str) -> String {
        render_terms(
            self.iter()
                .map(|((a, b), c)| (format!("{prefix}[{a}] ⊗ {prefix}[{b}]"), c)),
        )
    }
}

fn render_terms<'a, C: Scalar>(it: impl Iterator<Item = (String, &'a C)>) -> String {
    let mut s = String::new();
    for (k, (name, c)) in it.enumerate() {
        let text = c.to_string();
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-', ' ']) => (true, rest.to_string()),
            _ => (false, text),
        };
        if k > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        if body == "1" {
            s.push_str(&name);
        } else if body.contains(' ') {
            s.push_str(&format!("({body})*{name}"));
        } else {
            s.push_str(&format!("{body}*{name}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl<L: Ord + fmt::Debug, C: fmt::Debug> fmt::Debug for LinComb<L, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<L: Ord + fmt::Display, C: Scalar> fmt::Display for LinComb<L, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render_terms(self.terms.iter().map(|(l, c)| (l.to_string(), c)));
        f.write_str(&s)
    }
}

/// Truncated graded series `Σ_{d ≤ cap} S_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSeries<L: Ord, C = Rational> {
    cap: usize,
    comps: Vec<LinComb<L, C>>,
}

impl<L: GradedLabel, C: Scalar> GradedSeries<L, C> {
    /// Builds a series from its components; missing degrees are zero.
    /// Each component must be homogeneous of its degree.
    pub fn new(cap: usize, comps: Vec<LinComb<L, C>>) -> Result<Self> {
        let mut comps = comps;
        if comps.len() > cap + 1 {
            comps.truncate(cap + 1);
        }
        comps.resize(cap + 1, LinComb::zero());
        for (d, c) in comps.iter().enumerate() {
            if !c.is_homogeneous(d) {
                return Err(HopfError::Invalid(format!("component {d} is not homogeneous")));
            }
        }
        Ok(GradedSeries { cap, comps })
    }

    /// Splits an arbitrary combination into graded pieces up to `cap`.
    pub fn from_lincomb(cap: usize, x: &LinComb<L, C>) -> Self {
        let comps = (0..=cap).map(|d| x.component(d)).collect();
        GradedSeries { cap, comps }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn component(&self, d: usize) -> &LinComb<L, C> {
        &self.comps[d]
    }

    pub fn components(&self) -> &[LinComb<L, C>] {
        &self.comps
    }

    fn check_unital(&self) -> Result<()> {
        if self.comps[0] != LinComb::unit() {
            return Err(HopfError::NonUnital);
        }
        Ok(())
    }
}

/// Degree at which a series or element fails a Hopf predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateReport {
    pub holds: bool,
    pub first_failure: Option<usize>,
}

/// `Δ(S_n) = Σ_k S_k ⊗ S_{n-k}` for every `n ≤ cap`.
pub fn grouplike_report<L: GradedLabel, C: Scalar>(
    s: &GradedSeries<L, C>,
    coproduct: impl Fn(&LinComb<L, C>) -> TensorComb<L, C>,
) -> Result<PredicateReport> {
    s.check_unital()?;
    for n in 1..=s.cap {
        let lhs = coproduct(&s.comps[n]);
        let mut rhs = LinComb::zero();
        for k in 0..=n {
            rhs.add_scaled(&s.comps[k].tensor(&s.comps[n - k]), &C::one());
        }
        if lhs != rhs {
            return Ok(PredicateReport {
                holds: false,
                first_failure: Some(n),
            });
        }
    }
    Ok(PredicateReport {
        holds: true,
        first_failure: None,
    })
}

pub fn is_grouplike<L: GradedLabel, C: Scalar>(
    s: &GradedSeries<L, C>,
    coproduct: impl Fn(&LinComb<L, C>) -> TensorComb<L, C>,
) -> Result<bool> {
    Ok(grouplike_report(s, coproduct)?.holds)
}

/// `Δx = x ⊗ 1 + 1 ⊗ x`.
pub fn is_primitive<L: GradedLabel, C: Scalar>(
    x: &LinComb<L, C>,
    coproduct: impl Fn(&LinComb<L, C>) -> TensorComb<L, C>,
) -> bool {
    coproduct(x) == TensorComb::primitive_tensor(x)
}

/// Every positive-degree component up to the cap is primitive.
pub fn is_primitive_series<L: GradedLabel, C: Scalar>(
    s: &GradedSeries<L, C>,
    coproduct: impl Fn(&LinComb<L, C>) -> TensorComb<L, C>,
) -> PredicateReport {
    for n in 1..=s.cap {
        if !is_primitive(&s.comps[n], &coproduct) {
            return PredicateReport {
                holds: false,
                first_failure: Some(n),
            };
        }
    }
    PredicateReport {
        holds: true,
        first_failure: None,
    }
}
