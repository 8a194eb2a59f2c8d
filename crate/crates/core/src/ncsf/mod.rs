//! Noncommutative symmetric functions.
//!
//! Elements are stored over compositions in one of four bases: complete
//! `S^I`, elementary `Λ^I`, ribbon `R_I` and signed ribbon `R_{ε•}`. A signed
//! ribbon is labelled by the composition `I` of its sign sequence and equals
//! `(-1)^{ℓ(I)-1} R_I`. Every conversion goes through the `S` basis.

mod idempotents;
mod internal;

pub use idempotents::{
    alien, commutative_image, euler_idempotent, h_in_p, is_lie_idempotent, lie_certificate, phi,
    psi, AlienOp, LieCertificate, SymFunc,
};
pub use internal::{internal_product, internal_product_with_cap, ribbon_internal, INTERNAL_CAP};

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde_json::{json, Value};

use crate::coeffring::{int, Rational, Scalar};
use crate::combinat::{Composition, SignSeq};
use crate::error::{parse_err, HopfError, Result};
use crate::freemod::{is_primitive, GradedLabel, LinComb, TensorComb};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymBasis {
    S,
    Lambda,
    R,
    SignedR,
}

impl SymBasis {
    pub fn name(self) -> &'static str {
        match self {
            SymBasis::S => "S",
            SymBasis::Lambda => "Lambda",
            SymBasis::R => "R",
            SymBasis::SignedR => "signedR",
        }
    }
}

impl fmt::Display for SymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SymBasis {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "S" | "s" => Ok(SymBasis::S),
            "Lambda" | "lambda" | "L" | "Λ" => Ok(SymBasis::Lambda),
            "R" | "r" => Ok(SymBasis::R),
            "signedR" | "signed" | "Rsigned" => Ok(SymBasis::SignedR),
            other => Err(parse_err(other, "unknown Sym basis (S, Lambda, R, signedR)")),
        }
    }
}

/// Element of Sym in a chosen basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SymElement<C = Rational> {
    basis: SymBasis,
    lc: LinComb<Composition, C>,
}

type Lc<C> = LinComb<Composition, C>;

fn sign(neg: bool) -> Rational {
    if neg {
        int(-1)
    } else {
        int(1)
    }
}

/// `S^I` in ribbons: `Σ R_J` over `J` coarser than `I`.
pub fn s_to_r_basis(i: &Composition) -> LinComb<Composition> {
    LinComb::from_labels(i.coarser())
}

/// `R_I` in the `S` basis: signed sum over coarser compositions.
pub fn r_to_s_basis(i: &Composition) -> LinComb<Composition> {
    let l = i.len();
    LinComb::from_terms(
        i.coarser()
            .into_iter()
            .map(|j| {
                let s = sign((l - j.len()) % 2 == 1);
                (j, s)
            }),
    )
}

/// `Λ^I` in the `S` basis: `Σ (-1)^{|I|-ℓ(J)} S^J` over `J` finer than `I`.
/// The same formula with the roles exchanged gives `S^I` in the `Λ` basis.
pub fn lambda_to_s_basis(i: &Composition) -> LinComb<Composition> {
    let n = i.weight();
    LinComb::from_terms(i.finer().into_iter().map(|j| {
        let s = sign((n - j.len()) % 2 == 1);
        (j, s)
    }))
}

/// Sign relating the signed ribbon labelled by `I` to `R_I`.
fn signed_ribbon_negative(i: &Composition) -> bool {
    !i.is_empty() && (i.len() - 1) % 2 == 1
}

fn to_s_lc<C: Scalar>(basis: SymBasis, lc: &Lc<C>) -> Lc<C> {
    match basis {
        SymBasis::S => lc.clone(),
        SymBasis::R => lc.apply_rational(r_to_s_basis),
        SymBasis::SignedR => lc
            .map_labels_signed(|i| (i.clone(), signed_ribbon_negative(i)))
            .apply_rational(r_to_s_basis),
        SymBasis::Lambda => lc.apply_rational(lambda_to_s_basis),
    }
}

fn from_s_lc<C: Scalar>(basis: SymBasis, lc: &Lc<C>) -> Lc<C> {
    match basis {
        SymBasis::S => lc.clone(),
        SymBasis::R => lc.apply_rational(s_to_r_basis),
        SymBasis::SignedR => lc
            .apply_rational(s_to_r_basis)
            .map_labels_signed(|i| (i.clone(), signed_ribbon_negative(i))),
        SymBasis::Lambda => lc.apply_rational(lambda_to_s_basis),
    }
}

/// `R_I R_J = R_{I·J} + R_{I▷J}`.
pub fn ribbon_product(i: &Composition, j: &Composition) -> LinComb<Composition> {
    let mut out = LinComb::basis(i.concat(j));
    if let Some(k) = i.near_concat(j) {
        out.add_term(k, Rational::one());
    }
    out
}

/// `ΔS^I` in `S ⊗ S`.
pub fn s_coproduct_basis(i: &Composition) -> TensorComb<Composition> {
    let mut acc: Vec<(Vec<u32>, Vec<u32>)> = vec![(Vec::new(), Vec::new())];
    for &p in i.parts() {
        let mut next = Vec::with_capacity(acc.len() * (p as usize + 1));
        for (l, r) in &acc {
            for k in 0..=p {
                let (mut l2, mut r2) = (l.clone(), r.clone());
                if k > 0 {
                    l2.push(k);
                }
                if k < p {
                    r2.push(p - k);
                }
                next.push((l2, r2));
            }
        }
        acc = next;
    }
    LinComb::from_labels(acc.into_iter().map(|(l, r)| {
        (
            Composition::new(l).expect("positive"),
            Composition::new(r).expect("positive"),
        )
    }))
}

impl<C: Scalar> SymElement<C> {
    pub fn new(basis: SymBasis, lc: Lc<C>) -> Self {
        SymElement { basis, lc }
    }

    pub fn zero(basis: SymBasis) -> Self {
        Self::new(basis, LinComb::zero())
    }

    pub fn one(basis: SymBasis) -> Self {
        Self::new(basis, LinComb::unit())
    }

    pub fn basis_element(basis: SymBasis, i: Composition) -> Self {
        Self::new(basis, LinComb::basis(i))
    }

    pub fn s(i: &[u32]) -> Self {
        Self::basis_element(SymBasis::S, Composition::of(i))
    }

    pub fn lambda(i: &[u32]) -> Self {
        Self::basis_element(SymBasis::Lambda, Composition::of(i))
    }

    pub fn r(i: &[u32]) -> Self {
        Self::basis_element(SymBasis::R, Composition::of(i))
    }

    /// Signed ribbon `R_{ε•}`.
    pub fn signed(e: &SignSeq) -> Self {
        Self::basis_element(SymBasis::SignedR, e.to_composition())
    }

    pub fn basis(&self) -> SymBasis {
        self.basis
    }

    pub fn lincomb(&self) -> &Lc<C> {
        &self.lc
    }

    pub fn into_lincomb(self) -> Lc<C> {
        self.lc
    }

    pub fn is_zero(&self) -> bool {
        self.lc.is_zero()
    }

    pub fn coeff(&self, i: &Composition) -> C {
        self.lc.coeff(i)
    }

    /// Degree of a homogeneous element (zero elements count as homogeneous of any degree).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.lc.labels().map(Composition::weight);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn component(&self, d: usize) -> Self {
        Self::new(self.basis, self.lc.component(d))
    }

    pub fn to_s(&self) -> Lc<C> {
        to_s_lc(self.basis, &self.lc)
    }

    pub fn convert(&self, target: SymBasis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let lc = match (self.basis, target) {
            (SymBasis::R, SymBasis::SignedR) | (SymBasis::SignedR, SymBasis::R) => self
                .lc
                .map_labels_signed(|i| (i.clone(), signed_ribbon_negative(i))),
            _ => from_s_lc(target, &self.to_s()),
        };
        Self::new(target, lc)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.basis, self.lc.add(&other.convert(self.basis).lc))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.basis, self.lc.sub(&other.convert(self.basis).lc))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.basis, self.lc.scale(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&C::from_rational(r))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.basis, self.lc.neg())
    }

    /// Product in the basis of `self`.
    pub fn mul(&self, other: &Self) -> Self {
        match self.basis {
            SymBasis::R => {
                let o = other.convert(SymBasis::R);
                Self::new(SymBasis::R, self.lc.bilinear_rational(&o.lc, ribbon_product))
            }
            SymBasis::S | SymBasis::Lambda => {
                let o = other.convert(self.basis);
                Self::new(
                    self.basis,
                    self.lc
                        .bilinear_rational(&o.lc, |a, b| LinComb::basis(a.concat(b))),
                )
            }
            SymBasis::SignedR => self
                .convert(SymBasis::R)
                .mul(other)
                .convert(SymBasis::SignedR),
        }
    }

    /// Coproduct in `S ⊗ S`.
    pub fn coproduct_s(&self) -> TensorComb<Composition, C> {
        self.to_s().apply_rational(s_coproduct_basis)
    }

    /// Coproduct with both tensor factors expressed in the basis of `self`.
    pub fn coproduct(&self) -> TensorComb<Composition, C> {
        let t = self.coproduct_s();
        if self.basis == SymBasis::S {
            return t;
        }
        let basis = self.basis;
        let mut out = LinComb::zero();
        for ((a, b), c) in t.iter() {
            let la = from_s_lc::<Rational>(basis, &LinComb::basis(a.clone()));
            let lb = from_s_lc::<Rational>(basis, &LinComb::basis(b.clone()));
            for (x, cx) in la.iter() {
                for (y, cy) in lb.iter() {
                    out.add_term((x.clone(), y.clone()), c.mul_ref(&C::from_rational(&(cx * cy))));
                }
            }
        }
        out
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive(&self.to_s(), |x| x.apply_rational(s_coproduct_basis))
    }

    /// Label text in the element's notation (sign sequences for signed ribbons).
    pub fn label_string(&self, i: &Composition) -> String {
        label_string(self.basis, i)
    }

    /// `{basis: {label: coeff}}`.
    pub fn to_json_map(&self) -> Value {
        let m: serde_json::Map<String, Value> = self
            .lc
            .iter()
            .map(|(l, c)| (self.label_string(l), c.to_json_compact()))
            .collect();
        json!({ self.basis.name(): m })
    }

    /// `{basis, terms: [{label, coeff}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .lc
            .iter()
            .map(|(l, c)| json!({"label": self.label_string(l), "coeff": c.to_json_compact()}))
            .collect();
        json!({"basis": self.basis.name(), "terms": terms})
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> SymElement<D> {
        SymElement::new(self.basis, self.lc.map_coeffs(f))
    }
}

pub(crate) fn label_string(basis: SymBasis, i: &Composition) -> String {
    match (basis, i.to_signseq()) {
        (SymBasis::SignedR, Some(e)) => e.to_string(),
        _ => i.to_string(),
    }
}

impl<C: Scalar> fmt::Display for SymElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.basis {
            SymBasis::S => "S",
            SymBasis::Lambda => "Λ",
            SymBasis::R | SymBasis::SignedR => "R",
        };
        let named: LinComb<Named, C> = self
            .lc
            .map_labels(|i| Named(format!("{prefix}[{}]", self.label_string(i)), i.grade()));
        write!(f, "{named}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Named(String, usize);

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Parses a label in the notation of the basis.
pub fn parse_label(basis: SymBasis, s: &str) -> Result<Composition> {
    match basis {
        SymBasis::SignedR => {
            let t = s.trim();
            if t.is_empty() || t.chars().all(|c| matches!(c, '+' | '-' | '−' | '•')) {
                Ok(t.parse::<SignSeq>()?.to_composition())
            } else {
                t.parse()
            }
        }
        _ => s.parse(),
    }
}
