//! Quasi-symmetric functions in the monomial and fundamental bases, moulds
//! on compositions, and free quasi-symmetric functions.
//!
//! `M_I` is dual to `S^I` and `F_I` to `R_I`.

mod fqsym;
mod mould;

pub use fqsym::{fqsym_to_qsym, FQSymBasis, FQSymElement};
pub use mould::{Mould, MouldReport};

use std::fmt;
use std::str::FromStr;

use serde_json::Value;

use crate::coeffring::{int, Rational, Scalar};
use crate::combinat::{quasi_shuffle_all, Composition};
use crate::error::{parse_err, HopfError, Result};
use crate::freemod::{LinComb, TensorComb};
use crate::ncsf::{SymBasis, SymElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QSymBasis {
    M,
    F,
}

impl QSymBasis {
    pub fn name(self) -> &'static str {
        match self {
            QSymBasis::M => "M",
            QSymBasis::F => "F",
        }
    }
}

impl fmt::Display for QSymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QSymBasis {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "M" | "m" => Ok(QSymBasis::M),
            "F" | "f" => Ok(QSymBasis::F),
            other => Err(parse_err(other, "unknown QSym basis (M, F)")),
        }
    }
}

/// `M_I M_J` as a sum over the quasi-shuffles of the two words.
pub fn monomial_product(i: &Composition, j: &Composition) -> LinComb<Composition> {
    LinComb::from_labels(
        quasi_shuffle_all(i.parts(), j.parts(), &|a, b| a + b)
            .into_iter()
            .map(|w| Composition::new(w).expect("positive parts")),
    )
}

/// `F_J = Σ M_I` over `I` finer than `J`.
pub fn fundamental_to_monomial(j: &Composition) -> LinComb<Composition> {
    LinComb::from_labels(j.finer())
}

/// `M_I = Σ (-1)^{ℓ(J)-ℓ(I)} F_J` over `J` finer than `I`.
pub fn monomial_to_fundamental(i: &Composition) -> LinComb<Composition> {
    let l = i.len();
    LinComb::from_terms(i.finer().into_iter().map(|j| {
        let s = if (j.len() - l).is_multiple_of(2) { int(1) } else { int(-1) };
        (j, s)
    }))
}

/// Deconcatenation `Δ M_I = Σ_{I = I_1 I_2} M_{I_1} ⊗ M_{I_2}`.
pub fn monomial_coproduct(i: &Composition) -> TensorComb<Composition> {
    let p = i.parts();
    LinComb::from_labels((0..=p.len()).map(|k| (Composition::of(&p[..k]), Composition::of(&p[k..]))))
}

/// Element of QSym in the `M` or `F` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QSymElement<C = Rational> {
    basis: QSymBasis,
    lc: LinComb<Composition, C>,
}

impl<C: Scalar> QSymElement<C> {
    pub fn new(basis: QSymBasis, lc: LinComb<Composition, C>) -> Self {
        QSymElement { basis, lc }
    }

    pub fn zero(basis: QSymBasis) -> Self {
        Self::new(basis, LinComb::zero())
    }

    pub fn one(basis: QSymBasis) -> Self {
        Self::new(basis, LinComb::basis(Composition::empty()))
    }

    pub fn basis_element(basis: QSymBasis, i: Composition) -> Self {
        Self::new(basis, LinComb::basis(i))
    }

    pub fn m(i: &[u32]) -> Self {
        Self::basis_element(QSymBasis::M, Composition::of(i))
    }

    pub fn f(i: &[u32]) -> Self {
        Self::basis_element(QSymBasis::F, Composition::of(i))
    }

    pub fn basis(&self) -> QSymBasis {
        self.basis
    }

    pub fn lincomb(&self) -> &LinComb<Composition, C> {
        &self.lc
    }

    pub fn is_zero(&self) -> bool {
        self.lc.is_zero()
    }

    pub fn coeff(&self, i: &Composition) -> C {
        self.lc.coeff(i)
    }

    fn to_m(&self) -> LinComb<Composition, C> {
        match self.basis {
            QSymBasis::M => self.lc.clone(),
            QSymBasis::F => self.lc.apply_rational(fundamental_to_monomial),
        }
    }

    pub fn convert(&self, target: QSymBasis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let m = self.to_m();
        let lc = match target {
            QSymBasis::M => m,
            QSymBasis::F => m.apply_rational(monomial_to_fundamental),
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

    /// Product, computed in `M` and returned in the basis of `self`.
    pub fn mul(&self, other: &Self) -> Self {
        let lc = self.to_m().bilinear_rational(&other.to_m(), monomial_product);
        Self::new(QSymBasis::M, lc).convert(self.basis)
    }

    /// Coproduct with both factors in the basis of `self`.
    pub fn coproduct(&self) -> TensorComb<Composition, C> {
        let d = self.to_m().apply_rational(monomial_coproduct);
        match self.basis {
            QSymBasis::M => d,
            QSymBasis::F => d.apply_rational(|(a, b)| {
                monomial_to_fundamental(a).tensor(&monomial_to_fundamental(b))
            }),
        }
    }

    /// Duality pairing `⟨M_I, S^J⟩ = δ_{IJ}`, equivalently `⟨F_I, R_J⟩ = δ_{IJ}`.
    pub fn pair(&self, x: &SymElement<C>) -> C {
        self.to_m().pairing_diagonal(&x.to_s())
    }

    pub fn to_json(&self) -> Value {
        self.lc.to_json(self.basis.name())
    }

    pub fn to_json_map(&self) -> Value {
        self.lc.to_json_map(self.basis.name())
    }
}

impl<C: Scalar> fmt::Display for QSymElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lc.render(self.basis.name()))
    }
}

/// Sym element in the `R` basis whose pairing with `F_I` reads off coefficients.
pub fn dual_ribbon<C: Scalar>(x: &QSymElement<C>) -> SymElement<C> {
    SymElement::new(SymBasis::R, x.convert(QSymBasis::F).lc)
}
