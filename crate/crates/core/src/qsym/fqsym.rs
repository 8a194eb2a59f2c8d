use std::fmt;

use serde_json::Value;

use super::{QSymBasis, QSymElement};
use crate::coeffring::{Rational, Scalar};
use crate::combinat::{shifted_shuffle_perm, Permutation};
use crate::freemod::LinComb;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FQSymBasis {
    F,
    G,
}

/// Element of FQSym; `G_σ = F_{σ^{-1}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FQSymElement<C = Rational> {
    basis: FQSymBasis,
    lc: LinComb<Permutation, C>,
}

impl<C: Scalar> FQSymElement<C> {
    pub fn new(basis: FQSymBasis, lc: LinComb<Permutation, C>) -> Self {
        FQSymElement { basis, lc }
    }

    pub fn f(p: &[u8]) -> Self {
        Self::new(FQSymBasis::F, LinComb::basis(Permutation::of(p)))
    }

    pub fn g(p: &[u8]) -> Self {
        Self::new(FQSymBasis::G, LinComb::basis(Permutation::of(p)))
    }

    pub fn basis(&self) -> FQSymBasis {
        self.basis
    }

    pub fn lincomb(&self) -> &LinComb<Permutation, C> {
        &self.lc
    }

    pub fn convert(&self, target: FQSymBasis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        Self::new(target, self.lc.map_labels(Permutation::inverse))
    }

    /// `F_α F_β = Σ_{γ ∈ α ⋒ β} F_γ`; the result is in the basis of `self`.
    pub fn mul(&self, other: &Self) -> Self {
        let a = self.convert(FQSymBasis::F);
        let b = other.convert(FQSymBasis::F);
        let lc = a.lc.bilinear_rational(&b.lc, shifted_shuffle_perm);
        Self::new(FQSymBasis::F, lc).convert(self.basis)
    }

    pub fn to_json(&self) -> Value {
        let name = match self.basis {
            FQSymBasis::F => "F",
            FQSymBasis::G => "G",
        };
        self.lc.to_json(name)
    }
}

impl<C: Scalar> fmt::Display for FQSymElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.basis {
            FQSymBasis::F => "F",
            FQSymBasis::G => "G",
        };
        f.write_str(&self.lc.render(p))
    }
}

/// Commutative projection `F_σ ↦ F_{C(σ)}`.
pub fn fqsym_to_qsym<C: Scalar>(x: &FQSymElement<C>) -> QSymElement<C> {
    let f = x.convert(FQSymBasis::F);
    QSymElement::new(QSymBasis::F, f.lc.map_labels(Permutation::descent_composition))
}
