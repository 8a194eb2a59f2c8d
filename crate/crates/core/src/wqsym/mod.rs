//! Word quasi-symmetric functions in the `M` and `Φ` bases, the dual basis
//! `N` as target of the embedding of Sym, the tridendriform splitting, the
//! tree basis, and the product of matrix quasi-symmetric functions.

mod mqsym;

pub use mqsym::{mq_mul, mq_product, multiset_of_packed, MQSymElement};

use std::fmt;
use std::str::FromStr;

use serde_json::Value;

use crate::coeffring::{int, Rational, Scalar};
use crate::combinat::{
    pack, quasi_shuffle_all, schroeder_tree, segmented_shifted_shuffle, std, Composition, PackedWord,
    SchroederTree,
};
use crate::error::{parse_err, HopfError, Result};
use crate::freemod::{GradedLabel, LinComb, TensorComb};
use crate::qsym::{QSymBasis, QSymElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WQSymBasis {
    M,
    Phi,
    /// Dual of `M`; only used through pairings.
    N,
}

impl WQSymBasis {
    pub fn name(self) -> &'static str {
        match self {
            WQSymBasis::M => "M",
            WQSymBasis::Phi => "Phi",
            WQSymBasis::N => "N",
        }
    }
}

impl fmt::Display for WQSymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WQSymBasis {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "M" | "m" => Ok(WQSymBasis::M),
            "Phi" | "phi" | "Φ" => Ok(WQSymBasis::Phi),
            "N" | "n" => Ok(WQSymBasis::N),
            other => Err(parse_err(other, "unknown WQSym basis (M, Phi, N)")),
        }
    }
}

/// Convolution `u ∗_W v`: packed words `x·y` with `pack(x) = u`, `pack(y) = v`.
///
/// In set-composition form the blocks of the result are a quasi-shuffle of
/// the blocks of `u` and of `v` shifted by `|u|`.
pub fn wq_m_product(u: &PackedWord, v: &PackedWord) -> LinComb<PackedWord> {
    let n = u.len();
    let bu = u.blocks();
    let bv: Vec<Vec<usize>> = v
        .blocks()
        .into_iter()
        .map(|b| b.into_iter().map(|p| p + n).collect())
        .collect();
    let merge = |a: &Vec<usize>, b: &Vec<usize>| {
        let mut m = a.clone();
        m.extend_from_slice(b);
        m
    };
    LinComb::from_labels(
        quasi_shuffle_all(&bu, &bv, &merge)
            .iter()
            .map(|blocks| PackedWord::from_blocks(blocks).expect("set composition")),
    )
}

/// `Φ_α Φ_β`: segmented shifted shuffle.
pub fn wq_phi_product(a: &PackedWord, b: &PackedWord) -> LinComb<PackedWord> {
    segmented_shifted_shuffle(a, b)
}

/// Packed word of a segmented sequence after standardizing its letters.
fn from_segmented(seq: &[(u8, bool)]) -> PackedWord {
    let letters: Vec<u8> = seq.iter().map(|&(x, _)| x).collect();
    let st = std(&letters);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    for (k, &(_, end)) in seq.iter().enumerate() {
        cur.push(st.as_slice()[k] as usize);
        if end || k + 1 == seq.len() {
            blocks.push(std::mem::take(&mut cur));
        }
    }
    PackedWord::from_blocks(&blocks).expect("standardized blocks")
}

/// `ΔΦ_σ`: cut the segmented permutation at each of its `n + 1` positions
/// (at a bar or inside a block) and standardize both sides.
pub fn wq_phi_coproduct(u: &PackedWord) -> TensorComb<PackedWord> {
    let seg = u.segmented();
    LinComb::from_labels((0..=seg.len()).map(|k| (from_segmented(&seg[..k]), from_segmented(&seg[k..]))))
}

/// `ΔM_w = Σ_k M_{w|≤k} ⊗ M_{pack(w|>k)}`.
pub fn wq_m_coproduct(w: &PackedWord) -> TensorComb<PackedWord> {
    let l = w.letters();
    LinComb::from_labels((0..=w.max()).map(|k| {
        let lo: Vec<u8> = l.iter().copied().filter(|&x| x as usize <= k).collect();
        let hi: Vec<u8> = l.iter().copied().filter(|&x| x as usize > k).collect();
        (PackedWord::of(&lo), pack(&hi))
    }))
}

/// `Φ_u = Σ_{v ⪯ u} M_v`.
pub fn phi_to_m(u: &PackedWord) -> LinComb<PackedWord> {
    LinComb::from_labels(u.finer_words())
}

/// `M_u = Σ_{v ⪯ u} (-1)^{max v - max u} Φ_v`.
pub fn m_to_phi(u: &PackedWord) -> LinComb<PackedWord> {
    let m = u.max();
    LinComb::from_terms(u.finer_words().into_iter().map(|v| {
        let s = if (PackedWord::max(&v) - m).is_multiple_of(2) { int(1) } else { int(-1) };
        (v, s)
    }))
}

/// Which of the three partial products of the tridendriform structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriPart {
    /// `max(first) > max(second)`.
    Left,
    /// Equal maxima.
    Middle,
    /// `max(first) < max(second)`.
    Right,
}

impl TriPart {
    pub const ALL: [TriPart; 3] = [TriPart::Left, TriPart::Middle, TriPart::Right];

    pub fn name(self) -> &'static str {
        match self {
            TriPart::Left => "left",
            TriPart::Middle => "middle",
            TriPart::Right => "right",
        }
    }
}

/// Part of `M_u M_v` selected by comparing the largest letters of the two halves.
pub fn tri_part(u: &PackedWord, v: &PackedWord, part: TriPart) -> Result<LinComb<PackedWord>> {
    if u.is_empty() || v.is_empty() {
        return Err(HopfError::EmptyFactor);
    }
    let n = u.len();
    Ok(wq_m_product(u, v).filter(|w| {
        let l = w.letters();
        let (a, b) = (l[..n].iter().max(), l[n..].iter().max());
        match part {
            TriPart::Left => a > b,
            TriPart::Middle => a == b,
            TriPart::Right => a < b,
        }
    }))
}

/// The three pieces `(≺, ∘, ≻)` of `M_u M_v`.
pub fn tridendriform_split(u: &PackedWord, v: &PackedWord) -> Result<[LinComb<PackedWord>; 3]> {
    Ok([
        tri_part(u, v, TriPart::Left)?,
        tri_part(u, v, TriPart::Middle)?,
        tri_part(u, v, TriPart::Right)?,
    ])
}

/// Bilinear extension of a partial product to combinations without constant term.
pub fn tri_product(x: &LinComb<PackedWord>, y: &LinComb<PackedWord>, part: TriPart) -> Result<LinComb<PackedWord>> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&tri_part(a, b, part)?, &(ca * cb));
        }
    }
    Ok(out)
}

/// `𝕄_T = Σ_{𝕋(u) = T} M_u`.
pub fn tree_basis(t: &SchroederTree) -> WQSymElement {
    let n = t.leaves().saturating_sub(1);
    let lc = LinComb::from_labels(
        PackedWord::all(n)
            .into_iter()
            .filter(|u| schroeder_tree(u.letters()) == *t),
    );
    WQSymElement::new(WQSymBasis::M, lc)
}

/// Dual embedding of Sym: `S^I ↦ Σ_{ev(u) = I} N_u`.
pub fn embed_sym_dual(i: &Composition) -> WQSymElement {
    let lc = LinComb::from_labels(PackedWord::all(i.weight()).into_iter().filter(|u| u.ev() == *i));
    WQSymElement::new(WQSymBasis::N, lc)
}

/// Element of WQSym (or of its dual, for the `N` basis).
#[derive(Clone, Debug, PartialEq)]
pub struct WQSymElement<C = Rational> {
    basis: WQSymBasis,
    lc: LinComb<PackedWord, C>,
}

fn dual_only() -> HopfError {
    HopfError::Invalid("the N basis lives in the dual and only pairs with M".into())
}

impl<C: Scalar> WQSymElement<C> {
    pub fn new(basis: WQSymBasis, lc: LinComb<PackedWord, C>) -> Self {
        WQSymElement { basis, lc }
    }

    pub fn basis_element(basis: WQSymBasis, u: PackedWord) -> Self {
        Self::new(basis, LinComb::basis(u))
    }

    pub fn m(u: &[u8]) -> Self {
        Self::basis_element(WQSymBasis::M, PackedWord::of(u))
    }

    pub fn phi(u: &[u8]) -> Self {
        Self::basis_element(WQSymBasis::Phi, PackedWord::of(u))
    }

    pub fn one(basis: WQSymBasis) -> Self {
        Self::basis_element(basis, PackedWord::empty())
    }

    pub fn basis(&self) -> WQSymBasis {
        self.basis
    }

    pub fn lincomb(&self) -> &LinComb<PackedWord, C> {
        &self.lc
    }

    pub fn is_zero(&self) -> bool {
        self.lc.is_zero()
    }

    pub fn convert(&self, target: WQSymBasis) -> Result<Self> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let lc = match (self.basis, target) {
            (WQSymBasis::M, WQSymBasis::Phi) => self.lc.apply_rational(m_to_phi),
            (WQSymBasis::Phi, WQSymBasis::M) => self.lc.apply_rational(phi_to_m),
            _ => return Err(dual_only()),
        };
        Ok(Self::new(target, lc))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(self.basis, self.lc.add(&other.convert(self.basis)?.lc)))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.basis, self.lc.scale(c))
    }

    /// Product in the basis of `self`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let rhs = other.convert(self.basis)?;
        let lc = match self.basis {
            WQSymBasis::M => self.lc.bilinear_rational(&rhs.lc, wq_m_product),
            WQSymBasis::Phi => self.lc.bilinear_rational(&rhs.lc, wq_phi_product),
            WQSymBasis::N => return Err(dual_only()),
        };
        Ok(Self::new(self.basis, lc))
    }

    /// Coproduct with both factors in the basis of `self`.
    pub fn coproduct(&self) -> Result<TensorComb<PackedWord, C>> {
        match self.basis {
            WQSymBasis::M => Ok(self.lc.apply_rational(wq_m_coproduct)),
            WQSymBasis::Phi => Ok(self.lc.apply_rational(wq_phi_coproduct)),
            WQSymBasis::N => Err(dual_only()),
        }
    }

    /// `⟨N_u, M_v⟩ = δ_{uv}`; `self` must be in `N`, the other side in `M` or `Φ`.
    pub fn pair(&self, x: &Self) -> Result<C> {
        if self.basis != WQSymBasis::N {
            return Err(HopfError::Invalid("left side of the pairing must be in N".into()));
        }
        Ok(self.lc.pairing_diagonal(&x.convert(WQSymBasis::M)?.lc))
    }

    /// Commutative image in QSym: `M_u ↦ M_{ev(u)}`, `Φ_u ↦ F_{ev(u)}`.
    pub fn commutative_image(&self) -> Result<QSymElement<C>> {
        let basis = match self.basis {
            WQSymBasis::M => QSymBasis::M,
            WQSymBasis::Phi => QSymBasis::F,
            WQSymBasis::N => return Err(dual_only()),
        };
        Ok(QSymElement::new(basis, self.lc.map_labels(PackedWord::ev)))
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.lc.max_grade()?;
        self.lc.is_homogeneous(d).then_some(d)
    }

    pub fn to_json(&self) -> Value {
        self.lc.to_json(self.basis.name())
    }

    pub fn to_json_map(&self) -> Value {
        self.lc.to_json_map(self.basis.name())
    }
}

impl<C: Scalar> fmt::Display for WQSymElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lc.render(self.basis.name()))
    }
}

impl GradedLabel for SchroederTree {
    fn grade(&self) -> usize {
        self.leaves().saturating_sub(1)
    }
    fn unit() -> Self {
        SchroederTree::Leaf
    }
}

#[cfg(test)]
mod tests;
