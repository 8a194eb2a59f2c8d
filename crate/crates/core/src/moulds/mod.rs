//! Rational moulds of packed words, their shifted product, the partial
//! compositions of the operad of rational functions, tree moulds and the
//! characters obtained by evaluating the associated operators.

mod characters;
mod operators;

pub use characters::{natural_character, qint_character};
pub use operators::{
    decompose, decompose_shifted, op_eval, rb_operator_check, tridendriform_op, tridendriform_op_check,
    DiscreteSeq, OperatorExpr, Window,
};

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::coeffring::{MultiPoly, PolyFraction, Rational, Var};
use crate::combinat::{PackedWord, SchroederTree};
use crate::cones::IdentityReport;
use crate::error::{HopfError, Result};
use crate::freemod::LinComb;
use crate::sampling::shard_rng;
use crate::wqsym::{tree_basis, wq_m_product};

/// A rational function of `z_1, ..., z_arity`, kept as an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum RationalMould {
    /// `M_u(Z) = Π_k 1/(z^{B_1 ∪ ... ∪ B_k} - 1)`.
    Basis(PackedWord),
    /// `Π_{internal nodes} 1/(Π_{sectors below} z - 1)`.
    Tree(SchroederTree),
    /// Linear combination of moulds of a common arity.
    Linear(usize, Vec<(Rational, RationalMould)>),
    /// `f(z_1..z_p) g(z_{p+1}..z_{p+q})`.
    Star(Box<RationalMould>, Box<RationalMould>),
    /// `P ∘_k Q`.
    Compose(Box<RationalMould>, usize, Box<RationalMould>),
}

pub fn mould_m(u: &PackedWord) -> RationalMould {
    RationalMould::Basis(u.clone())
}

pub fn tree_mould(t: &SchroederTree) -> RationalMould {
    RationalMould::Tree(t.clone())
}

fn product(xs: impl IntoIterator<Item = Rational>) -> Rational {
    xs.into_iter().fold(Rational::one(), |a, b| a * b)
}

fn pole(what: &str) -> HopfError {
    HopfError::Pole { den: what.to_string() }
}

impl RationalMould {
    /// Linear combination of basis moulds.
    pub fn from_lincomb(arity: usize, x: &LinComb<PackedWord>) -> Self {
        RationalMould::Linear(arity, x.iter().map(|(u, c)| (c.clone(), mould_m(u))).collect())
    }

    pub fn star(self, other: RationalMould) -> Self {
        RationalMould::Star(Box::new(self), Box::new(other))
    }

    /// `self ∘_k other`, with `1 ≤ k ≤ arity(self)`.
    pub fn compose(self, k: usize, other: RationalMould) -> Result<Self> {
        if k == 0 || k > self.arity() {
            return Err(HopfError::OutOfRange(format!("k = {k} not in 1..={}", self.arity())));
        }
        Ok(RationalMould::Compose(Box::new(self), k, Box::new(other)))
    }

    pub fn arity(&self) -> usize {
        match self {
            RationalMould::Basis(u) => u.len(),
            RationalMould::Tree(t) => t.leaves() - 1,
            RationalMould::Linear(n, _) => *n,
            RationalMould::Star(a, b) => a.arity() + b.arity(),
            RationalMould::Compose(a, _, b) => a.arity() + b.arity() - 1,
        }
    }

    /// Exact value at `z = point`.
    pub fn eval(&self, z: &[Rational]) -> Result<Rational> {
        if z.len() != self.arity() {
            return Err(HopfError::Arity {
                expected: self.arity(),
                got: z.len(),
            });
        }
        match self {
            RationalMould::Basis(u) => {
                let mut acc = Rational::one();
                let mut den = Rational::one();
                for block in u.blocks() {
                    acc *= product(block.iter().map(|&i| z[i - 1].clone()));
                    let d = &acc - Rational::one();
                    if d.is_zero() {
                        return Err(pole(&format!("prefix product of M_{u}")));
                    }
                    den *= d;
                }
                Ok(den.recip())
            }
            RationalMould::Tree(t) => {
                let mut den = Rational::one();
                for sectors in t.node_sectors() {
                    let d = product(sectors.iter().map(|&i| z[i - 1].clone())) - Rational::one();
                    if d.is_zero() {
                        return Err(pole(&format!("node of {t}")));
                    }
                    den *= d;
                }
                Ok(den.recip())
            }
            RationalMould::Linear(_, terms) => {
                let mut s = Rational::zero();
                for (c, m) in terms {
                    s += c * m.eval(z)?;
                }
                Ok(s)
            }
            RationalMould::Star(a, b) => {
                let p = a.arity();
                Ok(a.eval(&z[..p])? * b.eval(&z[p..])?)
            }
            RationalMould::Compose(a, k, b) => {
                let n = b.arity();
                let window = &z[k - 1..k - 1 + n];
                let merged = product(window.iter().cloned());
                let mut outer: Vec<Rational> = z[..k - 1].to_vec();
                outer.push(merged.clone());
                outer.extend_from_slice(&z[k - 1 + n..]);
                Ok((merged - Rational::one()) * a.eval(&outer)? * b.eval(window)?)
            }
        }
    }

    /// Closed form as a fraction, for basis and tree moulds.
    pub fn closed_form(&self) -> Option<PolyFraction> {
        let zvar = |i: usize| MultiPoly::var(Var::Z(i as u32));
        let one = MultiPoly::from_int(1);
        let den = match self {
            RationalMould::Basis(u) => {
                let mut acc = one.clone();
                let mut den = one.clone();
                for block in u.blocks() {
                    for i in block {
                        acc = acc.mul(&zvar(i));
                    }
                    den = den.mul(&acc.sub(&one));
                }
                den
            }
            RationalMould::Tree(t) => t.node_sectors().iter().fold(one.clone(), |d, s| {
                let p = s.iter().fold(one.clone(), |a, &i| a.mul(&zvar(i)));
                d.mul(&p.sub(&one))
            }),
            _ => return None,
        };
        PolyFraction::new(one, den).ok()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"expr": self.to_string(), "arity": self.arity()});
        if let Some(f) = self.closed_form() {
            v["closed_form"] = json!(f.to_string());
        }
        v
    }
}

impl fmt::Display for RationalMould {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalMould::Basis(u) => write!(f, "M_{u}"),
            RationalMould::Tree(t) => write!(f, "MM_{t}"),
            RationalMould::Linear(_, terms) => {
                if terms.is_empty() {
                    return f.write_str("0");
                }
                for (i, (c, m)) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    if c.is_one() {
                        write!(f, "{m}")?;
                    } else {
                        write!(f, "{c}*{m}")?;
                    }
                }
                Ok(())
            }
            RationalMould::Star(a, b) => write!(f, "({a} * {b})"),
            RationalMould::Compose(a, k, b) => write!(f, "({a} o{k} {b})"),
        }
    }
}

const RETRY_BUDGET: usize = 1000;

/// Point with integer coordinates in `[lo, hi]`.
fn int_point(rng: &mut impl Rng, dim: usize, lo: i64, hi: i64) -> Vec<Rational> {
    (0..dim)
        .map(|_| Rational::from_integer(rng.random_range(lo..=hi).into()))
        .collect()
}

/// Compares two evaluators at `trials` random points drawn by `draw`,
/// redrawing on poles.
fn random_check(
    trials: usize,
    seed: u64,
    draw: impl Fn(&mut rand_chacha::ChaCha8Rng) -> Vec<Rational>,
    lhs: impl Fn(&[Rational]) -> Result<Rational>,
    rhs: impl Fn(&[Rational]) -> Result<Rational>,
) -> Result<IdentityReport> {
    let mut rng = shard_rng(seed, 0);
    for t in 0..trials {
        let mut attempts = 0;
        let (x, l, r) = loop {
            let x = draw(&mut rng);
            match (lhs(&x), rhs(&x)) {
                (Ok(l), Ok(r)) => break (x, l, r),
                (Err(HopfError::Pole { .. }), _) | (_, Err(HopfError::Pole { .. })) => {
                    attempts += 1;
                    if attempts >= RETRY_BUDGET {
                        return Err(HopfError::RetryExhausted(RETRY_BUDGET));
                    }
                }
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        };
        if l != r {
            return Ok(IdentityReport {
                pass: false,
                points_checked: t as u64 + 1,
                counterexample: Some(x),
            });
        }
    }
    Ok(IdentityReport {
        pass: true,
        points_checked: trials as u64,
        counterexample: None,
    })
}

/// `P = Q` at random integer points with coordinates in `[2, 50]`, where every
/// Laurent expansion around infinity converges.
pub fn mould_identity_check(p: &RationalMould, q: &RationalMould, trials: usize, seed: u64) -> Result<IdentityReport> {
    if p.arity() != q.arity() {
        return Err(HopfError::Arity {
            expected: p.arity(),
            got: q.arity(),
        });
    }
    let n = p.arity();
    random_check(trials, seed, |rng| int_point(rng, n, 2, 50), |x| p.eval(x), |x| q.eval(x))
}

/// `M_u ⋆ M_v = Σ_w c_w M_w` with `c` from the `M` product of WQSym.
pub fn mould_star_check(u: &PackedWord, v: &PackedWord, trials: usize, seed: u64) -> Result<IdentityReport> {
    let lhs = mould_m(u).star(mould_m(v));
    let rhs = RationalMould::from_lincomb(u.len() + v.len(), &wq_m_product(u, v));
    mould_identity_check(&lhs, &rhs, trials, seed)
}

/// `MM_T = Σ_{tree(u) = T} M_u`.
pub fn tree_mould_check(t: &SchroederTree, trials: usize, seed: u64) -> Result<IdentityReport> {
    let rhs = RationalMould::from_lincomb(t.leaves() - 1, tree_basis(t).lincomb());
    mould_identity_check(&tree_mould(t), &rhs, trials, seed)
}

/// `M_u ∘_k M_v` as a multiplicity-free sum of `M_w`.
///
/// Expanding both operators as lattice sums, `w` ranges over the packed words
/// of length `|u| + |v| - 1` in which the window `k..k+|v|-1` carries a copy
/// of `v` whose maximal letters share one value `x`, every other letter of the
/// window is below `x`, and collapsing the window to `x` gives back `u`.
pub fn operad_compose(u: &PackedWord, k: usize, v: &PackedWord) -> Result<LinComb<PackedWord>> {
    let (m, n) = (u.len(), v.len());
    if k == 0 || k > m {
        return Err(HopfError::OutOfRange(format!("k = {k} not in 1..={m}")));
    }
    if n == 0 {
        return Err(HopfError::EmptyFactor);
    }
    let vmax = v.max() as u8;
    let top: Vec<usize> = (0..n).filter(|&j| v.letters()[j] == vmax).collect();
    let low: Vec<usize> = (0..n).filter(|&j| v.letters()[j] != vmax).collect();
    let v_low = crate::combinat::pack(&low.iter().map(|&j| v.letters()[j]).collect::<Vec<_>>());
    let start = k - 1;
    let keep = |w: &PackedWord| -> bool {
        let l = w.letters();
        let x = l[start + top[0]];
        if top.iter().any(|&j| l[start + j] != x) || low.iter().any(|&j| l[start + j] >= x) {
            return false;
        }
        let low_w: Vec<u8> = low.iter().map(|&j| l[start + j]).collect();
        if crate::combinat::pack(&low_w) != v_low {
            return false;
        }
        let mut collapsed: Vec<u8> = l[..start].to_vec();
        collapsed.push(x);
        collapsed.extend_from_slice(&l[start + n..]);
        crate::combinat::pack(&collapsed) == *u
    };
    Ok(LinComb::from_labels(
        PackedWord::all(m + n - 1).into_iter().filter(keep),
    ))
}

/// `P ∘_k Q` by the substitution-and-prefactor formula.
pub fn operad_compose_rational(p: &RationalMould, k: usize, q: &RationalMould) -> Result<RationalMould> {
    p.clone().compose(k, q.clone())
}

/// The symbolic and rational partial compositions agree.
pub fn operad_check(u: &PackedWord, k: usize, v: &PackedWord, trials: usize, seed: u64) -> Result<IdentityReport> {
    let sym = operad_compose(u, k, v)?;
    let lhs = operad_compose_rational(&mould_m(u), k, &mould_m(v))?;
    let rhs = RationalMould::from_lincomb(lhs.arity(), &sym);
    mould_identity_check(&lhs, &rhs, trials, seed)
}

/// `P'(x) = (Π (x_i + 1) - 1) P(x_1 + 1, ..., x_n + 1)`.
pub fn loday_transform(p: &RationalMould, x: &[Rational]) -> Result<Rational> {
    let z: Vec<Rational> = x.iter().map(|v| v + Rational::one()).collect();
    Ok((product(z.iter().cloned()) - Rational::one()) * p.eval(&z)?)
}

/// `(P ∘_k Q)' = P' ∘'_k Q'`, where `∘'` substitutes `θ(x) = Π (x_i + 1) - 1`
/// and multiplies by `Q'`.
pub fn loday_check(p: &RationalMould, k: usize, q: &RationalMould, trials: usize, seed: u64) -> Result<IdentityReport> {
    let composed = p.clone().compose(k, q.clone())?;
    let n = q.arity();
    let dim = composed.arity();
    random_check(
        trials,
        seed,
        |rng| int_point(rng, dim, 1, 50),
        |x| loday_transform(&composed, x),
        |x| {
            let window = &x[k - 1..k - 1 + n];
            let theta = product(window.iter().map(|v| v + Rational::one())) - Rational::one();
            let mut outer: Vec<Rational> = x[..k - 1].to_vec();
            outer.push(theta);
            outer.extend_from_slice(&x[k - 1 + n..]);
            Ok(loday_transform(p, &outer)? * loday_transform(q, window)?)
        },
    )
}

#[cfg(test)]
mod tests;
