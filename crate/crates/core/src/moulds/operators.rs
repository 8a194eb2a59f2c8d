//! The operators `M_u` acting on finitely supported sequences on the integers.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::Value;

use crate::coeffring::{Rational, Scalar};
use crate::combinat::PackedWord;
use crate::cones::IdentityReport;
use crate::error::{HopfError, Result};
use crate::wqsym::{tri_part, TriPart};

/// Finitely supported function `Z → Q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiscreteSeq(BTreeMap<i64, Rational>);

impl DiscreteSeq {
    pub fn zero() -> Self {
        DiscreteSeq(BTreeMap::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut m = BTreeMap::new();
        for (t, c) in pairs {
            if !c.is_zero() {
                m.insert(t, c);
            }
        }
        DiscreteSeq(m)
    }

    /// Indicator of `{t}`.
    pub fn delta(t: i64) -> Self {
        Self::from_pairs([(t, Rational::one())])
    }

    /// Indicator of `[lo, hi]`.
    pub fn indicator(lo: i64, hi: i64) -> Self {
        Self::from_pairs((lo..=hi).map(|t| (t, Rational::one())))
    }

    /// Integer values in `[-3, 3]` at each point of `[lo, hi]`.
    pub fn random(rng: &mut impl Rng, lo: i64, hi: i64) -> Self {
        Self::from_pairs((lo..=hi).map(|t| (t, Rational::from_integer(rng.random_range(-3i64..=3).into()))))
    }

    pub fn get(&self, t: i64) -> Rational {
        self.0.get(&t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.keys().copied()
    }

    pub fn min_support(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_support(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.0.iter().map(|(t, c)| (t.to_string(), c.to_json_compact())).collect())
    }
}

/// Values of a sequence on `[lo, hi]`; it vanishes below `lo`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
    pub vals: Vec<Rational>,
}

impl Window {
    fn empty(hi: i64) -> Self {
        Window {
            lo: hi + 1,
            hi,
            vals: Vec::new(),
        }
    }

    /// Value at `t ≤ hi`.
    pub fn at(&self, t: i64) -> Rational {
        assert!(t <= self.hi, "{t} beyond window end {}", self.hi);
        if t < self.lo {
            Rational::zero()
        } else {
            self.vals[(t - self.lo) as usize].clone()
        }
    }
}

/// Expression built from the summation operator `M`, the difference `Δ`,
/// pointwise products and sums of the argument functions `f_1, f_2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Leaf(usize),
    M(Box<OperatorExpr>),
    Delta(Box<OperatorExpr>),
    Product(Vec<OperatorExpr>),
    Sum(Vec<OperatorExpr>),
}

impl OperatorExpr {
    pub fn m(x: OperatorExpr) -> Self {
        OperatorExpr::M(Box::new(x))
    }

    pub fn delta(x: OperatorExpr) -> Self {
        OperatorExpr::Delta(Box::new(x))
    }

    /// Largest leaf index.
    pub fn arity(&self) -> usize {
        match self {
            OperatorExpr::Leaf(i) => *i,
            OperatorExpr::M(x) | OperatorExpr::Delta(x) => x.arity(),
            OperatorExpr::Product(xs) | OperatorExpr::Sum(xs) => xs.iter().map(Self::arity).max().unwrap_or(0),
        }
    }

    /// Values on `(-∞, hi]`. `M[g](t) = Σ_{n ≥ 1} g(t - n)` and `Δg(t) = g(t+1) - g(t)`.
    pub fn eval_window(&self, fs: &[DiscreteSeq], hi: i64) -> Result<Window> {
        match self {
            OperatorExpr::Leaf(i) => {
                let f = fs.get(i.wrapping_sub(1)).ok_or(HopfError::Arity {
                    expected: *i,
                    got: fs.len(),
                })?;
                let lo = match f.min_support() {
                    Some(lo) if lo <= hi => lo,
                    _ => return Ok(Window::empty(hi)),
                };
                Ok(Window {
                    lo,
                    hi,
                    vals: (lo..=hi).map(|t| f.get(t)).collect(),
                })
            }
            OperatorExpr::M(x) => {
                let g = x.eval_window(fs, hi)?;
                let lo = g.lo + 1;
                if lo > hi {
                    return Ok(Window::empty(hi));
                }
                let mut acc = Rational::zero();
                let mut vals = Vec::with_capacity((hi - lo + 1) as usize);
                for t in lo..=hi {
                    acc += g.at(t - 1);
                    vals.push(acc.clone());
                }
                Ok(Window { lo, hi, vals })
            }
            OperatorExpr::Delta(x) => {
                let g = x.eval_window(fs, hi + 1)?;
                let lo = (g.lo - 1).min(hi + 1);
                Ok(Window {
                    lo,
                    hi,
                    vals: (lo..=hi).map(|t| g.at(t + 1) - g.at(t)).collect(),
                })
            }
            OperatorExpr::Product(xs) => {
                let ws: Vec<Window> = xs.iter().map(|x| x.eval_window(fs, hi)).collect::<Result<_>>()?;
                let lo = ws.iter().map(|w| w.lo).max().unwrap_or(i64::MIN).min(hi + 1);
                if ws.is_empty() {
                    return Err(HopfError::Invalid("empty product has unbounded support".into()));
                }
                Ok(Window {
                    lo,
                    hi,
                    vals: (lo..=hi)
                        .map(|t| ws.iter().fold(Rational::one(), |a, w| a * w.at(t)))
                        .collect(),
                })
            }
            OperatorExpr::Sum(xs) => {
                let ws: Vec<Window> = xs.iter().map(|x| x.eval_window(fs, hi)).collect::<Result<_>>()?;
                let lo = ws.iter().map(|w| w.lo).min().unwrap_or(hi + 1);
                Ok(Window {
                    lo,
                    hi,
                    vals: (lo..=hi)
                        .map(|t| ws.iter().fold(Rational::zero(), |a, w| a + w.at(t)))
                        .collect(),
                })
            }
        }
    }

    pub fn eval(&self, fs: &[DiscreteSeq], t: i64) -> Result<Rational> {
        Ok(self.eval_window(fs, t)?.at(t))
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorExpr::Leaf(i) => write!(f, "f{i}"),
            OperatorExpr::M(x) => write!(f, "M[{x}]"),
            OperatorExpr::Delta(x) => write!(f, "D[{x}]"),
            OperatorExpr::Product(xs) => xs.iter().try_for_each(|x| write!(f, "{x}")),
            OperatorExpr::Sum(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(" + "))
            }
        }
    }
}

/// `M_u[f_1, ..., f_n](t) = Σ_{α < 0, pack(α) = u} Π_i f_i(t + α_i)`.
///
/// With `β_1 < ... < β_m < 0` the values taken by `α`, block `j` contributes
/// only where every one of its functions is nonzero, so the sum is finite.
pub fn op_eval(u: &PackedWord, fs: &[DiscreteSeq], t: i64) -> Result<Rational> {
    if fs.len() != u.len() {
        return Err(HopfError::Arity {
            expected: u.len(),
            got: fs.len(),
        });
    }
    let blocks = u.blocks();
    // candidate offsets for each block, increasing
    let cands: Vec<Vec<(i64, Rational)>> = blocks
        .iter()
        .map(|b| {
            fs[b[0] - 1]
                .support()
                .map(|s| s - t)
                .filter(|&beta| beta < 0)
                .filter_map(|beta| {
                    let v = b.iter().fold(Rational::one(), |a, &i| a * fs[i - 1].get(t + beta));
                    (!v.is_zero()).then_some((beta, v))
                })
                .collect()
        })
        .collect();
    // partial[j][i]: sum over β_j = cands[j][i] < β_{j+1} < ... of the remaining product
    let m = blocks.len();
    if m == 0 {
        return Ok(Rational::one());
    }
    let mut next: Vec<(i64, Rational)> = cands[m - 1].clone();
    for j in (0..m - 1).rev() {
        // suffix sums of `next` over offsets strictly greater than β
        let mut cur = Vec::with_capacity(cands[j].len());
        for (beta, v) in &cands[j] {
            let tail = next
                .iter()
                .filter(|(b, _)| b > beta)
                .fold(Rational::zero(), |a, (_, w)| a + w);
            if !tail.is_zero() {
                cur.push((*beta, v * tail));
            }
        }
        next = cur;
    }
    Ok(next.into_iter().fold(Rational::zero(), |a, (_, v)| a + v))
}

/// `M_u = [...[[b_1] b_2] ... b_m]` with `b_i` the product of the functions of
/// block `i` and `[x] = M[x]`.
pub fn decompose(u: &PackedWord) -> OperatorExpr {
    decompose_shifted(u, 0)
}

/// [`decompose`] acting on `f_{offset+1}, ..., f_{offset+n}`.
pub fn decompose_shifted(u: &PackedWord, offset: usize) -> OperatorExpr {
    let mut acc: Option<OperatorExpr> = None;
    for block in u.blocks() {
        let mut factors: Vec<OperatorExpr> = acc.into_iter().collect();
        factors.extend(block.iter().map(|&i| OperatorExpr::Leaf(i + offset)));
        let inner = if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            OperatorExpr::Product(factors)
        };
        acc = Some(OperatorExpr::m(inner));
    }
    acc.unwrap_or(OperatorExpr::Product(Vec::new()))
}

/// `M[f_1 M[f_2] + M[f_1] f_2 + f_1 f_2] = M[f_1] M[f_2]` on `[lo, hi]`.
pub fn rb_operator_check(f1: &DiscreteSeq, f2: &DiscreteSeq, lo: i64, hi: i64) -> IdentityReport {
    use OperatorExpr::*;
    let (a, b) = (Leaf(1), Leaf(2));
    let lhs = OperatorExpr::m(Sum(vec![
        Product(vec![a.clone(), OperatorExpr::m(b.clone())]),
        Product(vec![OperatorExpr::m(a.clone()), b.clone()]),
        Product(vec![a.clone(), b.clone()]),
    ]));
    let rhs = Product(vec![OperatorExpr::m(a), OperatorExpr::m(b)]);
    window_check(&lhs, &rhs, &[f1.clone(), f2.clone()], lo, hi)
}

fn window_check(lhs: &OperatorExpr, rhs: &OperatorExpr, fs: &[DiscreteSeq], lo: i64, hi: i64) -> IdentityReport {
    let (l, r) = (lhs.eval_window(fs, hi).expect("arity"), rhs.eval_window(fs, hi).expect("arity"));
    for t in lo..=hi {
        if l.at(t) != r.at(t) {
            return IdentityReport {
                pass: false,
                points_checked: (t - lo + 1) as u64,
                counterexample: Some(vec![Rational::from_integer(t.into())]),
            };
        }
    }
    IdentityReport {
        pass: true,
        points_checked: (hi - lo + 1).max(0) as u64,
        counterexample: None,
    }
}

/// Operator form of the partial products:
/// `≻ ↦ M[M_u Δ M_v]`, `≺ ↦ M[Δ M_u M_v]`, `∘ ↦ M[Δ M_u Δ M_v]`.
pub fn tridendriform_op(part: TriPart, u: &PackedWord, v: &PackedWord) -> Result<OperatorExpr> {
    if u.is_empty() || v.is_empty() {
        return Err(HopfError::EmptyFactor);
    }
    let (a, b) = (decompose(u), decompose_shifted(v, u.len()));
    let inner = match part {
        TriPart::Right => vec![a, OperatorExpr::delta(b)],
        TriPart::Left => vec![OperatorExpr::delta(a), b],
        TriPart::Middle => vec![OperatorExpr::delta(a), OperatorExpr::delta(b)],
    };
    Ok(OperatorExpr::m(OperatorExpr::Product(inner)))
}

/// The operator form of each partial product equals `Σ_w M_w` over the
/// symbolic split, at every `t` of `[lo, hi]`.
pub fn tridendriform_op_check(
    part: TriPart,
    u: &PackedWord,
    v: &PackedWord,
    fs: &[DiscreteSeq],
    lo: i64,
    hi: i64,
) -> Result<IdentityReport> {
    let lhs = tridendriform_op(part, u, v)?;
    let terms = tri_part(u, v, part)?;
    let words: Vec<(PackedWord, Rational)> = terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
    let win = lhs.eval_window(fs, hi)?;
    for t in lo..=hi {
        let mut rhs = Rational::zero();
        for (w, c) in &words {
            rhs += c * op_eval(w, fs, t)?;
        }
        if win.at(t) != rhs {
            return Ok(IdentityReport {
                pass: false,
                points_checked: (t - lo + 1) as u64,
                counterexample: Some(vec![Rational::from_integer(t.into())]),
            });
        }
    }
    Ok(IdentityReport {
        pass: true,
        points_checked: (hi - lo + 1).max(0) as u64,
        counterexample: None,
    })
}
