//! Polyhedral cones attached to packed words and multiset compositions, and
//! exact pointwise checks of the product identities for their indicator
//! functions.

mod ipt;

pub use ipt::{
    ipt_box, ipt_star_check, rational_fn, star_identity_random_check, RationalConeFn, TruncatedLaurent,
};

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coeffring::{Rational, Scalar};
use crate::combinat::{Composition, MultisetComposition, PackedWord};
use crate::error::{parse_err, HopfError, Result};
use crate::freemod::LinComb;
use crate::sampling::{random_rational_point, shard_rng};
use crate::wqsym::{mq_product, wq_m_product, wq_phi_product};

/// `c · x ≥ 0`, or `c · x < 0` when strict.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<i64>,
    pub strict: bool,
}

impl Constraint {
    fn value_int(&self, x: &[i64]) -> i64 {
        self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    fn holds_int(&self, x: &[i64]) -> bool {
        let s = self.value_int(x);
        if self.strict {
            s < 0
        } else {
            s >= 0
        }
    }

    fn holds_f64(&self, x: &[f64]) -> bool {
        let s: f64 = self.coeffs.iter().zip(x).map(|(&c, &v)| c as f64 * v).sum();
        if self.strict {
            s < 0.0
        } else {
            s >= 0.0
        }
    }

    fn holds(&self, x: &[Rational]) -> bool {
        let mut s = Rational::zero();
        for (c, v) in self.coeffs.iter().zip(x) {
            if *c != 0 {
                s += v * Rational::from_integer((*c).into());
            }
        }
        if self.strict {
            s < Rational::zero()
        } else {
            s >= Rational::zero()
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            write!(f, "x{}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(if self.strict { " < 0" } else { " >= 0" })
    }
}

/// Ordered list of linear constraints on `R^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl Cone {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if let Some(c) = constraints.iter().find(|c| c.coeffs.len() != dim) {
            return Err(HopfError::Dimension {
                expected: dim,
                got: c.coeffs.len(),
            });
        }
        Ok(Cone { dim, constraints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Membership of an integer point (dimension assumed to match).
    pub fn contains_int(&self, x: &[i64]) -> bool {
        debug_assert_eq!(x.len(), self.dim);
        self.constraints.iter().all(|c| c.holds_int(x))
    }

    /// Floating-point membership, used for sampling.
    pub fn contains_f64(&self, x: &[f64]) -> bool {
        debug_assert_eq!(x.len(), self.dim);
        self.constraints.iter().all(|c| c.holds_f64(x))
    }

    pub fn indicator(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(HopfError::Dimension {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.constraints.iter().all(|c| c.holds(x)))
    }

    pub fn to_json(&self) -> Value {
        let cs: Vec<Value> = self
            .constraints
            .iter()
            .map(|c| json!({"coeffs": c.coeffs, "relation": if c.strict { "<0" } else { ">=0" }, "text": c.to_string()}))
            .collect();
        json!({"dim": self.dim, "constraints": cs})
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.constraints.iter().map(Constraint::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Prefix sums of the segmented permutation, either at block ends only or
/// at every position with strict constraints inside blocks.
fn prefix_cone(u: &PackedWord, only_block_ends: bool) -> Cone {
    let n = u.len();
    let mut coeffs = vec![0i64; n];
    let mut out = Vec::new();
    for (p, end) in u.segmented() {
        coeffs[p as usize - 1] = 1;
        if end {
            out.push(Constraint {
                coeffs: coeffs.clone(),
                strict: false,
            });
        } else if !only_block_ends {
            out.push(Constraint {
                coeffs: coeffs.clone(),
                strict: true,
            });
        }
    }
    Cone {
        dim: n,
        constraints: out,
    }
}

/// `K_u`: the sum over the first `k` blocks is `≥ 0`, for every `k`.
pub fn cone_k(u: &PackedWord) -> Cone {
    prefix_cone(u, true)
}

/// `C_u`: prefix sums of the segmented permutation, `< 0` inside a block and `≥ 0` at block ends.
pub fn cone_c(u: &PackedWord) -> Cone {
    prefix_cone(u, false)
}

/// `K_A`: multiplicity-weighted prefix unions `s_{A_1 ∪ ... ∪ A_i} ≥ 0`.
pub fn cone_multiset(a: &MultisetComposition) -> Cone {
    let p = a.max_letter();
    let mut coeffs = vec![0i64; p];
    let mut out = Vec::new();
    for row in a.matrix() {
        for (c, &m) in coeffs.iter_mut().zip(row) {
            *c += m as i64;
        }
        out.push(Constraint {
            coeffs: coeffs.clone(),
            strict: false,
        });
    }
    Cone {
        dim: p,
        constraints: out,
    }
}

/// Nondecreasing packed word with evaluation `i`, e.g. `(3,1,2) ↦ 111233`.
pub fn nondecreasing_word(i: &Composition) -> PackedWord {
    let letters: Vec<u8> = i
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(k, &m)| std::iter::repeat_n(k as u8 + 1, m as usize))
        .collect();
    PackedWord::of(&letters)
}

/// `K_I = K_u` for the nondecreasing word of evaluation `I`.
pub fn cone_composition(i: &Composition) -> Cone {
    cone_k(&nondecreasing_word(i))
}

/// Which family of cones: `K_u` matches the `M` basis, `C_u` the `Φ` basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeFlavor {
    K,
    C,
}

impl FromStr for ConeFlavor {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "K" | "k" => Ok(ConeFlavor::K),
            "C" | "c" => Ok(ConeFlavor::C),
            other => Err(parse_err(other, "expected K or C")),
        }
    }
}

impl ConeFlavor {
    pub fn cone(self, u: &PackedWord) -> Cone {
        match self {
            ConeFlavor::K => cone_k(u),
            ConeFlavor::C => cone_c(u),
        }
    }

    fn product(self, u: &PackedWord, v: &PackedWord) -> LinComb<PackedWord> {
        match self {
            ConeFlavor::K => wq_m_product(u, v),
            ConeFlavor::C => wq_phi_product(u, v),
        }
    }
}

/// Outcome of a pointwise identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub pass: bool,
    pub points_checked: u64,
    pub counterexample: Option<Vec<Rational>>,
}

impl IdentityReport {
    fn from_int(points_checked: u64, counterexample: Option<Vec<i64>>) -> Self {
        IdentityReport {
            pass: counterexample.is_none(),
            points_checked,
            counterexample: counterexample
                .map(|v| v.into_iter().map(|x| Rational::from_integer(x.into())).collect()),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "status": if self.pass { "pass" } else { "fail" },
            "points_checked": self.points_checked,
        });
        if let Some(ce) = &self.counterexample {
            v["counterexample"] = json!(ce.iter().map(|x| x.to_json_compact()).collect::<Vec<_>>());
        }
        v
    }
}

/// Runs `check` on every integer point of `[-bound, bound]^dim`, sharded over
/// the leading coordinate. Returns the number of points and the first failure
/// in lexicographic order.
pub(crate) fn scan_box(dim: usize, bound: i64, check: impl Fn(&[i64]) -> bool + Sync) -> (u64, Option<Vec<i64>>) {
    if dim == 0 {
        return (1, (!check(&[])).then(Vec::new));
    }
    let results: Vec<(u64, Option<Vec<i64>>)> = (-bound..=bound)
        .into_par_iter()
        .map(|lead| {
            let mut x = vec![-bound; dim];
            x[0] = lead;
            let mut count = 0u64;
            loop {
                count += 1;
                if !check(&x) {
                    return (count, Some(x));
                }
                let mut k = dim;
                loop {
                    k -= 1;
                    if k == 0 {
                        return (count, None);
                    }
                    if x[k] < bound {
                        x[k] += 1;
                        break;
                    }
                    x[k] = -bound;
                }
            }
        })
        .collect();
    let total = results.iter().map(|r| r.0).sum();
    let first = results.into_iter().find_map(|r| r.1);
    (total, first)
}

fn signed_terms(expansion: &LinComb<PackedWord>, mu: usize, mv: usize, flavor: ConeFlavor) -> Vec<(Cone, i64)> {
    expansion
        .iter()
        .map(|(w, c)| {
            let sign = if (mu + mv + w.max()).is_multiple_of(2) { 1 } else { -1 };
            let c: i64 = c.to_integer().try_into().expect("small coefficient");
            (flavor.cone(w), sign * c)
        })
        .collect()
}

/// `1_{X_u × X_v} = Σ_w (-1)^{max u + max v - max w} c_{uv}^w 1_{X_w}` on every
/// integer point of the box, with `c` from the `M` (for `K`) or `Φ` (for `C`) product.
pub fn product_identity_check(u: &PackedWord, v: &PackedWord, bound: i64, flavor: ConeFlavor) -> IdentityReport {
    let (cu, cv) = (flavor.cone(u), flavor.cone(v));
    let n = u.len();
    let terms = signed_terms(&flavor.product(u, v), u.max(), v.max(), flavor);
    let (count, ce) = scan_box(n + v.len(), bound, |x| {
        let lhs = (cu.contains_int(&x[..n]) && cv.contains_int(&x[n..])) as i64;
        let rhs: i64 = terms.iter().map(|(c, k)| if c.contains_int(x) { *k } else { 0 }).sum();
        lhs == rhs
    });
    IdentityReport::from_int(count, ce)
}

/// `1_{K_u} = Σ_{v ⪯ u} 1_{C_v}` on every integer point of the box.
pub fn union_check(u: &PackedWord, bound: i64) -> IdentityReport {
    let k = cone_k(u);
    let cs: Vec<Cone> = u.finer_words().iter().map(cone_c).collect();
    let (count, ce) = scan_box(u.len(), bound, |x| {
        let hits = cs.iter().filter(|c| c.contains_int(x)).count();
        hits == k.contains_int(x) as usize
    });
    IdentityReport::from_int(count, ce)
}

/// `α(A) = (-1)^{l(A)} 1_{K_A}` at a rational point.
pub fn alpha_multiset(a: &MultisetComposition, x: &[Rational]) -> Result<i64> {
    let inside = cone_multiset(a).indicator(x)?;
    let sign = if a.len().is_multiple_of(2) { 1 } else { -1 };
    Ok(if inside { sign } else { 0 })
}

/// Both sides of `σ₊(a)σ₊(b) = σ₊(a)σ₊(a+b) + σ₊(b)σ₊(a+b) - σ₊(a+b)`.
pub fn eqsimple(a: &Rational, b: &Rational) -> (i64, i64) {
    let s = |x: &Rational| (*x >= Rational::zero()) as i64;
    let ab = a + b;
    (s(a) * s(b), s(a) * s(&ab) + s(b) * s(&ab) - s(&ab))
}

/// `π(α(A), α(B)) = α(π(A, B))` at `samples` random rational points and on
/// the integer grid `[-2, 2]^{p+q}` when it has at most `10^5` points.
pub fn multiset_identity_check(
    a: &MultisetComposition,
    b: &MultisetComposition,
    samples: usize,
    seed: u64,
) -> IdentityReport {
    let (p, q) = (a.max_letter(), b.max_letter());
    let dim = p + q;
    let expansion: Vec<(MultisetComposition, i64)> = mq_product(a, b)
        .iter()
        .map(|(c, k)| (c.clone(), k.to_integer().try_into().expect("small coefficient")))
        .collect();
    let check = |x: &[Rational]| -> bool {
        let lhs = alpha_multiset(a, &x[..p]).expect("dimension") * alpha_multiset(b, &x[p..]).expect("dimension");
        let rhs: i64 = expansion
            .iter()
            .map(|(c, k)| k * alpha_multiset(c, x).expect("dimension"))
            .sum();
        lhs == rhs
    };
    let mut rng = shard_rng(seed, 0);
    let mut checked = 0u64;
    for _ in 0..samples {
        let x = random_rational_point(&mut rng, dim, 20, 3);
        checked += 1;
        if !check(&x) {
            return IdentityReport {
                pass: false,
                points_checked: checked,
                counterexample: Some(x),
            };
        }
    }
    if 5u64.pow(dim as u32) <= 100_000 {
        let (count, ce) = scan_box(dim, 2, |x| {
            let r: Vec<Rational> = x.iter().map(|&v| Rational::from_integer(v.into())).collect();
            check(&r)
        });
        let mut rep = IdentityReport::from_int(count, ce);
        rep.points_checked += checked;
        return rep;
    }
    IdentityReport {
        pass: true,
        points_checked: checked,
        counterexample: None,
    }
}
