//! Integer point transforms of the cones `C_u`: box-truncated lattice
//! counts and their closed-form rational functions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use super::{cone_c, scan_box, IdentityReport};
use crate::coeffring::{MultiPoly, PolyFraction, Rational, Var};
use crate::combinat::PackedWord;
use crate::error::{HopfError, Result};
use crate::sampling::shard_rng;
use crate::wqsym::wq_phi_product;

/// Signed lattice-point counts of a cone restricted to `[-bound, bound]^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLaurent {
    bound: i64,
    dim: usize,
    coeffs: BTreeMap<Vec<i64>, i64>,
}

impl TruncatedLaurent {
    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient of `z^alpha`; zero outside the support.
    pub fn get(&self, alpha: &[i64]) -> i64 {
        self.coeffs.get(alpha).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &i64)> {
        self.coeffs.iter()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.coeffs.iter().map(|(e, c)| json!([e, c])).collect();
        json!({"bound": self.bound, "dim": self.dim, "terms": terms})
    }
}

fn sign_of(max: usize) -> i64 {
    if max.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `F_u = (-1)^{max u} Σ_{α ∈ C_u ∩ Z^n} z^α`, truncated to the box.
pub fn ipt_box(u: &PackedWord, bound: i64) -> TruncatedLaurent {
    let cone = cone_c(u);
    let sign = sign_of(u.max());
    let n = u.len();
    let mut coeffs = BTreeMap::new();
    let mut x = vec![-bound; n];
    if n == 0 {
        coeffs.insert(Vec::new(), sign);
    } else {
        'outer: loop {
            if cone.contains_int(&x) {
                coeffs.insert(x.clone(), sign);
            }
            let mut k = n;
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                if x[k] < bound {
                    x[k] += 1;
                    break;
                }
                x[k] = -bound;
            }
        }
    }
    TruncatedLaurent {
        bound,
        dim: n,
        coeffs,
    }
}

/// `F_u ⋆ F_v = Σ_w F_w` (Φ-product coefficients) on the truncated data,
/// asserted on the sub-box `[-(bound - margin), bound - margin]`.
pub fn ipt_star_check(u: &PackedWord, v: &PackedWord, bound: i64, margin: i64) -> IdentityReport {
    let (fu, fv) = (ipt_box(u, bound), ipt_box(v, bound));
    let terms: Vec<(TruncatedLaurent, i64)> = wq_phi_product(u, v)
        .iter()
        .map(|(w, c)| (ipt_box(w, bound), c.to_integer().try_into().expect("small coefficient")))
        .collect();
    let n = u.len();
    let inner = (bound - margin).max(0);
    let (count, ce) = scan_box(n + v.len(), inner, |x| {
        let lhs = fu.get(&x[..n]) * fv.get(&x[n..]);
        let rhs: i64 = terms.iter().map(|(f, c)| c * f.get(x)).sum();
        lhs == rhs
    });
    IdentityReport::from_int(count, ce)
}

/// `f_σ = 1/(z_{σ_n} - 1) · Π_i z_{σ_{i+1}} / (z_{σ_i} - z_{σ_{i+1}})` for the
/// segmented permutation `σ` of a packed word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalConeFn {
    word: PackedWord,
    sigma: Vec<usize>,
}

pub fn rational_fn(u: &PackedWord) -> RationalConeFn {
    RationalConeFn {
        word: u.clone(),
        sigma: u.segmented().into_iter().map(|(p, _)| p as usize).collect(),
    }
}

impl RationalConeFn {
    pub fn word(&self) -> &PackedWord {
        &self.word
    }

    /// Reading order of the variables (bars dropped).
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    fn z(&self, i: usize) -> MultiPoly {
        MultiPoly::var(Var::Z(i as u32))
    }

    pub fn numerator(&self) -> MultiPoly {
        self.sigma
            .iter()
            .skip(1)
            .fold(MultiPoly::from_int(1), |acc, &s| acc.mul(&self.z(s)))
    }

    pub fn denominator(&self) -> MultiPoly {
        let Some(&last) = self.sigma.last() else {
            return MultiPoly::from_int(1);
        };
        let mut d = self.z(last).sub(&MultiPoly::from_int(1));
        for w in self.sigma.windows(2) {
            d = d.mul(&self.z(w[0]).sub(&self.z(w[1])));
        }
        d
    }

    /// Symbolic value with unreduced numerator and denominator.
    pub fn to_fraction(&self) -> PolyFraction {
        PolyFraction::new(self.numerator(), self.denominator()).expect("nonzero denominator")
    }

    /// Exact value at `z_1..z_n = point`.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.sigma.len() {
            return Err(HopfError::Dimension {
                expected: self.sigma.len(),
                got: point.len(),
            });
        }
        let z = |i: usize| &point[i - 1];
        let mut num = Rational::one();
        let mut den = Rational::one();
        if let Some(&last) = self.sigma.last() {
            den = z(last) - Rational::one();
        }
        for w in self.sigma.windows(2) {
            num *= z(w[1]);
            den *= z(w[0]) - z(w[1]);
        }
        if den.is_zero() {
            return Err(HopfError::Pole {
                den: self.denominator().to_string(),
            });
        }
        Ok(num / den)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "word": self.word.to_string(),
            "segmented": self.word.to_set_composition_string(),
            "numerator": self.numerator().to_string(),
            "denominator": self.denominator().to_string(),
        })
    }
}

impl fmt::Display for RationalConeFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.numerator(), self.denominator())
    }
}

/// Pole-free means no coordinate equals 1 and all coordinates are distinct.
fn pole_free(x: &[Rational]) -> bool {
    let one = Rational::one();
    x.iter().enumerate().all(|(i, a)| *a != one && x[..i].iter().all(|b| b != a))
}

const RETRY_BUDGET: usize = 1000;

/// `f_u(z') f_v(z'') = Σ_w c_w f_w(z)` at `trials` random integer points with
/// coordinates in `[-10^4, 10^4]`, `c` from the Φ product. Points hitting a
/// pole are redrawn.
pub fn star_identity_random_check(u: &PackedWord, v: &PackedWord, trials: usize, seed: u64) -> Result<IdentityReport> {
    let (fu, fv) = (rational_fn(u), rational_fn(v));
    let terms: Vec<(RationalConeFn, Rational)> =
        wq_phi_product(u, v).iter().map(|(w, c)| (rational_fn(w), c.clone())).collect();
    let n = u.len();
    let dim = n + v.len();
    let mut rng = shard_rng(seed, 0);
    for t in 0..trials {
        let mut attempts = 0;
        let x = loop {
            let x: Vec<Rational> = (0..dim)
                .map(|_| Rational::from_integer(rng.random_range(-10_000i64..=10_000).into()))
                .collect();
            if pole_free(&x) {
                break x;
            }
            attempts += 1;
            if attempts >= RETRY_BUDGET {
                return Err(HopfError::RetryExhausted(RETRY_BUDGET));
            }
        };
        let lhs = fu.eval(&x[..n])? * fv.eval(&x[n..])?;
        let mut rhs = Rational::zero();
        for (f, c) in &terms {
            rhs += c * f.eval(&x)?;
        }
        if lhs != rhs {
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

#[cfg(test)]
pub(super) fn pole_free_for_test(x: &[Rational]) -> bool {
    pole_free(x)
}
