//! A weight-one Rota-Baxter algebra of finitely supported sequences under
//! convolution, the quasi-shuffle algebra of tensors over it, and the
//! character `C` with values in its unitarization.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::coeffring::{Rational, Scalar};
use crate::combinat::{quasi_shuffle_all, Composition};
use crate::freemod::{GradedSeries, LinComb};
use crate::qsym::Mould;
use crate::sampling::shard_rng;

/// Finitely supported sequence on `Z` with the convolution product.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConvSeq(BTreeMap<i64, Rational>);

impl ConvSeq {
    pub fn zero() -> Self {
        ConvSeq(BTreeMap::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut s = ConvSeq::zero();
        for (n, c) in pairs {
            s.add_at(n, c);
        }
        s
    }

    /// `δ_n`.
    pub fn delta(n: i64) -> Self {
        Self::from_pairs([(n, Rational::one())])
    }

    /// Integer values in `[-3, 3]` on `[-support, support]`.
    pub fn random(rng: &mut impl Rng, support: i64) -> Self {
        Self::from_pairs(
            (-support..=support).map(|n| (n, Rational::from_integer(rng.random_range(-3i64..=3).into()))),
        )
    }

    fn add_at(&mut self, n: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(n).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&n);
        }
    }

    pub fn get(&self, n: i64) -> Rational {
        self.0.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.0.iter()
    }

    pub fn min_support(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_support(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn add(&self, other: &ConvSeq) -> ConvSeq {
        let mut s = self.clone();
        for (n, c) in &other.0 {
            s.add_at(*n, c.clone());
        }
        s
    }

    pub fn sub(&self, other: &ConvSeq) -> ConvSeq {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> ConvSeq {
        if c.is_zero() {
            return ConvSeq::zero();
        }
        ConvSeq(self.0.iter().map(|(n, x)| (*n, x * c)).collect())
    }

    /// `(f ∗ g)(n) = Σ_k f(k) g(n - k)`.
    pub fn conv(&self, other: &ConvSeq) -> ConvSeq {
        let mut s = ConvSeq::zero();
        for (i, a) in &self.0 {
            for (j, b) in &other.0 {
                s.add_at(i + j, a * b);
            }
        }
        s
    }

    /// `f^{∗k}` for `k ≥ 1`.
    pub fn conv_pow(&self, k: u32) -> ConvSeq {
        assert!(k >= 1, "convolution powers start at 1 in a non-unital algebra");
        (1..k).fold(self.clone(), |acc, _| acc.conv(self))
    }

    /// `R`: restriction to indices `≥ 1`.
    pub fn r(&self) -> ConvSeq {
        ConvSeq(self.0.range(1..).map(|(n, c)| (*n, c.clone())).collect())
    }

    /// `1 - R`: restriction to indices `≤ 0`.
    pub fn r_minus(&self) -> ConvSeq {
        ConvSeq(self.0.range(..=0).map(|(n, c)| (*n, c.clone())).collect())
    }

    /// `I(x) = Σ_n x(n)`, multiplicative for convolution.
    pub fn total(&self) -> Rational {
        self.0.values().fold(Rational::zero(), |a, b| a + b)
    }

    /// `V(x) = x(0)`.
    pub fn at_zero(&self) -> Rational {
        self.get(0)
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.0.iter().map(|(n, c)| (n.to_string(), c.to_json_compact())).collect())
    }
}

impl fmt::Display for ConvSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(n, c)| format!("{c}@{n}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Both sides of `R(xy) + R(x)R(y) = R(xR(y) + R(x)y)`.
pub fn rb_sides(x: &ConvSeq, y: &ConvSeq) -> (ConvSeq, ConvSeq) {
    let lhs = x.conv(y).r().add(&x.r().conv(&y.r()));
    let rhs = x.conv(&y.r()).add(&x.r().conv(y)).r();
    (lhs, rhs)
}

pub fn rb_identity_check(x: &ConvSeq, y: &ConvSeq) -> bool {
    let (l, r) = rb_sides(x, y);
    l == r
}

/// Element `s·1 + x` of the unitarization `K1 ⊕ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unitized {
    pub scalar: Rational,
    pub seq: ConvSeq,
}

impl Unitized {
    pub fn one() -> Self {
        Unitized {
            scalar: Rational::one(),
            seq: ConvSeq::zero(),
        }
    }

    pub fn zero() -> Self {
        Unitized {
            scalar: Rational::zero(),
            seq: ConvSeq::zero(),
        }
    }

    pub fn from_seq(seq: ConvSeq) -> Self {
        Unitized {
            scalar: Rational::zero(),
            seq,
        }
    }

    pub fn add(&self, other: &Unitized) -> Unitized {
        Unitized {
            scalar: &self.scalar + &other.scalar,
            seq: self.seq.add(&other.seq),
        }
    }

    pub fn scale(&self, c: &Rational) -> Unitized {
        Unitized {
            scalar: &self.scalar * c,
            seq: self.seq.scale(c),
        }
    }

    /// `(s + x)(t + y) = st + sy + tx + x∗y`.
    pub fn mul(&self, other: &Unitized) -> Unitized {
        Unitized {
            scalar: &self.scalar * &other.scalar,
            seq: other
                .seq
                .scale(&self.scalar)
                .add(&self.seq.scale(&other.scalar))
                .add(&self.seq.conv(&other.seq)),
        }
    }

    /// `I` extended by `I(1) = 1`.
    pub fn total(&self) -> Rational {
        &self.scalar + self.seq.total()
    }

    /// `V` extended by `V(1) = 0`.
    pub fn at_zero(&self) -> Rational {
        self.seq.at_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({"scalar": self.scalar.to_json_compact(), "seq": self.seq.to_json()})
    }
}

/// `a_1 ⊗ ... ⊗ a_s` in `T(A)`; the empty tensor is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tensor(pub Vec<ConvSeq>);

impl Tensor {
    pub fn unit() -> Self {
        Tensor(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a^{∗i_1} ⊗ ... ⊗ a^{∗i_r}`.
    pub fn powers(a: &ConvSeq, i: &Composition) -> Self {
        Tensor(i.parts().iter().map(|&k| a.conv_pow(k)).collect())
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|x| format!("({x})")).collect();
        f.write_str(&parts.join(" ⊗ "))
    }
}

/// Quasi-shuffle of tensors, merged factors being convolved.
pub fn tensor_quasi_shuffle(a: &Tensor, b: &Tensor) -> LinComb<Tensor> {
    LinComb::from_labels(quasi_shuffle_all(&a.0, &b.0, &|x: &ConvSeq, y: &ConvSeq| x.conv(y)).into_iter().map(Tensor))
}

/// `C(1) = 1`, `C(a_1 ⊗ ... ⊗ a_s) = (-1)^s R(R(...R(R(a_1)a_2)...)a_s)`.
pub fn character_c(t: &Tensor) -> Unitized {
    let Some((first, rest)) = t.0.split_first() else {
        return Unitized::one();
    };
    let mut acc = first.r();
    for a in rest {
        acc = acc.conv(a).r();
    }
    let sign = if t.len().is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    Unitized::from_seq(acc.scale(&sign))
}

/// Linear extension of [`character_c`].
pub fn character_c_linear(x: &LinComb<Tensor>) -> Unitized {
    x.iter()
        .fold(Unitized::zero(), |acc, (t, c)| acc.add(&character_c(t).scale(c)))
}

/// `I(C(a^{∗i_1} ⊗ ... ⊗ a^{∗i_r}))` as a mould over compositions up to `cap`.
pub fn integral_mould(a: &ConvSeq, cap: usize) -> Mould<Rational> {
    Mould::from_fn(cap, |i| character_c(&Tensor::powers(a, i)).total())
}

/// `Σ_I I(C(a^{∗I})) S^I`, truncated at `cap`.
pub fn integral_series(a: &ConvSeq, cap: usize) -> GradedSeries<Composition> {
    coefficient_series(a, cap, |u| u.total())
}

/// `Σ_I V(C(a^{∗I})) S^I`, truncated at `cap`.
pub fn value_series(a: &ConvSeq, cap: usize) -> GradedSeries<Composition> {
    coefficient_series(a, cap, |u| u.at_zero())
}

fn coefficient_series(a: &ConvSeq, cap: usize, f: impl Fn(&Unitized) -> Rational) -> GradedSeries<Composition> {
    let comps = (0..=cap)
        .map(|n| {
            LinComb::from_terms(
                Composition::all(n)
                    .into_iter()
                    .map(|i| {
                        let c = f(&character_c(&Tensor::powers(a, &i)));
                        (i, c)
                    })
                    .filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect();
    GradedSeries::new(cap, comps).expect("graded components")
}

/// Outcome of the randomized Rota-Baxter and character checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbReport {
    pub pass: bool,
    pub trials: usize,
    /// First failing input, rendered.
    pub failure: Option<String>,
}

impl RbReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({"status": if self.pass { "pass" } else { "fail" }, "trials": self.trials});
        if let Some(f) = &self.failure {
            v["counterexample"] = json!(f);
        }
        v
    }
}

/// The Rota-Baxter relation and closure of `A_+`, `A_-` on random pairs
/// supported in `[-support, support]`.
pub fn rb_random_check(trials: usize, support: i64, seed: u64) -> RbReport {
    let mut rng = shard_rng(seed, 0);
    for t in 0..trials {
        let (x, y) = (ConvSeq::random(&mut rng, support), ConvSeq::random(&mut rng, support));
        let plus = x.r().conv(&y.r());
        let minus = x.r_minus().conv(&y.r_minus());
        let ok = rb_identity_check(&x, &y) && plus.r() == plus && minus.r_minus() == minus;
        if !ok {
            return RbReport {
                pass: false,
                trials: t + 1,
                failure: Some(format!("x = {x}; y = {y}")),
            };
        }
    }
    RbReport {
        pass: true,
        trials,
        failure: None,
    }
}

fn random_tensor(rng: &mut impl Rng, max_len: usize, support: i64) -> Tensor {
    let len = rng.random_range(0..=max_len);
    Tensor((0..len).map(|_| ConvSeq::random(rng, support)).collect())
}

/// `C(π(u, v)) = C(u)C(v)`, `I∘C` a character and `V∘C` an infinitesimal
/// character, on random tensor pairs.
pub fn tensor_character_check(trials: usize, max_len: usize, support: i64, seed: u64) -> RbReport {
    let mut rng = shard_rng(seed, 0);
    for t in 0..trials {
        let (u, v) = (random_tensor(&mut rng, max_len, support), random_tensor(&mut rng, max_len, support));
        let prod = character_c_linear(&tensor_quasi_shuffle(&u, &v));
        let (cu, cv) = (character_c(&u), character_c(&v));
        let eps = |x: &Tensor| if x.is_empty() { Rational::one() } else { Rational::zero() };
        let ok = prod == cu.mul(&cv)
            && prod.total() == cu.total() * cv.total()
            && prod.at_zero() == cu.at_zero() * eps(&v) + eps(&u) * cv.at_zero();
        if !ok {
            return RbReport {
                pass: false,
                trials: t + 1,
                failure: Some(format!("u = {u}; v = {v}")),
            };
        }
    }
    RbReport {
        pass: true,
        trials,
        failure: None,
    }
}
