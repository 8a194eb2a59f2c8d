use serde_json::{json, Value};

use super::monomial_product;
use crate::coeffring::{Rational, Scalar};
use crate::combinat::Composition;
use crate::freemod::{GradedSeries, LinComb};

/// Coefficient family on compositions of weight at most `cap`, stored densely
/// per degree and indexed by descent mask.
#[derive(Clone, Debug, PartialEq)]
pub struct Mould<C = Rational> {
    cap: usize,
    comps: Vec<Vec<C>>,
}

/// First pair `(I, J)` violating a mould law, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MouldReport {
    pub holds: bool,
    pub failure: Option<(Composition, Composition)>,
}

impl MouldReport {
    fn ok() -> Self {
        MouldReport {
            holds: true,
            failure: None,
        }
    }

    fn fail(i: &Composition, j: &Composition) -> Self {
        MouldReport {
            holds: false,
            failure: Some((i.clone(), j.clone())),
        }
    }
}

fn slot(n: usize) -> usize {
    if n == 0 {
        1
    } else {
        1 << (n - 1)
    }
}

impl<C: Scalar> Mould<C> {
    pub fn zero(cap: usize) -> Self {
        Mould {
            cap,
            comps: (0..=cap).map(|n| vec![C::zero(); slot(n)]).collect(),
        }
    }

    pub fn from_fn(cap: usize, f: impl Fn(&Composition) -> C) -> Self {
        Mould {
            cap,
            comps: (0..=cap)
                .map(|n| Composition::all(n).iter().map(&f).collect())
                .collect(),
        }
    }

    /// 1 on the empty composition, 0 elsewhere.
    pub fn counit(cap: usize) -> Self {
        Self::from_fn(cap, |i| if i.is_empty() { C::one() } else { C::zero() })
    }

    /// Coefficients `c_I` of `S^I` in a series of Sym written in the `S` basis.
    pub fn from_series(s: &GradedSeries<Composition, C>) -> Self {
        let mut m = Self::zero(s.cap());
        for comp in s.components() {
            for (i, c) in comp.iter() {
                m.set(i, c.clone());
            }
        }
        m
    }

    /// Inverse of [`Mould::from_series`].
    pub fn to_series(&self) -> GradedSeries<Composition, C> {
        let comps = (0..=self.cap)
            .map(|n| LinComb::from_terms(Composition::all(n).into_iter().zip(self.comps[n].iter().cloned())))
            .collect();
        GradedSeries::new(self.cap, comps).expect("components are homogeneous by construction")
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Value at `i`; zero beyond the cap.
    pub fn get(&self, i: &Composition) -> C {
        let n = i.weight();
        if n > self.cap {
            return C::zero();
        }
        self.comps[n][i.descent_mask() as usize].clone()
    }

    /// # Panics
    /// If the weight of `i` exceeds the cap.
    pub fn set(&mut self, i: &Composition, c: C) {
        let n = i.weight();
        assert!(n <= self.cap, "composition {i} beyond mould cap {}", self.cap);
        self.comps[n][i.descent_mask() as usize] = c;
    }

    /// `Σ_K (K | I ⧢ J) m(K)`.
    fn on_product(&self, i: &Composition, j: &Composition) -> C {
        let mut acc = C::zero();
        for (k, mult) in monomial_product(i, j).iter() {
            acc = acc.add_ref(&self.get(k).mul_ref(&C::from_rational(mult)));
        }
        acc
    }

    /// Unordered pairs of nonempty compositions with `|I| + |J| ≤ cap`.
    fn pairs(&self) -> Vec<(Composition, Composition)> {
        let mut out = Vec::new();
        for a in 1..=self.cap {
            for b in a..=self.cap - a {
                for i in Composition::all(a) {
                    for j in Composition::all(b) {
                        if a < b || i <= j {
                            out.push((i.clone(), j));
                        }
                    }
                }
            }
        }
        out
    }

    /// Character law `m(I) m(J) = Σ_K (K | I ⧢ J) m(K)` with `m(∅) = 1`.
    pub fn symmetrel_report(&self) -> MouldReport {
        let e = Composition::empty();
        if !self.get(&e).is_one() {
            return MouldReport::fail(&e, &e);
        }
        for (i, j) in self.pairs() {
            if self.get(&i).mul_ref(&self.get(&j)) != self.on_product(&i, &j) {
                return MouldReport::fail(&i, &j);
            }
        }
        MouldReport::ok()
    }

    /// Infinitesimal character law: `m(∅) = 0` and `Σ_K (K | I ⧢ J) m(K) = 0` for nonempty `I, J`.
    pub fn alternel_report(&self) -> MouldReport {
        let e = Composition::empty();
        if !self.get(&e).is_zero() {
            return MouldReport::fail(&e, &e);
        }
        for (i, j) in self.pairs() {
            if !self.on_product(&i, &j).is_zero() {
                return MouldReport::fail(&i, &j);
            }
        }
        MouldReport::ok()
    }

    pub fn is_symmetrel(&self) -> bool {
        self.symmetrel_report().holds
    }

    pub fn is_alternel(&self) -> bool {
        self.alternel_report().holds
    }

    /// `{"n": {"I": coeff}}` per degree.
    pub fn to_json(&self) -> Value {
        let m: serde_json::Map<String, Value> = (0..=self.cap)
            .map(|n| {
                let inner: serde_json::Map<String, Value> = Composition::all(n)
                    .iter()
                    .zip(&self.comps[n])
                    .map(|(i, c)| (i.to_string(), c.to_json_compact()))
                    .collect();
                (n.to_string(), Value::Object(inner))
            })
            .collect();
        json!(m)
    }
}
