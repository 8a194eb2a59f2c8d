use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use super::internal::{internal_product, INTERNAL_CAP};
use super::{SymBasis, SymElement};
use crate::coeffring::{factorial, int, qbinomial, FieldScalar, Rational, Scalar, Var};
use crate::combinat::{Composition, Partition, SignSeq};
use crate::error::{parse_err, HopfError, Result};
use crate::freemod::LinComb;

/// Commutative symmetric functions in the power-sum basis.
pub type SymFunc<C = Rational> = LinComb<Partition, C>;

/// `h_n = Σ_{λ ⊢ n} p_λ / z_λ`.
pub fn h_in_p(n: usize) -> SymFunc {
    LinComb::from_terms(
        Partition::all(n)
            .into_iter()
            .map(|l| {
                let z = l.z();
                (l, Rational::new(BigInt::one(), z))
            }),
    )
}

/// Image in commutative symmetric functions: `S^I ↦ h_{i_1} ... h_{i_r}`, in power sums.
pub fn commutative_image<C: Scalar>(x: &SymElement<C>) -> SymFunc<C> {
    let s = x.to_s();
    let maxn = s.labels().flat_map(|i| i.parts().iter().copied()).max().unwrap_or(0) as usize;
    let hs: Vec<SymFunc> = (0..=maxn).map(h_in_p).collect();
    s.apply_rational(|i| {
        i.parts().iter().fold(LinComb::basis(Partition::of(&[])), |acc, &p| {
            acc.bilinear(&hs[p as usize], |a, b| LinComb::basis(a.union(b)))
        })
    })
}

/// Dynkin element `Ψ_n` in the `S` basis, from `n S_n = Σ_{k=1}^{n} S_{n-k} Ψ_k`.
pub fn psi(n: usize) -> SymElement {
    let mut psis: Vec<LinComb<Composition>> = vec![LinComb::zero()];
    for m in 1..=n {
        let mut x = LinComb::term(Composition::of(&[m as u32]), int(m as i64));
        for k in 1..m {
            let s = LinComb::<Composition>::basis(Composition::of(&[(m - k) as u32]));
            let prod = s.bilinear(&psis[k], |a, b| LinComb::basis(a.concat(b)));
            x = x.sub(&prod);
        }
        psis.push(x);
    }
    SymElement::new(SymBasis::S, psis.swap_remove(n))
}

/// `Φ_n = n Σ_{I ⊨ n} (-1)^{ℓ(I)-1} / ℓ(I) · S^I`, the degree-`n` part of `n log σ_1`.
pub fn phi(n: usize) -> SymElement {
    SymElement::new(
        SymBasis::S,
        LinComb::from_terms(Composition::all(n).into_iter().map(|i| {
            let l = i.len() as i64;
            let sign = if l % 2 == 1 { 1 } else { -1 };
            (i, Rational::new((sign * n as i64).into(), l.into()))
        })),
    )
}

/// One-parameter family `φ_n(q) = (1/n) Σ_σ (-1)^{d(σ)} q^{maj(σ) - C(d+1, 2)} / [n-1, d]_q · σ`,
/// aggregated by descent class into ribbons.
pub fn euler_idempotent<C: FieldScalar>(n: usize, q: &C) -> Result<SymElement<C>> {
    if n == 0 {
        return Err(HopfError::OutOfRange("degree must be at least 1".into()));
    }
    let inv_n = C::from_rational(&Rational::new(BigInt::one(), BigInt::from(n)));
    let mut qbin_inv = Vec::with_capacity(n);
    for d in 0..n {
        let qb = qbinomial(n as i64 - 1, d as i64)?.eval_in(Var::Q, q)?;
        let inv = qb.inv().ok_or_else(|| HopfError::Pole {
            den: format!("[{}, {d}]_q", n - 1),
        })?;
        qbin_inv.push(inv);
    }
    let mut out = LinComb::zero();
    for i in Composition::all(n) {
        let d = i.len() - 1;
        let maj: usize = i.descent_set().iter().sum();
        let e = maj - d * (d + 1) / 2;
        let mut c = inv_n.mul_ref(&qbin_inv[d]);
        for _ in 0..e {
            c = c.mul_ref(q);
        }
        if d % 2 == 1 {
            c = c.neg_ref();
        }
        out.add_term(i, c);
    }
    Ok(SymElement::new(SymBasis::R, out))
}

/// Operators whose images in Sym form the alien dictionary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlienOp {
    Plus(usize),
    Minus(usize),
    Canonical(usize),
}

impl fmt::Display for AlienOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlienOp::Plus(n) => write!(f, "plus({n})"),
            AlienOp::Minus(n) => write!(f, "minus({n})"),
            AlienOp::Canonical(n) => write!(f, "canonical({n})"),
        }
    }
}

impl FromStr for AlienOp {
    type Err = HopfError;
    /// `plus:3`, `minus:2`, `canonical:4` (or `plus(3)`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (name, arg) = t
            .split_once([':', '('])
            .ok_or_else(|| parse_err(t, "expected kind:n"))?;
        let n: usize = arg
            .trim_end_matches(')')
            .trim()
            .parse()
            .map_err(|_| parse_err(arg, "expected a degree"))?;
        match name.trim() {
            "plus" => Ok(AlienOp::Plus(n)),
            "minus" => Ok(AlienOp::Minus(n)),
            "canonical" => Ok(AlienOp::Canonical(n)),
            other => Err(parse_err(other, "expected plus, minus or canonical")),
        }
    }
}

/// Image of an alien operator: `S_n`, `(-1)^n Λ_n`, or `Σ_ε λ^ε R_{ε•}` with
/// `λ^ε = p! q! / (p+q+1)!` for `p` plus and `q` minus signs.
pub fn alien(op: AlienOp) -> Result<SymElement> {
    let n = match op {
        AlienOp::Plus(n) | AlienOp::Minus(n) | AlienOp::Canonical(n) => n,
    };
    if n == 0 {
        return Err(HopfError::OutOfRange("degree must be at least 1".into()));
    }
    Ok(match op {
        AlienOp::Plus(n) => SymElement::s(&[n as u32]),
        AlienOp::Minus(n) => {
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            SymElement::lambda(&[n as u32]).scale(&sign)
        }
        AlienOp::Canonical(n) => {
            let lc = LinComb::from_terms(SignSeq::all(n - 1).into_iter().map(|e| {
                let (p, q) = (e.plus_count() as u64, e.minus_count() as u64);
                let w = Rational::new(factorial(p) * factorial(q), factorial(p + q + 1));
                (e.to_composition(), w)
            }));
            SymElement::new(SymBasis::SignedR, lc)
        }
    })
}

/// Outcome of the Lie idempotent criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCertificate {
    pub degree: usize,
    pub primitive: bool,
    pub commutative_image: bool,
    /// `None` when the internal idempotency check was skipped.
    pub idempotent: Option<bool>,
}

impl LieCertificate {
    pub fn holds(&self) -> bool {
        self.primitive && self.commutative_image && self.idempotent.unwrap_or(true)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "primitive": self.primitive,
            "commutative_image": self.commutative_image,
            "idempotent": self.idempotent,
            "pass": self.holds(),
        })
    }
}

/// Checks primitivity and commutative image `p_n / n`; with `idempotency`,
/// also `x ∗ x = x` (requires `n ≤ INTERNAL_CAP`).
pub fn lie_certificate<C: Scalar>(x: &SymElement<C>, n: usize, idempotency: bool) -> Result<LieCertificate> {
    if !x.lincomb().is_homogeneous(n) {
        return Err(HopfError::DegreeMismatch {
            left: n,
            right: x.lincomb().max_grade().unwrap_or(0),
        });
    }
    let primitive = x.is_primitive();
    let target: SymFunc<C> = LinComb::term(
        Partition::of(&[n as u32]),
        C::from_rational(&Rational::new(BigInt::one(), BigInt::from(n.max(1)))),
    );
    let commutative_image = commutative_image(x) == target;
    let idempotent = if idempotency {
        if n > INTERNAL_CAP {
            return Err(HopfError::DegreeCap {
                degree: n,
                cap: INTERNAL_CAP,
            });
        }
        let sq = internal_product(x, x)?;
        Some(sq.sub(x).is_zero())
    } else {
        None
    };
    Ok(LieCertificate {
        degree: n,
        primitive,
        commutative_image,
        idempotent,
    })
}

/// Full criterion including idempotency.
pub fn is_lie_idempotent<C: Scalar>(x: &SymElement<C>, n: usize) -> Result<bool> {
    Ok(lie_certificate(x, n, n <= INTERNAL_CAP)?.holds())
}
