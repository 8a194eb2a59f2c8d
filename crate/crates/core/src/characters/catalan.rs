//! The Catalan family of primitive elements and their Lie idempotents.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::coeffring::{binomial, Monomial, MultiPoly, Rational, Var};
use crate::combinat::{Partition, Sign, SignSeq};
use crate::error::{HopfError, Result};
use crate::freemod::LinComb;
use crate::ncsf::{commutative_image, lie_certificate, LieCertificate, SymBasis, SymElement};

/// Largest degree accepted by [`catalan_lie_idempotent`].
pub const CATALAN_IDEMPOTENT_CAP: usize = 7;

fn a() -> MultiPoly {
    MultiPoly::var(Var::A)
}

fn b() -> MultiPoly {
    MultiPoly::var(Var::B)
}

/// `ca_1, ..., ca_nmax` together with the Narayana triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalanCoeffs {
    polys: Vec<MultiPoly>,
}

impl CatalanCoeffs {
    /// Runs `ca_{n+1} = (a+b) ca_n + ab Σ_{i+j=n} ca_i ca_j` from `ca_1 = 1`.
    pub fn new(nmax: usize) -> Self {
        let mut polys = vec![MultiPoly::zero(), MultiPoly::one()];
        let ab = a().mul(&b());
        let s = a().add(&b());
        for n in 1..nmax {
            let mut conv = MultiPoly::zero();
            for i in 1..n {
                conv = conv.add(&polys[i].mul(&polys[n - i]));
            }
            let next = s.mul(&polys[n]).add(&ab.mul(&conv));
            polys.push(next);
        }
        polys.truncate(nmax.max(1) + 1);
        CatalanCoeffs { polys }
    }

    pub fn nmax(&self) -> usize {
        self.polys.len() - 1
    }

    /// `ca_n(a, b)`; panics outside `1..=nmax`.
    pub fn get(&self, n: usize) -> &MultiPoly {
        assert!((1..self.polys.len()).contains(&n), "ca_{n} not tabulated");
        &self.polys[n]
    }

    /// Coefficient of `a^{k-1} b^{n-k}` in `ca_n`.
    pub fn coefficient(&self, n: usize, k: usize) -> Rational {
        let m = Monomial::from_pairs([(Var::A, k as u32 - 1), (Var::B, (n - k) as u32)]);
        self.get(n).coeff(&m)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (1..self.polys.len())
            .map(|n| {
                json!({
                    "n": n,
                    "ca": self.polys[n].to_string(),
                    "narayana": (1..=n).map(|k| narayana(n, k).to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        Value::Array(rows)
    }
}

/// `ca_n(a, b)` for `n ≥ 1`.
pub fn catalan_poly(n: usize) -> MultiPoly {
    CatalanCoeffs::new(n).get(n).clone()
}

/// Narayana number `T(n, k) = C(n-1, k-1) C(n, k-1) / k`.
pub fn narayana(n: usize, k: usize) -> BigInt {
    if k == 0 || k > n {
        return BigInt::zero();
    }
    binomial(n as u64 - 1, k as u64 - 1) * binomial(n as u64, k as u64 - 1) / BigInt::from(k)
}

/// Catalan number `C_n = binom(2n, n) / (n+1)`.
pub fn catalan_number(n: usize) -> BigInt {
    binomial(2 * n as u64, n as u64) / BigInt::from(n + 1)
}

/// Coefficient of `R_{ε•}` in `D^{|ε|+1}`: `a` per interior `+` stack, `b` per
/// interior `-` stack, times `ca` of every stack length.
pub fn catalan_coefficient(e: &SignSeq, table: &CatalanCoeffs) -> MultiPoly {
    let stacks = e.stacks();
    let mut c = MultiPoly::one();
    for (i, &(s, len)) in stacks.iter().enumerate() {
        if i + 1 < stacks.len() {
            c = c.mul(&match s {
                Sign::Plus => a(),
                Sign::Minus => b(),
            });
        }
        c = c.mul(table.get(len));
    }
    c
}

/// `D_{a,b}^n` on the signed ribbon basis, with coefficients in `Q[a, b]`.
pub fn catalan_d(n: usize) -> Result<SymElement<MultiPoly>> {
    if n < 2 {
        return Err(HopfError::OutOfRange(format!("catalan element needs n >= 2, got {n}")));
    }
    let table = CatalanCoeffs::new(n - 1);
    let lc = LinComb::from_terms(
        SignSeq::all(n - 1)
            .into_iter()
            .map(|e| (e.to_composition(), catalan_coefficient(&e, &table))),
    );
    Ok(SymElement::new(SymBasis::SignedR, lc))
}

/// `λ_n(a, b)` with `commutative_image(D^n) = λ_n p_n`, read off the power-sum expansion.
pub fn catalan_lambda(n: usize) -> Result<MultiPoly> {
    let d = catalan_d(n)?;
    let img = commutative_image(&d);
    let pn = Partition::of(&[n as u32]);
    if let Some((l, _)) = img.iter().find(|(l, c)| **l != pn && !c.is_zero()) {
        return Err(HopfError::Invalid(format!("commutative image of D^{n} has a p_{l:?} term")));
    }
    Ok(img.coeff(&pn))
}

fn eval_ab(p: &MultiPoly, a0: &Rational, b0: &Rational) -> Result<Rational> {
    let point = BTreeMap::from([(Var::A, a0.clone()), (Var::B, b0.clone())]);
    p.eval(&point)
}

/// `D^n / (n λ_n(a₀, b₀))` and its Lie idempotent certificate.
pub fn catalan_lie_idempotent(n: usize, a0: &Rational, b0: &Rational) -> Result<(SymElement, LieCertificate)> {
    if !(2..=CATALAN_IDEMPOTENT_CAP).contains(&n) {
        return Err(HopfError::OutOfRange(format!(
            "catalan idempotent needs 2 <= n <= {CATALAN_IDEMPOTENT_CAP}, got {n}"
        )));
    }
    let lambda = eval_ab(&catalan_lambda(n)?, a0, b0)?;
    if lambda.is_zero() {
        return Err(HopfError::Invalid(format!(
            "normalizing scalar lambda_{n} vanishes at a = {a0}, b = {b0}"
        )));
    }
    let d = catalan_d(n)?;
    let norm = Rational::one() / (lambda * Rational::from_integer(BigInt::from(n)));
    let lc = LinComb::from_terms(
        d.lincomb()
            .iter()
            .map(|(i, c)| Ok((i.clone(), eval_ab(c, a0, b0)? * &norm)))
            .collect::<Result<Vec<_>>>()?,
    );
    let x = SymElement::new(SymBasis::SignedR, lc);
    let cert = lie_certificate(&x, n, true)?;
    Ok((x, cert))
}

/// Coefficients `u_1, ..., u_N` of the solution of `u = at + bt u/(1-u)`.
///
/// Also asserts `u - at = abt ca(t)` coefficientwise.
pub fn u_series(nmax: usize) -> Result<Vec<MultiPoly>> {
    if nmax == 0 {
        return Err(HopfError::OutOfRange("u series needs N >= 1".into()));
    }
    // w = u/(1-u) satisfies w = u + u w
    let mut u = vec![MultiPoly::zero(); nmax + 1];
    let mut w = vec![MultiPoly::zero(); nmax + 1];
    for n in 1..=nmax {
        u[n] = if n == 1 { a() } else { b().mul(&w[n - 1]) };
        let mut wn = u[n].clone();
        for i in 1..n {
            wn = wn.add(&u[i].mul(&w[n - i]));
        }
        w[n] = wn;
    }
    let table = CatalanCoeffs::new(nmax);
    let ab = a().mul(&b());
    for n in 2..=nmax {
        if u[n] != ab.mul(table.get(n - 1)) {
            return Err(HopfError::Invalid(format!("u_{n} != ab ca_{}", n - 1)));
        }
    }
    Ok(u.split_off(1))
}

pub fn certificate_json(x: &SymElement, cert: &LieCertificate) -> Value {
    let mut v = cert.to_json();
    v["element"] = x.convert(SymBasis::R).to_json();
    v
}
