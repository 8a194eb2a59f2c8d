//! Characters of WQSym obtained by evaluating the operators `M_u`.

use num_traits::{One, Zero};

use crate::coeffring::{MultiPoly, Rational, Var};
use crate::error::Result;
use crate::wqsym::{WQSymBasis, WQSymElement};

/// `binom(t, k)` as a polynomial in `t`.
fn binomial_poly(k: usize) -> MultiPoly {
    let t = MultiPoly::var(Var::T);
    let mut p = MultiPoly::from_int(1);
    let mut fact = Rational::one();
    for i in 0..k {
        p = p.mul(&t.sub(&MultiPoly::from_int(i as i64)));
        fact *= Rational::from_integer((i as i64 + 1).into());
    }
    p.scale(&fact.recip())
}

/// `χ(M_u) = binom(t, max u)`, extended linearly.
pub fn natural_character(x: &WQSymElement) -> Result<MultiPoly> {
    let m = x.convert(WQSymBasis::M)?;
    let mut acc = MultiPoly::zero();
    for (u, c) in m.lincomb().iter() {
        acc = acc.add(&binomial_poly(u.max()).scale(c));
    }
    Ok(acc)
}

/// `M_u ↦ M_{ev(u)}(1, q, ..., q^{t-1})`, the monomial quasi-symmetric
/// function of the evaluation specialized to the alphabet `[t]_q`.
pub fn qint_character(x: &WQSymElement, q: &Rational, t: u32) -> Result<Rational> {
    let m = x.convert(WQSymBasis::M)?;
    let mut total = Rational::zero();
    for (u, c) in m.lincomb().iter() {
        let parts = u.ev();
        let parts = parts.parts();
        // dp[j]: sum over i_1 < ... < i_j among the letters seen so far
        let mut dp = vec![Rational::zero(); parts.len() + 1];
        dp[0] = Rational::one();
        let mut qa = Rational::one();
        for _ in 0..t {
            for j in (1..=parts.len()).rev() {
                let w = num_traits::pow(qa.clone(), parts[j - 1] as usize);
                let add = &dp[j - 1] * w;
                dp[j] += add;
            }
            qa *= q;
        }
        total += c * &dp[parts.len()];
    }
    Ok(total)
}
