//! Internal product via the group algebra of the symmetric group.
//!
//! `R_I ∗ R_J` is the image of `D_J · D_I`, where `D_I` is the sum of the
//! permutations with descent composition `I` and permutations multiply as
//! functions, `(στ)(i) = σ(τ(i))`. Structure constants are computed once per
//! degree: the coefficient of `R_K` is the number of pairs `(σ, τ)` in
//! `D_J × D_I` with `στ = π` for one fixed `π` of descent class `K`. For
//! degrees up to 7 every `π` is checked to give the same counts, which
//! certifies that the product stays in the descent algebra.

use std::sync::OnceLock;

use rayon::prelude::*;

use super::{SymBasis, SymElement};
use crate::coeffring::{Rational, Scalar};
use crate::combinat::{Composition, Permutation};
use crate::error::{HopfError, Result};
use crate::freemod::LinComb;

/// Largest degree for which internal products are available.
pub const INTERNAL_CAP: usize = 8;

/// Degrees up to this bound verify the descent-algebra closure exhaustively.
const FULL_CHECK_MAX: usize = 7;

struct Table {
    classes: usize,
    /// `coeff[(j * classes + i) * classes + k]`: coefficient of `R_K` in `R_I ∗ R_J`.
    coeff: Vec<u32>,
}

impl Table {
    fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.coeff[(j * self.classes + i) * self.classes + k]
    }
}

fn descent_mask(p: &[u8]) -> usize {
    let mut m = 0usize;
    for i in 1..p.len() {
        if p[i - 1] > p[i] {
            m |= 1 << (i - 1);
        }
    }
    m
}

/// `π ∘ τ^{-1}` written into `out`.
fn compose_inverse(pi: &[u8], tau_inv: &[u8], out: &mut [u8]) {
    for (o, &t) in out.iter_mut().zip(tau_inv) {
        *o = pi[t as usize - 1];
    }
}

/// Counts `(J, I)` pairs for a fixed product `π`: entries indexed `j * classes + i`.
fn counts_for(pi: &[u8], perms: &[(Vec<u8>, usize)], classes: usize) -> Vec<u32> {
    let mut counts = vec![0u32; classes * classes];
    let mut sigma = vec![0u8; pi.len()];
    for (tau_inv, i) in perms {
        compose_inverse(pi, tau_inv, &mut sigma);
        let j = descent_mask(&sigma);
        counts[j * classes + i] += 1;
    }
    counts
}

fn build(n: usize) -> Table {
    let classes = 1usize << n.saturating_sub(1);
    let all = Permutation::all(n);
    // (τ^{-1}, class of τ)
    let perms: Vec<(Vec<u8>, usize)> = all
        .iter()
        .map(|t| (t.inverse().as_slice().to_vec(), descent_mask(t.as_slice())))
        .collect();
    let mut rep: Vec<Option<&Permutation>> = vec![None; classes];
    for p in &all {
        let k = descent_mask(p.as_slice());
        if rep[k].is_none() {
            rep[k] = Some(p);
        }
    }
    let rep_counts: Vec<Vec<u32>> = rep
        .par_iter()
        .map(|p| counts_for(p.expect("every descent class is nonempty").as_slice(), &perms, classes))
        .collect();
    if n <= FULL_CHECK_MAX {
        all.par_iter().for_each(|p| {
            let k = descent_mask(p.as_slice());
            let c = counts_for(p.as_slice(), &perms, classes);
            assert!(
                c == rep_counts[k],
                "group algebra product leaves the descent algebra at {p}"
            );
        });
    }
    let mut coeff = vec![0u32; classes * classes * classes];
    for (k, c) in rep_counts.iter().enumerate() {
        for (ji, &v) in c.iter().enumerate() {
            coeff[ji * classes + k] = v;
        }
    }
    Table { classes, coeff }
}

fn table(n: usize) -> &'static Table {
    static TABLES: [OnceLock<Table>; INTERNAL_CAP + 1] = [const { OnceLock::new() }; INTERNAL_CAP + 1];
    TABLES[n].get_or_init(|| build(n))
}

/// `R_I ∗ R_J` for compositions of the same weight `n ≤ INTERNAL_CAP`.
pub fn ribbon_internal(i: &Composition, j: &Composition) -> Result<LinComb<Composition>> {
    let n = i.weight();
    if j.weight() != n {
        return Err(HopfError::DegreeMismatch {
            left: n,
            right: j.weight(),
        });
    }
    if n > INTERNAL_CAP {
        return Err(HopfError::DegreeCap {
            degree: n,
            cap: INTERNAL_CAP,
        });
    }
    if n == 0 {
        return Ok(LinComb::basis(Composition::empty()));
    }
    let t = table(n);
    let (mi, mj) = (i.descent_mask() as usize, j.descent_mask() as usize);
    Ok(LinComb::from_terms((0..t.classes).filter_map(|k| {
        let c = t.get(mi, mj, k);
        (c > 0).then(|| {
            (
                Composition::from_descent_mask(n, k as u64),
                Rational::from_integer(c.into()),
            )
        })
    })))
}

/// Internal product with the default degree cap.
pub fn internal_product<C: Scalar>(f: &SymElement<C>, g: &SymElement<C>) -> Result<SymElement<C>> {
    internal_product_with_cap(f, g, INTERNAL_CAP)
}

/// Internal product of two homogeneous elements of the same degree `n ≤ cap`.
/// The result is expressed in the basis of `f`.
pub fn internal_product_with_cap<C: Scalar>(
    f: &SymElement<C>,
    g: &SymElement<C>,
    cap: usize,
) -> Result<SymElement<C>> {
    let (Some(n), Some(m)) = (f.homogeneous_degree(), g.homogeneous_degree()) else {
        if f.is_zero() || g.is_zero() {
            return Ok(SymElement::zero(f.basis()));
        }
        return Err(HopfError::Invalid("internal product needs homogeneous factors".into()));
    };
    if n != m {
        return Err(HopfError::DegreeMismatch { left: n, right: m });
    }
    let cap = cap.min(INTERNAL_CAP);
    if n > cap {
        return Err(HopfError::DegreeCap { degree: n, cap });
    }
    let fr = f.convert(SymBasis::R);
    let gr = g.convert(SymBasis::R);
    let mut out = LinComb::zero();
    for (a, ca) in fr.lincomb().iter() {
        for (b, cb) in gr.lincomb().iter() {
            let c = ca.mul_ref(cb);
            for (k, x) in ribbon_internal(a, b)?.iter() {
                out.add_term(k.clone(), c.mul_ref(&C::from_rational(x)));
            }
        }
    }
    Ok(SymElement::new(SymBasis::R, out).convert(f.basis()))
}
