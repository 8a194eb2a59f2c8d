use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::*;
use crate::coeffring::{int, rat, MultiPoly, Rational, Var};
use crate::combinat::{Composition, Partition, SignSeq};
use crate::ncsf::{commutative_image, lie_certificate, SymBasis, SymElement};
use crate::sampling::shard_rng;

fn a() -> MultiPoly {
    MultiPoly::var(Var::A)
}

fn b() -> MultiPoly {
    MultiPoly::var(Var::B)
}

/// `Σ c a^i b^j` from `(c, i, j)` triples.
fn poly(terms: &[(i64, u32, u32)]) -> MultiPoly {
    terms.iter().fold(MultiPoly::zero(), |acc, &(c, i, j)| {
        acc.add(&a().pow(i).mul(&b().pow(j)).scale(&int(c)))
    })
}

fn eval_ab(p: &MultiPoly, x: i64, y: i64) -> Rational {
    p.eval(&BTreeMap::from([(Var::A, int(x)), (Var::B, int(y))])).unwrap()
}

fn swap_ab(p: &MultiPoly) -> MultiPoly {
    p.terms().fold(MultiPoly::zero(), |acc, (m, c)| {
        let t = a().pow(m.exponent(Var::B)).mul(&b().pow(m.exponent(Var::A))).scale(c);
        acc.add(&t)
    })
}

#[test]
fn catalan_table() {
    assert_eq!(catalan_poly(1), MultiPoly::one());
    assert_eq!(catalan_poly(2), poly(&[(1, 1, 0), (1, 0, 1)]));
    assert_eq!(catalan_poly(3), poly(&[(1, 2, 0), (3, 1, 1), (1, 0, 2)]));
    assert_eq!(catalan_poly(4), poly(&[(1, 3, 0), (6, 2, 1), (6, 1, 2), (1, 0, 3)]));
    assert_eq!(
        catalan_poly(5),
        poly(&[(1, 4, 0), (10, 3, 1), (20, 2, 2), (10, 1, 3), (1, 0, 4)])
    );
}

#[test]
fn catalan_table_invariants() {
    let table = CatalanCoeffs::new(10);
    for n in 1..=10 {
        let p = table.get(n);
        assert_eq!(&swap_ab(p), p);
        assert!(p.terms().all(|(m, _)| m.degree() as usize == n - 1));
        // C_n by the convolution recurrence
        let mut cat = vec![BigInt::one()];
        for k in 1..=n {
            let next: BigInt = (0..k).map(|i| &cat[i] * &cat[k - 1 - i]).sum();
            cat.push(next);
        }
        assert_eq!(eval_ab(p, 1, 1), Rational::from_integer(cat[n].clone()));
        assert_eq!(catalan_number(n), cat[n]);
    }
    for n in 1..=8 {
        for k in 1..=n {
            assert_eq!(table.coefficient(n, k), Rational::from_integer(narayana(n, k)), "T({n},{k})");
        }
    }
    assert_eq!(narayana(4, 2), BigInt::from(6));
    assert_eq!(narayana(5, 3), BigInt::from(20));
}

fn ribbons(d: &SymElement<MultiPoly>) -> SymElement<MultiPoly> {
    d.convert(SymBasis::R)
}

#[test]
fn catalan_d_small_degrees() {
    let r = |i: &[u32], c: MultiPoly| SymElement::<MultiPoly>::r(i).scale(&c);
    let one = MultiPoly::one();
    let d2 = r(&[2], one.clone()).sub(&r(&[1, 1], one.clone()));
    assert_eq!(ribbons(&catalan_d(2).unwrap()), d2);
    let s = a().add(&b());
    let d3 = r(&[3], s.clone())
        .sub(&r(&[2, 1], a()))
        .sub(&r(&[1, 2], b()))
        .add(&r(&[1, 1, 1], s.clone()));
    assert_eq!(ribbons(&catalan_d(3).unwrap()), d3);
    let ca3 = catalan_poly(3);
    let ab = a().mul(&b());
    let d4 = r(&[4], ca3.clone())
        .sub(&r(&[3, 1], a().mul(&s)))
        .sub(&r(&[2, 2], ab.clone()))
        .sub(&r(&[1, 3], s.mul(&b())))
        .add(&r(&[2, 1, 1], a().mul(&s)))
        .add(&r(&[1, 2, 1], ab.clone()))
        .add(&r(&[1, 1, 2], s.mul(&b())))
        .sub(&r(&[1, 1, 1, 1], ca3));
    let got = ribbons(&catalan_d(4).unwrap());
    assert_eq!(got.lincomb().len(), 8);
    assert_eq!(got, d4);
    assert!(catalan_d(1).is_err());
}

#[test]
fn catalan_d_is_primitive() {
    for n in 2..=8 {
        assert!(catalan_d(n).unwrap().is_primitive(), "D^{n}");
    }
    // dropping the interior stack factors breaks primitivity
    let table = CatalanCoeffs::new(3);
    let lc = crate::freemod::LinComb::from_terms(SignSeq::all(3).into_iter().map(|e| {
        let c = e.stacks().iter().fold(MultiPoly::one(), |acc, &(_, len)| acc.mul(table.get(len)));
        (e.to_composition(), c)
    }));
    assert!(!SymElement::new(SymBasis::SignedR, lc).is_primitive());
}

/// Normalizing scalars found by expanding `commutative_image(D^n)` on power sums.
fn lambda_fixture(n: usize) -> MultiPoly {
    match n {
        2 => poly(&[(1, 0, 0)]),
        3 => poly(&[(1, 1, 0), (1, 0, 1)]),
        4 => poly(&[(1, 2, 0), (3, 1, 1), (1, 0, 2)]),
        5 => poly(&[(1, 3, 0), (6, 2, 1), (6, 1, 2), (1, 0, 3)]),
        6 => poly(&[(1, 4, 0), (10, 3, 1), (20, 2, 2), (10, 1, 3), (1, 0, 4)]),
        7 => poly(&[(1, 5, 0), (15, 4, 1), (50, 3, 2), (50, 2, 3), (15, 1, 4), (1, 0, 5)]),
        _ => unreachable!(),
    }
}

#[test]
fn catalan_lambda_regression() {
    for n in 2..=7 {
        assert_eq!(catalan_lambda(n).unwrap(), lambda_fixture(n), "lambda_{n}");
    }
    // the image is a multiple of p_n only
    let img = commutative_image(&catalan_d(3).unwrap());
    assert_eq!(img.len(), 1);
    assert_eq!(img.coeff(&Partition::of(&[3])), a().add(&b()));
}

#[test]
fn catalan_lie_idempotents() {
    let (x, cert) = catalan_lie_idempotent(2, &int(1), &int(1)).unwrap();
    assert!(cert.holds());
    assert_eq!(x.convert(SymBasis::R), SymElement::r(&[2]).sub(&SymElement::r(&[1, 1])).scale(&rat(1, 2)));
    // n = 3 divides by 3(a+b)
    let (x, cert) = catalan_lie_idempotent(3, &int(2), &int(5)).unwrap();
    assert!(cert.holds());
    assert_eq!(x.convert(SymBasis::R).lincomb().coeff(&Composition::of(&[3])), rat(1, 3));
    assert_eq!(x.convert(SymBasis::R).lincomb().coeff(&Composition::of(&[2, 1])), rat(-2, 21));
    let (_, cert) = catalan_lie_idempotent(4, &int(1), &int(1)).unwrap();
    assert_eq!(cert.idempotent, Some(true));
    assert!(cert.holds());

    let mut rng = shard_rng(9, 0);
    for n in 2..=6 {
        for _ in 0..3 {
            let a0 = rat(rng.random_range(1..=9), rng.random_range(1..=5));
            let b0 = rat(rng.random_range(-9..=9), rng.random_range(1..=5));
            match catalan_lie_idempotent(n, &a0, &b0) {
                Ok((_, cert)) => assert!(cert.holds(), "n={n} a={a0} b={b0}"),
                Err(e) => assert!(eval_ab_rat(&lambda_fixture(n), &a0, &b0).is_zero(), "{e}"),
            }
        }
    }
}

fn eval_ab_rat(p: &MultiPoly, x: &Rational, y: &Rational) -> Rational {
    p.eval(&BTreeMap::from([(Var::A, x.clone()), (Var::B, y.clone())])).unwrap()
}

#[test]
fn catalan_idempotent_errors() {
    assert!(catalan_lie_idempotent(3, &int(1), &int(-1)).is_err());
    assert!(catalan_lie_idempotent(8, &int(1), &int(1)).is_err());
    assert!(catalan_lie_idempotent(1, &int(1), &int(1)).is_err());
    // D^3 without the normalization is primitive but has the wrong image
    let d = catalan_d(3).unwrap().map_coeffs(|c| eval_ab(c, 1, 1));
    let cert = lie_certificate(&d, 3, false).unwrap();
    assert!(cert.primitive && !cert.commutative_image);
}

#[test]
fn u_series_matches_catalan() {
    let u = u_series(6).unwrap();
    assert_eq!(u[0], a());
    assert_eq!(u.len(), 6);
    // u/(1-u) = (u - at)/(bt) independently: check u(1-u) relation at t-order 3 by hand
    // u_2 = ab, u_3 = ab(a+b)
    assert_eq!(u[1], a().mul(&b()));
    assert_eq!(u[2], a().mul(&b()).mul(&a().add(&b())));
    let table = CatalanCoeffs::new(5);
    for n in 2..=6 {
        assert_eq!(u[n - 1], a().mul(&b()).mul(table.get(n - 1)));
    }
    assert!(u_series(0).is_err());
}

fn cfg(samples: u64, seed: u64) -> McConfig {
    McConfig::new(seed, samples, 8)
}

fn signs(s: &str) -> SignSeq {
    s.parse().unwrap()
}

#[test]
fn densities_integrate_to_one() {
    for d in [Density::Gaussian, Density::Uniform, Density::catalan_mixture(0.1, 0.4).unwrap()] {
        let h = 1e-3;
        let total: f64 = (-20_000..20_000).map(|k| d.pdf((k as f64 + 0.5) * h) * h).sum();
        assert!((total - 1.0).abs() < 1e-6, "{d}: {total}");
    }
    assert!(Density::catalan_mixture(0.3, 0.3).is_err());
    assert_eq!("catalan_mixture(0.1, 0.4)".parse::<Density>().unwrap(), Density::catalan_mixture(0.1, 0.4).unwrap());
    assert_eq!("gaussian".parse::<Density>().unwrap(), Density::Gaussian);
    assert!("cauchy".parse::<Density>().is_err());
}

#[test]
fn mc_weight_examples() {
    let c = cfg(200_000, 1);
    assert_eq!(mc_weight(&signs(""), &Density::Gaussian, &c).unwrap().mean, 1.0);
    let e = mc_weight(&signs("+"), &Density::Gaussian, &c).unwrap();
    assert!(McCheck::new(e, 0.5).pass, "{e:?}");
    // P(S_1 ≥ 0, S_2 ≥ 0) by midpoint quadrature of the Gaussian density
    let d = Density::Gaussian;
    let h = 0.01;
    let mut quad = 0.0;
    for i in 0..800 {
        let x = (i as f64 + 0.5) * h;
        for j in -1600..800 {
            let y = (j as f64 + 0.5) * h;
            if x + y >= 0.0 {
                quad += d.pdf(x) * d.pdf(y) * h * h;
            }
        }
    }
    assert!((quad - 0.375).abs() < 1e-3, "{quad}");
    let e = mc_weight(&signs("++"), &d, &c).unwrap();
    assert!(McCheck::new(e, quad).pass, "{e:?} vs {quad}");
    // the mixture puts mass 2a on the positive half-line
    let mix = Density::catalan_mixture(0.1, 0.4).unwrap();
    let e = mc_weight(&signs("+"), &mix, &c).unwrap();
    assert!(McCheck::new(e, 0.2).pass, "{e:?}");
    assert!(mc_weight(&signs("+"), &d, &cfg(100, 1)).is_err());
}

#[test]
fn runs_are_reproducible() {
    let c = cfg(50_000, 42);
    let x = mc_weight(&signs("+-+"), &Density::Uniform, &c).unwrap();
    let y = mc_weight(&signs("+-+"), &Density::Uniform, &c).unwrap();
    assert_eq!(x, y);
    let z = mc_weight(&signs("+-+"), &Density::Uniform, &McConfig::new(43, 50_000, 8)).unwrap();
    assert_ne!(x, z);
}

#[test]
fn consistency_examples() {
    let c = cfg(200_000, 3);
    let r = consistency_check(&signs(""), &Density::Gaussian, &c).unwrap();
    assert!(r.pass());
    assert_eq!(r.checks[0].1.estimate, 0.0);
    assert!(consistency_check(&signs("+"), &Density::Gaussian, &c).unwrap().pass());
    let mix = Density::catalan_mixture(0.25, 0.25).unwrap();
    let r = consistency_check(&signs("-+"), &mix, &c).unwrap();
    assert!(r.pass(), "{}", r.to_json());
    assert_eq!(r.estimates.len(), 3);
}

#[test]
fn character_examples() {
    let c = cfg(200_000, 5);
    let one = Composition::of(&[1]);
    let r = mc_character_check(&one, &one, &Density::Gaussian, &c).unwrap();
    assert!(r.pass(), "{}", r.to_json());
    // χ(M_1) = -1/2 for a symmetric density
    assert!(McCheck::new(r.estimates[0].1, -0.5).pass);
    let r = mc_character_check(&one, &Composition::empty(), &Density::Gaussian, &c).unwrap();
    assert!(r.pass());
    assert_eq!(r.samples, 0);
    let r = mc_character_check(&one, &Composition::of(&[2]), &Density::Gaussian, &cfg(1_000_000, 42)).unwrap();
    assert!(r.pass(), "{}", r.to_json());
    let mix = Density::catalan_mixture(0.15, 0.35).unwrap();
    let r = mc_character_check(&Composition::of(&[1, 1]), &Composition::of(&[2]), &mix, &c).unwrap();
    assert!(r.pass(), "{}", r.to_json());
    assert!(mc_character_check(&Composition::of(&[4]), &Composition::of(&[3]), &mix, &c).is_err());
}

/// The plain product `χ(M_I) χ(M_J)` differs from the sum over the shuffle
/// part alone, so the merged terms are needed.
#[test]
fn character_needs_the_merged_terms() {
    let c = cfg(200_000, 6);
    let one = Composition::of(&[1]);
    let d = Density::Gaussian;
    let chi1 = -mc_weight(&signs("+"), &d, &c).unwrap().mean;
    let chi11 = cone_probability(&Composition::of(&[1, 1]), &d, &c).unwrap();
    assert!(McCheck::new(chi11, 0.375).pass);
    // shuffle terms only: 2 χ(M_11) = 3/4, far from χ(M_1)² = 1/4
    assert!((2.0 * chi11.mean - chi1 * chi1).abs() > 0.4);
    assert!(mc_character_check(&one, &one, &d, &c).unwrap().pass());
}

#[test]
fn sparre_andersen_targets_match_binomial_series() {
    // 1 - √(1-s): τ_n = C_{n-1} / 2^{2n-1}
    let t = sparre_andersen_targets(6);
    for (k, tn) in t.iter().enumerate() {
        let n = k + 1;
        let expected = Rational::new(catalan_number(n - 1), BigInt::from(2).pow(2 * n as u32 - 1));
        assert_eq!(tn, &expected);
    }
    assert_eq!(t[..5], [rat(1, 2), rat(1, 8), rat(1, 16), rat(5, 128), rat(7, 256)]);
}

#[test]
fn sparre_andersen_examples() {
    let c = cfg(400_000, 1);
    let r = sparre_andersen(&Density::Gaussian, 5, &c).unwrap();
    assert!(r.pass(), "{}", r.to_json());
    assert_eq!(r.checks.len(), 5);
    let r = sparre_andersen(&Density::Uniform, 3, &c).unwrap();
    assert!(r.pass(), "{}", r.to_json());
    let skew = Density::catalan_mixture(0.1, 0.4).unwrap();
    assert!(matches!(sparre_andersen(&skew, 3, &c), Err(crate::error::HopfError::AsymmetricDensity(_))));
    assert!(sparre_andersen(&Density::Gaussian, 6, &c).is_err());
}

#[test]
fn lambda_coefficients_examples() {
    let c = cfg(200_000, 8);
    let d = Density::Gaussian;
    for i in [&[2][..], &[1, 1], &[2, 1], &[1, 2, 1], &[3]] {
        let r = lambda_coefficients_check(&d, &Composition::of(i), &c).unwrap();
        assert!(r.pass(), "{}", r.to_json());
    }
    // I = (1, 1): (-1)^{2+2} P(S_1 ≥ 0, S_2 ≥ 0) = 3/8
    let r = lambda_coefficients_check(&d, &Composition::of(&[1, 1]), &c).unwrap();
    assert!(McCheck::new(r.estimates[0].1, 0.375).pass);
    let r = lambda_coefficients_check(&d, &Composition::empty(), &c).unwrap();
    assert!(r.pass() && r.samples == 0);
}

#[test]
fn telescoping_examples() {
    let c = cfg(100_000, 9);
    for n in 1..=3 {
        let r = telescoping_check(&Density::catalan_mixture(0.2, 0.3).unwrap(), n, &c).unwrap();
        assert!(r.pass(), "{}", r.to_json());
        assert_eq!(r.checks.len(), 1 << (n - 1));
    }
}

#[test]
fn report_json_shape() {
    let r = consistency_check(&signs("+"), &Density::Gaussian, &cfg(20_000, 1)).unwrap();
    let v = r.to_json();
    for k in ["estimate", "stderr", "target", "sigmas", "pass"] {
        assert!(v.get(k).is_some(), "{k}");
    }
    let r = sparre_andersen(&Density::Gaussian, 2, &cfg(20_000, 1)).unwrap();
    assert_eq!(r.to_json()["checks"].as_array().unwrap().len(), 2);
}
