//! Randomized invariants for every module.

use std::collections::BTreeMap;

use hopfcone::characters::{catalan_number, catalan_poly, mc_weight, Density, McConfig};
use hopfcone::coeffring::{qbinomial, MultiPoly, PolyFraction, Rational, Scalar, Var};
use hopfcone::combinat::{pack, quasi_shuffle, std, Composition, PackedWord, Permutation, SignSeq};
use hopfcone::cones::{cone_c, cone_k};
use hopfcone::freemod::LinComb;
use hopfcone::moulds::{decompose, op_eval, DiscreteSeq};
use hopfcone::ncsf::{SymBasis, SymElement};
use hopfcone::rotabaxter::{rb_identity_check, ConvSeq};
use hopfcone::wqsym::{m_to_phi, phi_to_m, wq_m_product, wq_phi_product};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn monomial_poly() -> impl Strategy<Value = MultiPoly> {
    (rational(), 0u32..3, 0u32..3, 0u32..2).prop_map(|(c, i, j, k)| {
        MultiPoly::var(Var::A)
            .pow(i)
            .mul(&MultiPoly::var(Var::B).pow(j))
            .mul(&MultiPoly::var(Var::Z(1)).pow(k))
            .scale(&c)
    })
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(monomial_poly(), 0..4).prop_map(|ts| ts.iter().fold(MultiPoly::zero(), |a, t| a.add(t)))
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn fraction() -> impl Strategy<Value = PolyFraction> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| PolyFraction::new(n, d).expect("nonzero denominator"))
}

fn composition(max_parts: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1u32..=3, 0..=max_parts).prop_map(|v| Composition::new(v).expect("positive parts"))
}

fn word(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1u8..=9, 0..=max_len)
}

fn packed_word(min_len: usize, max_len: usize) -> impl Strategy<Value = PackedWord> {
    prop::collection::vec(0u8..6, min_len..=max_len).prop_map(|w| pack(&w))
}

fn conv_seq() -> impl Strategy<Value = ConvSeq> {
    prop::collection::vec((-4i64..=4, rational()), 0..5).prop_map(ConvSeq::from_pairs)
}

fn discrete_seq() -> impl Strategy<Value = DiscreteSeq> {
    prop::collection::vec((-3i64..=3, rational()), 0..4).prop_map(DiscreteSeq::from_pairs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn poly_ring_axioms(x in poly(), y in poly(), z in poly()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn fraction_ring_axioms(x in fraction(), y in fraction(), z in fraction()) {
        prop_assert_eq!(x.mul_ref(&y).mul_ref(&z), x.mul_ref(&y.mul_ref(&z)));
        prop_assert_eq!(x.add_ref(&y).add_ref(&z), x.add_ref(&y.add_ref(&z)));
        prop_assert_eq!(x.mul_ref(&y.add_ref(&z)), x.mul_ref(&y).add_ref(&x.mul_ref(&z)));
    }

    #[test]
    fn fraction_equality_is_an_equivalence(x in fraction(), p in nonzero_poly(), q in nonzero_poly()) {
        // the same value with its numerator and denominator scaled two ways
        let y = PolyFraction::new(x.num().mul(&p), x.den().mul(&p)).unwrap();
        let z = PolyFraction::new(x.num().mul(&q), x.den().mul(&q)).unwrap();
        prop_assert_eq!(&x, &x);
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(&y, &x);
        prop_assert_eq!(&y, &z);
        prop_assert_eq!(&x, &z);
    }

    #[test]
    fn fraction_evaluation_is_a_ring_map(x in fraction(), y in fraction(), a in rational(), b in rational()) {
        let pt = BTreeMap::from([(Var::A, a), (Var::B, b), (Var::Z(1), Rational::from_integer(7.into()))]);
        if let (Ok(ex), Ok(ey)) = (x.eval(&pt), y.eval(&pt)) {
            prop_assert_eq!(x.mul_ref(&y).eval(&pt).unwrap(), &ex * &ey);
            prop_assert_eq!(x.add_ref(&y).eval(&pt).unwrap(), ex + ey);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pack_and_std_are_idempotent(w in word(8)) {
        let p = pack(&w);
        prop_assert_eq!(pack(p.letters()), p.clone());
        let s = std(&w);
        prop_assert_eq!(std(s.as_slice()), s.clone());
        prop_assert_eq!(s.as_slice().len(), w.len());
    }

    #[test]
    fn packed_word_invariants(u in packed_word(0, 7)) {
        let ev = u.ev();
        prop_assert_eq!(ev.weight(), u.len());
        prop_assert!(ev.parts().iter().all(|&c| c > 0));
        prop_assert_eq!(PackedWord::from_blocks(&u.blocks()).unwrap(), u.clone());
        prop_assert_eq!(u.to_set_composition_string().parse::<PackedWord>().unwrap(), u.clone());
    }

    #[test]
    fn composition_sign_descent_round_trips(i in composition(6)) {
        prop_assume!(i.weight() > 0);
        let n = i.weight();
        prop_assert_eq!(Composition::from_descent_set(n, &i.descent_set()).unwrap(), i.clone());
        let e = i.to_signseq().expect("positive weight");
        prop_assert_eq!(e.to_composition(), i.clone());
        let printed = i.to_string();
        prop_assert_eq!(printed.parse::<Composition>().unwrap(), i.clone());
    }

    #[test]
    fn quasi_shuffle_is_commutative_and_associative(
        u in prop::collection::vec(1u32..=3, 0..=2),
        v in prop::collection::vec(1u32..=3, 0..=2),
        w in prop::collection::vec(1u32..=3, 0..=1),
    ) {
        prop_assert_eq!(quasi_shuffle(&u, &v), quasi_shuffle(&v, &u));
        let left = quasi_shuffle(&u, &v).apply_rational(|x| quasi_shuffle(x, &w));
        let right = quasi_shuffle(&v, &w).apply_rational(|x| quasi_shuffle(&u, x));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sym_conversions_round_trip(i in composition(5), c in rational()) {
        let x = SymElement::<Rational>::basis_element(SymBasis::S, i.clone()).scale(&c);
        for b in [SymBasis::R, SymBasis::Lambda, SymBasis::SignedR] {
            prop_assert_eq!(x.convert(b).convert(SymBasis::S), x.clone());
        }
        let r = SymElement::<Rational>::basis_element(SymBasis::R, i);
        prop_assert_eq!(r.convert(SymBasis::SignedR).convert(SymBasis::R), r);
    }

    #[test]
    fn sym_product_is_basis_independent(i in composition(3), j in composition(3)) {
        let rs = SymElement::<Rational>::basis_element(SymBasis::R, i.clone())
            .mul(&SymElement::basis_element(SymBasis::R, j.clone()));
        let ss = SymElement::<Rational>::basis_element(SymBasis::R, i)
            .convert(SymBasis::S)
            .mul(&SymElement::basis_element(SymBasis::R, j).convert(SymBasis::S));
        prop_assert_eq!(rs.convert(SymBasis::S), ss);
    }

    #[test]
    fn wqsym_bases_agree(u in packed_word(1, 3), v in packed_word(1, 2)) {
        let via_phi = wq_phi_product(&u, &v).apply_rational(phi_to_m);
        let via_m = phi_to_m(&u).bilinear_rational(&phi_to_m(&v), wq_m_product);
        prop_assert_eq!(via_phi, via_m);
        prop_assert_eq!(m_to_phi(&u).apply_rational(phi_to_m), LinComb::basis(u));
    }

    #[test]
    fn k_cone_is_union_of_finer_c_cones(u in packed_word(1, 3), pt in prop::collection::vec(-3i64..=3, 3)) {
        let x = &pt[..u.len()];
        let hits = u.finer_words().iter().filter(|v| cone_c(v).contains_int(x)).count();
        prop_assert!(hits <= 1);
        prop_assert_eq!(hits == 1, cone_k(&u).contains_int(x));
    }

    #[test]
    fn rota_baxter_relation(x in conv_seq(), y in conv_seq()) {
        prop_assert!(rb_identity_check(&x, &y));
        // the two halves are subalgebras
        let p = x.r().conv(&y.r());
        prop_assert_eq!(p.r(), p);
        let m = x.r_minus().conv(&y.r_minus());
        prop_assert_eq!(m.r_minus(), m);
    }

    #[test]
    fn operator_decomposition_matches_lattice_sum(u in packed_word(1, 4), fs in prop::collection::vec(discrete_seq(), 4)) {
        let fs = &fs[..u.len()];
        let expr = decompose(&u);
        for t in -3..=8 {
            prop_assert_eq!(expr.eval(fs, t).unwrap(), op_eval(&u, fs, t).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn mc_runs_are_reproducible(seed in any::<u64>(), shards in 1usize..=4, len in 1usize..=3, bits in any::<u8>()) {
        let e = &SignSeq::all(len)[bits as usize % (1 << len)];
        let cfg = McConfig::new(seed, 10_000, shards);
        let a = mc_weight(e, &Density::Gaussian, &cfg).unwrap();
        let b = mc_weight(e, &Density::Gaussian, &cfg).unwrap();
        prop_assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        prop_assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }
}

#[test]
fn qbinomial_is_symmetric() {
    for n in 0..=10 {
        for k in 0..=n {
            assert_eq!(qbinomial(n, k).unwrap(), qbinomial(n, n - k).unwrap());
        }
    }
}

#[test]
fn catalan_polynomials_are_symmetric() {
    for n in 1..=10 {
        let p = catalan_poly(n);
        let swapped: MultiPoly = p.terms().fold(MultiPoly::zero(), |acc, (m, c)| {
            let t = MultiPoly::var(Var::A)
                .pow(m.exponent(Var::B))
                .mul(&MultiPoly::var(Var::B).pow(m.exponent(Var::A)))
                .scale(c);
            acc.add(&t)
        });
        assert_eq!(swapped, p);
        assert!(p.terms().all(|(m, _)| m.degree() as usize == n - 1));
        let one = Rational::from_integer(1.into());
        let at_one = p.eval(&BTreeMap::from([(Var::A, one.clone()), (Var::B, one)])).unwrap();
        assert_eq!(at_one, Rational::from_integer(catalan_number(n)));
    }
}

#[test]
fn ordered_bell_numbers() {
    let counts: Vec<usize> = (1..=5).map(|n| PackedWord::all(n).len()).collect();
    assert_eq!(counts, [1, 3, 13, 75, 541]);
    assert!(Permutation::all(4).iter().all(|p| std(p.as_slice()) == *p));
}
