use super::*;
use crate::combinat::MultisetComposition;
use crate::ncsf::s_coproduct_basis;
use crate::qsym::monomial_product;

fn w(s: &str) -> PackedWord {
    s.parse().unwrap()
}

fn words(ws: &[&str]) -> LinComb<PackedWord> {
    LinComb::from_labels(ws.iter().map(|s| w(s)))
}

// packed words x·y of length |u|+|v| with pack(x) = u and pack(y) = v
fn convolution_oracle(u: &PackedWord, v: &PackedWord) -> LinComb<PackedWord> {
    let n = u.len();
    LinComb::from_labels(PackedWord::all(n + v.len()).into_iter().filter(|x| {
        let l = x.letters();
        pack(&l[..n]) == *u && pack(&l[n..]) == *v
    }))
}

#[test]
fn m_products() {
    assert_eq!(
        wq_m_product(&w("11"), &w("21")),
        words(&["1121", "1132", "2221", "2231", "3321"])
    );
    assert_eq!(wq_m_product(&w("1"), &w("1")), words(&["12", "21", "11"]));
    assert_eq!(wq_m_product(&w("2131"), &PackedWord::empty()), words(&["2131"]));
    for u in PackedWord::all_up_to(3) {
        for v in PackedWord::all_up_to(3) {
            if u.len() + v.len() <= 5 {
                assert_eq!(wq_m_product(&u, &v), convolution_oracle(&u, &v), "{u} * {v}");
            }
        }
    }
}

#[test]
fn phi_products() {
    assert_eq!(
        wq_phi_product(&w("1"), &w("121")),
        words(&["1121", "2132", "2121", "3121"])
    );
    let x = wq_phi_product(&w("1312"), &w("21"));
    let expect = words(&[
        "131221", "131231", "131232", "131243", "141232", "141321", "142321", "142331", "142341",
        "153421", "242321", "242331", "242341", "253421", "353421",
    ]);
    assert_eq!(x, expect);
    assert_eq!(x.len(), 15);
}

#[test]
fn phi_coproduct_example() {
    let d = wq_phi_coproduct(&w("23121"));
    let e = |a: &str, b: &str| {
        let p = |s: &str| if s.is_empty() { PackedWord::empty() } else { w(s) };
        (p(a), p(b))
    };
    let expect = LinComb::from_labels([
        e("", "23121"),
        e("1", "2321"),
        e("11", "121"),
        e("211", "21"),
        e("2121", "1"),
        e("23121", ""),
    ]);
    assert_eq!(d, expect);
}

#[test]
fn refinement_conversions() {
    assert_eq!(phi_to_m(&w("133142")), words(&["133142", "134152", "144253", "145263"]));
    let (a, b): (PackedWord, PackedWord) = (w("(14|6|23|5)"), w("(14|6|2|3|5)"));
    let x = phi_to_m(&a);
    assert!(x.get(&a).is_some() && x.get(&b).is_some());
    assert!(x.get(&w("(1|4|6|23|5)")).is_some() && x.get(&w("(1|4|6|2|3|5)")).is_some());
    assert_eq!(x.len(), 4);
    let expect = LinComb::from_terms([
        (w("133142"), int(1)),
        (w("134152"), int(-1)),
        (w("144253"), int(-1)),
        (w("145263"), int(1)),
    ]);
    assert_eq!(m_to_phi(&w("133142")), expect);
    assert_eq!(phi_to_m(&w("3124")), words(&["3124"]));
    for u in PackedWord::all_up_to(4) {
        let m = WQSymElement::<Rational>::basis_element(WQSymBasis::M, u);
        let back = m.convert(WQSymBasis::Phi).unwrap().convert(WQSymBasis::M).unwrap();
        assert_eq!(back, m);
    }
}

#[test]
fn bases_agree_on_products_and_coproducts() {
    for u in PackedWord::all_up_to(3) {
        for v in PackedWord::all_up_to(3) {
            if u.len() + v.len() > 5 {
                continue;
            }
            let pu = WQSymElement::<Rational>::basis_element(WQSymBasis::Phi, u.clone());
            let pv = WQSymElement::<Rational>::basis_element(WQSymBasis::Phi, v.clone());
            let via_phi = pu.mul(&pv).unwrap().convert(WQSymBasis::M).unwrap();
            let via_m = pu
                .convert(WQSymBasis::M)
                .unwrap()
                .mul(&pv.convert(WQSymBasis::M).unwrap())
                .unwrap();
            assert_eq!(via_phi, via_m, "Φ_{u} Φ_{v}");
        }
    }
    for u in PackedWord::all_up_to(4) {
        let d_phi = wq_phi_coproduct(&u).apply_rational(|(a, b)| phi_to_m(a).tensor(&phi_to_m(b)));
        let d_m = phi_to_m(&u).apply_rational(wq_m_coproduct);
        assert_eq!(d_phi, d_m, "ΔΦ_{u}");
    }
}

#[test]
fn commutative_projection_is_multiplicative() {
    for u in PackedWord::all_up_to(3) {
        for v in PackedWord::all_up_to(3) {
            if u.len() + v.len() > 4 {
                continue;
            }
            let lhs = WQSymElement::<Rational>::basis_element(WQSymBasis::M, u.clone())
                .mul(&WQSymElement::basis_element(WQSymBasis::M, v.clone()))
                .unwrap()
                .commutative_image()
                .unwrap();
            let rhs = QSymElement::new(QSymBasis::M, monomial_product(&u.ev(), &v.ev()));
            assert_eq!(lhs, rhs);
        }
    }
    let phi = WQSymElement::<Rational>::phi(&[1, 3, 3, 1, 4, 2]);
    assert_eq!(
        phi.commutative_image().unwrap().convert(QSymBasis::M),
        phi.convert(WQSymBasis::M).unwrap().commutative_image().unwrap()
    );
}

#[test]
fn tridendriform_examples() {
    let [l, m, r] = tridendriform_split(&w("1"), &w("1")).unwrap();
    assert_eq!((l, m, r), (words(&["21"]), words(&["11"]), words(&["12"])));
    let right = tri_part(&w("11"), &w("1"), TriPart::Right).unwrap();
    let full = wq_m_product(&w("11"), &w("1"));
    let manual = full.filter(|x| {
        let l = x.letters();
        l[2] as usize == x.max() && l[..2].iter().all(|&a| a < l[2])
    });
    assert_eq!(right, manual);
    assert_eq!(right, words(&["112"]));
    assert!(matches!(
        tridendriform_split(&PackedWord::empty(), &w("1")),
        Err(HopfError::EmptyFactor)
    ));
    for u in PackedWord::all_up_to(3) {
        for v in PackedWord::all_up_to(3) {
            if u.is_empty() || v.is_empty() || u.len() + v.len() > 5 {
                continue;
            }
            let [a, b, c] = tridendriform_split(&u, &v).unwrap();
            assert_eq!(a.add(&b).add(&c), wq_m_product(&u, &v));
        }
    }
}

#[test]
fn tridendriform_axioms() {
    use TriPart::*;
    let gens: Vec<PackedWord> = (1..=3).flat_map(PackedWord::all).collect();
    let full = |x: &LinComb<PackedWord>, y: &LinComb<PackedWord>| x.bilinear_rational(y, wq_m_product);
    let t = |x: &LinComb<PackedWord>, y: &LinComb<PackedWord>, p| tri_product(x, y, p).unwrap();
    for a in &gens {
        for b in &gens {
            for c in &gens {
                if a.len() + b.len() + c.len() > 5 {
                    continue;
                }
                let (x, y, z) = (LinComb::basis(a.clone()), LinComb::basis(b.clone()), LinComb::basis(c.clone()));
                assert_eq!(t(&t(&x, &y, Left), &z, Left), t(&x, &full(&y, &z), Left));
                assert_eq!(t(&t(&x, &y, Right), &z, Left), t(&x, &t(&y, &z, Left), Right));
                assert_eq!(t(&full(&x, &y), &z, Right), t(&x, &t(&y, &z, Right), Right));
                assert_eq!(t(&t(&x, &y, Right), &z, Middle), t(&x, &t(&y, &z, Middle), Right));
                assert_eq!(t(&t(&x, &y, Left), &z, Middle), t(&x, &t(&y, &z, Right), Middle));
                assert_eq!(t(&t(&x, &y, Middle), &z, Left), t(&x, &t(&y, &z, Left), Middle));
                assert_eq!(t(&t(&x, &y, Middle), &z, Middle), t(&x, &t(&y, &z, Middle), Middle));
            }
        }
    }
}

#[test]
fn tree_basis_examples() {
    let t: SchroederTree = "(()()())".parse().unwrap();
    assert_eq!(tree_basis(&t).lincomb(), &words(&["11"]));
    assert_eq!(tree_basis(&SchroederTree::Leaf), WQSymElement::one(WQSymBasis::M));
    let trees: std::collections::BTreeSet<_> =
        PackedWord::all(3).iter().map(|u| schroeder_tree(u.letters())).collect();
    assert_eq!(trees.len(), 11);
    // the tree elements partition the M basis in each degree
    for n in 0..=4 {
        let mut total = LinComb::zero();
        for t in SchroederTree::all(n + 1) {
            total = total.add(tree_basis(&t).lincomb());
        }
        assert_eq!(total, LinComb::from_labels(PackedWord::all(n)));
    }
}

#[test]
fn dual_embedding() {
    assert_eq!(embed_sym_dual(&Composition::of(&[2])).lincomb(), &words(&["11"]));
    assert_eq!(embed_sym_dual(&Composition::of(&[1, 1])).lincomb(), &words(&["12", "21"]));
    assert_eq!(embed_sym_dual(&Composition::empty()), WQSymElement::one(WQSymBasis::N));
    // algebra map: ⟨ι(S^I) ⊗ ι(S^J), ΔM_w⟩ = [ev(w) = I·J]
    let comps = Composition::all_up_to(3);
    for i in &comps {
        for j in &comps {
            let (ni, nj) = (embed_sym_dual(i), embed_sym_dual(j));
            for x in PackedWord::all(i.weight() + j.weight()) {
                let lhs = ni.lincomb().tensor(nj.lincomb()).pairing_diagonal(&wq_m_coproduct(&x));
                assert_eq!(lhs, int((x.ev() == i.concat(j)) as i64), "{i} {j} {x}");
            }
        }
    }
    // coalgebra map: ⟨ι(S^K), M_u M_v⟩ = coefficient of S^{ev u} ⊗ S^{ev v} in ΔS^K
    for u in PackedWord::all_up_to(2) {
        for v in PackedWord::all_up_to(2) {
            let prod = WQSymElement::<Rational>::basis_element(WQSymBasis::M, u.clone())
                .mul(&WQSymElement::basis_element(WQSymBasis::M, v.clone()))
                .unwrap();
            for k in Composition::all(u.len() + v.len()) {
                let lhs = embed_sym_dual(&k).pair(&prod).unwrap();
                assert_eq!(lhs, s_coproduct_basis(&k).coeff(&(u.ev(), v.ev())));
            }
        }
    }
}

#[test]
fn fiber_sums_are_not_multiplicative() {
    // the literal fiber-sum lift Σ_{ev u = I} M_u is not an algebra map
    let fiber = |i: &Composition| {
        WQSymElement::<Rational>::new(
            WQSymBasis::M,
            LinComb::from_labels(PackedWord::all(i.weight()).into_iter().filter(|u| u.ev() == *i)),
        )
    };
    let one = Composition::of(&[1]);
    let lhs = fiber(&one).mul(&fiber(&one)).unwrap();
    let rhs = monomial_product(&one, &one).apply(|k| fiber(k).lincomb().clone());
    assert_ne!(lhs.lincomb(), &rhs);
    assert_eq!(lhs.lincomb().coeff(&w("12")), int(1));
    assert_eq!(rhs.coeff(&w("12")), int(2));
}

fn ms(s: &str) -> MultisetComposition {
    s.parse().unwrap()
}

// literal last-part recursion
fn rho(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    match (a.split_last(), b.split_last()) {
        (None, _) => vec![b.to_vec()],
        (_, None) => vec![a.to_vec()],
        (Some((la, ra)), Some((lb, rb))) => {
            let mut out = Vec::new();
            for mut x in rho(a, rb) {
                x.push(lb.clone());
                out.push(x);
            }
            for mut x in rho(ra, b) {
                x.push(la.clone());
                out.push(x);
            }
            for mut x in rho(ra, rb) {
                let mut u = la.clone();
                u.extend_from_slice(lb);
                u.sort();
                x.push(u);
                out.push(x);
            }
            out
        }
    }
}

fn pi_oracle(a: &MultisetComposition, b: &MultisetComposition) -> LinComb<MultisetComposition> {
    let m = a.max_letter() as u32;
    let shifted: Vec<Vec<u32>> = b.parts().into_iter().map(|p| p.into_iter().map(|x| x + m).collect()).collect();
    LinComb::from_labels(
        rho(&a.parts(), &shifted)
            .into_iter()
            .map(|parts| MultisetComposition::from_parts(&parts).unwrap()),
    )
}

#[test]
fn mq_product_examples() {
    let a = ms("{1,1,2}{1}");
    let b = ms("{1,1,1,2}");
    let expect = LinComb::from_labels([
        ms("{1,1,2}{1}{3,3,3,4}"),
        ms("{1,1,2}{3,3,3,4}{1}"),
        ms("{3,3,3,4}{1,1,2}{1}"),
        ms("{1,1,2,3,3,3,4}{1}"),
        ms("{1,1,2}{1,3,3,3,4}"),
    ]);
    assert_eq!(mq_product(&a, &b), expect);
    assert_eq!(mq_product(&a, &MultisetComposition::empty()), LinComb::basis(a.clone()));
    for x in (0..=3).flat_map(MultisetComposition::all) {
        for y in (0..=3).flat_map(MultisetComposition::all) {
            if x.size() + y.size() <= 4 {
                assert_eq!(mq_product(&x, &y), pi_oracle(&x, &y));
            }
        }
    }
}

#[test]
fn mq_restricts_to_wqsym() {
    for u in PackedWord::all_up_to(3) {
        for v in PackedWord::all_up_to(3) {
            if u.len() + v.len() > 4 {
                continue;
            }
            let lifted = wq_m_product(&u, &v).map_labels(multiset_of_packed);
            assert_eq!(mq_product(&multiset_of_packed(&u), &multiset_of_packed(&v)), lifted);
        }
    }
}

#[test]
fn mq_associative() {
    let all: Vec<MultisetComposition> = (1..=2).flat_map(MultisetComposition::all).collect();
    for a in &all {
        for b in &all {
            for c in &all {
                if a.size() + b.size() + c.size() > 4 {
                    continue;
                }
                let (x, y, z) = (LinComb::basis(a.clone()), LinComb::basis(b.clone()), LinComb::basis(c.clone()));
                let l: MQSymElement = mq_mul(&mq_mul(&x, &y), &z);
                let r = mq_mul(&x, &mq_mul(&y, &z));
                assert_eq!(l, r);
            }
        }
    }
}
