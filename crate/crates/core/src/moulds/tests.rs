use super::*;
use crate::coeffring::{binomial, int, rat};
use crate::combinat::schroeder_tree;
use crate::wqsym::{tri_part, TriPart, WQSymBasis, WQSymElement};
use OperatorExpr::{Leaf, Product};

fn pw(s: &str) -> PackedWord {
    s.parse().unwrap()
}

fn z(i: u32) -> MultiPoly {
    MultiPoly::var(Var::Z(i))
}

fn zprod(is: &[u32]) -> MultiPoly {
    is.iter().fold(MultiPoly::from_int(1), |a, &i| a.mul(&z(i)))
}

fn inv_prod(factors: &[&[u32]]) -> PolyFraction {
    let one = MultiPoly::from_int(1);
    let den = factors.iter().fold(one.clone(), |d, f| d.mul(&zprod(f).sub(&one)));
    PolyFraction::new(one, den).unwrap()
}

fn lc(words: &[&str]) -> LinComb<PackedWord> {
    LinComb::from_labels(words.iter().map(|w| pw(w)))
}

#[test]
fn basis_mould_examples() {
    assert_eq!(
        mould_m(&pw("2131231")).closed_form().unwrap(),
        inv_prod(&[&[2, 4, 7], &[2, 4, 7, 1, 5], &[2, 4, 7, 1, 5, 3, 6]])
    );
    assert_eq!(mould_m(&pw("1")).closed_form().unwrap(), inv_prod(&[&[1]]));
    assert_eq!(mould_m(&pw("12")).closed_form().unwrap(), inv_prod(&[&[1], &[1, 2]]));
    // the evaluator agrees with the closed form
    let x = vec![int(2), int(3), int(5), int(7), int(11), int(13), int(17)];
    let point = (1..=7).map(|i| (Var::Z(i), x[i as usize - 1].clone())).collect();
    let m = mould_m(&pw("2131231"));
    assert_eq!(m.eval(&x).unwrap(), m.closed_form().unwrap().eval(&point).unwrap());
    assert_eq!(m.eval(&x[..3]), Err(HopfError::Arity { expected: 7, got: 3 }));
}

/// The lattice expansion `M_u(Z) = Σ_{α < 0, pack(α) = u} z^α` truncated to
/// `α ≥ -N`, at `z = 2` in every variable, approaches the rational value.
#[test]
fn basis_mould_matches_truncated_laurent_sum() {
    let u = pw("2131");
    let two = int(2);
    let n = 40i64;
    let mut total = Rational::zero();
    for b1 in -n..0 {
        for b2 in b1 + 1..0 {
            for b3 in b2 + 1..0 {
                // blocks of 2131: {2,4}, {1}, {3}; z^α = 2^{2 b1 + b2 + b3}
                let e = 2 * b1 + b2 + b3;
                total += num_traits::pow(two.clone().recip(), (-e) as usize);
            }
        }
    }
    let exact = mould_m(&u).eval(&[int(2), int(2), int(2), int(2)]).unwrap();
    let err = &exact - &total;
    assert!(err >= Rational::zero() && err < rat(1, 1_000_000), "{exact} vs {total}");
}

#[test]
fn star_examples() {
    let m1 = mould_m(&pw("1"));
    let lhs = m1.clone().star(m1);
    let rhs = RationalMould::from_lincomb(2, &lc(&["12", "21", "11"]));
    assert!(mould_identity_check(&lhs, &rhs, 20, 1).unwrap().pass);
    assert!(mould_star_check(&pw("1"), &pw("1"), 20, 1).unwrap().pass);

    let empty = mould_m(&PackedWord::empty());
    let u = mould_m(&pw("2131"));
    assert!(mould_identity_check(&u.clone().star(empty), &u, 20, 2).unwrap().pass);

    let lhs = mould_m(&pw("11")).star(mould_m(&pw("21")));
    let rhs = RationalMould::from_lincomb(4, &lc(&["1121", "1132", "2221", "2231", "3321"]));
    assert!(mould_identity_check(&lhs, &rhs, 20, 3).unwrap().pass);
    // one term short
    let short = RationalMould::from_lincomb(4, &lc(&["1121", "1132", "2221", "2231"]));
    assert!(!mould_identity_check(&lhs, &short, 20, 3).unwrap().pass);
}

#[test]
fn star_identity_small_pairs() {
    for m in 1..=3 {
        for n in 1..=4 - m {
            for u in PackedWord::all(m) {
                for v in PackedWord::all(n) {
                    assert!(mould_star_check(&u, &v, 20, 4).unwrap().pass, "{u} {v}");
                }
            }
        }
    }
}

#[test]
fn op_eval_examples() {
    let d0 = DiscreteSeq::delta(0);
    for t in -3..6 {
        let expected = if t >= 1 { 1 } else { 0 };
        assert_eq!(op_eval(&pw("1"), std::slice::from_ref(&d0), t).unwrap(), int(expected));
    }
    assert_eq!(op_eval(&PackedWord::empty(), &[], 4).unwrap(), int(1));
    assert_eq!(
        op_eval(&pw("12"), std::slice::from_ref(&d0), 0),
        Err(HopfError::Arity { expected: 2, got: 1 })
    );
    let mut rng = shard_rng(3, 0);
    let f = DiscreteSeq::random(&mut rng, -2, 3);
    let g = DiscreteSeq::random(&mut rng, -1, 4);
    for t in -4..10 {
        // M_11[f, g](t) = Σ_{n ≥ 1} f(t-n) g(t-n)
        let direct: Rational = (1..=20).map(|n| f.get(t - n) * g.get(t - n)).fold(Rational::zero(), |a, b| a + b);
        assert_eq!(op_eval(&pw("11"), &[f.clone(), g.clone()], t).unwrap(), direct);
        // M_12[f, g](t) = Σ_{n1,n2 ≥ 1} f(t-n1-n2) g(t-n2) = M_21[g, f](t)
        let mut direct = Rational::zero();
        for n1 in 1..=20 {
            for n2 in 1..=20 {
                direct += f.get(t - n1 - n2) * g.get(t - n2);
            }
        }
        assert_eq!(op_eval(&pw("12"), &[f.clone(), g.clone()], t).unwrap(), direct);
        assert_eq!(op_eval(&pw("21"), &[g.clone(), f.clone()], t).unwrap(), direct);
    }
}

/// Brute-force lattice sum over a finite range of `α`.
fn brute_op(u: &PackedWord, fs: &[DiscreteSeq], t: i64, depth: i64) -> Rational {
    let n = u.len();
    let mut total = Rational::zero();
    let mut alpha = vec![-depth; n];
    loop {
        if crate::combinat::pack(&alpha) == *u {
            total += (0..n).fold(Rational::one(), |a, i| a * fs[i].get(t + alpha[i]));
        }
        let mut k = n;
        loop {
            if k == 0 {
                return total;
            }
            k -= 1;
            if alpha[k] < -1 {
                alpha[k] += 1;
                break;
            }
            alpha[k] = -depth;
        }
    }
}

#[test]
fn op_eval_matches_brute_force() {
    let mut rng = shard_rng(8, 0);
    for n in 1..=3 {
        for u in PackedWord::all(n) {
            let fs: Vec<DiscreteSeq> = (0..n).map(|_| DiscreteSeq::random(&mut rng, -1, 2)).collect();
            for t in [-1, 2, 5] {
                assert_eq!(op_eval(&u, &fs, t).unwrap(), brute_op(&u, &fs, t, 8), "{u} at {t}");
            }
        }
    }
}

#[test]
fn rota_baxter_relation() {
    let d0 = DiscreteSeq::delta(0);
    let r = rb_operator_check(&d0, &d0, -5, 10);
    assert!(r.pass);
    assert_eq!(r.points_checked, 16);
    // by hand: M[δ0]^2 = (t ≥ 1)
    let sq = Product(vec![OperatorExpr::m(Leaf(1)), OperatorExpr::m(Leaf(2))]);
    for t in -5..10 {
        assert_eq!(sq.eval(&[d0.clone(), d0.clone()], t).unwrap(), int((t >= 1) as i64));
    }
    assert!(rb_operator_check(&DiscreteSeq::zero(), &d0, -5, 10).pass);
    let mut rng = shard_rng(21, 0);
    for _ in 0..100 {
        let f1 = DiscreteSeq::random(&mut rng, -3, 3);
        let f2 = DiscreteSeq::random(&mut rng, -3, 3);
        assert!(rb_operator_check(&f1, &f2, -5, 12).pass);
    }
}

#[test]
fn delta_is_left_inverse_of_m() {
    let mut rng = shard_rng(4, 0);
    let f = DiscreteSeq::random(&mut rng, -3, 3);
    let dm = OperatorExpr::delta(OperatorExpr::m(Leaf(1)));
    let w = dm.eval_window(std::slice::from_ref(&f), 8).unwrap();
    for t in -8..=8 {
        assert_eq!(w.at(t), f.get(t));
    }
}

#[test]
fn decomposition_examples() {
    let m = OperatorExpr::m;
    let f = Leaf;
    let p = |xs: Vec<OperatorExpr>| Product(xs);
    assert_eq!(decompose(&pw("21")), m(p(vec![m(f(2)), f(1)])));
    assert_eq!(decompose(&pw("21")).to_string(), "M[M[f2]f1]");
    // literal forms M[f2 M[f3 M[f1]]] and M[f1 M[f3 M[f2 f4]]]
    let e132 = m(p(vec![f(2), m(p(vec![f(3), m(f(1))]))]));
    let e3121 = m(p(vec![f(1), m(p(vec![f(3), m(p(vec![f(2), f(4)]))]))]));
    let mut rng = shard_rng(6, 0);
    for _ in 0..5 {
        let fs: Vec<DiscreteSeq> = (0..4).map(|_| DiscreteSeq::random(&mut rng, -2, 2)).collect();
        for t in -2..8 {
            assert_eq!(e132.eval(&fs[..3], t).unwrap(), op_eval(&pw("132"), &fs[..3], t).unwrap());
            assert_eq!(decompose(&pw("132")).eval(&fs[..3], t).unwrap(), e132.eval(&fs[..3], t).unwrap());
            assert_eq!(e3121.eval(&fs, t).unwrap(), op_eval(&pw("3121"), &fs, t).unwrap());
        }
    }
}

#[test]
fn decomposition_agrees_with_lattice_sums() {
    let mut rng = shard_rng(12, 0);
    for n in 1..=4 {
        for u in PackedWord::all(n) {
            let fs: Vec<DiscreteSeq> = (0..n).map(|_| DiscreteSeq::random(&mut rng, -2, 2)).collect();
            let w = decompose(&u).eval_window(&fs, 10).unwrap();
            for t in -3..=10 {
                assert_eq!(w.at(t), op_eval(&u, &fs, t).unwrap(), "{u} at {t}");
            }
        }
    }
}

#[test]
fn operad_composition_tables() {
    let cases: [(&str, usize, &[&str]); 7] = [
        ("12", 2, &["123", "213", "112"]),
        ("121", 1, &["1232"]),
        ("121", 2, &["1121", "1231", "2132"]),
        ("121", 3, &["2312"]),
        ("123", 1, &["1234"]),
        ("123", 2, &["1123", "1234", "2134"]),
        ("123", 3, &["1213", "1223", "1234", "1324", "2314"]),
    ];
    for (u, k, expected) in cases {
        let got = operad_compose(&pw(u), k, &pw("12")).unwrap();
        assert_eq!(got, lc(expected), "{u} o{k} 12");
        assert!(got.iter().all(|(_, c)| c.is_one()));
        assert!(operad_check(&pw(u), k, &pw("12"), 20, 5).unwrap().pass);
    }
    assert!(operad_compose(&pw("12"), 3, &pw("1")).is_err());
    assert!(operad_compose(&pw("12"), 0, &pw("1")).is_err());
}

#[test]
fn operad_symbolic_matches_rational_small() {
    for m in 1..=3 {
        for n in 1..=3 {
            for u in PackedWord::all(m) {
                for v in PackedWord::all(n) {
                    for k in 1..=m {
                        assert!(operad_check(&u, k, &v, 5, 7).unwrap().pass, "{u} o{k} {v}");
                    }
                }
            }
        }
    }
}

/// Sequential `(a ∘_i b) ∘_{i+j-1} c = a ∘_i (b ∘_j c)` and parallel
/// `(a ∘_i b) ∘_{k+|b|-1} c = (a ∘_k c) ∘_i b` for `i < k`.
#[test]
fn operad_axioms_on_random_triples() {
    let mut rng = shard_rng(17, 0);
    let words: Vec<PackedWord> = (1..=3).flat_map(PackedWord::all).collect();
    let mut checked = 0;
    while checked < 40 {
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| words[rng.random_range(0..words.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        if a.len() + b.len() + c.len() > 6 {
            continue;
        }
        checked += 1;
        let (ma, mb, mc) = (mould_m(&a), mould_m(&b), mould_m(&c));
        let i = rng.random_range(1..=a.len());
        let j = rng.random_range(1..=b.len());
        let seq_l = ma.clone().compose(i, mb.clone()).unwrap().compose(i + j - 1, mc.clone()).unwrap();
        let seq_r = ma.clone().compose(i, mb.clone().compose(j, mc.clone()).unwrap()).unwrap();
        assert!(mould_identity_check(&seq_l, &seq_r, 5, 1).unwrap().pass);
        // same, on the symbolic side
        let lhs = operad_compose(&a, i, &b)
            .unwrap()
            .apply_rational(|w| operad_compose(w, i + j - 1, &c).unwrap());
        let rhs = operad_compose(&b, j, &c)
            .unwrap()
            .apply_rational(|w| operad_compose(&a, i, w).unwrap());
        assert_eq!(lhs, rhs, "{a} o{i} ({b} o{j} {c})");
        if a.len() >= 2 {
            let i = rng.random_range(1..a.len());
            let k = rng.random_range(i + 1..=a.len());
            let par_l = ma.clone().compose(i, mb.clone()).unwrap().compose(k + b.len() - 1, mc.clone()).unwrap();
            let par_r = ma.compose(k, mc).unwrap().compose(i, mb).unwrap();
            assert!(mould_identity_check(&par_l, &par_r, 5, 2).unwrap().pass);
        }
    }
}

#[test]
fn loday_substitution() {
    for (u, k, v) in [("12", 2, "12"), ("121", 2, "12"), ("123", 3, "12"), ("21", 1, "211")] {
        assert!(loday_check(&mould_m(&pw(u)), k, &mould_m(&pw(v)), 10, 3).unwrap().pass);
    }
}

#[test]
fn tridendriform_operator_forms() {
    let one = pw("1");
    let right = tri_part(&one, &one, TriPart::Right).unwrap();
    assert_eq!(right, lc(&["12"]));
    let mut rng = shard_rng(30, 0);
    for m in 1..=3 {
        for n in 1..=4 - m {
            for u in PackedWord::all(m) {
                for v in PackedWord::all(n) {
                    let fs: Vec<DiscreteSeq> = (0..m + n).map(|_| DiscreteSeq::random(&mut rng, -2, 2)).collect();
                    for part in TriPart::ALL {
                        let r = tridendriform_op_check(part, &u, &v, &fs, -4, 10).unwrap();
                        assert!(r.pass, "{u} {v} {part:?}");
                    }
                }
            }
        }
    }
    assert!(tridendriform_op(TriPart::Left, &PackedWord::empty(), &one).is_err());
}

#[test]
fn tree_mould_example() {
    let t: SchroederTree = "((()())(()())(()()()))".parse().unwrap();
    assert_eq!(
        tree_mould(&t).closed_form().unwrap(),
        inv_prod(&[&[1], &[3], &[5, 6], &[1, 2, 3, 4, 5, 6]])
    );
    assert!(tree_mould_check(&t, 20, 1).unwrap().pass);
    // corolla with k leaves
    for k in 2..=5 {
        let corolla = SchroederTree::Node(vec![SchroederTree::Leaf; k]);
        let vars: Vec<u32> = (1..k as u32).collect();
        assert_eq!(tree_mould(&corolla).closed_form().unwrap(), inv_prod(&[&vars]));
    }
}

#[test]
fn tree_moulds_equal_sums_over_fibers() {
    for leaves in 2..=5 {
        for t in SchroederTree::all(leaves) {
            assert!(tree_mould_check(&t, 20, 9).unwrap().pass, "{t}");
        }
    }
    // every packed word lands in exactly one fiber
    let total: usize = SchroederTree::all(5).iter().map(|t| tree_basis(t).lincomb().len()).sum();
    assert_eq!(total, PackedWord::all(4).len());
    assert_eq!(schroeder_tree(pw("1").letters()), "(()())".parse().unwrap());
}

#[test]
fn natural_character_examples() {
    let t = MultiPoly::var(Var::T);
    assert_eq!(natural_character(&WQSymElement::m(&[1])).unwrap(), t);
    assert_eq!(natural_character(&WQSymElement::one(WQSymBasis::M)).unwrap(), MultiPoly::from_int(1));
    let m1 = WQSymElement::m(&[1]);
    let sq = m1.mul(&m1).unwrap();
    assert_eq!(natural_character(&sq).unwrap(), t.mul(&t));
}

#[test]
fn natural_character_is_multiplicative() {
    for m in 0..=3 {
        for n in 0..=3 {
            for u in PackedWord::all(m) {
                for v in PackedWord::all(n) {
                    let (x, y) = (WQSymElement::m(u.letters()), WQSymElement::phi(v.letters()));
                    let lhs = natural_character(&x.mul(&y.convert(WQSymBasis::M).unwrap()).unwrap()).unwrap();
                    let rhs = natural_character(&x).unwrap().mul(&natural_character(&y).unwrap());
                    assert_eq!(lhs, rhs, "{u} {v}");
                }
            }
        }
    }
}

/// `M_u[1_{[0,T]}](t) = binom(t, max u)` for `0 ≤ t ≤ T + 1`.
#[test]
fn natural_character_from_operators() {
    let cap = 8;
    for n in 1..=4 {
        for u in PackedWord::all(n) {
            let fs = vec![DiscreteSeq::indicator(0, cap); n];
            for t in 0..=cap + 1 {
                let expected = Rational::from_integer(binomial(t as u64, PackedWord::max(&u) as u64));
                assert_eq!(op_eval(&u, &fs, t).unwrap(), expected, "{u} at {t}");
            }
        }
    }
}

#[test]
fn qint_character_checks() {
    // q = 1 recovers the natural character at integer t
    for u in PackedWord::all(3) {
        let x = WQSymElement::m(u.letters());
        for t in 0..6u32 {
            let nat = Rational::from_integer(binomial(t as u64, PackedWord::max(&u) as u64));
            assert_eq!(qint_character(&x, &int(1), t).unwrap(), nat);
        }
    }
    // operator oracle: f(s) = q^s on [0, T]
    let q = rat(2, 3);
    for u in PackedWord::all(3) {
        let f = DiscreteSeq::from_pairs((0..=10).map(|s| (s, num_traits::pow(q.clone(), s as usize))));
        let fs = vec![f; 3];
        for t in 0..=6i64 {
            let x = WQSymElement::m(u.letters());
            assert_eq!(qint_character(&x, &q, t as u32).unwrap(), op_eval(&u, &fs, t).unwrap(), "{u} at {t}");
        }
    }
    // multiplicative
    let (x, y) = (WQSymElement::m(&[1, 2, 1]), WQSymElement::m(&[2, 1]));
    let xy = x.mul(&y).unwrap();
    let q = rat(-1, 2);
    assert_eq!(
        qint_character(&xy, &q, 5).unwrap(),
        qint_character(&x, &q, 5).unwrap() * qint_character(&y, &q, 5).unwrap()
    );
}
