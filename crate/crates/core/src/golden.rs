//! Worked examples with known exact answers, shared by `hopfcone selftest` and
//! the acceptance suite.

use std::time::Instant;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::characters::{catalan_d, catalan_poly, mc_weight, u_series, Density, McConfig};
use crate::coeffring::{int, rat, MultiPoly, PolyFraction, Rational, Var};
use crate::combinat::{
    pack, quasi_shuffle, schroeder_tree, segmented_shifted_shuffle, shifted_shuffle, std, Composition,
    MultisetComposition, PackedWord, Partition, Permutation, SchroederTree, SignSeq,
};
use crate::cones::{
    cone_c, cone_k, cone_multiset, ipt_box, product_identity_check, rational_fn, star_identity_random_check,
    ConeFlavor, Constraint,
};
use crate::error::Result;
use crate::freemod::{is_grouplike, GradedSeries, LinComb};
use crate::moulds::{
    decompose, mould_identity_check, mould_m, op_eval, operad_compose, tree_mould, DiscreteSeq, OperatorExpr,
    RationalMould,
};
use crate::ncsf::{
    alien, commutative_image, is_lie_idempotent, parse_label, phi, psi, s_coproduct_basis, AlienOp, SymBasis,
    SymElement,
};
use crate::qsym::{monomial_product, FQSymElement, QSymBasis, QSymElement};
use crate::rotabaxter::{character_c, Tensor, Unitized};
use crate::sampling::shard_rng;
use crate::wqsym::{m_to_phi, mq_product, phi_to_m, wq_m_product, wq_phi_coproduct, wq_phi_product};

/// One named example; `run` returns whether the computed value matches.
pub struct GoldenCase {
    pub name: &'static str,
    pub run: fn() -> Result<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub error: Option<String>,
    pub millis: f64,
}

impl GoldenOutcome {
    pub fn to_json(&self) -> Value {
        let mut v = json!({"name": self.name, "pass": self.pass, "millis": self.millis});
        if let Some(e) = &self.error {
            v["error"] = json!(e);
        }
        v
    }
}

pub fn run_case(c: &GoldenCase) -> GoldenOutcome {
    let start = Instant::now();
    let res = (c.run)();
    let millis = start.elapsed().as_secs_f64() * 1e3;
    match res {
        Ok(pass) => GoldenOutcome {
            name: c.name,
            pass,
            error: None,
            millis,
        },
        Err(e) => GoldenOutcome {
            name: c.name,
            pass: false,
            error: Some(e.to_string()),
            millis,
        },
    }
}

pub fn run_all() -> Vec<GoldenOutcome> {
    cases().iter().map(run_case).collect()
}

pub fn report_json(outcomes: &[GoldenOutcome]) -> Value {
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.name).collect();
    json!({
        "cases": outcomes.len(),
        "passed": outcomes.len() - failed.len(),
        "failed": failed,
        "pass": failed.is_empty(),
        "results": outcomes.iter().map(GoldenOutcome::to_json).collect::<Vec<_>>(),
    })
}

fn pw(s: &str) -> PackedWord {
    s.parse().expect("literal packed word")
}

fn words(ws: &[&str]) -> LinComb<PackedWord> {
    LinComb::from_labels(ws.iter().map(|s| pw(s)))
}

fn comp(s: &str) -> Composition {
    s.parse().expect("literal composition")
}

fn digits(s: &str) -> Vec<u32> {
    s.chars().map(|c| c.to_digit(10).expect("digit")).collect()
}

fn sym(basis: SymBasis, terms: &[(&str, i64)]) -> Result<SymElement> {
    let lc = terms
        .iter()
        .map(|(l, c)| Ok((parse_label(basis, l)?, int(*c))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SymElement::new(basis, LinComb::from_terms(lc)))
}

fn z(i: u32) -> MultiPoly {
    MultiPoly::var(Var::Z(i))
}

fn zprod(is: &[u32]) -> MultiPoly {
    is.iter().fold(MultiPoly::from_int(1), |a, &i| a.mul(&z(i)))
}

/// `1 / Π (z_S - 1)` over the listed variable sets.
fn inv_prod(factors: &[&[u32]]) -> Result<PolyFraction> {
    let one = MultiPoly::from_int(1);
    let den = factors.iter().fold(one.clone(), |d, f| d.mul(&zprod(f).sub(&one)));
    PolyFraction::new(one, den)
}

fn weak(c: &[i64]) -> Constraint {
    Constraint {
        coeffs: c.to_vec(),
        strict: false,
    }
}

fn strict(c: &[i64]) -> Constraint {
    Constraint {
        coeffs: c.to_vec(),
        strict: true,
    }
}

fn ab(c: i64, i: u32, j: u32) -> MultiPoly {
    MultiPoly::var(Var::A)
        .pow(i)
        .mul(&MultiPoly::var(Var::B).pow(j))
        .scale(&int(c))
}

fn ab_poly(terms: &[(i64, u32, u32)]) -> MultiPoly {
    terms.iter().fold(MultiPoly::zero(), |acc, &(c, i, j)| acc.add(&ab(c, i, j)))
}

/// The literal nested form, the canonical decomposition and the lattice sum agree pointwise.
fn operator_form_matches(u: &PackedWord, lit: &OperatorExpr) -> Result<bool> {
    let mut rng = shard_rng(6, 0);
    let canon = decompose(u);
    for _ in 0..5 {
        let fs: Vec<DiscreteSeq> = (0..u.len()).map(|_| DiscreteSeq::random(&mut rng, -2, 2)).collect();
        for t in -2..8 {
            let v = op_eval(u, &fs, t)?;
            if lit.eval(&fs, t)? != v || canon.eval(&fs, t)? != v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn cases() -> Vec<GoldenCase> {
    vec![
        GoldenCase {
            name: "standardization of bbacab",
            run: || Ok(std(&"bbacab".chars().collect::<Vec<_>>()) == Permutation::of(&[3, 4, 1, 6, 2, 5])),
        },
        GoldenCase {
            name: "packing of 64661812",
            run: || Ok(pack(&digits("64661812")).to_string() == "43441512"),
        },
        GoldenCase {
            name: "sign sequence -++-+ has composition 132",
            run: || Ok("-++-+".parse::<SignSeq>()?.to_composition() == comp("132")),
        },
        GoldenCase {
            name: "quasi-shuffle 13 with 32",
            run: || {
                let expect = LinComb::from_terms(
                    [
                        ("1332", 2),
                        ("1323", 1),
                        ("3132", 1),
                        ("3123", 1),
                        ("3213", 1),
                        ("162", 1),
                        ("432", 1),
                        ("423", 1),
                        ("135", 1),
                        ("315", 1),
                        ("333", 1),
                        ("45", 1),
                    ]
                    .map(|(w, c)| (digits(w), int(c))),
                );
                Ok(quasi_shuffle(&[1, 3], &[3, 2]) == expect)
            },
        },
        GoldenCase {
            name: "shifted shuffle 1 with 1",
            run: || Ok(shifted_shuffle(&[1], &[1]) == LinComb::from_labels([vec![1, 2], vec![2, 1]])),
        },
        GoldenCase {
            name: "segmented shuffle (2|1) with (12)",
            run: || {
                let expect = words(&["(2|134)", "(23|14)", "(234|1)", "(3|2|14)", "(3|24|1)", "(34|2|1)"]);
                Ok(segmented_shifted_shuffle(&pw("(2|1)"), &pw("(12)")) == expect)
            },
        },
        GoldenCase {
            name: "segmented shuffle (1|2) with (12)",
            run: || {
                let expect = words(&["(1|234)", "(13|24)", "(134|2)", "(3|1|24)", "(3|14|2)", "(34|1|2)"]);
                Ok(segmented_shifted_shuffle(&pw("(1|2)"), &pw("(12)")) == expect)
            },
        },
        GoldenCase {
            name: "134152 is finer than 133142",
            run: || Ok(pw("134152").finer(&pw("133142"))),
        },
        GoldenCase {
            name: "multiset composition from its matrix",
            run: || {
                let a = MultisetComposition::from_matrix(vec![vec![2, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 3, 1]])?;
                Ok(a.to_string() == "{1,1,2}{1}{3,3,3,4}")
            },
        },
        GoldenCase {
            name: "complete series sigma is grouplike",
            run: || {
                let comps = (0..=6)
                    .map(|n| {
                        if n == 0 {
                            LinComb::unit()
                        } else {
                            LinComb::basis(Composition::of(&[n as u32]))
                        }
                    })
                    .collect();
                let sigma = GradedSeries::new(6, comps)?;
                is_grouplike(&sigma, |x: &LinComb<Composition>| x.apply_rational(s_coproduct_basis))
            },
        },
        GoldenCase {
            name: "pairing of M12 with S12 and S21",
            run: || {
                let m = QSymElement::<Rational>::m(&[1, 2]);
                Ok(m.pair(&SymElement::s(&[1, 2])) == int(1) && m.pair(&SymElement::s(&[2, 1])).is_zero())
            },
        },
        GoldenCase {
            name: "fundamental and ribbon bases are dual",
            run: || {
                let all = Composition::all(4);
                Ok(all.iter().all(|i| {
                    all.iter().all(|j| {
                        let f = QSymElement::<Rational>::basis_element(QSymBasis::F, i.clone());
                        f.pair(&SymElement::basis_element(SymBasis::R, j.clone())) == int((i == j) as i64)
                    })
                }))
            },
        },
        GoldenCase {
            name: "ribbon product R132 R2",
            run: || Ok(SymElement::<Rational>::r(&[1, 3, 2]).mul(&SymElement::r(&[2])) == sym(SymBasis::R, &[("1322", 1), ("134", 1)])?),
        },
        GoldenCase {
            name: "signed ribbon product R(-++-+) R(+)",
            run: || {
                let x = SymElement::<Rational>::signed(&"-++-+".parse()?).mul(&SymElement::signed(&"+".parse()?));
                Ok(x == sym(SymBasis::SignedR, &[("-++-+++", 1), ("-++-+-+", -1)])?)
            },
        },
        GoldenCase {
            name: "coproduct of S2",
            run: || {
                let expect = LinComb::from_labels([(comp(""), comp("2")), (comp("1"), comp("1")), (comp("2"), comp(""))]);
                Ok(SymElement::<Rational>::s(&[2]).coproduct() == expect)
            },
        },
        GoldenCase {
            name: "Psi3 on ribbons",
            run: || Ok(psi(3).convert(SymBasis::R) == sym(SymBasis::R, &[("3", 1), ("12", -1), ("111", 1)])?),
        },
        GoldenCase {
            name: "commutative image of Phi2 is p2",
            run: || Ok(commutative_image(&phi(2)) == LinComb::basis(Partition::of(&[2]))),
        },
        GoldenCase {
            name: "commutative image of Lambda2 is e2",
            run: || {
                let e2 = LinComb::from_terms([(Partition::of(&[1, 1]), rat(1, 2)), (Partition::of(&[2]), rat(-1, 2))]);
                Ok(commutative_image(&SymElement::<Rational>::lambda(&[2])) == e2)
            },
        },
        GoldenCase {
            name: "Psi_n / n are Lie idempotents up to 6",
            run: || {
                for n in 1..=6 {
                    if !is_lie_idempotent(&psi(n).scale(&rat(1, n as i64)), n)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        GoldenCase {
            name: "Phi_n / n are Lie idempotents up to 6",
            run: || {
                for n in 1..=6 {
                    if !is_lie_idempotent(&phi(n).scale(&rat(1, n as i64)), n)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        GoldenCase {
            name: "alien plus(3) is S3",
            run: || Ok(alien(AlienOp::Plus(3))? == SymElement::s(&[3])),
        },
        GoldenCase {
            name: "alien minus(2) is Lambda2",
            run: || Ok(alien(AlienOp::Minus(2))? == SymElement::lambda(&[2])),
        },
        GoldenCase {
            name: "alien canonical(n) is Phi_n / n up to 6",
            run: || {
                for n in 1..=6 {
                    if alien(AlienOp::Canonical(n))?.convert(SymBasis::S) != phi(n).scale(&rat(1, n as i64)) {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        GoldenCase {
            name: "monomial product M13 M32",
            run: || {
                let x = QSymElement::<Rational>::m(&[1, 3]).mul(&QSymElement::m(&[3, 2]));
                Ok(x.lincomb() == &monomial_product(&comp("13"), &comp("32"))
                    && x.lincomb().len() == 12
                    && x.coeff(&comp("1332")) == int(2))
            },
        },
        GoldenCase {
            name: "FQSym product F1 F1",
            run: || {
                let f1 = FQSymElement::<Rational>::f(&[1]);
                Ok(f1.mul(&f1).lincomb() == &LinComb::from_labels([Permutation::of(&[1, 2]), Permutation::of(&[2, 1])]))
            },
        },
        GoldenCase {
            name: "WQSym product M11 M21",
            run: || Ok(wq_m_product(&pw("11"), &pw("21")) == words(&["1121", "1132", "2221", "2231", "3321"])),
        },
        GoldenCase {
            name: "WQSym product M1 M1",
            run: || Ok(wq_m_product(&pw("1"), &pw("1")) == words(&["12", "21", "11"])),
        },
        GoldenCase {
            name: "WQSym product Phi1 Phi121",
            run: || Ok(wq_phi_product(&pw("1"), &pw("121")) == words(&["1121", "2132", "2121", "3121"])),
        },
        GoldenCase {
            name: "WQSym coproduct of Phi23121",
            run: || {
                let e = |a: &str, b: &str| {
                    let p = |s: &str| if s.is_empty() { PackedWord::empty() } else { pw(s) };
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
                Ok(wq_phi_coproduct(&pw("23121")) == expect)
            },
        },
        GoldenCase {
            name: "WQSym product Phi1312 Phi21",
            run: || {
                let expect = words(&[
                    "131221", "131231", "131232", "131243", "141232", "141321", "142321", "142331", "142341",
                    "153421", "242321", "242331", "242341", "253421", "353421",
                ]);
                Ok(wq_phi_product(&pw("1312"), &pw("21")) == expect)
            },
        },
        GoldenCase {
            name: "Phi133142 on the M basis",
            run: || Ok(phi_to_m(&pw("133142")) == words(&["133142", "134152", "144253", "145263"])),
        },
        GoldenCase {
            name: "M133142 on the Phi basis",
            run: || {
                let expect = LinComb::from_terms([
                    (pw("133142"), int(1)),
                    (pw("134152"), int(-1)),
                    (pw("144253"), int(-1)),
                    (pw("145263"), int(1)),
                ]);
                Ok(m_to_phi(&pw("133142")) == expect)
            },
        },
        GoldenCase {
            name: "11 Schroeder trees from words of length 3",
            run: || {
                let trees: std::collections::BTreeSet<SchroederTree> =
                    PackedWord::all(3).iter().map(|u| schroeder_tree(u.letters())).collect();
                Ok(trees.len() == 11)
            },
        },
        GoldenCase {
            name: "MQSym product {1,1,2}{1} with {1,1,1,2}",
            run: || {
                let ms = |s: &str| s.parse::<MultisetComposition>();
                let expect = LinComb::from_labels([
                    ms("{1,1,2}{1}{3,3,3,4}")?,
                    ms("{1,1,2}{3,3,3,4}{1}")?,
                    ms("{3,3,3,4}{1,1,2}{1}")?,
                    ms("{1,1,2,3,3,3,4}{1}")?,
                    ms("{1,1,2}{1,3,3,3,4}")?,
                ]);
                Ok(mq_product(&ms("{1,1,2}{1}")?, &ms("{1,1,1,2}")?) == expect)
            },
        },
        GoldenCase {
            name: "cone K of 322123",
            run: || Ok(cone_k(&pw("322123")).constraints() == [weak(&[0, 0, 0, 1, 0, 0]), weak(&[0, 1, 1, 1, 1, 0]), weak(&[1; 6])]),
        },
        GoldenCase {
            name: "cone C of 11",
            run: || Ok(cone_c(&pw("11")).constraints() == [strict(&[1, 0]), weak(&[1, 1])]),
        },
        GoldenCase {
            name: "multiset cone of {1,3,3,3}{2,2,3}{3,3,3}{1,3,3}",
            run: || {
                let a: MultisetComposition = "{1,3,3,3}{2,2,3}{3,3,3}{1,3,3}".parse()?;
                Ok(cone_multiset(&a).constraints() == [weak(&[1, 0, 3]), weak(&[1, 2, 4]), weak(&[1, 2, 7]), weak(&[2, 2, 9])])
            },
        },
        GoldenCase {
            name: "K1 x K1 = K12 + K21 - K11 on the box of radius 6",
            run: || Ok(product_identity_check(&pw("1"), &pw("1"), 6, ConeFlavor::K).pass),
        },
        GoldenCase {
            name: "C1 x C1 = C21 - C11 on the box of radius 6",
            run: || {
                let (c1, c21, c11) = (cone_c(&pw("1")), cone_c(&pw("21")), cone_c(&pw("11")));
                let literal = (-6..=6).all(|a| {
                    (-6..=6).all(|b| {
                        let lhs = (c1.contains_int(&[a]) && c1.contains_int(&[b])) as i64;
                        lhs == c21.contains_int(&[a, b]) as i64 - c11.contains_int(&[a, b]) as i64
                    })
                });
                Ok(literal && product_identity_check(&pw("1"), &pw("1"), 6, ConeFlavor::C).pass)
            },
        },
        GoldenCase {
            name: "integer point transform of C11",
            run: || {
                let f = ipt_box(&pw("11"), 5);
                Ok((-5i64..=5).all(|a| (-5i64..=5).all(|b| f.get(&[a, b]) == if a <= -1 && b >= -a { -1 } else { 0 })))
            },
        },
        GoldenCase {
            name: "integer point transform of C12 as a Laurent series",
            run: || {
                // 1/((1-z2)(1-z1/z2)) = Σ_{b ≥ 0, a ≥ 0} z1^b z2^{a-b}
                let bound = 6i64;
                let f = ipt_box(&pw("12"), bound);
                let mut count = 0;
                for b in 0..=bound {
                    for a in 0..=b + bound {
                        if (a - b).abs() <= bound {
                            count += 1;
                            if f.get(&[b, a - b]) != 1 {
                                return Ok(false);
                            }
                        }
                    }
                }
                Ok(f.len() == count)
            },
        },
        GoldenCase {
            name: "rational function of 211",
            run: || {
                let one = MultiPoly::from_int(1);
                let f = PolyFraction::new(
                    z(3).mul(&z(1)),
                    z(2).sub(&z(3)).mul(&z(3).sub(&z(1))).mul(&z(1).sub(&one)),
                )?;
                Ok(rational_fn(&pw("211")).to_fraction() == f)
            },
        },
        GoldenCase {
            name: "rational function of 1223",
            run: || {
                let one = MultiPoly::from_int(1);
                let f = PolyFraction::new(
                    z(2).mul(&z(3)).mul(&z(4)),
                    z(1).sub(&z(2)).mul(&z(2).sub(&z(3))).mul(&z(3).sub(&z(4))).mul(&z(4).sub(&one)),
                )?;
                Ok(rational_fn(&pw("1223")).to_fraction() == f)
            },
        },
        GoldenCase {
            name: "star product of the rational functions of (12) and (2|1)",
            run: || {
                let mut got: Vec<String> = wq_phi_product(&pw("11"), &pw("21"))
                    .iter()
                    .map(|(w, _)| w.to_set_composition_string())
                    .collect();
                got.sort();
                let mut expect = vec!["(124|3)", "(14|23)", "(14|3|2)", "(4|123)", "(4|13|2)", "(4|3|12)"];
                expect.sort();
                let rep = star_identity_random_check(&pw("11"), &pw("21"), 20, 1)?;
                Ok(got == expect && rep.pass && rep.points_checked == 20)
            },
        },
        GoldenCase {
            name: "mould of 2131231",
            run: || {
                let expect = inv_prod(&[&[2, 4, 7], &[2, 4, 7, 1, 5], &[2, 4, 7, 1, 5, 3, 6]])?;
                Ok(mould_m(&pw("2131231")).closed_form() == Some(expect))
            },
        },
        GoldenCase {
            name: "mould star product M11 M21",
            run: || {
                let lhs = mould_m(&pw("11")).star(mould_m(&pw("21")));
                let rhs = RationalMould::from_lincomb(4, &words(&["1121", "1132", "2221", "2231", "3321"]));
                Ok(mould_identity_check(&lhs, &rhs, 20, 3)?.pass)
            },
        },
        GoldenCase {
            name: "operator M11[f, g](t) as a single sum",
            run: || {
                let mut rng = shard_rng(3, 0);
                let f = DiscreteSeq::random(&mut rng, -2, 3);
                let g = DiscreteSeq::random(&mut rng, -1, 4);
                for t in -4..10 {
                    let direct = (1..=20).fold(Rational::zero(), |acc, n| acc + f.get(t - n) * g.get(t - n));
                    if op_eval(&pw("11"), &[f.clone(), g.clone()], t)? != direct {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        GoldenCase {
            name: "operator form of 21",
            run: || Ok(decompose(&pw("21")).to_string() == "M[M[f2]f1]"),
        },
        GoldenCase {
            name: "operator form of 132",
            run: || {
                use OperatorExpr::{Leaf as f, Product as p};
                let m = OperatorExpr::m;
                let lit = m(p(vec![f(2), m(p(vec![f(3), m(f(1))]))]));
                operator_form_matches(&pw("132"), &lit)
            },
        },
        GoldenCase {
            name: "operator form of 3121",
            run: || {
                use OperatorExpr::{Leaf as f, Product as p};
                let m = OperatorExpr::m;
                let lit = m(p(vec![f(1), m(p(vec![f(3), m(p(vec![f(2), f(4)]))]))]));
                operator_form_matches(&pw("3121"), &lit)
            },
        },
        GoldenCase {
            name: "operad composition tables",
            run: || {
                let cases: [(&str, usize, &[&str]); 7] = [
                    ("12", 2, &["123", "213", "112"]),
                    ("121", 1, &["1232"]),
                    ("121", 2, &["1121", "1231", "2132"]),
                    ("121", 3, &["2312"]),
                    ("123", 1, &["1234"]),
                    ("123", 2, &["1123", "1234", "2134"]),
                    ("123", 3, &["1213", "1223", "1234", "1324", "2314"]),
                ];
                for (u, k, expect) in cases {
                    if operad_compose(&pw(u), k, &pw("12"))? != words(expect) {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        GoldenCase {
            name: "tree mould of the six-leaf example",
            run: || {
                let t: SchroederTree = "((()())(()())(()()()))".parse()?;
                Ok(tree_mould(&t).closed_form() == Some(inv_prod(&[&[1], &[3], &[5, 6], &[1, 2, 3, 4, 5, 6]])?))
            },
        },
        GoldenCase {
            name: "character C of the unit",
            run: || Ok(character_c(&Tensor::unit()) == Unitized::one()),
        },
        GoldenCase {
            name: "Catalan polynomials ca1 to ca5",
            run: || {
                Ok(catalan_poly(1) == MultiPoly::one()
                    && catalan_poly(2) == ab_poly(&[(1, 1, 0), (1, 0, 1)])
                    && catalan_poly(3) == ab_poly(&[(1, 2, 0), (3, 1, 1), (1, 0, 2)])
                    && catalan_poly(4) == ab_poly(&[(1, 3, 0), (6, 2, 1), (6, 1, 2), (1, 0, 3)])
                    && catalan_poly(5) == ab_poly(&[(1, 4, 0), (10, 3, 1), (20, 2, 2), (10, 1, 3), (1, 0, 4)]))
            },
        },
        GoldenCase {
            name: "Catalan element D2",
            run: || {
                let d = catalan_d(2)?.convert(SymBasis::R);
                let one = MultiPoly::one();
                let r = |i: &[u32], c: &MultiPoly| SymElement::<MultiPoly>::r(i).scale(c);
                Ok(d == r(&[2], &one).sub(&r(&[1, 1], &one)))
            },
        },
        GoldenCase {
            name: "Catalan element D3",
            run: || {
                let d = catalan_d(3)?.convert(SymBasis::R);
                let (a, b) = (ab(1, 1, 0), ab(1, 0, 1));
                let s = a.add(&b);
                let r = |i: &[u32], c: &MultiPoly| SymElement::<MultiPoly>::r(i).scale(c);
                Ok(d == r(&[3], &s).sub(&r(&[2, 1], &a)).sub(&r(&[1, 2], &b)).add(&r(&[1, 1, 1], &s)))
            },
        },
        GoldenCase {
            name: "Catalan element D4",
            run: || {
                let d = catalan_d(4)?.convert(SymBasis::R);
                let (a, b) = (ab(1, 1, 0), ab(1, 0, 1));
                let s = a.add(&b);
                let ca3 = ab_poly(&[(1, 2, 0), (3, 1, 1), (1, 0, 2)]);
                let abp = a.mul(&b);
                let r = |i: &[u32], c: &MultiPoly| SymElement::<MultiPoly>::r(i).scale(c);
                let expect = r(&[4], &ca3)
                    .sub(&r(&[3, 1], &a.mul(&s)))
                    .sub(&r(&[2, 2], &abp))
                    .sub(&r(&[1, 3], &s.mul(&b)))
                    .add(&r(&[2, 1, 1], &a.mul(&s)))
                    .add(&r(&[1, 2, 1], &abp))
                    .add(&r(&[1, 1, 2], &s.mul(&b)))
                    .sub(&r(&[1, 1, 1, 1], &ca3));
                Ok(d == expect && d.lincomb().len() == 8)
            },
        },
        GoldenCase {
            name: "u series reproduces the Catalan table",
            run: || {
                let u = u_series(6)?;
                let ab1 = ab(1, 1, 1);
                Ok((2..=6).all(|n| u[n - 1] == ab1.mul(&catalan_poly(n - 1))))
            },
        },
        GoldenCase {
            name: "empty sign weight is 1",
            run: || {
                let e = mc_weight(&SignSeq(Vec::new()), &Density::Gaussian, &McConfig::default())?;
                Ok(e.mean == 1.0 && e.stderr == 0.0)
            },
        },
    ]
}
