//! Subcommand implementations.

use serde_json::{json, Value};

use hopfcone::characters::{
    catalan_d, catalan_lambda, catalan_lie_idempotent, certificate_json, consistency_check, mc_character_check,
    mc_weight, sparre_andersen, CatalanCoeffs, Density, McConfig,
};
use hopfcone::coeffring::rat;
use hopfcone::combinat::{Composition, MultisetComposition, PackedWord, Permutation, SchroederTree, SignSeq};
use hopfcone::cones::{
    ipt_box, ipt_star_check, multiset_identity_check, product_identity_check, rational_fn,
    star_identity_random_check, ConeFlavor,
};
use hopfcone::freemod::{is_grouplike, is_primitive_series, LinComb, TensorComb};
use hopfcone::golden;
use hopfcone::moulds::{
    mould_m, mould_star_check, operad_check, operad_compose, tree_mould, tree_mould_check, tridendriform_op_check,
    DiscreteSeq,
};
use hopfcone::ncsf::{
    alien, euler_idempotent, internal_product, lie_certificate, parse_label, phi, psi, s_coproduct_basis, AlienOp,
    SymBasis, SymElement,
};
use hopfcone::qsym::{FQSymBasis, FQSymElement, QSymBasis, QSymElement};
use hopfcone::rotabaxter::{integral_series, rb_random_check, tensor_character_check, value_series, ConvSeq};
use hopfcone::sampling::shard_rng;
use hopfcone::wqsym::{mq_product, tri_part, tri_product, wq_m_product, TriPart, WQSymBasis, WQSymElement};
use hopfcone::{HopfError, Result};

use crate::parse;
use crate::{Algebra, Cli, Command, Family, Report, StatArgs};

pub fn run(cli: &Cli) -> Result<Report> {
    let seed = cli.seed();
    match &cli.command {
        Command::Expand { what, n, basis } => {
            let x = family(*what, *n)?.convert(parse::one(basis)?);
            Ok(Report::ok(x.to_json_map()).with_text(x.to_string()))
        }
        Command::Mul(a) => mul(a.algebra, &a.basis, &a.x, &a.y),
        Command::Comul(a) => comul(a.algebra, &a.basis, &a.x),
        Command::Convert(a) => convert(a.algebra, &a.from, &a.to, &a.x),
        Command::InternalMul { basis, x, y } => {
            let b: SymBasis = parse::one(basis)?;
            let p = internal_product(&sym(b, x)?, &sym(b, y)?)?.convert(b);
            Ok(Report::ok(p.to_json_map()).with_text(p.to_string()))
        }
        Command::LieCheck {
            basis,
            x,
            what,
            n,
            no_idempotency,
        } => {
            let elem = match (x, what, n) {
                (Some(x), _, _) => sym(parse::one(basis)?, x)?,
                (None, Some(w), Some(n)) => family(*w, *n)?.scale(&rat(1, *n as i64)),
                _ => return Err(HopfError::Invalid("lie-check needs --x or --what with --n".into())),
            };
            let degree = elem
                .homogeneous_degree()
                .ok_or_else(|| HopfError::Invalid("element is not homogeneous".into()))?;
            cap(degree, cli.max_degree)?;
            let cert = lie_certificate(&elem, degree, !no_idempotency)?;
            let pass = cert.holds();
            Ok(Report::check(certificate_json(&elem, &cert), pass))
        }
        Command::EulerIdempotent { n, q, certify } => {
            let q = parse::rational(q)?;
            let x = euler_idempotent(*n, &q)?;
            let mut v = json!({"element": x.to_json_map()});
            let mut pass = true;
            if *certify {
                cap(*n, cli.max_degree)?;
                let cert = lie_certificate(&x, *n, true)?;
                pass = cert.holds();
                v["certificate"] = cert.to_json();
            }
            Ok(Report::check(v, pass).with_text(x.to_string()))
        }
        Command::Alien { op, basis } => {
            let x = alien(parse::one::<AlienOp>(op)?)?;
            let x = match basis {
                Some(b) => x.convert(parse::one(b)?),
                None => x,
            };
            Ok(Report::ok(x.to_json_map()).with_text(x.to_string()))
        }
        Command::Catalan { n, table } => {
            let d = catalan_d(*n)?.convert(SymBasis::R);
            let mut v = json!({
                "n": n,
                "element": d.to_json_map(),
                "lambda": catalan_lambda(*n)?.to_string(),
            });
            if *n <= cli.max_degree {
                v["primitive"] = json!(d.is_primitive());
            }
            if *table {
                v["table"] = CatalanCoeffs::new(*n).to_json();
            }
            Ok(Report::ok(v).with_text(d.to_string()))
        }
        Command::CatalanIdempotent { n, a, b } => {
            let (a, b) = (parse::rational(a)?, parse::rational(b)?);
            let (x, cert) = catalan_lie_idempotent(*n, &a, &b)?;
            let pass = cert.holds();
            Ok(Report::check(certificate_json(&x, &cert), pass).with_text(x.convert(SymBasis::R).to_string()))
        }
        Command::ConeCheck { u, v, bound, basis } => {
            let flavor: ConeFlavor = parse::one(basis)?;
            let rep = product_identity_check(&parse::one(u)?, &parse::one(v)?, *bound, flavor);
            Ok(Report::check(rep.to_json(), rep.pass))
        }
        Command::MultisetConeCheck { a, b, samples } => {
            let (a, b): (MultisetComposition, MultisetComposition) = (parse::one(a)?, parse::one(b)?);
            let rep = multiset_identity_check(&a, &b, *samples, seed);
            let mut v = rep.to_json();
            v["expansion"] = mq_product(&a, &b).to_json_map("M");
            Ok(Report::check(v, rep.pass))
        }
        Command::Ipt { u, v, bound, margin } => {
            let u: PackedWord = parse::one(u)?;
            match v {
                None => {
                    let f = ipt_box(&u, *bound);
                    let v = json!({
                        "transform": f.to_json(),
                        "rational_function": rational_fn(&u).to_json(),
                    });
                    Ok(Report::ok(v))
                }
                Some(v) => {
                    let v: PackedWord = parse::one(v)?;
                    let margin = margin.unwrap_or((u.len() + v.len()) as i64);
                    let rep = ipt_star_check(&u, &v, *bound, margin);
                    Ok(Report::check(rep.to_json(), rep.pass))
                }
            }
        }
        Command::RationalStarCheck { u, v, trials } => {
            let (u, v): (PackedWord, PackedWord) = (parse::one(u)?, parse::one(v)?);
            let rep = star_identity_random_check(&u, &v, *trials, seed)?;
            Ok(Report::check(rep.to_json(), rep.pass))
        }
        Command::MouldEval { u, point, v, trials } => {
            let u: PackedWord = parse::one(u)?;
            let m = mould_m(&u);
            let mut out = m.to_json();
            let mut pass = true;
            if let Some(p) = point {
                let z = parse::point(p, u.len())?;
                out["value"] = json!(m.eval(&z)?.to_string());
            }
            if let Some(v) = v {
                let rep = mould_star_check(&u, &parse::one(v)?, *trials, seed)?;
                pass = rep.pass;
                out["star_check"] = rep.to_json();
            }
            Ok(Report::check(out, pass))
        }
        Command::Operad { u, k, v, trials } => {
            let (u, v): (PackedWord, PackedWord) = (parse::one(u)?, parse::one(v)?);
            let terms = operad_compose(&u, *k, &v)?;
            let rep = operad_check(&u, *k, &v, *trials, seed)?;
            let out = json!({"result": terms.to_json_map("M"), "check": rep.to_json()});
            Ok(Report::check(out, rep.pass).with_text(terms.render("M")))
        }
        Command::TreeMould { tree, point, trials } => {
            let t: SchroederTree = parse::one(tree)?;
            let m = tree_mould(&t);
            let mut out = m.to_json();
            out["tree"] = json!(t.to_string());
            if let Some(p) = point {
                let z = parse::point(p, m.arity())?;
                out["value"] = json!(m.eval(&z)?.to_string());
            }
            let rep = tree_mould_check(&t, *trials, seed)?;
            out["check"] = rep.to_json();
            Ok(Report::check(out, rep.pass))
        }
        Command::TridendriformCheck { u, v, w, trials } => tridendriform(u, v, w.as_deref(), *trials, seed),
        Command::RbCheck { trials, support } => {
            let rep = rb_random_check(*trials, *support, seed);
            Ok(Report::check(rep.to_json(), rep.pass))
        }
        Command::TensorCharacterCheck {
            trials,
            max_len,
            support,
        } => tensor_character(*trials, *max_len, *support, seed, cli.max_degree),
        Command::McWeight { signs, stat } => {
            let e: SignSeq = parse::one(signs)?;
            let est = mc_weight(&e, &density(stat)?, &mc_config(stat, seed))?;
            Ok(Report::ok(est.to_json()))
        }
        Command::McCharacter { i, j, stat } => {
            let rep = mc_character_check(&parse::one(i)?, &parse::one(j)?, &density(stat)?, &mc_config(stat, seed))?;
            Ok(Report::check(rep.to_json(), rep.pass()))
        }
        Command::Consistency { signs, stat } => {
            let rep = consistency_check(&parse::one(signs)?, &density(stat)?, &mc_config(stat, seed))?;
            Ok(Report::check(rep.to_json(), rep.pass()))
        }
        Command::SparreAndersen { nmax, stat } => {
            let rep = sparre_andersen(&density(stat)?, *nmax, &mc_config(stat, seed))?;
            Ok(Report::check(rep.to_json(), rep.pass()))
        }
        Command::Selftest => {
            let outcomes = golden::run_all();
            let v = golden::report_json(&outcomes);
            let pass = v["pass"] == json!(true);
            let text = outcomes
                .iter()
                .map(|o| format!("{} {}", if o.pass { "ok  " } else { "FAIL" }, o.name))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report::check(v, pass).with_text(text))
        }
    }
}

fn cap(degree: usize, max: usize) -> Result<()> {
    if degree > max {
        return Err(HopfError::DegreeCap { degree, cap: max });
    }
    Ok(())
}

fn family(what: Family, n: usize) -> Result<SymElement> {
    if n == 0 {
        return Err(HopfError::OutOfRange("degree must be at least 1".into()));
    }
    Ok(match what {
        Family::Psi => psi(n),
        Family::Phi => phi(n),
        Family::Complete => SymElement::s(&[n as u32]),
        Family::Elementary => SymElement::lambda(&[n as u32]),
        Family::Canonical => alien(AlienOp::Canonical(n))?,
    })
}

fn sym(basis: SymBasis, s: &str) -> Result<SymElement> {
    Ok(SymElement::new(basis, parse::terms(s, |l| parse_label(basis, l))?))
}

fn qsym(basis: QSymBasis, s: &str) -> Result<QSymElement> {
    Ok(QSymElement::new(basis, parse::terms(s, parse::one::<Composition>)?))
}

fn wqsym(basis: WQSymBasis, s: &str) -> Result<WQSymElement> {
    Ok(WQSymElement::new(basis, parse::terms(s, parse::one::<PackedWord>)?))
}

fn fqsym_basis(s: &str) -> Result<FQSymBasis> {
    match s.trim() {
        "F" | "f" => Ok(FQSymBasis::F),
        "G" | "g" => Ok(FQSymBasis::G),
        other => Err(HopfError::Parse {
            token: other.into(),
            reason: "unknown FQSym basis (F, G)".into(),
        }),
    }
}

fn fqsym(basis: FQSymBasis, s: &str) -> Result<FQSymElement> {
    Ok(FQSymElement::new(basis, parse::terms(s, parse::one::<Permutation>)?))
}

fn mqsym(s: &str) -> Result<LinComb<MultisetComposition>> {
    parse::terms(s, parse::one::<MultisetComposition>)
}

fn mul(algebra: Algebra, basis: &str, x: &str, y: &str) -> Result<Report> {
    match algebra {
        Algebra::Sym => {
            let b: SymBasis = parse::one(basis)?;
            let p = sym(b, x)?.mul(&sym(b, y)?);
            Ok(Report::ok(p.to_json_map()).with_text(p.to_string()))
        }
        Algebra::Qsym => {
            let b: QSymBasis = parse::one(basis)?;
            let p = qsym(b, x)?.mul(&qsym(b, y)?);
            Ok(Report::ok(p.to_json_map()).with_text(p.to_string()))
        }
        Algebra::Wqsym => {
            let b: WQSymBasis = parse::one(basis)?;
            let p = wqsym(b, x)?.mul(&wqsym(b, y)?)?;
            Ok(Report::ok(p.to_json_map()))
        }
        Algebra::Fqsym => {
            let b = fqsym_basis(basis)?;
            let p = fqsym(b, x)?.mul(&fqsym(b, y)?);
            Ok(Report::ok(p.to_json()))
        }
        Algebra::Mqsym => {
            let p = mqsym(x)?.bilinear_rational(&mqsym(y)?, mq_product);
            Ok(Report::ok(p.to_json_map("M")).with_text(p.render("M")))
        }
    }
}

fn tensor_json<L: Ord + Clone>(basis: &str, t: &TensorComb<L>, label: impl Fn(&L) -> String) -> Value {
    let terms: Vec<Value> = t
        .iter()
        .map(|((a, b), c)| json!({"left": label(a), "right": label(b), "coeff": hopfcone::Scalar::to_json_compact(c)}))
        .collect();
    json!({"basis": basis, "terms": terms})
}

fn comul(algebra: Algebra, basis: &str, x: &str) -> Result<Report> {
    match algebra {
        Algebra::Sym => {
            let b: SymBasis = parse::one(basis)?;
            let e = sym(b, x)?;
            let t = e.coproduct();
            Ok(Report::ok(tensor_json(b.name(), &t, |l| e.label_string(l))))
        }
        Algebra::Qsym => {
            let b: QSymBasis = parse::one(basis)?;
            let t = qsym(b, x)?.coproduct();
            Ok(Report::ok(tensor_json(b.name(), &t, |l| l.to_string())))
        }
        Algebra::Wqsym => {
            let b: WQSymBasis = parse::one(basis)?;
            let t = wqsym(b, x)?.coproduct()?;
            Ok(Report::ok(tensor_json(b.name(), &t, |l| l.to_string())))
        }
        Algebra::Fqsym | Algebra::Mqsym => Err(HopfError::Invalid(format!(
            "no coproduct is implemented for {algebra:?}"
        ))),
    }
}

fn convert(algebra: Algebra, from: &str, to: &str, x: &str) -> Result<Report> {
    match algebra {
        Algebra::Sym => {
            let y = sym(parse::one(from)?, x)?.convert(parse::one(to)?);
            Ok(Report::ok(y.to_json_map()).with_text(y.to_string()))
        }
        Algebra::Qsym => {
            let y = qsym(parse::one(from)?, x)?.convert(parse::one(to)?);
            Ok(Report::ok(y.to_json_map()).with_text(y.to_string()))
        }
        Algebra::Wqsym => {
            let y = wqsym(parse::one(from)?, x)?.convert(parse::one(to)?)?;
            Ok(Report::ok(y.to_json_map()))
        }
        Algebra::Fqsym => {
            let y = fqsym(fqsym_basis(from)?, x)?.convert(fqsym_basis(to)?);
            Ok(Report::ok(y.to_json()))
        }
        Algebra::Mqsym => Err(HopfError::Invalid("MQSym has a single basis".into())),
    }
}

fn tridendriform(u: &str, v: &str, w: Option<&str>, trials: usize, seed: u64) -> Result<Report> {
    let (u, v): (PackedWord, PackedWord) = (parse::one(u)?, parse::one(v)?);
    let mut pass = true;
    let mut parts = serde_json::Map::new();
    let mut total = LinComb::zero();
    let mut rng = shard_rng(seed, 0);
    for part in TriPart::ALL {
        let terms = tri_part(&u, &v, part)?;
        total = total.add(&terms);
        let mut ok = true;
        for _ in 0..trials {
            let fs: Vec<DiscreteSeq> = (0..u.len() + v.len()).map(|_| DiscreteSeq::random(&mut rng, -2, 2)).collect();
            ok &= tridendriform_op_check(part, &u, &v, &fs, -3, 10)?.pass;
        }
        pass &= ok;
        parts.insert(
            part.name().into(),
            json!({"terms": terms.to_json_map("M")["M"].clone(), "operator_form": ok}),
        );
    }
    let sums = total == wq_m_product(&u, &v);
    pass &= sums;
    let mut out = json!({"parts": parts, "sum_is_product": sums});
    if let Some(w) = w {
        let w: PackedWord = parse::one(w)?;
        let axioms = tridendriform_axioms(&u, &v, &w)?;
        pass &= axioms.iter().all(|&b| b);
        out["axioms"] = json!(axioms);
    }
    out["status"] = json!(if pass { "pass" } else { "fail" });
    Ok(Report::check(out, pass))
}

/// The seven tridendriform relations on basis elements, in the usual order.
fn tridendriform_axioms(a: &PackedWord, b: &PackedWord, c: &PackedWord) -> Result<Vec<bool>> {
    use TriPart::*;
    let (x, y, z) = (LinComb::basis(a.clone()), LinComb::basis(b.clone()), LinComb::basis(c.clone()));
    let full = |p: &LinComb<PackedWord>, q: &LinComb<PackedWord>| p.bilinear_rational(q, wq_m_product);
    let t = tri_product;
    Ok(vec![
        t(&t(&x, &y, Left)?, &z, Left)? == t(&x, &full(&y, &z), Left)?,
        t(&t(&x, &y, Right)?, &z, Left)? == t(&x, &t(&y, &z, Left)?, Right)?,
        t(&full(&x, &y), &z, Right)? == t(&x, &t(&y, &z, Right)?, Right)?,
        t(&t(&x, &y, Right)?, &z, Middle)? == t(&x, &t(&y, &z, Middle)?, Right)?,
        t(&t(&x, &y, Left)?, &z, Middle)? == t(&x, &t(&y, &z, Right)?, Middle)?,
        t(&t(&x, &y, Middle)?, &z, Left)? == t(&x, &t(&y, &z, Left)?, Middle)?,
        t(&t(&x, &y, Middle)?, &z, Middle)? == t(&x, &t(&y, &z, Middle)?, Middle)?,
    ])
}

fn tensor_character(trials: usize, max_len: usize, support: i64, seed: u64, max_degree: usize) -> Result<Report> {
    let rep = tensor_character_check(trials, max_len, support, seed);
    let cop = |x: &LinComb<Composition>| x.apply_rational(s_coproduct_basis);
    let mut rng = shard_rng(seed, 1);
    let mut bridge = true;
    let mut failure = None;
    for k in 0..trials {
        let a = ConvSeq::random(&mut rng, support);
        let grouplike = is_grouplike(&integral_series(&a, max_degree), cop)?;
        let primitive = is_primitive_series(&value_series(&a, max_degree), cop).holds;
        if !(grouplike && primitive) {
            bridge = false;
            failure = Some(format!("trial {k}: a = {a}"));
            break;
        }
    }
    let pass = rep.pass && bridge;
    let mut out = json!({
        "status": if pass { "pass" } else { "fail" },
        "character": rep.to_json(),
        "bridge": {"degree": max_degree, "trials": trials, "pass": bridge},
    });
    if let Some(f) = failure {
        out["bridge"]["counterexample"] = json!(f);
    }
    Ok(Report::check(out, pass))
}

fn density(stat: &StatArgs) -> Result<Density> {
    parse::one(&stat.density)
}

fn mc_config(stat: &StatArgs, seed: u64) -> McConfig {
    McConfig::new(seed, stat.samples, stat.shards)
}

