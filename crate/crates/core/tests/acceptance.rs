//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is always printed.
//! Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use hopfcone::characters::{
    catalan_d, catalan_lie_idempotent, consistency_check, mc_character_check, sparre_andersen, Density, McConfig,
};
use hopfcone::coeffring::{int, rat, Rational};
use hopfcone::combinat::{Composition, PackedWord, SignSeq};
use hopfcone::cones::{product_identity_check, star_identity_random_check, ConeFlavor};
use hopfcone::freemod::{is_grouplike, is_primitive_series, GradedSeries, LinComb, TensorComb};
use hopfcone::golden;
use hopfcone::moulds::{
    mould_identity_check, mould_m, mould_star_check, operad_compose, rb_operator_check, DiscreteSeq,
};
use hopfcone::ncsf::{
    alien, euler_idempotent, lambda_to_s_basis, lie_certificate, phi, psi, ribbon_product, s_coproduct_basis,
    AlienOp, SymBasis, SymElement,
};
use hopfcone::qsym::{monomial_coproduct, monomial_product, QSymBasis, QSymElement};
use hopfcone::rotabaxter::{integral_series, rb_random_check, tensor_character_check, value_series, ConvSeq};
use hopfcone::sampling::shard_rng;
use hopfcone::wqsym::{tri_product, wq_m_coproduct, wq_m_product, wq_phi_coproduct, wq_phi_product, TriPart};
use rand::Rng;

const SEED: u64 = 20_120_621;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn nonempty_words(max: usize) -> Vec<PackedWord> {
    (1..=max).flat_map(PackedWord::all).collect()
}

/// Pairs of nonempty packed words with total length at most `total`.
fn word_pairs(total: usize) -> Vec<(PackedWord, PackedWord)> {
    let ws = nonempty_words(total - 1);
    let mut out = Vec::new();
    for u in &ws {
        for v in &ws {
            if u.len() + v.len() <= total {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

fn golden_examples() -> Outcome {
    let outcomes = golden::run_all();
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.pass)
        .map(|o| format!("{}{}", o.name, o.error.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()))
        .collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("{} worked examples", outcomes.len()))
}

fn cone_identity() -> Outcome {
    let mut points = 0;
    let mut instances = 0;
    for (u, v) in word_pairs(4) {
        for flavor in [ConeFlavor::K, ConeFlavor::C] {
            let rep = product_identity_check(&u, &v, 6, flavor);
            ensure(rep.pass, || format!("{flavor:?} {u} x {v}: {:?}", rep.counterexample))?;
            points += rep.points_checked;
            instances += 1;
        }
    }
    Ok(format!("{instances} products, {points} lattice points on box 6"))
}

fn rational_identities() -> Outcome {
    let mut instances = 0;
    for (k, (u, v)) in word_pairs(4).into_iter().enumerate() {
        let seed = SEED + k as u64;
        let star = star_identity_random_check(&u, &v, 20, seed).map_err(|e| e.to_string())?;
        ensure(star.pass && star.points_checked == 20, || format!("star product {u} * {v}"))?;
        let mould = mould_star_check(&u, &v, 20, seed).map_err(|e| e.to_string())?;
        ensure(mould.pass && mould.points_checked == 20, || format!("mould star {u} * {v}"))?;
        instances += 2;
    }
    Ok(format!("{instances} identities at 20 exact random points each"))
}

fn lie_idempotents() -> Outcome {
    let check = |name: &str, x: &SymElement, n: usize| -> Result<(), String> {
        let cert = lie_certificate(x, n, true).map_err(|e| e.to_string())?;
        ensure(cert.holds(), || format!("{name} at n = {n}: {}", cert.to_json()))
    };
    let mut rng = shard_rng(SEED, 4);
    let mut count = 0;
    for n in 1..=6usize {
        let inv_n = rat(1, n as i64);
        check("Psi_n/n", &psi(n).scale(&inv_n), n)?;
        check("Phi_n/n", &phi(n).scale(&inv_n), n)?;
        let canon = alien(AlienOp::Canonical(n)).map_err(|e| e.to_string())?;
        check("alien canonical", &canon, n)?;
        count += 3;
        let mut qs = 0;
        while qs < 5 {
            let q = rat(rng.random_range(-9..=9), rng.random_range(1..=9));
            match euler_idempotent(n, &q) {
                Ok(x) => {
                    check(&format!("phi_n({q})"), &x, n)?;
                    qs += 1;
                    count += 1;
                }
                // q on a pole of the normalization, draw again
                Err(_) => continue,
            }
        }
        if n >= 2 {
            let mut pts = 0;
            while pts < 3 {
                let (a, b) = (rat(rng.random_range(-9..=9), rng.random_range(1..=5)), rat(rng.random_range(-9..=9), rng.random_range(1..=5)));
                match catalan_lie_idempotent(n, &a, &b) {
                    Ok((_, cert)) => {
                        ensure(cert.holds(), || format!("Catalan n = {n} at ({a}, {b})"))?;
                        pts += 1;
                        count += 1;
                    }
                    // vanishing normalization, draw again
                    Err(_) => continue,
                }
            }
        }
    }
    Ok(format!("{count} elements certified up to degree 6"))
}

fn catalan_primitive() -> Outcome {
    for n in 2..=8 {
        let d = catalan_d(n).map_err(|e| e.to_string())?;
        ensure(d.is_primitive(), || format!("D^{n} is not primitive"))?;
    }
    Ok("D^2 .. D^8 primitive over Q[a, b]".into())
}

fn rota_baxter() -> Outcome {
    const TRIALS: usize = 200;
    let rb = rb_random_check(TRIALS, 4, SEED);
    ensure(rb.pass, || format!("Rota-Baxter relation: {:?}", rb.failure))?;

    let mut rng = shard_rng(SEED, 6);
    for _ in 0..TRIALS {
        let f1 = DiscreteSeq::random(&mut rng, -3, 3);
        let f2 = DiscreteSeq::random(&mut rng, -3, 3);
        let rep = rb_operator_check(&f1, &f2, -4, 12);
        ensure(rep.pass, || "summation operator relation".into())?;
    }

    let ch = tensor_character_check(TRIALS, 3, 2, SEED);
    ensure(ch.pass, || format!("character property: {:?}", ch.failure))?;

    let cop = |x: &LinComb<Composition>| x.apply_rational(s_coproduct_basis);
    for k in 0..TRIALS {
        let a = ConvSeq::random(&mut rng, 2);
        let s = integral_series(&a, 4);
        ensure(is_grouplike(&s, cop).map_err(|e| e.to_string())?, || format!("integral series #{k}"))?;
        let v = value_series(&a, 4);
        ensure(v.component(0).is_zero() && is_primitive_series(&v, cop).holds, || {
            format!("value series #{k}")
        })?;
        let comps = (0..=4)
            .map(|n| {
                let sign = if n % 2 == 0 { int(1) } else { int(-1) };
                s.component(n).scale(&sign).apply_rational(lambda_to_s_basis)
            })
            .collect();
        let lam = GradedSeries::new(4, comps).map_err(|e| e.to_string())?;
        ensure(is_grouplike(&lam, cop).map_err(|e| e.to_string())?, || format!("Lambda series #{k}"))?;
    }
    Ok(format!("{TRIALS} instances each of four identities"))
}

fn monte_carlo() -> Outcome {
    let cfg = McConfig::new(SEED, 1_000_000, 16);
    let mut checks = 0;
    let mut worst: f64 = 0.0;
    let mut record = |name: String, rep: hopfcone::characters::McReport| -> Result<(), String> {
        for (_, c) in &rep.checks {
            if c.sigmas.is_finite() {
                worst = worst.max(c.sigmas.abs());
            }
            checks += 1;
        }
        ensure(rep.pass(), || format!("{name}: {}", rep.to_json()))
    };
    let densities = [Density::Gaussian, Density::catalan_mixture(0.125, 0.375).map_err(|e| e.to_string())?];
    for d in &densities {
        for len in 0..=3 {
            for e in SignSeq::all(len) {
                let rep = consistency_check(&e, d, &cfg).map_err(|e| e.to_string())?;
                record(format!("consistency {e} ({d})"), rep)?;
            }
        }
    }
    let comps: Vec<Composition> = (1..=3).flat_map(Composition::all).collect();
    for i in &comps {
        for j in &comps {
            if i.weight() + j.weight() > 4 {
                continue;
            }
            let rep = mc_character_check(i, j, &Density::Gaussian, &cfg).map_err(|e| e.to_string())?;
            record(format!("character {i} x {j}"), rep)?;
        }
    }
    let rep = sparre_andersen(&Density::Gaussian, 4, &cfg).map_err(|e| e.to_string())?;
    record("Sparre Andersen".into(), rep)?;
    Ok(format!("{checks} estimates within 4 sigma at 10^6 samples (worst {worst:.2} sigma)"))
}

/// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
fn tensor_mul<L: Ord + Clone>(
    x: &TensorComb<L>,
    y: &TensorComb<L>,
    prod: impl Fn(&L, &L) -> LinComb<L>,
) -> TensorComb<L> {
    x.bilinear_rational(y, |(a, b), (c, d)| prod(a, c).tensor(&prod(b, d)))
}

/// `(Δ ⊗ id)Δ = (id ⊗ Δ)Δ` on a basis element.
fn coassociative<L: Ord + Clone>(l: &L, cop: impl Fn(&L) -> TensorComb<L>) -> bool {
    let left = cop(l).apply_rational(|(a, b)| cop(a).map_labels(|(x, y)| (x.clone(), y.clone(), b.clone())));
    let right = cop(l).apply_rational(|(a, b)| cop(b).map_labels(|(x, y)| (a.clone(), x.clone(), y.clone())));
    left == right
}

/// `Δ(xy) = Δ(x)Δ(y)` on a pair of basis elements.
fn compatible<L: Ord + Clone>(
    u: &L,
    v: &L,
    prod: impl Fn(&L, &L) -> LinComb<L>,
    cop: impl Fn(&L) -> TensorComb<L>,
) -> bool {
    prod(u, v).apply_rational(&cop) == tensor_mul(&cop(u), &cop(v), prod)
}

fn hopf_properties() -> Outcome {
    let mut count = 0usize;

    // coassociativity up to degree 5
    for i in Composition::all_up_to(5) {
        ensure(coassociative(&i, s_coproduct_basis), || format!("Sym coassociativity at {i}"))?;
        ensure(coassociative(&i, monomial_coproduct), || format!("QSym coassociativity at {i}"))?;
        count += 2;
    }
    for u in (0..=5).flat_map(PackedWord::all) {
        ensure(coassociative(&u, wq_phi_coproduct), || format!("WQSym Phi coassociativity at {u}"))?;
        ensure(coassociative(&u, wq_m_coproduct), || format!("WQSym M coassociativity at {u}"))?;
        count += 2;
    }

    // product/coproduct compatibility up to total degree 5
    let ribbon_cop = |i: &Composition| {
        SymElement::<Rational>::basis_element(SymBasis::R, i.clone()).coproduct()
    };
    let comps = Composition::all_up_to(4);
    for i in &comps {
        for j in &comps {
            if i.weight() + j.weight() > 5 {
                continue;
            }
            ensure(compatible(i, j, |a, b| LinComb::basis(a.concat(b)), s_coproduct_basis), || {
                format!("Sym S compatibility {i} {j}")
            })?;
            ensure(compatible(i, j, ribbon_product, ribbon_cop), || format!("Sym R compatibility {i} {j}"))?;
            ensure(compatible(i, j, monomial_product, monomial_coproduct), || {
                format!("QSym compatibility {i} {j}")
            })?;
            count += 3;
        }
    }
    let words: Vec<PackedWord> = (0..=4).flat_map(PackedWord::all).collect();
    for u in &words {
        for v in &words {
            if u.len() + v.len() > 5 {
                continue;
            }
            ensure(compatible(u, v, wq_phi_product, wq_phi_coproduct), || {
                format!("WQSym Phi compatibility {u} {v}")
            })?;
            ensure(compatible(u, v, wq_m_product, wq_m_coproduct), || format!("WQSym M compatibility {u} {v}"))?;
            count += 2;
        }
    }

    // duality: ⟨FG, H⟩ = ⟨F ⊗ G, ΔH⟩ for QSym against Sym, total weight ≤ 5
    for i in &comps {
        for j in &comps {
            if i.weight() + j.weight() > 5 {
                continue;
            }
            for (qb, sb) in [(QSymBasis::M, SymBasis::S), (QSymBasis::F, SymBasis::R)] {
                let f = QSymElement::<Rational>::basis_element(qb, i.clone());
                let g = QSymElement::<Rational>::basis_element(qb, j.clone());
                let fg = f.mul(&g);
                for k in Composition::all(i.weight() + j.weight()) {
                    let h = SymElement::<Rational>::basis_element(sb, k.clone());
                    let rhs = h.coproduct().coeff(&(i.clone(), j.clone()));
                    ensure(fg.pair(&h) == rhs, || format!("duality {qb:?}{i} {qb:?}{j} against {sb:?}{k}"))?;
                    count += 1;
                }
                // and the dual statement ⟨ΔF, G ⊗ H⟩ = ⟨F, GH⟩
                let gh = SymElement::<Rational>::basis_element(sb, i.clone())
                    .mul(&SymElement::basis_element(sb, j.clone()));
                for k in Composition::all(i.weight() + j.weight()) {
                    let fk = QSymElement::<Rational>::basis_element(qb, k.clone());
                    ensure(fk.coproduct().coeff(&(i.clone(), j.clone())) == fk.pair(&gh), || {
                        format!("coproduct duality {qb:?}{k}")
                    })?;
                    count += 1;
                }
            }
        }
    }

    // the seven tridendriform axioms, |u|+|v|+|w| ≤ 5
    {
        use TriPart::*;
        let gens = nonempty_words(3);
        let full = |x: &LinComb<PackedWord>, y: &LinComb<PackedWord>| x.bilinear_rational(y, wq_m_product);
        let t = |x: &LinComb<PackedWord>, y: &LinComb<PackedWord>, p| tri_product(x, y, p).map_err(|e| e.to_string());
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    if a.len() + b.len() + c.len() > 5 {
                        continue;
                    }
                    let (x, y, z) = (LinComb::basis(a.clone()), LinComb::basis(b.clone()), LinComb::basis(c.clone()));
                    let axioms = [
                        (t(&t(&x, &y, Left)?, &z, Left)?, t(&x, &full(&y, &z), Left)?),
                        (t(&t(&x, &y, Right)?, &z, Left)?, t(&x, &t(&y, &z, Left)?, Right)?),
                        (t(&full(&x, &y), &z, Right)?, t(&x, &t(&y, &z, Right)?, Right)?),
                        (t(&t(&x, &y, Right)?, &z, Middle)?, t(&x, &t(&y, &z, Middle)?, Right)?),
                        (t(&t(&x, &y, Left)?, &z, Middle)?, t(&x, &t(&y, &z, Right)?, Middle)?),
                        (t(&t(&x, &y, Middle)?, &z, Left)?, t(&x, &t(&y, &z, Left)?, Middle)?),
                        (t(&t(&x, &y, Middle)?, &z, Middle)?, t(&x, &t(&y, &z, Middle)?, Middle)?),
                    ];
                    for (k, (l, r)) in axioms.iter().enumerate() {
                        ensure(l == r, || format!("tridendriform axiom {} on {a}, {b}, {c}", k + 1))?;
                        count += 1;
                    }
                }
            }
        }
    }

    // operad axioms, sequential and parallel, total length ≤ 6
    let gens = nonempty_words(3);
    let mut rng = shard_rng(SEED, 8);
    let mut triples = 0;
    while triples < 60 {
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| gens[rng.random_range(0..gens.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        if a.len() + b.len() + c.len() > 6 {
            continue;
        }
        triples += 1;
        let seed = SEED + triples;
        let (ma, mb, mc) = (mould_m(&a), mould_m(&b), mould_m(&c));
        let i = rng.random_range(1..=a.len());
        let j = rng.random_range(1..=b.len());
        let err = |e: hopfcone::HopfError| e.to_string();
        let seq_l = ma.clone().compose(i, mb.clone()).map_err(err)?.compose(i + j - 1, mc.clone()).map_err(err)?;
        let seq_r = ma.clone().compose(i, mb.clone().compose(j, mc.clone()).map_err(err)?).map_err(err)?;
        ensure(mould_identity_check(&seq_l, &seq_r, 5, seed).map_err(err)?.pass, || {
            format!("sequential axiom {a} o{i} ({b} o{j} {c})")
        })?;
        let lhs = operad_compose(&a, i, &b)
            .map_err(err)?
            .apply_rational(|w| operad_compose(w, i + j - 1, &c).expect("arity in range"));
        let rhs = operad_compose(&b, j, &c)
            .map_err(err)?
            .apply_rational(|w| operad_compose(&a, i, w).expect("arity in range"));
        ensure(lhs == rhs, || format!("symbolic sequential axiom {a} o{i} ({b} o{j} {c})"))?;
        count += 2;
        if a.len() >= 2 {
            let i = rng.random_range(1..a.len());
            let k = rng.random_range(i + 1..=a.len());
            let par_l = ma.clone().compose(i, mb.clone()).map_err(err)?.compose(k + b.len() - 1, mc.clone()).map_err(err)?;
            let par_r = ma.compose(k, mc).map_err(err)?.compose(i, mb).map_err(err)?;
            ensure(mould_identity_check(&par_l, &par_r, 5, seed).map_err(err)?.pass, || {
                format!("parallel axiom on {a}: o{i} {b}, o{k} {c}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} exact instances"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("golden examples", golden_examples),
        ("cone product identities, K and C, box 6", cone_identity),
        ("rational star product and mould identities", rational_identities),
        ("Lie idempotents up to degree 6", lie_idempotents),
        ("Catalan elements primitive up to degree 8", catalan_primitive),
        ("Rota-Baxter suite", rota_baxter),
        ("Monte Carlo statistics", monte_carlo),
        ("Hopf property suite", hopf_properties),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = run();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{secs:.1}s]", k + 1),
            Err(why) => {
                all = false;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", k + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
