//! Monte Carlo estimation of the sign weights `m^ε` of a probability density.
//!
//! A run draws `samples` random walks of i.i.d. steps, split over `shards`
//! independent streams seeded by [`shard_rng`]. Shards run in parallel and are
//! merged in shard order, so a report depends only on `(seed, samples, shards)`.
//! Each check evaluates all of its estimates on the same walks.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::coeffring::Rational;
use crate::combinat::{Composition, Sign, SignSeq};
use crate::cones::cone_composition;
use crate::error::{parse_err, HopfError, Result};
use crate::ncsf::{SymBasis, SymElement};
use crate::qsym::monomial_product;
use crate::sampling::{shard_rng, DEFAULT_SEED};

/// Assertions pass within this many standard errors.
pub const SIGMA_TOLERANCE: f64 = 4.0;
/// Smallest sample count accepted by the estimators.
pub const MIN_SAMPLES: u64 = 10_000;

/// Step distribution of the random walk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Density {
    Gaussian,
    /// `f(x) = 2(a σ₊(x) + b σ₋(x)) e^{-|x|}` with `a + b = 1/2`.
    CatalanMixture { a: f64, b: f64 },
    /// Uniform on `(-1, 1)`.
    Uniform,
}

impl Density {
    pub fn catalan_mixture(a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.0 && b >= 0.0 && (a + b - 0.5).abs() < 1e-12) {
            return Err(HopfError::OutOfRange(format!(
                "catalan mixture needs a, b >= 0 with a + b = 1/2, got a = {a}, b = {b}"
            )));
        }
        Ok(Density::CatalanMixture { a, b })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Density::Gaussian => StandardNormal.sample(rng),
            Density::CatalanMixture { a, .. } => {
                let e: f64 = Exp1.sample(rng);
                if rng.random::<f64>() < 2.0 * a {
                    e
                } else {
                    -e
                }
            }
            Density::Uniform => rng.random_range(-1.0..1.0),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            Density::Gaussian => (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt(),
            Density::CatalanMixture { a, b } => {
                if x >= 0.0 {
                    2.0 * a * (-x).exp()
                } else {
                    2.0 * b * x.exp()
                }
            }
            Density::Uniform => {
                if x.abs() < 1.0 {
                    0.5
                } else {
                    0.0
                }
            }
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match *self {
            Density::CatalanMixture { a, b } => a == b,
            _ => true,
        }
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Density::Gaussian => f.write_str("gaussian"),
            Density::CatalanMixture { a, b } => write!(f, "catalan_mixture({a},{b})"),
            Density::Uniform => f.write_str("uniform"),
        }
    }
}

/// Accepts `gaussian`, `uniform`, `catalan_mixture` (a = b = 1/4) and
/// `catalan_mixture(a,b)`.
impl FromStr for Density {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "gaussian" | "normal" => return Ok(Density::Gaussian),
            "uniform" => return Ok(Density::Uniform),
            "catalan_mixture" | "catalan" => return Density::catalan_mixture(0.25, 0.25),
            _ => {}
        }
        let args = t
            .strip_prefix("catalan_mixture")
            .and_then(|r| r.strip_prefix('(').and_then(|r| r.strip_suffix(')')).or_else(|| r.strip_prefix(':')))
            .ok_or_else(|| parse_err(t, "unknown density (gaussian, uniform, catalan_mixture(a,b))"))?;
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(parse_err(args, "catalan_mixture takes two weights"));
        }
        let num = |p: &str| p.parse::<f64>().map_err(|_| parse_err(p, "expected a number"));
        Density::catalan_mixture(num(parts[0])?, num(parts[1])?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McConfig {
    pub seed: u64,
    pub samples: u64,
    pub shards: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            seed: DEFAULT_SEED,
            samples: 1_000_000,
            shards: 16,
        }
    }
}

impl McConfig {
    pub fn new(seed: u64, samples: u64, shards: usize) -> Self {
        McConfig { seed, samples, shards }
    }

    fn validate(&self) -> Result<()> {
        if self.samples < MIN_SAMPLES {
            return Err(HopfError::OutOfRange(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                self.samples
            )));
        }
        if self.shards == 0 {
            return Err(HopfError::OutOfRange("need at least one shard".into()));
        }
        Ok(())
    }
}

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

impl Estimate {
    pub fn exact(v: f64) -> Self {
        Estimate {
            mean: v,
            stderr: 0.0,
            samples: 0,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"estimate": self.mean, "stderr": self.stderr})
    }
}

/// One estimate compared to its target.
#[derive(Clone, Debug, PartialEq)]
pub struct McCheck {
    pub estimate: f64,
    pub stderr: f64,
    pub target: f64,
    /// `|estimate - target| / stderr`; infinite when a zero-variance estimate misses.
    pub sigmas: f64,
    pub pass: bool,
}

impl McCheck {
    pub fn new(e: Estimate, target: f64) -> Self {
        let dev = (e.mean - target).abs();
        let pass = dev <= SIGMA_TOLERANCE * e.stderr + 1e-12;
        let sigmas = if e.stderr > 0.0 {
            dev / e.stderr
        } else if dev <= 1e-12 {
            0.0
        } else {
            f64::INFINITY
        };
        McCheck {
            estimate: e.mean,
            stderr: e.stderr,
            target,
            sigmas,
            pass,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "estimate": self.estimate,
            "stderr": self.stderr,
            "target": self.target,
            "sigmas": if self.sigmas.is_finite() { json!(self.sigmas) } else { Value::Null },
            "pass": self.pass,
        })
    }
}

/// Named checks plus auxiliary estimates from a single run.
#[derive(Clone, Debug, PartialEq)]
pub struct McReport {
    pub name: String,
    pub checks: Vec<(String, McCheck)>,
    pub estimates: Vec<(String, Estimate)>,
    pub samples: u64,
}

impl McReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|(_, c)| c.pass)
    }

    /// A single check is flattened into the top level.
    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("check".into(), json!(self.name));
        out.insert("samples".into(), json!(self.samples));
        if let [(_, c)] = self.checks.as_slice() {
            if let Value::Object(m) = c.to_json() {
                out.extend(m);
            }
        } else {
            out.insert(
                "checks".into(),
                Value::Array(
                    self.checks
                        .iter()
                        .map(|(l, c)| {
                            let mut v = c.to_json();
                            v["label"] = json!(l);
                            v
                        })
                        .collect(),
                ),
            );
        }
        if !self.estimates.is_empty() {
            let est: Map<String, Value> = self.estimates.iter().map(|(l, e)| (l.clone(), e.to_json())).collect();
            out.insert("estimates".into(), Value::Object(est));
        }
        out.insert("pass".into(), json!(self.pass()));
        Value::Object(out)
    }
}

/// Runs `stat` on `cfg.samples` walks of `steps` steps; returns one estimate per output slot.
///
/// `stat` receives the partial sums `S_1..S_steps` and adds its values into the slots.
pub fn simulate<F>(d: &Density, cfg: &McConfig, steps: usize, slots: usize, stat: F) -> Result<Vec<Estimate>>
where
    F: Fn(&[f64], &mut [f64]) + Sync,
{
    cfg.validate()?;
    let shards = cfg.shards as u64;
    let per = cfg.samples / shards;
    let extra = cfg.samples % shards;
    let parts: Vec<(Vec<f64>, Vec<f64>)> = (0..shards)
        .into_par_iter()
        .map(|k| {
            let mut rng = shard_rng(cfg.seed, k);
            let count = per + u64::from(k < extra);
            let mut sum = vec![0.0; slots];
            let mut sq = vec![0.0; slots];
            let mut s = vec![0.0; steps];
            let mut buf = vec![0.0; slots];
            for _ in 0..count {
                let mut acc = 0.0;
                for v in s.iter_mut() {
                    acc += d.sample(&mut rng);
                    *v = acc;
                }
                buf.iter_mut().for_each(|b| *b = 0.0);
                stat(&s, &mut buf);
                for ((t, q), b) in sum.iter_mut().zip(sq.iter_mut()).zip(&buf) {
                    *t += b;
                    *q += b * b;
                }
            }
            (sum, sq)
        })
        .collect();
    let n = cfg.samples as f64;
    Ok((0..slots)
        .map(|j| {
            let sum: f64 = parts.iter().map(|p| p.0[j]).sum();
            let sq: f64 = parts.iter().map(|p| p.1[j]).sum();
            let mean = sum / n;
            let var = ((sq - n * mean * mean) / (n - 1.0)).max(0.0);
            Estimate {
                mean,
                stderr: (var / n).sqrt(),
                samples: cfg.samples,
            }
        })
        .collect())
}

/// Sign constraints on partial sums; `None` leaves a sum free.
type Pattern = Vec<Option<Sign>>;

fn holds(p: &[Option<Sign>], s: &[f64]) -> bool {
    p.iter().zip(s).all(|(e, &x)| match e {
        None => true,
        Some(Sign::Plus) => x >= 0.0,
        Some(Sign::Minus) => x < 0.0,
    })
}

fn full(signs: &[Sign]) -> Pattern {
    signs.iter().copied().map(Some).collect()
}

/// Linear combination of event indicators, one output per slot.
struct EventForm {
    constant: Vec<f64>,
    terms: Vec<(Pattern, Vec<f64>)>,
}

impl EventForm {
    fn new(slots: usize) -> Self {
        EventForm {
            constant: vec![0.0; slots],
            terms: Vec::new(),
        }
    }

    fn add(&mut self, p: Pattern, slot: usize, w: f64) {
        let mut ws = vec![0.0; self.constant.len()];
        ws[slot] = w;
        self.terms.push((p, ws));
    }

    fn eval(&self, s: &[f64], out: &mut [f64]) {
        for (o, c) in out.iter_mut().zip(&self.constant) {
            *o += c;
        }
        for (p, ws) in &self.terms {
            if holds(p, s) {
                for (o, w) in out.iter_mut().zip(ws) {
                    *o += w;
                }
            }
        }
    }

    fn steps(&self) -> usize {
        self.terms.iter().map(|(p, _)| p.len()).max().unwrap_or(0)
    }
}

fn to_f64(r: &Rational) -> f64 {
    crate::coeffring::rational_to_f64(r)
}

fn signs_label(signs: &[Sign]) -> String {
    if signs.is_empty() {
        return "∅".into();
    }
    SignSeq(signs.to_vec()).to_string()
}

/// `m^ε = P(ε_1 S_1 > 0, ..., ε_n S_n > 0)` for the full sign word `ε`
/// (a `+` accepts `S_k = 0`).
pub fn mc_weight(e: &SignSeq, d: &Density, cfg: &McConfig) -> Result<Estimate> {
    cfg.validate()?;
    if e.signs().is_empty() {
        return Ok(Estimate::exact(1.0));
    }
    let p = full(e.signs());
    let out = simulate(d, cfg, p.len(), 1, |s, o| {
        if holds(&p, s) {
            o[0] += 1.0;
        }
    })?;
    Ok(out[0])
}

/// Nondecreasing-word pattern of `K_I`: `S_k ≥ 0` at every block end of `I`.
fn k_pattern(i: &Composition) -> Pattern {
    let mut p = vec![None; i.weight()];
    let mut acc = 0;
    for &part in i.parts() {
        acc += part as usize;
        p[acc - 1] = Some(Sign::Plus);
    }
    p
}

fn shifted(p: &Pattern, offset: usize) -> impl Fn(&[f64]) -> bool + '_ {
    move |s: &[f64]| {
        let base = if offset == 0 { 0.0 } else { s[offset - 1] };
        p.iter().enumerate().all(|(k, e)| {
            let x = s[offset + k] - base;
            match e {
                None => true,
                Some(Sign::Plus) => x >= 0.0,
                Some(Sign::Minus) => x < 0.0,
            }
        })
    }
}

fn chi_sign(i: &Composition) -> f64 {
    if i.len().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Character `χ(M_I) = (-1)^{ℓ(I)} P(K_I)` against the quasi-shuffle product.
///
/// The product side uses the first `|I|` steps for `I` and the rest for `J`;
/// every `χ(M_K)` uses the whole walk.
pub fn mc_character_check(i: &Composition, j: &Composition, d: &Density, cfg: &McConfig) -> Result<McReport> {
    let n = i.weight() + j.weight();
    if n > 6 {
        return Err(HopfError::OutOfRange(format!("mc-character needs |I| + |J| <= 6, got {n}")));
    }
    cfg.validate()?;
    let name = format!("chi(M_{i}) chi(M_{j}) = sum chi(M_K)");
    if i.is_empty() || j.is_empty() {
        // one side is the unit: the identity holds with no sampling
        return Ok(McReport {
            name,
            checks: vec![("product".into(), McCheck::new(Estimate::exact(0.0), 0.0))],
            estimates: Vec::new(),
            samples: 0,
        });
    }
    let prod = monomial_product(i, j);
    let terms: Vec<(Composition, f64, Pattern)> = prod
        .iter()
        .map(|(k, c)| (k.clone(), to_f64(c) * chi_sign(k), k_pattern(k)))
        .collect();
    let (pi, pj) = (k_pattern(i), k_pattern(j));
    let sij = chi_sign(i) * chi_sign(j);
    let (si, sj) = (chi_sign(i), chi_sign(j));
    let m = i.weight();
    let slots = 3 + terms.len();
    let est = simulate(d, cfg, n, slots, |s, o| {
        let in_i = shifted(&pi, 0)(s);
        let in_j = shifted(&pj, m)(s);
        let mut diff = if in_i && in_j { sij } else { 0.0 };
        if in_i {
            o[1] += si;
        }
        if in_j {
            o[2] += sj;
        }
        for (t, (_, w, p)) in terms.iter().enumerate() {
            if holds(p, s) {
                diff -= w;
                o[3 + t] += w;
            }
        }
        o[0] += diff;
    })?;
    let mut estimates = vec![(format!("chi(M_{i})"), est[1]), (format!("chi(M_{j})"), est[2])];
    for (t, (k, w, _)) in terms.iter().enumerate() {
        let mut e = est[3 + t];
        // report χ(M_K) itself rather than c_K χ(M_K)
        let c = w * chi_sign(k);
        e.mean /= c;
        e.stderr /= c.abs();
        estimates.push((format!("chi(M_{k})"), e));
    }
    Ok(McReport {
        name,
        checks: vec![("product".into(), McCheck::new(est[0], 0.0))],
        estimates,
        samples: cfg.samples,
    })
}

/// `m^{ε+} + m^{ε-} - m^ε I(f) = 0` on shared walks, with `I(f) = 1`.
pub fn consistency_check(e: &SignSeq, d: &Density, cfg: &McConfig) -> Result<McReport> {
    let n = e.signs().len();
    let mut plus = e.signs().to_vec();
    plus.push(Sign::Plus);
    let mut minus = e.signs().to_vec();
    minus.push(Sign::Minus);
    let mut form = EventForm::new(4);
    form.add(full(&plus), 0, 1.0);
    form.add(full(&minus), 0, 1.0);
    form.add(full(e.signs()), 0, -1.0);
    form.add(full(&plus), 1, 1.0);
    form.add(full(&minus), 2, 1.0);
    form.add(full(e.signs()), 3, 1.0);
    let est = simulate(d, cfg, n + 1, 4, |s, o| form.eval(s, o))?;
    let l = signs_label(e.signs());
    Ok(McReport {
        name: format!("m^({l}+) + m^({l}-) = m^({l})"),
        checks: vec![("consistency".into(), McCheck::new(est[0], 0.0))],
        estimates: vec![
            (format!("m^{}", signs_label(&plus)), est[1]),
            (format!("m^{}", signs_label(&minus)), est[2]),
            (format!("m^{l}"), est[3]),
        ],
        samples: cfg.samples,
    })
}

/// Coefficients `τ_1, ..., τ_nmax` of `1 - √(1-s)`, by solving `g² = 1 - s` termwise.
pub fn sparre_andersen_targets(nmax: usize) -> Vec<Rational> {
    use num_traits::{One, Zero};
    let mut g = vec![Rational::one()];
    for n in 1..=nmax {
        // 2 g_0 g_n + Σ_{0<k<n} g_k g_{n-k} = [s^n](1 - s)
        let rhs = if n == 1 { -Rational::one() } else { Rational::zero() };
        let mut cross = Rational::zero();
        for k in 1..n {
            cross += &g[k] * &g[n - k];
        }
        g.push((rhs - cross) / Rational::from_integer(2.into()));
    }
    g.into_iter().skip(1).map(|c| -c).collect()
}

/// First ladder epoch probabilities `τ_n = P(S_1<0, ..., S_{n-1}<0, S_n≥0)`
/// against the coefficients of `1 - √(1-s)`.
pub fn sparre_andersen(d: &Density, nmax: usize, cfg: &McConfig) -> Result<McReport> {
    if !d.is_symmetric() {
        return Err(HopfError::AsymmetricDensity(d.to_string()));
    }
    if !(1..=5).contains(&nmax) {
        return Err(HopfError::OutOfRange(format!("sparre-andersen needs 1 <= nmax <= 5, got {nmax}")));
    }
    let est = simulate(d, cfg, nmax, nmax, |s, o| {
        if let Some(k) = s.iter().position(|&x| x >= 0.0) {
            o[k] += 1.0;
        }
    })?;
    let targets = sparre_andersen_targets(nmax);
    Ok(McReport {
        name: "sparre-andersen".into(),
        checks: est
            .iter()
            .zip(&targets)
            .enumerate()
            .map(|(k, (e, t))| (format!("tau_{}", k + 1), McCheck::new(*e, to_f64(t))))
            .collect(),
        estimates: Vec::new(),
        samples: cfg.samples,
    })
}

/// `(-1)^{r+n} P(K_I)` against the `Λ^I` coefficient of `R_f = 1 + Σ m^{ε+} R_{ε•}`.
pub fn lambda_coefficients_check(d: &Density, i: &Composition, cfg: &McConfig) -> Result<McReport> {
    let n = i.weight();
    if n > 4 {
        return Err(HopfError::OutOfRange(format!("lambda check needs |I| <= 4, got {n}")));
    }
    cfg.validate()?;
    let name = format!("<R_f, Lambda>_{i}");
    if n == 0 {
        return Ok(McReport {
            name,
            checks: vec![("coefficient".into(), McCheck::new(Estimate::exact(1.0), 1.0))],
            estimates: Vec::new(),
            samples: 0,
        });
    }
    let sign = if (i.len() + n).is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut form = EventForm::new(3);
    form.add(k_pattern(i), 0, sign);
    form.add(k_pattern(i), 1, sign);
    for e in SignSeq::all(n - 1) {
        let c = SymElement::signed(&e).convert(SymBasis::Lambda).coeff(i);
        if c == Rational::from_integer(0.into()) {
            continue;
        }
        let mut signs = e.signs().to_vec();
        signs.push(Sign::Plus);
        let w = to_f64(&c);
        form.add(full(&signs), 0, -w);
        form.add(full(&signs), 2, w);
    }
    let est = simulate(d, cfg, form.steps().max(n), 3, |s, o| form.eval(s, o))?;
    Ok(McReport {
        name,
        checks: vec![("cone minus series".into(), McCheck::new(est[0], 0.0))],
        estimates: vec![("cone".into(), est[1]), ("series".into(), est[2])],
        samples: cfg.samples,
    })
}

/// Degree-`n` part of `R_f - L_f σ_1` on the ribbon basis, every coefficient against 0.
pub fn telescoping_check(d: &Density, n: usize, cfg: &McConfig) -> Result<McReport> {
    if !(1..=4).contains(&n) {
        return Err(HopfError::OutOfRange(format!("telescoping check needs 1 <= n <= 4, got {n}")));
    }
    let labels = Composition::all(n);
    let slot = |j: &Composition| labels.iter().position(|l| l == j).expect("degree n label");
    let mut form = EventForm::new(labels.len());
    for e in SignSeq::all(n - 1) {
        let mut signs = e.signs().to_vec();
        signs.push(Sign::Plus);
        let r = SymElement::<Rational>::signed(&e).convert(SymBasis::R);
        for (j, c) in r.lincomb().iter() {
            form.add(full(&signs), slot(j), to_f64(c));
        }
    }
    // L_f σ_1 = S_n + Σ_k Σ_{|ε|=k-1} (-m^{ε-}) R_{ε•} S_{n-k}
    for (j, c) in SymElement::<Rational>::s(&[n as u32]).convert(SymBasis::R).lincomb().iter() {
        form.constant[slot(j)] -= to_f64(c);
    }
    for k in 1..=n {
        let tail: SymElement = if k == n {
            SymElement::one(SymBasis::S)
        } else {
            SymElement::s(&[(n - k) as u32])
        };
        for e in SignSeq::all(k - 1) {
            let mut signs = e.signs().to_vec();
            signs.push(Sign::Minus);
            let prod = SymElement::signed(&e).mul(&tail).convert(SymBasis::R);
            for (j, c) in prod.lincomb().iter() {
                form.add(full(&signs), slot(j), to_f64(c));
            }
        }
    }
    let est = simulate(d, cfg, n, labels.len(), |s, o| form.eval(s, o))?;
    Ok(McReport {
        name: format!("R_f = L_f sigma_1 in degree {n}"),
        checks: labels
            .iter()
            .zip(&est)
            .map(|(j, e)| (format!("R_{j}"), McCheck::new(*e, 0.0)))
            .collect(),
        estimates: Vec::new(),
        samples: cfg.samples,
    })
}

/// Membership in `K_I` through the cone itself, for cross-checking the sign patterns.
pub fn cone_probability(i: &Composition, d: &Density, cfg: &McConfig) -> Result<Estimate> {
    let cone = cone_composition(i);
    let n = i.weight();
    let est = simulate(d, cfg, n, 1, |s, o| {
        let mut x = Vec::with_capacity(n);
        let mut prev = 0.0;
        for &v in s {
            x.push(v - prev);
            prev = v;
        }
        if cone.contains_f64(&x) {
            o[0] += 1.0;
        }
    })?;
    Ok(est[0])
}
