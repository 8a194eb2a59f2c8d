//! Textual input for elements, points and scalars.

use std::str::FromStr;

use hopfcone::coeffring::{parse_rational, Rational};
use hopfcone::{HopfError, LinComb, Result};

fn parse_err(token: &str, reason: &str) -> HopfError {
    HopfError::Parse {
        token: token.to_string(),
        reason: reason.to_string(),
    }
}

/// `label` or `label:coeff` terms separated by `;`.
pub fn terms<L: Ord + Clone>(s: &str, label: impl Fn(&str) -> Result<L>) -> Result<LinComb<L>> {
    let mut out = LinComb::zero();
    for raw in s.split(';') {
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        let (l, c) = match t.rsplit_once(':') {
            Some((l, c)) => (l.trim(), parse_rational(c.trim())?),
            None => (t, Rational::from_integer(1.into())),
        };
        // ∅ names the empty label, i.e. the unit
        let key = if l == "∅" { label("")? } else { label(l)? };
        out.add_term(key, c);
    }
    Ok(out)
}

/// A single value of a type with a textual notation.
pub fn one<T: FromStr<Err = HopfError>>(s: &str) -> Result<T> {
    s.trim().parse()
}

pub fn rational(s: &str) -> Result<Rational> {
    parse_rational(s.trim())
}

/// `z1=3,z2=5,z3=7` (or `3,5,7`) as a point of dimension `dim`.
pub fn point(s: &str, dim: usize) -> Result<Vec<Rational>> {
    let mut out: Vec<Option<Rational>> = vec![None; dim];
    for (k, raw) in s.split(',').enumerate() {
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        let (idx, val) = match t.split_once('=') {
            Some((name, v)) => {
                let i: usize = name
                    .trim()
                    .trim_start_matches(['z', 'x'])
                    .parse()
                    .map_err(|_| parse_err(name, "expected a coordinate name like z1"))?;
                (i, v)
            }
            None => (k + 1, t),
        };
        if idx == 0 || idx > dim {
            return Err(parse_err(t, &format!("coordinate index outside 1..={dim}")));
        }
        out[idx - 1] = Some(rational(val)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| parse_err(s, &format!("missing coordinate z{}", i + 1))))
        .collect()
}
