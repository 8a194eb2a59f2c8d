use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, HopfError, Result};
use crate::freemod::GradedLabel;

/// Ordered sequence of positive integers. The empty composition is the unit label.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(p) = parts.iter().position(|&x| x == 0) {
            return Err(HopfError::Invalid(format!(
                "composition part {} is zero",
                p + 1
            )));
        }
        Ok(Composition(parts))
    }

    /// Panics if some part is zero. Intended for literals.
    pub fn of(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("composition parts must be positive")
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Descent set: the partial sums `i_1, i_1+i_2, ...` except the total.
    pub fn descent_set(&self) -> Vec<usize> {
        let mut acc = 0usize;
        let mut out = Vec::with_capacity(self.0.len().saturating_sub(1));
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p as usize;
            out.push(acc);
        }
        out
    }

    /// Descent set as a bitmask: bit `i-1` set when `i` is a descent.
    pub fn descent_mask(&self) -> u64 {
        self.descent_set()
            .into_iter()
            .fold(0u64, |m, d| m | (1 << (d - 1)))
    }

    /// The composition of `n` whose descent set is `set` (entries in `1..n`).
    pub fn from_descent_set(n: usize, set: &[usize]) -> Result<Self> {
        let mut s: Vec<usize> = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if n == 0 {
            return if s.is_empty() {
                Ok(Composition::empty())
            } else {
                Err(HopfError::OutOfRange("descent in a degree-0 composition".into()))
            };
        }
        let mut parts = Vec::with_capacity(s.len() + 1);
        let mut last = 0usize;
        for d in s {
            if d == 0 || d >= n {
                return Err(HopfError::OutOfRange(format!("descent {d} outside 1..{}", n - 1)));
            }
            parts.push((d - last) as u32);
            last = d;
        }
        parts.push((n - last) as u32);
        Ok(Composition(parts))
    }

    pub fn from_descent_mask(n: usize, mask: u64) -> Self {
        let set: Vec<usize> = (1..n).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
        Self::from_descent_set(n, &set).expect("mask within range")
    }

    /// `self` is finer than `other`: same weight and `Des(other) ⊆ Des(self)`.
    pub fn refines(&self, other: &Composition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let (a, b) = (self.descent_mask(), other.descent_mask());
        b & !a == 0
    }

    /// Reversed parts.
    pub fn mirror(&self) -> Self {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// Composition with the complementary descent set.
    pub fn complement(&self) -> Self {
        let n = self.weight();
        if n == 0 {
            return Composition::empty();
        }
        let full = if n >= 2 { (1u64 << (n - 1)) - 1 } else { 0 };
        Self::from_descent_mask(n, full & !self.descent_mask())
    }

    /// Conjugate (transposed ribbon): mirror of the complement.
    pub fn conjugate(&self) -> Self {
        self.complement().mirror()
    }

    pub fn concat(&self, other: &Composition) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    /// `I ▷ J`: concatenation with the last part of `I` merged into the first of `J`.
    /// `None` when either side is empty.
    pub fn near_concat(&self, other: &Composition) -> Option<Self> {
        let (last, first) = (self.0.last()?, other.0.first()?);
        let mut v = self.0[..self.0.len() - 1].to_vec();
        v.push(last + first);
        v.extend_from_slice(&other.0[1..]);
        Some(Composition(v))
    }

    /// All compositions of `n`, ordered by descent mask.
    pub fn all(n: usize) -> Vec<Composition> {
        if n == 0 {
            return vec![Composition::empty()];
        }
        (0..1u64 << (n - 1))
            .map(|m| Self::from_descent_mask(n, m))
            .collect()
    }

    /// All compositions of every weight `0..=n`.
    pub fn all_up_to(n: usize) -> Vec<Composition> {
        (0..=n).flat_map(Self::all).collect()
    }

    /// Compositions finer than `self`.
    pub fn finer(&self) -> Vec<Composition> {
        let n = self.weight();
        if n == 0 {
            return vec![Composition::empty()];
        }
        let base = self.descent_mask();
        let free = ((1u64 << (n - 1)) - 1) & !base;
        subsets(free)
            .map(|s| Self::from_descent_mask(n, base | s))
            .collect()
    }

    /// Compositions coarser than `self`.
    pub fn coarser(&self) -> Vec<Composition> {
        let n = self.weight();
        subsets(self.descent_mask())
            .map(|s| Self::from_descent_mask(n, s))
            .collect()
    }

    /// Sign sequence of the same degree (`Des = positions of -`). `None` for the empty composition.
    pub fn to_signseq(&self) -> Option<SignSeq> {
        let n = self.weight();
        if n == 0 {
            return None;
        }
        let mask = self.descent_mask();
        Some(SignSeq(
            (1..n)
                .map(|i| if mask >> (i - 1) & 1 == 1 { Sign::Minus } else { Sign::Plus })
                .collect(),
        ))
    }
}

/// Submasks of `mask`, including 0 and `mask`.
pub(crate) fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    let mut cur = Some(mask);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 { None } else { Some((s - 1) & mask) };
        Some(s)
    })
}

impl GradedLabel for Composition {
    fn grade(&self) -> usize {
        self.weight()
    }
    fn unit() -> Self {
        Composition::empty()
    }
}

pub(crate) fn fmt_parts(parts: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if parts.is_empty() {
        return f.write_str("∅");
    }
    if parts.iter().all(|&p| p <= 9) {
        for p in parts {
            write!(f, "{p}")?;
        }
        Ok(())
    } else {
        let s: Vec<String> = parts.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// Parses `"132"`, `"1,3,2"`, `"(1,3,2)"`; empty, `"()"` and `"∅"` give the empty sequence.
pub(crate) fn parse_parts(s: &str) -> Result<Vec<u32>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(t)
        .trim();
    if inner.is_empty() || inner == "∅" {
        return Ok(Vec::new());
    }
    if inner.contains(',') || inner.contains(' ') {
        inner
            .split([',', ' '])
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| parse_err(x.trim(), "expected a nonnegative integer"))
            })
            .collect()
    } else {
        inner
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| parse_err(c.to_string(), "expected a digit"))
            })
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.0, f)
    }
}

impl FromStr for Composition {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_parts(s)?;
        if parts.contains(&0) {
            return Err(parse_err(s, "composition parts must be positive"));
        }
        Ok(Composition(parts))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// Sign sequence `ε` of length `n-1`, standing for the degree-`n` word `ε•`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignSeq(pub Vec<Sign>);

impl SignSeq {
    pub fn degree(&self) -> usize {
        self.0.len() + 1
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|&&s| s == Sign::Minus).count()
    }

    pub fn plus_count(&self) -> usize {
        self.0.len() - self.minus_count()
    }

    pub fn to_composition(&self) -> Composition {
        let n = self.degree();
        let des: Vec<usize> = (1..n).filter(|&i| self.0[i - 1] == Sign::Minus).collect();
        Composition::from_descent_set(n, &des).expect("descents in range")
    }

    /// All sign sequences of the given length.
    pub fn all(len: usize) -> Vec<SignSeq> {
        (0..1u64 << len)
            .map(|m| {
                SignSeq(
                    (0..len)
                        .map(|i| if m >> i & 1 == 1 { Sign::Minus } else { Sign::Plus })
                        .collect(),
                )
            })
            .collect()
    }

    /// Maximal runs of equal signs as `(sign, run length)`.
    pub fn stacks(&self) -> Vec<(Sign, usize)> {
        let mut out: Vec<(Sign, usize)> = Vec::new();
        for &s in &self.0 {
            match out.last_mut() {
                Some((t, k)) if *t == s => *k += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("•");
        }
        for s in &self.0 {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

impl FromStr for SignSeq {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_end_matches('•');
        t.chars()
            .filter(|c| !matches!(c, ',' | ' '))
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                _ => Err(parse_err(c.to_string(), "expected + or -")),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignSeq)
    }
}

/// Integer partition, parts weakly decreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the given positive parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(HopfError::Invalid("partition part is zero".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn of(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("partition parts must be positive")
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::new(v).expect("positive parts")
    }

    /// `z_λ = Π_i i^{m_i} m_i!`.
    pub fn z(&self) -> num_bigint::BigInt {
        use num_bigint::BigInt;
        let mut acc = BigInt::from(1);
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let mut m = 0u64;
            while i < self.0.len() && self.0[i] == p {
                m += 1;
                i += 1;
            }
            acc *= num_traits::pow(BigInt::from(p), m as usize) * crate::coeffring::factorial(m);
        }
        acc
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=max.min(n)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n as u32, n as u32, &mut Vec::new(), &mut out);
        out
    }
}

impl GradedLabel for Partition {
    fn grade(&self) -> usize {
        self.weight()
    }
    fn unit() -> Self {
        Partition(Vec::new())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.0, f)
    }
}

impl FromStr for Partition {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?).map_err(|_| parse_err(s, "partition parts must be positive"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signseq_examples() {
        let e: SignSeq = "-++-+".parse().unwrap();
        assert_eq!(e.to_composition(), Composition::of(&[1, 3, 2]));
        let e: SignSeq = "+++".parse().unwrap();
        assert_eq!(e.to_composition(), Composition::of(&[4]));
        let e: SignSeq = "--".parse().unwrap();
        assert_eq!(e.to_composition(), Composition::of(&[1, 1, 1]));
        let e: SignSeq = "".parse().unwrap();
        assert_eq!(e.to_composition(), Composition::of(&[1]));
        assert_eq!(e.to_string(), "•");
    }

    #[test]
    fn round_trips_up_to_weight_8() {
        for n in 1..=8 {
            for c in Composition::all(n) {
                let e = c.to_signseq().unwrap();
                assert_eq!(e.to_composition(), c);
                assert_eq!(Composition::from_descent_set(n, &c.descent_set()).unwrap(), c);
                assert_eq!(c.to_string().parse::<Composition>().unwrap(), c);
                assert_eq!(c.complement().complement(), c);
            }
            assert_eq!(Composition::all(n).len(), 1 << (n - 1));
        }
    }

    #[test]
    fn parse_and_display() {
        let c: Composition = "1,3,2".parse().unwrap();
        assert_eq!(c, "132".parse().unwrap());
        assert_eq!(c.to_string(), "132");
        let big = Composition::of(&[10, 1]);
        assert_eq!(big.to_string(), "10,1");
        assert_eq!("10,1".parse::<Composition>().unwrap(), big);
        assert_eq!("".parse::<Composition>().unwrap(), Composition::empty());
        assert_eq!("()".parse::<Composition>().unwrap(), Composition::empty());
        assert_eq!(Composition::empty().to_string(), "∅");
        assert!("1x".parse::<Composition>().is_err());
        assert!("1,0".parse::<Composition>().is_err());
    }

    #[test]
    fn refinement_and_conjugates() {
        let i = Composition::of(&[2, 1]);
        assert!(Composition::of(&[1, 1, 1]).refines(&i));
        assert!(!Composition::of(&[1, 2]).refines(&i));
        assert_eq!(i.coarser().len(), 2);
        assert_eq!(i.finer().len(), 2);
        assert_eq!(Composition::of(&[1, 1]).complement(), Composition::of(&[2]));
        assert_eq!(Composition::of(&[1, 3]).conjugate(), Composition::of(&[1, 1, 2]));
        assert_eq!(
            Composition::of(&[1, 3, 2]).near_concat(&Composition::of(&[2])),
            Some(Composition::of(&[1, 3, 4]))
        );
    }

    #[test]
    fn partitions() {
        assert_eq!(Partition::all(5).len(), 7);
        assert_eq!(Partition::of(&[2, 1, 1]).z(), num_bigint::BigInt::from(4));
        assert_eq!(Partition::of(&[1, 2, 1]).to_string(), "211");
    }

    #[test]
    fn stacks() {
        let e: SignSeq = "++--+".parse().unwrap();
        assert_eq!(
            e.stacks(),
            vec![(Sign::Plus, 2), (Sign::Minus, 2), (Sign::Plus, 1)]
        );
    }
}
