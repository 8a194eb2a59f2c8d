use std::fmt;
use std::str::FromStr;

use super::composition::{fmt_parts, parse_parts, Composition};
use super::packed::PackedWord;
use crate::error::{parse_err, HopfError, Result};
use crate::freemod::{GradedLabel, LinComb};

/// Permutation of `1..n` in one-line notation.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(v: Vec<u8>) -> Result<Self> {
        let n = v.len();
        let mut seen = vec![false; n + 1];
        for &x in &v {
            let x = x as usize;
            if x == 0 || x > n || seen[x] {
                return Err(HopfError::Invalid(format!(
                    "{v:?} is not a permutation of 1..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation(v))
    }

    pub fn of(v: &[u8]) -> Self {
        Self::new(v.to_vec()).expect("not a permutation")
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize - 1] = (i + 1) as u8;
        }
        Permutation(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&j| self.0[j as usize - 1]).collect())
    }

    pub fn descent_composition(&self) -> Composition {
        descent_composition(&self.0)
    }

    /// Sum of descent positions.
    pub fn major_index(&self) -> usize {
        (1..self.0.len())
            .filter(|&i| self.0[i - 1] > self.0[i])
            .sum()
    }

    pub fn descent_count(&self) -> usize {
        (1..self.0.len()).filter(|&i| self.0[i - 1] > self.0[i]).count()
    }

    /// All permutations of `1..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        let mut out = vec![Permutation(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Permutation(cur.clone()));
        }
        out
    }

    /// Rank in lexicographic order (Lehmer code).
    pub fn rank(&self) -> usize {
        let n = self.0.len();
        let mut used: u32 = 0;
        let mut r = 0usize;
        for (i, &x) in self.0.iter().enumerate() {
            let below = (used & ((1u32 << (x - 1)) - 1)).count_ones() as usize;
            r = r * (n - i) + (x as usize - 1 - below);
            used |= 1 << (x - 1);
        }
        r
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut r: usize) -> Self {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = r % base;
            r /= base;
        }
        let mut avail: Vec<u8> = (1..=n as u8).collect();
        Permutation(digits.into_iter().map(|d| avail.remove(d)).collect())
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl GradedLabel for Permutation {
    fn grade(&self) -> usize {
        self.0.len()
    }
    fn unit() -> Self {
        Permutation(Vec::new())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<u32> = self.0.iter().map(|&x| x as u32).collect();
        fmt_parts(&v, f)
    }
}

impl FromStr for Permutation {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_parts(s)?;
        let v: Vec<u8> = parts
            .iter()
            .map(|&x| u8::try_from(x).map_err(|_| parse_err(s, "letter too large")))
            .collect::<Result<_>>()?;
        Permutation::new(v).map_err(|_| parse_err(s, "not a permutation"))
    }
}

/// Standardization: letters ranked by value, ties broken left to right.
pub fn std<T: Ord>(word: &[T]) -> Permutation {
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_by(|&a, &b| word[a].cmp(&word[b]).then(a.cmp(&b)));
    let mut out = vec![0u8; word.len()];
    for (rank, &i) in idx.iter().enumerate() {
        out[i] = (rank + 1) as u8;
    }
    Permutation(out)
}

/// Order-preserving relabeling onto `1..m`.
pub fn pack<T: Ord>(word: &[T]) -> PackedWord {
    let mut vals: Vec<&T> = word.iter().collect();
    vals.sort();
    vals.dedup();
    let letters = word
        .iter()
        .map(|x| (vals.binary_search(&x).expect("present") + 1) as u8)
        .collect();
    PackedWord::from_letters_unchecked(letters)
}

/// Composition recording the descents `w_i > w_{i+1}`.
pub fn descent_composition<T: Ord>(word: &[T]) -> Composition {
    let n = word.len();
    let des: Vec<usize> = (1..n).filter(|&i| word[i - 1] > word[i]).collect();
    Composition::from_descent_set(n, &des).expect("descents in range")
}

/// All interleavings of lengths `p` and `q`, as masks where `true` marks a
/// letter taken from the second word.
pub fn interleavings(p: usize, q: usize) -> Vec<Vec<bool>> {
    fn rec(p: usize, q: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if p == 0 && q == 0 {
            out.push(cur.clone());
            return;
        }
        if p > 0 {
            cur.push(false);
            rec(p - 1, q, cur, out);
            cur.pop();
        }
        if q > 0 {
            cur.push(true);
            rec(p, q - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(p, q, &mut Vec::with_capacity(p + q), &mut out);
    out
}

/// Every shuffle of `u` and `v`, with repetition.
pub fn shuffle_all<T: Clone>(u: &[T], v: &[T]) -> Vec<Vec<T>> {
    interleavings(u.len(), v.len())
        .into_iter()
        .map(|mask| {
            let (mut i, mut j) = (0, 0);
            mask.iter()
                .map(|&from_v| {
                    if from_v {
                        j += 1;
                        v[j - 1].clone()
                    } else {
                        i += 1;
                        u[i - 1].clone()
                    }
                })
                .collect()
        })
        .collect()
}

/// Every quasi-shuffle of `u` and `v`, with repetition, merging letters with `merge`.
pub fn quasi_shuffle_all<T: Clone>(u: &[T], v: &[T], merge: &impl Fn(&T, &T) -> T) -> Vec<Vec<T>> {
    fn rec<T: Clone>(
        u: &[T],
        v: &[T],
        merge: &impl Fn(&T, &T) -> T,
        cur: &mut Vec<T>,
        out: &mut Vec<Vec<T>>,
    ) {
        match (u.split_first(), v.split_first()) {
            (None, None) => out.push(cur.clone()),
            (Some((a, ur)), None) => {
                let mut w = cur.clone();
                w.push(a.clone());
                w.extend_from_slice(ur);
                out.push(w);
            }
            (None, Some((b, vr))) => {
                let mut w = cur.clone();
                w.push(b.clone());
                w.extend_from_slice(vr);
                out.push(w);
            }
            (Some((a, ur)), Some((b, vr))) => {
                cur.push(a.clone());
                rec(ur, v, merge, cur, out);
                cur.pop();
                cur.push(b.clone());
                rec(u, vr, merge, cur, out);
                cur.pop();
                cur.push(merge(a, b));
                rec(ur, vr, merge, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(u, v, merge, &mut Vec::new(), &mut out);
    out
}

/// Quasi-shuffle of words over the positive integers (letters merge by addition).
pub fn quasi_shuffle(u: &[u32], v: &[u32]) -> LinComb<Vec<u32>> {
    LinComb::from_labels(quasi_shuffle_all(u, v, &|a, b| a + b))
}

/// Plain shuffle.
pub fn shuffle(u: &[u32], v: &[u32]) -> LinComb<Vec<u32>> {
    LinComb::from_labels(shuffle_all(u, v))
}

/// `u ⧢ v[|u|]`: the second word shifted by the length of the first.
pub fn shifted_shuffle(u: &[u32], v: &[u32]) -> LinComb<Vec<u32>> {
    let k = u.len() as u32;
    let shifted: Vec<u32> = v.iter().map(|x| x + k).collect();
    shuffle(u, &shifted)
}

/// `u ⧢ v[max u]`: the second word shifted by the largest letter of the first.
pub fn shifted_shuffle_by_max(u: &[u32], v: &[u32]) -> LinComb<Vec<u32>> {
    let k = u.iter().copied().max().unwrap_or(0);
    let shifted: Vec<u32> = v.iter().map(|x| x + k).collect();
    shuffle(u, &shifted)
}

/// Shifted shuffle of permutations.
pub fn shifted_shuffle_perm(a: &Permutation, b: &Permutation) -> LinComb<Permutation> {
    let k = a.len() as u8;
    let shifted: Vec<u8> = b.0.iter().map(|x| x + k).collect();
    LinComb::from_labels(shuffle_all(&a.0, &shifted).into_iter().map(Permutation))
}
