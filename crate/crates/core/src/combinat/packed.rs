use std::fmt;
use std::str::FromStr;

use super::composition::{fmt_parts, parse_parts, Composition};
use super::words::{interleavings, std, Permutation};
use crate::error::{parse_err, HopfError, Result};
use crate::freemod::{GradedLabel, LinComb};

/// Word over `1..m` using every letter of `1..m`.
///
/// A packed word `u` of length `n` is also the set composition whose `i`-th
/// block is the set of positions holding the letter `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackedWord(Vec<u8>);

/// Set compositions share the packed word encoding.
pub type SetComposition = PackedWord;

impl PackedWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        let m = letters.iter().copied().max().unwrap_or(0) as usize;
        let mut seen = vec![false; m + 1];
        for &x in &letters {
            if x == 0 {
                return Err(HopfError::Invalid("packed word letters start at 1".into()));
            }
            seen[x as usize] = true;
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(HopfError::Invalid(format!("{letters:?} is not packed")));
        }
        Ok(PackedWord(letters))
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u8>) -> Self {
        PackedWord(letters)
    }

    /// Panics on a word that is not packed. Intended for literals.
    pub fn of(letters: &[u8]) -> Self {
        Self::new(letters.to_vec()).expect("word is not packed")
    }

    pub fn empty() -> Self {
        PackedWord(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest letter (number of blocks).
    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0) as usize
    }

    /// Evaluation vector: multiplicity of each letter.
    pub fn ev(&self) -> Composition {
        let mut counts = vec![0u32; self.max()];
        for &x in &self.0 {
            counts[x as usize - 1] += 1;
        }
        Composition::new(counts).expect("packed")
    }

    pub fn std(&self) -> Permutation {
        std(&self.0)
    }

    /// Blocks of the set composition: positions (1-based, increasing) of each letter.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.max()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize - 1].push(i + 1);
        }
        out
    }

    /// The packed word of an ordered set partition of `1..n`.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut letters = vec![0u8; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(HopfError::Invalid("empty block in set composition".into()));
            }
            for &p in block {
                if p == 0 || p > n || letters[p - 1] != 0 {
                    return Err(HopfError::Invalid(format!(
                        "blocks do not partition 1..{n}"
                    )));
                }
                letters[p - 1] = (b + 1) as u8;
            }
        }
        Ok(PackedWord(letters))
    }

    /// Segmented permutation: the blocks read in order, with `true` marking the
    /// last letter of each block.
    pub fn segmented(&self) -> Vec<(u8, bool)> {
        let mut out = Vec::with_capacity(self.0.len());
        for block in self.blocks() {
            let k = block.len();
            for (j, p) in block.into_iter().enumerate() {
                out.push((p as u8, j + 1 == k));
            }
        }
        out
    }

    /// Set composition notation, e.g. `(247|9|138|56)`.
    pub fn to_set_composition_string(&self) -> String {
        let sep = if self.0.len() > 9 { "," } else { "" };
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(sep)
            })
            .collect();
        format!("({})", blocks.join("|"))
    }

    /// All packed words of length `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<PackedWord> {
        fn rec(n: usize, m: usize, cur: &mut Vec<u8>, used: &mut [u32], out: &mut Vec<PackedWord>) {
            let missing = used.iter().filter(|&&c| c == 0).count();
            if cur.len() == n {
                if missing == 0 {
                    out.push(PackedWord(cur.clone()));
                }
                return;
            }
            if missing > n - cur.len() {
                return;
            }
            for x in 1..=m {
                cur.push(x as u8);
                used[x - 1] += 1;
                rec(n, m, cur, used, out);
                used[x - 1] -= 1;
                cur.pop();
            }
        }
        if n == 0 {
            return vec![PackedWord::empty()];
        }
        let mut out = Vec::new();
        for m in 1..=n {
            rec(n, m, &mut Vec::with_capacity(n), &mut vec![0; m], &mut out);
        }
        out.sort();
        out
    }

    pub fn all_up_to(n: usize) -> Vec<PackedWord> {
        (0..=n).flat_map(PackedWord::all).collect()
    }

    /// `self ⪯ other`: same standardization and `ev(self)` refines `ev(other)`.
    pub fn finer(&self, other: &PackedWord) -> bool {
        self.len() == other.len() && self.std() == other.std() && self.ev().refines(&other.ev())
    }

    /// Every `v ⪯ self`: each block, read left to right, is cut into
    /// consecutive segments that become consecutive letters.
    pub fn finer_words(&self) -> Vec<PackedWord> {
        let blocks = self.blocks();
        let mut out = vec![Vec::<Vec<usize>>::new()];
        for block in &blocks {
            let k = block.len();
            let mut next = Vec::new();
            for prefix in &out {
                for cuts in 0..1u64 << (k - 1) {
                    let mut p = prefix.clone();
                    let mut seg = vec![block[0]];
                    for (j, &pos) in block.iter().enumerate().skip(1) {
                        if cuts >> (j - 1) & 1 == 1 {
                            p.push(std::mem::take(&mut seg));
                        }
                        seg.push(pos);
                    }
                    p.push(seg);
                    next.push(p);
                }
            }
            out = next;
        }
        out.iter()
            .map(|b| PackedWord::from_blocks(b).expect("refinement of a set composition"))
            .collect()
    }
}

impl GradedLabel for PackedWord {
    fn grade(&self) -> usize {
        self.0.len()
    }
    fn unit() -> Self {
        PackedWord::empty()
    }
}

impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<u32> = self.0.iter().map(|&x| x as u32).collect();
        fmt_parts(&v, f)
    }
}

impl FromStr for PackedWord {
    type Err = HopfError;
    /// Accepts the word notation `313144132` (or `3,1,3,...`) and the set
    /// composition notation `(247|9|138|56)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            if inner.trim().is_empty() {
                return Ok(PackedWord::empty());
            }
            let blocks: Vec<Vec<usize>> = inner
                .split('|')
                .map(|b| parse_parts(b).map(|v| v.into_iter().map(|x| x as usize).collect()))
                .collect::<Result<_>>()?;
            return PackedWord::from_blocks(&blocks).map_err(|e| parse_err(t, e.to_string()));
        }
        let parts = parse_parts(t)?;
        let letters: Vec<u8> = parts
            .iter()
            .map(|&x| u8::try_from(x).map_err(|_| parse_err(t, "letter too large")))
            .collect::<Result<_>>()?;
        PackedWord::new(letters).map_err(|e| parse_err(t, e.to_string()))
    }
}

/// Product of the Φ basis: shuffle the segmented permutations of `α` and of
/// `β` shifted by `|α|`, keeping the bars of each factor between letters that
/// stay adjacent, and adding a bar wherever a letter of `β` is immediately
/// followed by a letter of `α`.
pub fn segmented_shifted_shuffle(alpha: &SetComposition, beta: &SetComposition) -> LinComb<SetComposition> {
    let p = alpha.len();
    let q = beta.len();
    let sa = alpha.segmented();
    let sb: Vec<(u8, bool)> = beta
        .segmented()
        .into_iter()
        .map(|(x, end)| (x + p as u8, end))
        .collect();
    let mut out = LinComb::zero();
    for mask in interleavings(p, q) {
        let (mut i, mut j) = (0, 0);
        // (letter, from β, index in source)
        let seq: Vec<(u8, bool, usize)> = mask
            .iter()
            .map(|&from_b| {
                if from_b {
                    j += 1;
                    (sb[j - 1].0, true, j - 1)
                } else {
                    i += 1;
                    (sa[i - 1].0, false, i - 1)
                }
            })
            .collect();
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new()];
        for (k, &(x, from_b, idx)) in seq.iter().enumerate() {
            if k > 0 {
                let (_, prev_b, prev_idx) = seq[k - 1];
                let bar = if prev_b == from_b {
                    let src = if from_b { &sb } else { &sa };
                    debug_assert_eq!(prev_idx + 1, idx);
                    src[prev_idx].1
                } else {
                    prev_b && !from_b
                };
                if bar {
                    blocks.push(Vec::new());
                }
            }
            blocks.last_mut().expect("nonempty").push(x as usize);
        }
        if p + q == 0 {
            blocks.clear();
        }
        out.add_term(
            PackedWord::from_blocks(&blocks).expect("valid set composition"),
            crate::coeffring::Rational::from_integer(1.into()),
        );
    }
    out
}
