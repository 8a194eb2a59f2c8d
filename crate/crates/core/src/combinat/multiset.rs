use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, HopfError, Result};
use crate::freemod::GradedLabel;

/// Ordered sequence of nonempty multisets over `1..m`, each letter used.
///
/// Stored as a packed matrix: row `i` holds the multiplicities of the
/// letters `1..m` in part `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultisetComposition {
    rows: Vec<Vec<u32>>,
}

impl MultisetComposition {
    /// Rejects ragged matrices, null rows and null columns.
    pub fn from_matrix(rows: Vec<Vec<u32>>) -> Result<Self> {
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(HopfError::InvalidMatrix("rows of different lengths".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.iter().all(|&x| x == 0)) {
            return Err(HopfError::InvalidMatrix(format!("row {} is zero", i + 1)));
        }
        if let Some(j) = (0..m).find(|&j| rows.iter().all(|r| r[j] == 0)) {
            return Err(HopfError::InvalidMatrix(format!("column {} is zero", j + 1)));
        }
        Ok(MultisetComposition { rows })
    }

    /// Builds the matrix from explicit multisets. Letters not occurring anywhere are an error.
    pub fn from_parts(parts: &[Vec<u32>]) -> Result<Self> {
        let m = parts.iter().flatten().copied().max().unwrap_or(0) as usize;
        let mut rows = vec![vec![0u32; m]; parts.len()];
        for (i, p) in parts.iter().enumerate() {
            for &x in p {
                if x == 0 {
                    return Err(HopfError::Invalid("multiset letters start at 1".into()));
                }
                rows[i][x as usize - 1] += 1;
            }
        }
        Self::from_matrix(rows)
    }

    pub fn empty() -> Self {
        MultisetComposition { rows: Vec::new() }
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of letters (largest letter).
    pub fn max_letter(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Total number of elements over all parts.
    pub fn size(&self) -> usize {
        self.rows.iter().flatten().map(|&x| x as usize).sum()
    }

    /// Parts as sorted lists of letters.
    pub fn parts(&self) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .flat_map(|(j, &c)| std::iter::repeat_n(j as u32 + 1, c as usize))
                    .collect()
            })
            .collect()
    }

    /// Every multiset composition of total size `n`.
    pub fn all(n: usize) -> Vec<MultisetComposition> {
        // matrices with positive total n, no zero rows or columns
        let mut out = Vec::new();
        if n == 0 {
            return vec![MultisetComposition::empty()];
        }
        for r in 1..=n {
            for m in 1..=n {
                let cells = r * m;
                let mut cur = vec![0u32; cells];
                fill(&mut cur, 0, n as u32, &mut |v| {
                    let rows: Vec<Vec<u32>> = v.chunks(m).map(<[u32]>::to_vec).collect();
                    if let Ok(x) = MultisetComposition::from_matrix(rows) {
                        out.push(x);
                    }
                });
            }
        }
        out.sort();
        out
    }
}

fn fill(cur: &mut [u32], i: usize, left: u32, emit: &mut impl FnMut(&[u32])) {
    if i == cur.len() {
        if left == 0 {
            emit(cur);
        }
        return;
    }
    for x in 0..=left {
        cur[i] = x;
        fill(cur, i + 1, left - x, emit);
    }
    cur[i] = 0;
}

impl GradedLabel for MultisetComposition {
    fn grade(&self) -> usize {
        self.size()
    }
    fn unit() -> Self {
        MultisetComposition::empty()
    }
}

impl fmt::Display for MultisetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("∅");
        }
        for p in self.parts() {
            let s: Vec<String> = p.iter().map(u32::to_string).collect();
            write!(f, "{{{}}}", s.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for MultisetComposition {
    type Err = HopfError;
    /// Parses `{1,1,2}{1}{3,3,3,4}`; empty input or `∅` is the empty composition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "∅" {
            return Ok(MultisetComposition::empty());
        }
        let mut parts = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('{')
                .ok_or_else(|| parse_err(rest, "expected `{`"))?;
            let end = body.find('}').ok_or_else(|| parse_err(rest, "missing `}`"))?;
            let part: Vec<u32> = body[..end]
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u32>()
                        .map_err(|_| parse_err(x.trim(), "expected a positive integer"))
                })
                .collect::<Result<_>>()?;
            parts.push(part);
            rest = body[end + 1..].trim_start();
        }
        Self::from_parts(&parts).map_err(|e| parse_err(t, e.to_string()))
    }
}
