use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, HopfError, Result};

/// Plane rooted tree whose internal nodes have at least two children.
///
/// Serialized as nested parentheses with `()` for a leaf, e.g. `(()())`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchroederTree {
    Leaf,
    Node(Vec<SchroederTree>),
}

impl SchroederTree {
    pub fn leaves(&self) -> usize {
        match self {
            SchroederTree::Leaf => 1,
            SchroederTree::Node(ch) => ch.iter().map(SchroederTree::leaves).sum(),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            SchroederTree::Leaf => 0,
            SchroederTree::Node(ch) => 1 + ch.iter().map(SchroederTree::internal_nodes).sum::<usize>(),
        }
    }

    /// For each internal node, the sectors (gaps between consecutive leaves,
    /// numbered `1..leaves-1` left to right) lying below it.
    pub fn node_sectors(&self) -> Vec<Vec<usize>> {
        fn rec(t: &SchroederTree, first_leaf: usize, out: &mut Vec<Vec<usize>>) -> usize {
            match t {
                SchroederTree::Leaf => 1,
                SchroederTree::Node(ch) => {
                    let idx = out.len();
                    out.push(Vec::new());
                    let mut count = 0;
                    for c in ch {
                        count += rec(c, first_leaf + count, out);
                    }
                    // leaves first_leaf..first_leaf+count-1 bound sectors first_leaf..+count-2
                    out[idx] = (first_leaf..first_leaf + count - 1).collect();
                    count
                }
            }
        }
        let mut out = Vec::new();
        rec(self, 1, &mut out);
        out
    }

    /// Every tree with `leaves` leaves.
    pub fn all(leaves: usize) -> Vec<SchroederTree> {
        // forests[k] = ordered lists of trees with k leaves in total and at least 2 members
        if leaves == 0 {
            return Vec::new();
        }
        let mut trees: Vec<Vec<SchroederTree>> = vec![Vec::new(); leaves + 1];
        trees[1] = vec![SchroederTree::Leaf];
        // seqs[k] = nonempty ordered sequences of trees with k leaves in total
        let mut seqs: Vec<Vec<Vec<SchroederTree>>> = vec![Vec::new(); leaves + 1];
        seqs[1] = vec![vec![SchroederTree::Leaf]];
        for k in 2..=leaves {
            let mut nodes = Vec::new();
            for first in 1..k {
                for head in &trees[first] {
                    for tail in &seqs[k - first] {
                        let mut ch = vec![head.clone()];
                        ch.extend(tail.iter().cloned());
                        nodes.push(SchroederTree::Node(ch));
                    }
                }
            }
            trees[k] = nodes;
            let mut s = Vec::new();
            for first in 1..=k {
                for head in &trees[first] {
                    if first == k {
                        s.push(vec![head.clone()]);
                    } else {
                        for tail in &seqs[k - first] {
                            let mut v = vec![head.clone()];
                            v.extend(tail.iter().cloned());
                            s.push(v);
                        }
                    }
                }
            }
            seqs[k] = s;
        }
        let mut out = trees.swap_remove(leaves);
        out.sort();
        out
    }
}

/// Tree of a word: with `m` its largest letter and `w = v0 m v1 ... m vk`,
/// the trees of `v0, ..., vk` grafted on a common root. The empty word gives a leaf.
pub fn schroeder_tree<T: Ord>(w: &[T]) -> SchroederTree {
    let Some(m) = w.iter().max() else {
        return SchroederTree::Leaf;
    };
    let children = w.split(|x| x == m).map(schroeder_tree).collect();
    SchroederTree::Node(children)
}

impl fmt::Display for SchroederTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchroederTree::Leaf => f.write_str("()"),
            SchroederTree::Node(ch) => {
                f.write_str("(")?;
                for c in ch {
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for SchroederTree {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self> {
        fn parse(b: &[u8], i: &mut usize, src: &str) -> Result<SchroederTree> {
            if b.get(*i) != Some(&b'(') {
                return Err(parse_err(src, format!("expected `(` at offset {i}")));
            }
            *i += 1;
            let mut ch = Vec::new();
            while b.get(*i) == Some(&b'(') {
                ch.push(parse(b, i, src)?);
            }
            if b.get(*i) != Some(&b')') {
                return Err(parse_err(src, format!("expected `)` at offset {i}")));
            }
            *i += 1;
            match ch.len() {
                0 => Ok(SchroederTree::Leaf),
                1 => Err(parse_err(src, "internal node with a single child")),
                _ => Ok(SchroederTree::Node(ch)),
            }
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let b = compact.as_bytes();
        let mut i = 0;
        let t = parse(b, &mut i, s)?;
        if i != b.len() {
            return Err(parse_err(s, "trailing input"));
        }
        Ok(t)
    }
}
