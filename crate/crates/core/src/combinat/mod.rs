//! Combinatorial labels and the shuffle family of word products.

mod composition;
mod multiset;
mod packed;
mod tree;
mod words;

pub use composition::{Composition, Partition, Sign, SignSeq};
pub use multiset::MultisetComposition;
pub use packed::{segmented_shifted_shuffle, PackedWord, SetComposition};
pub use tree::{schroeder_tree, SchroederTree};
pub use words::{
    descent_composition, interleavings, pack, quasi_shuffle, quasi_shuffle_all, shifted_shuffle,
    shifted_shuffle_by_max, shifted_shuffle_perm, shuffle, shuffle_all, std, Permutation,
};
