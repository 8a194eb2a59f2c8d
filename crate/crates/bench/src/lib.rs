//! Shared inputs for the benchmarks.

use hopfcone::combinat::PackedWord;

/// All ordered pairs of nonempty packed words with total length at most `n`.
pub fn word_pairs(n: usize) -> Vec<(PackedWord, PackedWord)> {
    let mut out = Vec::new();
    for a in 1..n {
        for b in 1..=n - a {
            for u in PackedWord::all(a) {
                for v in PackedWord::all(b) {
                    out.push((u.clone(), v));
                }
            }
        }
    }
    out
}
