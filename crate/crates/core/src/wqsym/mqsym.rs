use crate::coeffring::{Rational, Scalar};
use crate::combinat::{quasi_shuffle_all, MultisetComposition, PackedWord};
use crate::freemod::LinComb;

/// Element of MQSym over multiset compositions.
pub type MQSymElement<C = Rational> = LinComb<MultisetComposition, C>;

/// `π(A, B) = ρ(A, B[m])` with `m = max A`.
///
/// The last-part recursion of `ρ` enumerates the quasi-shuffles of the two
/// sequences of parts, merged parts being multiset unions; on packed
/// matrices the shift is a block-diagonal placement of the columns.
pub fn mq_product(a: &MultisetComposition, b: &MultisetComposition) -> LinComb<MultisetComposition> {
    let (ma, mb) = (a.max_letter(), b.max_letter());
    let width = ma + mb;
    let ra: Vec<Vec<u32>> = a
        .matrix()
        .iter()
        .map(|r| {
            let mut v = r.clone();
            v.resize(width, 0);
            v
        })
        .collect();
    let rb: Vec<Vec<u32>> = b
        .matrix()
        .iter()
        .map(|r| {
            let mut v = vec![0; ma];
            v.extend_from_slice(r);
            v
        })
        .collect();
    let merge = |x: &Vec<u32>, y: &Vec<u32>| x.iter().zip(y).map(|(p, q)| p + q).collect::<Vec<u32>>();
    LinComb::from_labels(
        quasi_shuffle_all(&ra, &rb, &merge)
            .into_iter()
            .map(|rows| MultisetComposition::from_matrix(rows).expect("packed matrix")),
    )
}

pub fn mq_mul<C: Scalar>(x: &MQSymElement<C>, y: &MQSymElement<C>) -> MQSymElement<C> {
    x.bilinear_rational(y, mq_product)
}

/// A set composition as a multiset composition: part `k` is the set of
/// positions carrying the letter `k`.
pub fn multiset_of_packed(u: &PackedWord) -> MultisetComposition {
    let parts: Vec<Vec<u32>> = u
        .blocks()
        .into_iter()
        .map(|b| b.into_iter().map(|p| p as u32).collect())
        .collect();
    MultisetComposition::from_parts(&parts).expect("set composition")
}
