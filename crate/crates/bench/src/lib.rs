//! Fixtures shared by the pipeline benchmarks.

use kulikov_core::{DegenerationData, IntMatrix};

/// `b = 2k·Id_t` with identity `φ`; even and `H`-invariant for every `k ≥ 1`.
pub fn scalar_data(t: usize, k: i64) -> DegenerationData {
    let rows: Vec<Vec<i64>> = (0..t).map(|i| (0..t).map(|j| if i == j { 2 * k } else { 0 }).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    DegenerationData::with_identity_phi(IntMatrix::from_i64(&refs)).expect("scalar pairings are well formed")
}

/// Even rank-two pairings of growing determinant, diagonal and skew.
pub fn rank_two_family() -> Vec<(&'static str, DegenerationData)> {
    let skew = DegenerationData::with_identity_phi(IntMatrix::from_i64(&[&[4, 2], &[2, 4]]))
        .expect("skew pairing is well formed");
    vec![
        ("2I", scalar_data(2, 1)),
        ("6I", scalar_data(2, 3)),
        ("10I", scalar_data(2, 5)),
        ("skew", skew),
    ]
}

/// Square integer matrices of size `n` with entries in a fixed pattern, for
/// Smith normal form timing.
pub fn dense_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 17) as i64 - 8 + if i == j { 40 } else { 0 }).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}
