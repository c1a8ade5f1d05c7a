//! Benchmark inputs shared by the criterion targets.

use brieskorn::ExponentVector;

/// Vectors exercising each stage: many orbit types, large κ, long supports.
pub fn inputs() -> Vec<ExponentVector> {
    [
        &[6u64, 2, 2, 2][..],
        &[7, 7, 7, 7],
        &[2, 3, 5, 7, 11],
        &[3, 5, 7, 2, 2],
        &[2, 2, 2, 2, 2, 2, 2, 2],
        &[4, 6, 8, 9, 10, 12],
    ]
    .iter()
    .map(|a| ExponentVector::new(a.to_vec()).expect("valid bench input"))
    .collect()
}
