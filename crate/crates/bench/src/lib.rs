//! Fixtures shared by the benchmarks.

use purecubic_core::IntMatrix;

/// A dense `n × n` integer matrix with small, unstructured entries.
pub fn dense_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ((i * 7 + j * 13 + i * j * 5) % 23) as i64 - 11)
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}
