//! Dense matrices over a pluggable scalar.

mod eigen;
mod matrix;

pub use eigen::{eigenvalues, Eigenvalues, MAX_ITERATIONS_PER_EIGENVALUE};
pub use matrix::{DenseMatrix, SINGULAR_PIVOT_RATIO};

use num_complex::Complex64;

/// Hausdorff distance between two finite point sets in ℂ. Two empty sets are
/// at distance 0; an empty set against a non-empty one is infinitely far.
pub fn hausdorff_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let directed = |from: &[Complex64], to: &[Complex64]| {
        from.iter()
            .map(|x| to.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}
