//! Standard two-generator algebras used throughout the examples and tests.

use crate::algebra::QuadraticPresentation;
use crate::field::Field;

fn plane<F: Field>(coeffs: [i64; 4]) -> QuadraticPresentation<F> {
    QuadraticPresentation::from_names(&["x", "y"], vec![coeffs.iter().map(|&c| F::from_i64(c)).collect()])
}

/// `k<x, y>/(yx - xy - x²)`.
pub fn jordan_plane<F: Field>() -> QuadraticPresentation<F> {
    plane([-1, -1, 1, 0])
}

/// `k<x, y>/(yx + xy)`.
pub fn quantum_plane<F: Field>() -> QuadraticPresentation<F> {
    plane([0, 1, 1, 0])
}

/// `k[x, y]`.
pub fn polynomial_plane<F: Field>() -> QuadraticPresentation<F> {
    plane([0, -1, 1, 0])
}

/// `k<y1, y2>/(y2 y1 - p y1 y2 - q y1²)`.
pub fn pq_plane<F: Field>(p: F, q: F) -> QuadraticPresentation<F> {
    QuadraticPresentation::from_names(&["y1", "y2"], vec![vec![-q, -p, F::one(), F::zero()]])
}

/// `k[x]`.
pub fn polynomial_line<F: Field>() -> QuadraticPresentation<F> {
    QuadraticPresentation::free(vec!["x".to_string()])
}
