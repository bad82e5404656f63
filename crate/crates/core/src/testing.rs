//! Fixtures shared by unit tests.

use crate::algebra::QuadraticPresentation;
use crate::field::{Field, Rational};

pub use crate::catalog::*;

pub fn qv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_i64(x)).collect()
}

pub fn jordan() -> QuadraticPresentation<Rational> {
    jordan_plane()
}

pub fn commutative_plane() -> QuadraticPresentation<Rational> {
    polynomial_plane()
}

pub fn degenerate_xx_xy() -> QuadraticPresentation<Rational> {
    QuadraticPresentation::from_names(&["x", "y"], vec![qv(&[1, 0, 0, 0]), qv(&[0, 1, 0, 0])])
}

pub fn polynomial3() -> QuadraticPresentation<Rational> {
    QuadraticPresentation::from_names(
        &["x", "y", "z"],
        vec![qv(&[0, 1, 0, -1, 0, 0, 0, 0, 0]), qv(&[0, 0, 1, 0, 0, 0, -1, 0, 0]), qv(&[0, 0, 0, 0, 0, 1, 0, -1, 0])],
    )
}

pub fn quantum_plane() -> QuadraticPresentation<Rational> {
    crate::catalog::quantum_plane()
}
