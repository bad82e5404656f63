//! Quadratic algebras `T(V)/<R>` and their graded structure.

pub mod graded;
pub mod koszul;
pub mod presentation;

pub use graded::{Component, GradedAlgebra, GradedElement};
pub use koszul::{koszul_check, KoszulReport};
pub use presentation::QuadraticPresentation;
