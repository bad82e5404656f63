//! Exact computations with quadratic algebras: Koszul duals, Frobenius
//! pairings, Nakayama automorphisms, homological determinants, and
//! Calabi-Yau tests for Ore, double Ore, and skew Laurent extensions.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod extensions;
pub mod field;
pub mod frobenius;
pub mod linalg;
pub mod morphisms;

#[cfg(test)]
mod testing;

pub use algebra::{koszul_check, GradedAlgebra, GradedElement, KoszulReport, QuadraticPresentation};
pub use error::{Error, NotFrobeniusReason, Result};
pub use field::{Field, Fp, Rational};
pub use linalg::Matrix;
