use thiserror::Error;

/// Why a finite-dimensional graded algebra failed the Frobenius test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotFrobeniusReason {
    TopDimension { degree: usize, dim: usize },
    DegeneratePairing { degree: usize },
    NoTopDegree { bound: usize },
}

impl std::fmt::Display for NotFrobeniusReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotFrobeniusReason::TopDimension { degree, dim } => {
                write!(f, "top component in degree {degree} has dimension {dim}, expected 1")
            }
            NotFrobeniusReason::DegeneratePairing { degree } => {
                write!(f, "pairing between degree {degree} and its complement is degenerate")
            }
            NotFrobeniusReason::NoTopDegree { bound } => {
                write!(f, "components do not vanish below degree {bound}")
            }
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("not a graded automorphism: {reason}")]
    NotAutomorphism { reason: String },

    #[error("sigma is not an algebra homomorphism: relation {relation} fails in entry ({}, {})", .entry.0 + 1, .entry.1 + 1)]
    NotHomomorphism { relation: String, entry: (usize, usize) },

    #[error("sigma is incompatible with y2*y1 - p*y1*y2 - q*y1^2: {reason}")]
    IncompatibleSigma { reason: String },

    #[error("p must be nonzero")]
    ZeroP,

    #[error("sigma is not invertible: {reason}")]
    NotInvertible { reason: String },

    #[error("not Frobenius: {reason}")]
    NotFrobenius { reason: NotFrobeniusReason },

    #[error("base algebra fails the numerical Koszulity test at degree {degree}")]
    NotKoszul { degree: usize },

    #[error("sigma*(delta) is not a scalar matrix in the top degree: {reason}")]
    InconsistentDual { reason: String },

    #[error("closed form and Frobenius engine disagree on {what}: closed form {closed_form}, engine {engine}")]
    CrossCheckMismatch { what: String, closed_form: String, engine: String },

    #[error("automorphisms {0} and {1} do not commute")]
    NotCommuting(usize, usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    /// Errors caused by the data handed in, as opposed to engine failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotAutomorphism { .. }
                | Error::NotHomomorphism { .. }
                | Error::IncompatibleSigma { .. }
                | Error::ZeroP
                | Error::NotInvertible { .. }
                | Error::NotCommuting(..)
                | Error::Dimension(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAutomorphism { .. } => "NotAutomorphism",
            Error::NotHomomorphism { .. } => "NotHomomorphism",
            Error::IncompatibleSigma { .. } => "IncompatibleSigma",
            Error::ZeroP => "ZeroP",
            Error::NotInvertible { .. } => "NotInvertible",
            Error::NotFrobenius { .. } => "NotFrobenius",
            Error::NotKoszul { .. } => "NotKoszul",
            Error::InconsistentDual { .. } => "InconsistentDual",
            Error::CrossCheckMismatch { .. } => "CrossCheckMismatch",
            Error::NotCommuting(..) => "NotCommuting",
            Error::Dimension(_) => "Dimension",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
