//! Command-line surface: the presentation language, command dispatch,
//! reports, and parameter sweeps.

pub mod args;
pub mod dsl;
pub mod eval;
pub mod report;
pub mod run;
pub mod sweep;

use serde_json::{json, Value};

use crate::error::Error;

pub use args::{main_with_args, parse_binding};
pub use dsl::{parse, pretty, Document, FieldSpec, ParseError};
pub use eval::Bindings;
pub use report::{Format, Output};
pub use run::{execute, execute_document, run, Command, Invocation, Options};
pub use sweep::sweep;

/// Exit status for a computed result, including negative Calabi-Yau verdicts.
pub const EXIT_OK: i32 = 0;
/// Exit status for malformed or inconsistent input.
pub const EXIT_INPUT: i32 = 1;
/// Exit status when the engine cannot certify a result.
pub const EXIT_ENGINE: i32 = 2;

#[derive(Debug, Clone, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Engine(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(e) if !e.is_input_error() => EXIT_ENGINE,
            _ => EXIT_INPUT,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "ParseError",
            CliError::Input(_) => "InputError",
            CliError::Engine(e) => e.kind(),
        }
    }

    pub fn payload(&self) -> Value {
        let mut v = json!({
            "kind": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        if let CliError::Parse(p) = self {
            v["line"] = json!(p.line);
            v["col"] = json!(p.col);
            v["expected"] = json!(p.expected);
            v["found"] = json!(p.found);
        }
        v
    }
}
