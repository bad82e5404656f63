use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::cli::dsl::FieldSpec;
use crate::cli::report::{render_error, Format, Output};
use crate::cli::run::{execute, Command, Invocation, Options};
use crate::cli::{CliError, EXIT_INPUT, EXIT_OK};
use crate::field::{parse_rational, Rational};

#[derive(Parser, Debug)]
#[command(name = "koszul", version, about = "Exact computations with quadratic algebras and their Ore-type extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input document, or `-` for standard input
    pub file: PathBuf,

    /// Highest degree used for Hilbert series and the Koszulity test
    #[arg(long, default_value_t = 6)]
    pub degree_bound: usize,

    /// Exponent range [-B, B] searched by existential criteria
    #[arg(long, default_value_t = 20)]
    pub search_bound: i64,

    /// Ground field: `q` or `F<prime>`, overriding the document
    #[arg(long, value_parser = parse_field)]
    pub field: Option<FieldSpec>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Automorphism, sigma or extension to act on
    #[arg(long)]
    pub target: Option<String>,

    /// Fix a parameter, e.g. `--set f=1/2`
    #[arg(long = "set", value_parser = parse_binding)]
    pub set: Vec<(String, Rational)>,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// Quadratic dual presentation
    Dual(Common),
    /// Hilbert series of the algebra and its dual
    Hilbert(Common),
    /// Numerical Koszulity test H(t) H!(-t) = 1
    KoszulCheck(Common),
    /// Nakayama automorphism
    Nakayama(Common),
    /// Homological determinant of an automorphism
    Hdet(Common),
    /// Graded Ore extension and its Nakayama automorphism
    Ore(Common),
    /// Double Ore extension data
    DoubleOre(Common),
    /// Calabi-Yau test for a graded Ore extension
    CyOre(Common),
    /// Calabi-Yau test for a double Ore extension
    CyDoubleOre(Common),
    /// Calabi-Yau test for a skew Laurent extension
    CyLaurent(Common),
    /// Calabi-Yau test for a localized diagonal double extension
    CyLaurentDiagonal(Common),
    /// Calabi-Yau test for an iterated Ore extension
    CyIterated(Common),
    /// Calabi-Yau test for an iterated skew Laurent extension
    CyIteratedLaurent(Common),
    /// Run a command at every point of the parameter grid
    Sweep {
        #[arg(value_enum)]
        command: Command,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    FieldSpec::parse(s).ok_or_else(|| format!("expected `q` or `F<prime>`, got `{s}`"))
}

/// `NAME=VALUE` with a rational value.
pub fn parse_binding(s: &str) -> Result<(String, Rational), String> {
    let (name, value) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let v = parse_rational(value.trim()).ok_or_else(|| format!("`{value}` is not a rational number"))?;
    Ok((name.trim().to_string(), v))
}

impl Sub {
    fn split(self) -> (Command, bool, Common) {
        match self {
            Sub::Dual(c) => (Command::Dual, false, c),
            Sub::Hilbert(c) => (Command::Hilbert, false, c),
            Sub::KoszulCheck(c) => (Command::KoszulCheck, false, c),
            Sub::Nakayama(c) => (Command::Nakayama, false, c),
            Sub::Hdet(c) => (Command::Hdet, false, c),
            Sub::Ore(c) => (Command::Ore, false, c),
            Sub::DoubleOre(c) => (Command::DoubleOre, false, c),
            Sub::CyOre(c) => (Command::CyOre, false, c),
            Sub::CyDoubleOre(c) => (Command::CyDoubleOre, false, c),
            Sub::CyLaurent(c) => (Command::CyLaurent, false, c),
            Sub::CyLaurentDiagonal(c) => (Command::CyLaurentDiagonal, false, c),
            Sub::CyIterated(c) => (Command::CyIterated, false, c),
            Sub::CyIteratedLaurent(c) => (Command::CyIteratedLaurent, false, c),
            Sub::Sweep { command, common } => (command, true, common),
        }
    }
}

/// Full command-line entry point; `args` includes the program name.
pub fn main_with_args<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { stdout: String::new(), stderr: text, code: EXIT_INPUT }
            } else {
                Output { stdout: text, stderr: String::new(), code: EXIT_OK }
            };
        }
    };
    let (command, sweep, c) = cli.command.split();
    let inv = Invocation {
        command,
        sweep,
        options: Options {
            degree_bound: c.degree_bound,
            search_bound: c.search_bound,
            field: c.field,
            target: c.target,
            bindings: c.set.into_iter().collect(),
        },
        format: c.format,
    };
    let mut source = String::new();
    let read = if c.file.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut source).map(|_| ())
    } else {
        std::fs::read_to_string(&c.file).map(|s| source = s)
    };
    if let Err(e) = read {
        let err = CliError::Input(format!("cannot read {}: {e}", c.file.display()));
        return Output {
            stdout: String::new(),
            stderr: render_error(command.name(), &err, inv.format),
            code: EXIT_INPUT,
        };
    }
    execute(&inv, &source)
}
