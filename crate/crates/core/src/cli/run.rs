use serde_json::{json, Value};

use crate::algebra::presentation::format_polynomial;
use crate::algebra::{koszul_check, GradedAlgebra, QuadraticPresentation};
use crate::cli::dsl::{self, Document, ExtDecl, ExtKind, FieldSpec};
use crate::cli::eval::{Bindings, Env};
use crate::cli::report::{self, matrix_json, presentation_json, Format, Output, Report};
use crate::cli::{sweep, CliError};
use crate::extensions::{
    cy_double_ore, cy_iterated, cy_iterated_laurent, cy_laurent_diagonal, cy_ore, cy_skew_laurent, double_ore_extend,
    dual_presentation_double_ore, iterated_extend, nakayama_double_ore, nakayama_iterated, nakayama_ore,
    nakayama_skew_laurent, ore_extend, NakayamaDescription,
};
use crate::field::{Field, Fp, Rational};
use crate::frobenius::{hdet, KoszulRegular};
use crate::linalg::Matrix;
use crate::morphisms::{check_automorphism, check_sigma, det_l, invert_sigma, SigmaHom};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Command {
    Dual,
    Hilbert,
    KoszulCheck,
    Nakayama,
    Hdet,
    Ore,
    DoubleOre,
    CyOre,
    CyDoubleOre,
    CyLaurent,
    CyLaurentDiagonal,
    CyIterated,
    CyIteratedLaurent,
}

impl Command {
    /// Inverse of [`Command::name`].
    pub fn from_name(name: &str) -> Option<Command> {
        <Command as clap::ValueEnum>::value_variants().iter().copied().find(|c| c.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Dual => "dual",
            Command::Hilbert => "hilbert",
            Command::KoszulCheck => "koszul-check",
            Command::Nakayama => "nakayama",
            Command::Hdet => "hdet",
            Command::Ore => "ore",
            Command::DoubleOre => "double-ore",
            Command::CyOre => "cy-ore",
            Command::CyDoubleOre => "cy-double-ore",
            Command::CyLaurent => "cy-laurent",
            Command::CyLaurentDiagonal => "cy-laurent-diagonal",
            Command::CyIterated => "cy-iterated",
            Command::CyIteratedLaurent => "cy-iterated-laurent",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub degree_bound: usize,
    pub search_bound: i64,
    /// Overrides the document's field.
    pub field: Option<FieldSpec>,
    /// Automorphism, sigma or extension the command acts on.
    pub target: Option<String>,
    pub bindings: Bindings,
}

impl Default for Options {
    fn default() -> Self {
        Options { degree_bound: 6, search_bound: 20, field: None, target: None, bindings: Bindings::new() }
    }
}

/// One command line, minus the input text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub command: Command,
    pub sweep: bool,
    pub options: Options,
    pub format: Format,
}

/// Prime fields with a compiled backend.
pub const SUPPORTED_PRIMES: [u64; 9] = [2, 3, 5, 7, 11, 13, 101, 65521, 2147483647];

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rational => {
                type $f = Rational;
                $body
            }
            FieldSpec::Prime(2) => {
                type $f = Fp<2>;
                $body
            }
            FieldSpec::Prime(3) => {
                type $f = Fp<3>;
                $body
            }
            FieldSpec::Prime(5) => {
                type $f = Fp<5>;
                $body
            }
            FieldSpec::Prime(7) => {
                type $f = Fp<7>;
                $body
            }
            FieldSpec::Prime(11) => {
                type $f = Fp<11>;
                $body
            }
            FieldSpec::Prime(13) => {
                type $f = Fp<13>;
                $body
            }
            FieldSpec::Prime(101) => {
                type $f = Fp<101>;
                $body
            }
            FieldSpec::Prime(65521) => {
                type $f = Fp<65521>;
                $body
            }
            FieldSpec::Prime(2147483647) => {
                type $f = Fp<2147483647>;
                $body
            }
            FieldSpec::Prime(p) => Err(CliError::Input(format!(
                "unsupported field F{p}; supported prime fields: {}",
                SUPPORTED_PRIMES.map(|p| format!("F{p}")).join(", ")
            ))),
        }
    };
}

/// The field a command runs over.
pub fn effective_field(doc: &Document, opts: &Options) -> FieldSpec {
    opts.field.unwrap_or(doc.field)
}

/// Runs one command and returns its structured result.
pub fn run(command: Command, doc: &Document, opts: &Options) -> Result<Value, CliError> {
    let env = Env::new(doc, &opts.bindings)?;
    with_field!(effective_field(doc, opts), K => run_in::<K>(command, &env, opts))
}

/// Parses `source` and runs the invocation, rendering the report or error.
pub fn execute(inv: &Invocation, source: &str) -> Output {
    match dsl::parse(source) {
        Ok(doc) => execute_document(inv, &doc),
        Err(e) => failure(inv, &CliError::from(e)),
    }
}

/// Runs the invocation on an already parsed document.
pub fn execute_document(inv: &Invocation, doc: &Document) -> Output {
    let value = if inv.sweep { sweep(inv.command, doc, &inv.options) } else { run(inv.command, doc, &inv.options) };
    match value {
        Ok(value) => {
            let code = if inv.sweep { sweep::exit_code(&value) } else { crate::cli::EXIT_OK };
            let rep = Report {
                command: label(inv),
                target: inv.options.target.clone(),
                field: effective_field(doc, &inv.options),
                degree_bound: inv.options.degree_bound,
                search_bound: inv.options.search_bound,
                bindings: inv.options.bindings.clone(),
                result: value,
            };
            Output { stdout: rep.render(inv.format), stderr: String::new(), code }
        }
        Err(e) => failure(inv, &e),
    }
}

fn label(inv: &Invocation) -> String {
    if inv.sweep {
        format!("sweep {}", inv.command.name())
    } else {
        inv.command.name().to_string()
    }
}

fn failure(inv: &Invocation, e: &CliError) -> Output {
    Output { stdout: String::new(), stderr: report::render_error(&label(inv), e, inv.format), code: e.exit_code() }
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// The unique item of a list, or an error naming the candidates.
fn unique<'a>(what: &str, candidates: Vec<&'a str>) -> Result<&'a str, CliError> {
    match candidates.as_slice() {
        [one] => Ok(one),
        [] => Err(input(format!("the document declares no {what}"))),
        many => Err(input(format!("several candidates for {what} ({}); choose one with --target", many.join(", ")))),
    }
}

fn default_vars(kind: ExtKind, count: usize) -> Vec<String> {
    match kind {
        ExtKind::Ore | ExtKind::Laurent => vec!["t".into()],
        ExtKind::DoubleOre | ExtKind::LaurentDiagonal => vec!["y1".into(), "y2".into()],
        ExtKind::Iterated | ExtKind::IteratedLaurent => (1..=count).map(|i| format!("t{i}")).collect(),
    }
}

/// An extension request resolved against the document.
struct Resolved {
    kind: ExtKind,
    args: Vec<String>,
    p: Option<dsl::Expr>,
    vars: Vec<String>,
}

impl Resolved {
    fn from_ext(doc: &Document, e: &ExtDecl) -> Result<Resolved, CliError> {
        let vars = if e.vars.is_empty() { default_vars(e.kind, e.args.len()) } else { e.vars.clone() };
        if let Some(v) = vars.iter().find(|v| doc.gens.contains(v)) {
            return Err(input(format!("new generator {v} clashes with a base generator; rename it with `as`")));
        }
        Ok(Resolved { kind: e.kind, args: e.args.clone(), p: e.p.clone(), vars })
    }

    fn implicit(doc: &Document, kind: ExtKind, args: Vec<String>) -> Result<Resolved, CliError> {
        let e = ExtDecl { name: String::new(), kind, args, p: None, vars: vec![] };
        Self::from_ext(doc, &e)
    }
}

/// Finds the target among extensions of the given kinds, or among bare
/// automorphisms / sigmas wrapped as `implicit`.
fn resolve(doc: &Document, target: Option<&str>, kinds: &[ExtKind], implicit: ExtKind) -> Result<Resolved, CliError> {
    let wants_sigma = implicit == ExtKind::DoubleOre;
    let kinds_label = kinds.iter().map(|k| k.keyword()).collect::<Vec<_>>().join(" or ");
    let name = match target {
        Some(t) => t.to_string(),
        None => {
            let exts: Vec<&str> =
                doc.exts.iter().filter(|e| kinds.contains(&e.kind)).map(|e| e.name.as_str()).collect();
            if !exts.is_empty() {
                unique(&format!("{kinds_label} extensions"), exts)?.to_string()
            } else if implicit == ExtKind::LaurentDiagonal {
                return Err(input("the document declares no laurent-diagonal extension"));
            } else if wants_sigma {
                unique("sigmas", doc.sigmas.iter().map(|s| s.name.as_str()).collect())?.to_string()
            } else {
                unique("automorphisms", doc.auts.iter().map(|a| a.name.as_str()).collect())?.to_string()
            }
        }
    };
    if let Some(e) = doc.ext(&name) {
        if !kinds.contains(&e.kind) {
            return Err(input(format!("extension {name} is {}; this command needs {kinds_label}", e.kind.keyword())));
        }
        return Resolved::from_ext(doc, e);
    }
    if wants_sigma && doc.sigma(&name).is_some() {
        return Resolved::implicit(doc, implicit, vec![name]);
    }
    if !wants_sigma && implicit != ExtKind::LaurentDiagonal {
        let names: Vec<String> = name.split(',').map(|s| s.trim().to_string()).collect();
        if names.iter().all(|n| doc.aut(n).is_some()) && (names.len() == 1 || implicit == ExtKind::Iterated) {
            return Resolved::implicit(doc, implicit, names);
        }
    }
    Err(input(format!(
        "no {} named {name}",
        if wants_sigma { "sigma or extension" } else { "automorphism or extension" }
    )))
}

fn base<F: Field>(env: &Env, opts: &Options) -> Result<KoszulRegular<F>, CliError> {
    Ok(KoszulRegular::new(env.presentation()?, opts.degree_bound)?)
}

fn sigma_of<F: Field>(env: &Env, pres: &QuadraticPresentation<F>, name: &str) -> Result<SigmaHom<F>, CliError> {
    let (p, q, blocks) = env.sigma::<F>(name)?;
    Ok(check_sigma(pres, p, q, blocks)?)
}

fn diagonal_sigma<F: Field>(env: &Env, pres: &QuadraticPresentation<F>, r: &Resolved) -> Result<SigmaHom<F>, CliError> {
    let p: F = env.scalar(r.p.as_ref().expect("checked by the parser"))?;
    let (tau, xi) = (env.aut::<F>(&r.args[0])?, env.aut::<F>(&r.args[1])?);
    let s = SigmaHom::diagonal(p.clone(), F::zero(), &tau, &xi);
    Ok(check_sigma(pres, p, F::zero(), s.blocks)?)
}

fn pair(vars: &[String]) -> [String; 2] {
    [vars[0].clone(), vars[1].clone()]
}

/// Presentation of the base algebra, or of the polynomial extension named by the target.
fn built<F: Field>(env: &Env, opts: &Options) -> Result<(String, QuadraticPresentation<F>), CliError> {
    let pres = env.presentation::<F>()?;
    let Some(name) = opts.target.as_deref() else { return Ok(("base".into(), pres)) };
    let doc = env.document();
    let e = doc.ext(name).ok_or_else(|| input(format!("no extension named {name}")))?;
    let r = Resolved::from_ext(doc, e)?;
    let out = match r.kind {
        ExtKind::Ore | ExtKind::Laurent => {
            let theta = check_automorphism(&pres, &env.aut::<F>(&r.args[0])?)?;
            ore_extend(&pres, &theta, &r.vars[0])
        }
        ExtKind::DoubleOre => double_ore_extend(&pres, &sigma_of(env, &pres, &r.args[0])?, &pair(&r.vars)),
        ExtKind::LaurentDiagonal => double_ore_extend(&pres, &diagonal_sigma(env, &pres, &r)?, &pair(&r.vars)),
        ExtKind::Iterated | ExtKind::IteratedLaurent => {
            let thetas = r.args.iter().map(|a| env.aut::<F>(a)).collect::<Result<Vec<_>, _>>()?;
            iterated_extend(&pres, &thetas, &r.vars)?
        }
    };
    Ok((name.to_string(), out))
}

fn images<F: Field>(names: &[String], m: &Matrix<F>) -> Vec<String> {
    (0..m.rows())
        .map(|i| {
            let terms: Vec<(Vec<usize>, F)> = (0..m.cols()).map(|j| (vec![j], m[(i, j)].clone())).collect();
            format!("{} -> {}", names[i], format_polynomial(names, &terms))
        })
        .collect()
}

fn description_json<F: Field>(names: &[String], d: &NakayamaDescription<F>) -> Value {
    let full = d.full_matrix();
    json!({
        "on_base": matrix_json(&d.on_base),
        "on_new_generators": matrix_json(&d.on_new_generators),
        "on_inverses": d.on_inverses.as_ref().map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        "matrix": matrix_json(&full),
        "images": images(names, &full),
        "is_identity": d.is_identity(),
    })
}

fn run_in<F: Field>(command: Command, env: &Env, opts: &Options) -> Result<Value, CliError> {
    let doc = env.document();
    let target = opts.target.as_deref();
    let bound = opts.search_bound;
    match command {
        Command::Dual => {
            let (label, pres) = built::<F>(env, opts)?;
            let dual = pres.quadratic_dual();
            Ok(
                json!({ "algebra": label, "dual": presentation_json(&dual), "relation_matrix": matrix_json(dual.relations()) }),
            )
        }
        Command::Hilbert => {
            let (label, pres) = built::<F>(env, opts)?;
            let a = GradedAlgebra::new(pres);
            Ok(json!({
                "algebra": label,
                "hilbert": a.hilbert(opts.degree_bound),
                "dual_hilbert": a.dual().hilbert(opts.degree_bound),
            }))
        }
        Command::KoszulCheck => {
            let (label, pres) = built::<F>(env, opts)?;
            let r = koszul_check(&GradedAlgebra::new(pres), opts.degree_bound);
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["passed"] = json!(r.passed());
            v["algebra"] = json!(label);
            Ok(v)
        }
        Command::Nakayama => {
            let (label, pres) = built::<F>(env, opts)?;
            let kr = KoszulRegular::new(pres, opts.degree_bound)?;
            let names = kr.presentation().names().to_vec();
            Ok(json!({
                "algebra": label,
                "generators": names,
                "nu": matrix_json(kr.nu()),
                "nu_images": images(&names, kr.nu()),
                "mu_on_dual_degree1": matrix_json(&kr.nakayama.mu_on_degree1),
                "dual_top_degree": kr.nakayama.top_degree,
                "calabi_yau": kr.nu().is_identity(),
            }))
        }
        Command::Hdet => {
            let name = match target {
                Some(t) => t.to_string(),
                None => unique("automorphisms", doc.auts.iter().map(|a| a.name.as_str()).collect())?.to_string(),
            };
            let m = env.aut::<F>(&name)?;
            let h = hdet(&GradedAlgebra::new(env.presentation::<F>()?), &m)?;
            Ok(json!({ "automorphism": name, "matrix": matrix_json(&m), "hdet": h.to_string() }))
        }
        Command::Ore | Command::CyOre | Command::CyLaurent => {
            let r = resolve(doc, target, &[ExtKind::Ore, ExtKind::Laurent], ExtKind::Ore)?;
            let base = base::<F>(env, opts)?;
            let m = env.aut::<F>(&r.args[0])?;
            let mut v = json!({ "automorphism": r.args[0], "matrix": matrix_json(&m), "nu": matrix_json(base.nu()) });
            match command {
                Command::Ore => {
                    let pres =
                        ore_extend(base.presentation(), &check_automorphism(base.presentation(), &m)?, &r.vars[0]);
                    let d = nakayama_ore(&base, &m)?;
                    v["presentation"] = presentation_json(&pres);
                    v["hdet"] = json!(d.on_new_generators[(0, 0)].to_string());
                    v["nakayama"] = description_json(pres.names(), &d);
                    v["laurent_nakayama"] = description_json(pres.names(), &nakayama_skew_laurent(&base, &m)?);
                }
                Command::CyOre => v["verdict"] = serde_json::to_value(cy_ore(&base, &m)?).expect("serializable"),
                _ => v["verdict"] = serde_json::to_value(cy_skew_laurent(&base, &m, bound)?).expect("serializable"),
            }
            Ok(v)
        }
        Command::DoubleOre | Command::CyDoubleOre => {
            let r = resolve(doc, target, &[ExtKind::DoubleOre], ExtKind::DoubleOre)?;
            let base = base::<F>(env, opts)?;
            let sigma = sigma_of(env, base.presentation(), &r.args[0])?;
            let names = pair(&r.vars);
            if command == Command::CyDoubleOre {
                let verdict = cy_double_ore(&base, &sigma, &names)?;
                return Ok(
                    json!({ "sigma": r.args[0], "verdict": serde_json::to_value(verdict).expect("serializable") }),
                );
            }
            let phi = invert_sigma(base.presentation(), &sigma)?;
            let pres = double_ore_extend(base.presentation(), &sigma, &names);
            let dual = dual_presentation_double_ore(base.presentation(), &sigma, &phi, &names)?;
            let nak = nakayama_double_ore(&base, &sigma, &names)?;
            let w = &nak.wxyz;
            Ok(json!({
                "sigma": r.args[0],
                "p": sigma.p.to_string(),
                "q": sigma.q.to_string(),
                "presentation": presentation_json(&pres),
                "dual_presentation": presentation_json(&dual),
                "det_r": matrix_json(&nak.det_r),
                "det_l": matrix_json(&det_l(&sigma, &phi)),
                "nu": matrix_json(base.nu()),
                "det_r_is_nu": &nak.det_r == base.nu(),
                "wxyz": { "W": w.w.to_string(), "X": w.x.to_string(), "Y": w.y.to_string(), "Z": w.z.to_string() },
                "nakayama": description_json(pres.names(), &nak.closed_form),
                "nakayama_engine": matrix_json(&nak.engine),
            }))
        }
        Command::CyLaurentDiagonal => {
            let r = resolve(doc, target, &[ExtKind::LaurentDiagonal], ExtKind::LaurentDiagonal)?;
            let base = base::<F>(env, opts)?;
            let p: F = env.scalar(r.p.as_ref().expect("checked by the parser"))?;
            let (tau, xi) = (env.aut::<F>(&r.args[0])?, env.aut::<F>(&r.args[1])?);
            let verdict = cy_laurent_diagonal(&base, &p, &tau, &xi, bound)?;
            Ok(json!({
                "tau": r.args[0],
                "xi": r.args[1],
                "p": p.to_string(),
                "verdict": serde_json::to_value(verdict).expect("serializable"),
            }))
        }
        Command::CyIterated | Command::CyIteratedLaurent => {
            let kinds = [ExtKind::Iterated, ExtKind::IteratedLaurent, ExtKind::Ore, ExtKind::Laurent];
            let r = resolve(doc, target, &kinds, ExtKind::Iterated)?;
            let base = base::<F>(env, opts)?;
            let thetas = r.args.iter().map(|a| env.aut::<F>(a)).collect::<Result<Vec<_>, _>>()?;
            let verdict = if command == Command::CyIterated {
                cy_iterated(&base, &thetas)?
            } else {
                cy_iterated_laurent(&base, &thetas, bound)?
            };
            let mut v =
                json!({ "automorphisms": r.args, "verdict": serde_json::to_value(verdict).expect("serializable") });
            if command == Command::CyIterated {
                let mut names = base.presentation().names().to_vec();
                names.extend(r.vars.iter().cloned());
                v["nakayama"] = description_json(&names, &nakayama_iterated(&base, &thetas)?);
            }
            Ok(v)
        }
    }
}
