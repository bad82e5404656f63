use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cli::dsl::Document;
use crate::cli::eval::Bindings;
use crate::cli::report::bindings_json;
use crate::cli::run::{run, Command, Options};
use crate::cli::{CliError, EXIT_ENGINE, EXIT_OK};

/// Grid points in lexicographic order over the declared parameters.
/// Parameters fixed by the caller's bindings do not vary.
pub fn grid(doc: &Document, fixed: &Bindings) -> Vec<Bindings> {
    let mut points = vec![fixed.clone()];
    for p in doc.params.iter().filter(|p| !fixed.contains_key(&p.name)) {
        points = points
            .into_iter()
            .flat_map(|b| {
                p.values.iter().map(move |v| {
                    let mut b = b.clone();
                    b.insert(p.name.clone(), v.clone());
                    b
                })
            })
            .collect();
    }
    points
}

/// Runs `command` at every grid point. Failures at a point are recorded in
/// its row instead of aborting the sweep.
pub fn sweep(command: Command, doc: &Document, opts: &Options) -> Result<Value, CliError> {
    let varying: Vec<&str> =
        doc.params.iter().filter(|p| !opts.bindings.contains_key(&p.name)).map(|p| p.name.as_str()).collect();
    let points = grid(doc, &opts.bindings);
    let rows: Vec<Value> = points
        .par_iter()
        .map(|b| {
            let point_opts = Options { bindings: b.clone(), ..opts.clone() };
            let shown: Bindings =
                b.iter().filter(|(k, _)| varying.contains(&k.as_str())).map(|(k, v)| (k.clone(), v.clone())).collect();
            match run(command, doc, &point_opts) {
                Ok(result) => json!({ "parameters": bindings_json(&shown), "result": result }),
                Err(e) => json!({ "parameters": bindings_json(&shown), "error": e.payload() }),
            }
        })
        .collect();
    Ok(json!({ "command": command.name(), "parameters": varying, "rows": rows }))
}

/// Engine failures at any point fail the sweep; invalid points do not.
pub fn exit_code(result: &Value) -> i32 {
    let engine = result["rows"]
        .as_array()
        .into_iter()
        .flatten()
        .any(|r| r.get("error").is_some_and(|e| e["exit_code"] == json!(EXIT_ENGINE)));
    if engine {
        EXIT_ENGINE
    } else {
        EXIT_OK
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::dsl::parse;
    use crate::field::Rational;

    #[test]
    fn grid_is_lexicographic() {
        let d = parse("gens; param a = {1, 2}; param b = {3, 4, 5};").unwrap();
        let g = grid(&d, &Bindings::new());
        let pairs: Vec<(String, String)> = g.iter().map(|b| (b["a"].to_string(), b["b"].to_string())).collect();
        assert_eq!(pairs[..4], [("1", "3"), ("1", "4"), ("1", "5"), ("2", "3")].map(|(a, b)| (a.into(), b.into())));
        assert_eq!(g.len(), 6);
        let fixed = Bindings::from([("a".to_string(), Rational::from_integer(7.into()))]);
        assert_eq!(grid(&d, &fixed).len(), 3);
        let d = parse("gens; param a = {};").unwrap();
        assert!(grid(&d, &Bindings::new()).is_empty());
    }
}
