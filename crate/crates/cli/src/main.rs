//! `nlie`: verify, inspect, classify and compare n-Lie algebra tables.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use nlie::catalog::{build, list_for, L73Reading, Label};
use nlie::classify::classify;
use nlie::fingerprint::{fingerprint, FingerprintOptions};
use nlie::format::{parse_document, to_json, AlgebraDocument};
use nlie::iso::{graded_iso_search, invariants_separate, signed_perm_iso, SearchOutcome, DEFAULT_BUDGET};
use nlie::sample::audit;
use nlie::{ClassifyError, Field, FieldSpec, FilippovCheck, NLieAlgebra, PrimeField, Rationals};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Field used when neither `--field` nor a file declares one.
const FIELD_ENV: &str = "NLIE_DEFAULT_FIELD";

#[derive(Parser)]
#[command(name = "nlie", version, about = "Exact tools for nilpotent n-Lie algebras")]
struct Cli {
    /// Field to work over: Q or GF(p). Files declaring another field are
    /// reinterpreted, which only integral tables allow.
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the alternating and Filippov identities.
    Verify { file: PathBuf },
    /// Derived and central series, nilpotency class and fingerprint.
    Info { file: PathBuf },
    /// Identify a class-two algebra in the catalog, with a witness.
    Classify { file: PathBuf },
    /// Search for an isomorphism between two tables.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Only try signed permutations of the basis.
        #[arg(long)]
        perm_only: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// List or emit catalog entries.
    Catalog(CatalogArgs),
    /// Classify random class-two central extensions.
    Sample {
        n: usize,
        d: usize,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Directory receiving one file per failing sample.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct CatalogArgs {
    /// Same as `catalog list N D`.
    #[arg(long, num_args = 2, value_names = ["N", "D"])]
    list: Option<Vec<usize>>,
    #[command(subcommand)]
    action: Option<CatalogAction>,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Labels of the class-two algebras of arity N and dimension D.
    List { n: usize, d: usize },
    /// Print a catalog entry in the algebra file format.
    Emit {
        label: String,
        /// Reading of the doubly assigned L7(3) row.
        #[arg(long, value_parser = ["A", "B"])]
        reading: Option<String>,
        /// Arity for abelian labels `F(d)`.
        #[arg(long)]
        arity: Option<usize>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{message}")]
    Normalization { message: String, trace: Value },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Normalization { .. } => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Precondition(_) => "precondition",
            CliError::Normalization { .. } => "normalization",
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match &e {
            ClassifyError::NormalizationFailure { trace, .. } => {
                CliError::Normalization { message: e.to_string(), trace: json!(trace) }
            }
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

/// Result payload, one-line summary, and an optional failure that still
/// carries a payload.
struct Outcome {
    result: Value,
    summary: String,
    failure: Option<CliError>,
}

impl Outcome {
    fn ok(result: Value, summary: String) -> Self {
        Self { result, summary, failure: None }
    }
}

/// Runs `$body` with `$f` bound to the field named by `$spec`.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p).map_err(|e| CliError::Input(e.to_string()))?;
                $body
            }
        }
    };
}

struct Input {
    path: PathBuf,
    digest: String,
    doc: AlgebraDocument,
}

fn read_input(path: &Path) -> Result<Input, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let doc = parse_document(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(Input { path: path.to_path_buf(), digest: hex::encode(Sha256::digest(&bytes)), doc })
}

fn parse_field(s: &str) -> Result<FieldSpec, CliError> {
    s.parse().map_err(|e: nlie::FieldError| CliError::Input(e.to_string()))
}

/// `--field` if given, else the declared field of the file.
fn field_for(cli_field: Option<&str>, declared: FieldSpec) -> Result<FieldSpec, CliError> {
    cli_field.map_or(Ok(declared), parse_field)
}

/// `--field`, else `NLIE_DEFAULT_FIELD`, else Q.
fn default_field(cli_field: Option<&str>) -> Result<FieldSpec, CliError> {
    match cli_field {
        Some(s) => parse_field(s),
        None => match std::env::var(FIELD_ENV) {
            Ok(s) if !s.trim().is_empty() => parse_field(&s),
            _ => Ok(FieldSpec::Rationals),
        },
    }
}

fn load<F: Field>(input: &Input, f: &F) -> Result<NLieAlgebra<F>, CliError> {
    input.doc.build(f).map_err(|e| CliError::Input(format!("{}: {e}", input.path.display())))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn verify_payload<F: Field>(a: &NLieAlgebra<F>) -> (Value, bool) {
    let alternating = a.check_alternating();
    let (filippov, ok) = match a.check_filippov() {
        FilippovCheck::Pass => (json!("pass"), true),
        FilippovCheck::Violation { x, y, lhs, rhs } => (
            json!({ "x": one_based(&x), "y": one_based(&y), "lhs": a.render_vector(&lhs), "rhs": a.render_vector(&rhs) }),
            false,
        ),
    };
    (json!({ "alternating": alternating, "filippov": filippov, "valid": alternating && ok }), alternating && ok)
}

fn cmd_verify(cli_field: Option<&str>, input: &Input) -> Result<Outcome, CliError> {
    with_field!(field_for(cli_field, input.doc.field)?, |f| {
        let a = load(input, &f)?;
        let (result, ok) = verify_payload(&a);
        if ok {
            Ok(Outcome::ok(result, "pass: alternating and Filippov".into()))
        } else {
            let msg = format!("Filippov identity fails at {}", result["filippov"]);
            Ok(Outcome { result, summary: format!("fail: {msg}"), failure: Some(CliError::Precondition(msg)) })
        }
    })
}

fn cmd_info(cli_field: Option<&str>, input: &Input) -> Result<Outcome, CliError> {
    with_field!(field_for(cli_field, input.doc.field)?, |f| {
        let a = load(input, &f)?;
        let (check, ok) = verify_payload(&a);
        if !ok {
            return Err(CliError::Precondition(format!("not an n-Lie algebra: {}", check["filippov"])));
        }
        let series = a.series_report();
        let derived = a.derived_algebra().dim();
        let center = a.center().dim();
        let class = series.class.to_string();
        let result = json!({
            "arity": a.arity(),
            "dim": a.dim(),
            "field": f.spec().to_string(),
            "derived_dim": derived,
            "center_dim": center,
            "derived_series": series.derived.iter().map(|s| s.dim()).collect::<Vec<_>>(),
            "upper_central_series": series.central.iter().map(|s| s.dim()).collect::<Vec<_>>(),
            "class": class,
            "fingerprint": fingerprint(&a, &FingerprintOptions::default()).to_json(),
        });
        Ok(Outcome::ok(result, format!("dim A² = {derived}, dim Z = {center}, class {class}")))
    })
}

fn cmd_classify(cli_field: Option<&str>, input: &Input) -> Result<Outcome, CliError> {
    with_field!(field_for(cli_field, input.doc.field)?, |f| {
        let a = load(input, &f)?;
        let r = classify(&a)?;
        Ok(Outcome::ok(r.to_json(), format!("isomorphic to {}", r.label)))
    })
}

fn search<F: Field>(a: &NLieAlgebra<F>, b: &NLieAlgebra<F>, perm_only: bool, budget: u64) -> Value {
    if invariants_separate(a, b, &FingerprintOptions::default()) {
        return json!({ "isomorphic": false, "witness": null, "checked": 0, "method": "invariants" });
    }
    let perm = signed_perm_iso(a, b, budget);
    let (outcome, method) = match perm {
        SearchOutcome::Found { .. } => (perm, "signed permutation"),
        _ if perm_only => (perm, "signed permutation"),
        _ => (graded_iso_search(a, b, budget), "graded"),
    };
    // Only the graded search over a finite field is exhaustive.
    let proven_absent = method == "graded" && matches!(outcome, SearchOutcome::NotFound { .. });
    let mut report = outcome.report(proven_absent);
    report["method"] = json!(method);
    report
}

fn cmd_iso(cli_field: Option<&str>, a: &Input, b: &Input, perm_only: bool, budget: u64) -> Result<Outcome, CliError> {
    let fa = field_for(cli_field, a.doc.field)?;
    let fb = field_for(cli_field, b.doc.field)?;
    if fa != fb {
        return Err(CliError::Precondition(format!("fields differ: {fa} and {fb}; pass --field to compare integral tables")));
    }
    with_field!(fa, |f| {
        let (x, y) = (load(a, &f)?, load(b, &f)?);
        if x.arity() != y.arity() {
            return Err(CliError::Precondition(format!("arities differ: {} and {}", x.arity(), y.arity())));
        }
        let result = search(&x, &y, perm_only, budget);
        let summary = format!("isomorphic: {} ({} candidates)", result["isomorphic"], result["checked"]);
        Ok(Outcome::ok(result, summary))
    })
}

fn catalog_list(n: usize, d: usize) -> Outcome {
    let list = list_for(n, d);
    let names: Vec<String> = list.labels.iter().map(Label::to_string).collect();
    let summary = names.join(", ");
    Outcome::ok(json!({ "n": n, "d": d, "labels": names, "complete": list.complete }), summary)
}

fn catalog_label(label: &str, reading: Option<&str>, arity: Option<usize>) -> Result<Label, CliError> {
    let label = Label::parse(label, arity).map_err(|e| CliError::Precondition(e.to_string()))?;
    match (label, reading) {
        (l, None) => Ok(l),
        (Label::L7 { i: 3, .. }, Some(r)) => {
            Ok(Label::L7 { i: 3, reading: Some(if r == "A" { L73Reading::A } else { L73Reading::B }) })
        }
        (l, Some(_)) => Err(CliError::Precondition(format!("--reading applies only to L7(3), not {l}"))),
    }
}

fn catalog_emit(spec: FieldSpec, label: &Label) -> Result<String, CliError> {
    with_field!(spec, |f| build(label, &f).map(|a| to_json(&a)).map_err(|e| CliError::Precondition(e.to_string())))
}

fn cmd_sample(spec: FieldSpec, n: usize, d: usize, count: usize, seed: u64, out: Option<&Path>) -> Result<Outcome, CliError> {
    if n < 3 || d <= n {
        return Err(CliError::Precondition(format!("sampling needs n >= 3 and d > n, got n = {n}, d = {d}")));
    }
    with_field!(spec, |f| {
        let report = audit(n, d, &f, count, seed).map_err(|e| CliError::Precondition(e.to_string()))?;
        if let Some(dir) = out {
            fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
        }
        let mut failures = Vec::new();
        for fail in &report.failures {
            let mut entry = json!({ "index": fail.index, "quotient": fail.quotient.to_string(), "error": fail.error.to_string() });
            if let Some(dir) = out {
                let path = dir.join(format!("failure-{:04}.json", fail.index));
                fs::write(&path, to_json(&fail.algebra)).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                entry["file"] = json!(path.display().to_string());
            }
            failures.push(entry);
        }
        if let Some(dir) = out {
            let path = dir.join("failures.json");
            let text = serde_json::to_string_pretty(&failures).expect("serializable") + "\n";
            fs::write(&path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        }
        let n_fail = failures.len();
        let result = json!({
            "n": n,
            "d": d,
            "field": spec.to_string(),
            "count": report.count,
            "histogram": report.histogram,
            "unlisted": report.unlisted,
            "failures": failures,
        });
        let summary = format!("{count} samples, {n_fail} normalization failures, unlisted {:?}", report.unlisted);
        let failure = (n_fail > 0).then(|| CliError::Normalization {
            message: format!("{n_fail} of {count} samples failed to normalize"),
            trace: Value::Null,
        });
        Ok(Outcome { result, summary, failure })
    })
}

fn digest_entry(i: &Input) -> Value {
    json!({ "file": i.path.display().to_string(), "sha256": i.digest })
}

/// Prints the report and returns the exit code.
fn finish(inputs: &[Input], seed: Option<u64>, start: Instant, outcome: Result<Outcome, CliError>) -> u8 {
    let command: Vec<String> = std::env::args().collect();
    let mut report = json!({
        "command": command,
        "inputs": inputs.iter().map(digest_entry).collect::<Vec<_>>(),
    });
    if let Some(s) = seed {
        report["seed"] = json!(s);
    }
    let (code, summary, error) = match outcome {
        Ok(Outcome { result, summary, failure }) => {
            report["result"] = result;
            (failure.as_ref().map_or(0, CliError::code), summary, failure)
        }
        Err(e) => (e.code(), format!("error: {e}"), Some(e)),
    };
    if let Some(e) = &error {
        let mut err = json!({ "kind": e.kind(), "message": e.to_string() });
        if let CliError::Normalization { trace, .. } = e {
            if !trace.is_null() {
                err["trace"] = trace.clone();
            }
        }
        report["error"] = err;
    }
    report["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1000.0);
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    eprintln!("{summary}");
    code
}

fn run(cli: Cli) -> u8 {
    let start = Instant::now();
    let field = cli.field.as_deref();
    let read = |paths: &[&Path]| paths.iter().map(|p| read_input(p)).collect::<Result<Vec<_>, _>>();
    match &cli.command {
        Command::Verify { file } | Command::Info { file } | Command::Classify { file } => match read(&[file]) {
            Err(e) => finish(&[], None, start, Err(e)),
            Ok(inputs) => {
                let outcome = match &cli.command {
                    Command::Verify { .. } => cmd_verify(field, &inputs[0]),
                    Command::Info { .. } => cmd_info(field, &inputs[0]),
                    _ => cmd_classify(field, &inputs[0]),
                };
                finish(&inputs, None, start, outcome)
            }
        },
        Command::Iso { a, b, perm_only, budget } => match read(&[a, b]) {
            Err(e) => finish(&[], None, start, Err(e)),
            Ok(inputs) => {
                let outcome = cmd_iso(field, &inputs[0], &inputs[1], *perm_only, *budget);
                finish(&inputs, None, start, outcome)
            }
        },
        Command::Catalog(args) => {
            let action = match (&args.list, &args.action) {
                (Some(v), _) => CatalogAction::List { n: v[0], d: v[1] },
                (None, Some(CatalogAction::List { n, d })) => CatalogAction::List { n: *n, d: *d },
                (None, Some(CatalogAction::Emit { label, reading, arity })) => {
                    CatalogAction::Emit { label: label.clone(), reading: reading.clone(), arity: *arity }
                }
                (None, None) => {
                    return finish(&[], None, start, Err(CliError::Input("catalog needs `list N D` or `emit LABEL`".into())));
                }
            };
            match action {
                CatalogAction::List { n, d } => finish(&[], None, start, Ok(catalog_list(n, d))),
                CatalogAction::Emit { label, reading, arity } => {
                    // Emission prints the bare algebra file so it can be fed back in.
                    let text = default_field(field)
                        .and_then(|spec| catalog_label(&label, reading.as_deref(), arity).map(|l| (spec, l)))
                        .and_then(|(spec, l)| catalog_emit(spec, &l));
                    match text {
                        Ok(t) => {
                            print!("{t}");
                            0
                        }
                        Err(e) => finish(&[], None, start, Err(e)),
                    }
                }
            }
        }
        Command::Sample { n, d, count, seed, out } => {
            let outcome = default_field(field).and_then(|spec| cmd_sample(spec, *n, *d, *count, *seed, out.as_deref()));
            finish(&[], Some(*seed), start, outcome)
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}
