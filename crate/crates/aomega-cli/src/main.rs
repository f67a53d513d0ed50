//! Command-line front end: verify operators, classify finite supports,
//! build induced brackets, and render reports.
//!
//! Exit codes: 0 all requested checks passed, 1 a check failed, 2 bad
//! configuration, 3 a degenerate family parameter was hit.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use aomega::alie::{check_fundamental_identity, check_rota_baxter, GradedCoeff};
use aomega::classify::{enumerate_rb_finite, recognize, SearchSpec};
use aomega::induced::{build_table, verify_induced};
use aomega::operators::{
    check_rb_global_finite, check_rb_weight0, identity_suite, inverse_on_window,
    HomogeneousOperator,
};
use aomega::{CheckOptions, Error, Rat, Report, Scalar, Window};

#[derive(Parser)]
#[command(name = "aomega", version, about = "Exact verification of homogeneous Rota-Baxter operators on the 3-Lie algebra spanned by L_n")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on recorded counterexamples per check; 0 removes the cap.
    #[arg(long, global = true, default_value_t = 32)]
    max_counterexamples: usize,
    /// Worker threads for the checkers; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run identity checks against an operator.
    Verify(VerifyArgs),
    /// Search finite-support operators.
    Classify {
        #[command(subcommand)]
        mode: ClassifyCmd,
    },
    /// Build the induced bracket of an operator and verify it.
    Induce(InduceArgs),
    /// Render a previously written JSON result.
    Report(ReportArgs),
}

/// Operator selection shared by verify and induce.
#[derive(Args)]
struct OperatorArgs {
    /// Family name: r01 | r02 | r03 | r04 | r05.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    m0: Option<i64>,
    #[arg(long)]
    s0: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    m1: Option<i64>,
    /// Family parameter a: a rational like 3 or 3/5, or "sym".
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Family parameter b, a rational.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Finite support table, e.g. "3=1,-2=1/2".
    #[arg(long, allow_hyphen_values = true)]
    support: Option<String>,
    /// Operator spec as JSON, e.g. {"family":"r02","m0":1,"a":"3"}.
    #[arg(long)]
    spec: Option<String>,
}

impl OperatorArgs {
    fn build(&self) -> Result<HomogeneousOperator, Error> {
        if let Some(spec) = &self.spec {
            return HomogeneousOperator::from_spec_json(spec);
        }
        if let Some(support) = &self.support {
            let mut table = serde_json::Map::new();
            for (k, v) in parse_assignments(support)? {
                table.insert(k.to_string(), Value::String(v.to_string()));
            }
            return HomogeneousOperator::from_spec_json(
                &serde_json::to_string(&json!({ "support": table })).unwrap(),
            );
        }
        let mut doc = serde_json::Map::new();
        if let Some(f) = &self.family {
            doc.insert("family".into(), Value::String(f.clone()));
        }
        for (key, v) in [("m0", self.m0), ("s0", self.s0), ("m1", self.m1)] {
            if let Some(v) = v {
                doc.insert(key.into(), Value::from(v));
            }
        }
        for (key, v) in [("a", &self.a), ("b", &self.b)] {
            if let Some(v) = v {
                doc.insert(key.into(), Value::String(v.clone()));
            }
        }
        HomogeneousOperator::from_spec_json(&Value::Object(doc).to_string())
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    op: OperatorArgs,
    /// Index window LO..HI (inclusive).
    #[arg(long, default_value = "-6..6", allow_hyphen_values = true)]
    window: String,
    /// Checks to run: rb, global, derivation-of-inverse, identities,
    /// fundamental.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Shorthand for the global finite-support decision procedure.
    #[arg(long)]
    global: bool,
    /// Weight for the Rota-Baxter check (rational; default 0).
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Skip tuples whose coefficients are undefined (degenerate parameter)
    /// instead of aborting.
    #[arg(long)]
    skip_degenerate: bool,
    /// Exhaustive 5-tuple enumeration for the fundamental identity.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Exhaustive search over finite supports, decided globally.
    Finite {
        /// Index range LO..HI (inclusive).
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        /// Cap on support points beyond the pinned ones.
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        /// Candidate nonzero values, e.g. "1,-1,1/2".
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        /// Fixed assignments, e.g. "0=1,1=-1" (zeros allowed).
        #[arg(long, allow_hyphen_values = true)]
        pin: Option<String>,
        /// Disable necessary-condition pruning.
        #[arg(long)]
        no_prune: bool,
        /// Candidate budget.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u128,
        /// Evidence window for labeling solutions.
        #[arg(long, default_value = "-10..10", allow_hyphen_values = true)]
        evidence: String,
    },
}

#[derive(Args)]
struct InduceArgs {
    #[command(flatten)]
    op: OperatorArgs,
    #[arg(long, default_value = "-5..5", allow_hyphen_values = true)]
    window: String,
    /// Weight of the induced bracket (rational; default 0).
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long)]
    skip_degenerate: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// Path of a JSON result written by verify or induce; "-" reads stdin.
    #[arg(long)]
    input: String,
}

fn parse_assignments(s: &str) -> Result<Vec<(i64, Rat)>, Error> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected INDEX=VALUE, got {part:?}")))?;
        let k: i64 = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad index {k:?}")))?;
        out.push((k, v.trim().parse()?));
    }
    Ok(out)
}

fn parse_lambda(s: &Option<String>) -> Result<Scalar, Error> {
    Ok(match s {
        None => Scalar::zero(),
        Some(s) => Scalar::Rat(s.parse()?),
    })
}

struct Outcome {
    exit: ExitCode,
    body: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers > 0 {
        // a failure here only means a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global();
    }
    match run(&cli) {
        Ok(outcome) => {
            let emit = if outcome.body.ends_with('\n') {
                outcome.body
            } else {
                format!("{}\n", outcome.body)
            };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, emit) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{emit}"),
            }
            outcome.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::DegenerateParameter { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn check_options(cli: &Cli, skip_degenerate: bool, strict: bool) -> CheckOptions {
    let mut opts = CheckOptions {
        max_counterexamples: match cli.max_counterexamples {
            0 => None,
            n => Some(n),
        },
        ..CheckOptions::default()
    };
    if skip_degenerate {
        opts = opts.skip_degenerate();
    }
    opts.strict = strict;
    opts
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.cmd {
        Cmd::Verify(args) => cmd_verify(cli, args),
        Cmd::Classify { mode } => cmd_classify(cli, mode),
        Cmd::Induce(args) => cmd_induce(cli, args),
        Cmd::Report(args) => cmd_report(cli, args),
    }
}

fn report_value(report: &Report) -> Value {
    serde_json::to_value(report).expect("report serialization cannot fail")
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<Outcome, Error> {
    let w: Window = args.window.parse()?;
    let opts = check_options(cli, args.skip_degenerate, args.strict);
    let lambda = parse_lambda(&args.lambda)?;

    let mut names: Vec<String> = args.checks.iter().map(|c| c.trim().to_string()).collect();
    if args.global && !names.iter().any(|c| c == "global") {
        names.push("global".into());
    }
    if names.is_empty() {
        names.push("rb".into());
    }

    let needs_operator = names.iter().any(|c| c != "fundamental");
    let op = if needs_operator { Some(args.op.build()?) } else { None };

    let mut checks: Vec<(String, Report)> = Vec::new();
    for name in &names {
        let report = match name.as_str() {
            "rb" => {
                let op = op.as_ref().unwrap();
                if lambda.is_zero() {
                    check_rb_weight0(op, w, &opts)?
                } else {
                    check_rota_baxter(
                        |m| op.eval(m),
                        &GradedCoeff::standard(),
                        &lambda,
                        w,
                        &opts,
                    )?
                }
            }
            "global" => {
                let op = op.as_ref().unwrap();
                let table = op.to_finite_support().ok_or_else(|| {
                    Error::InvalidSpec(
                        "the global decision procedure needs a finite-support operator".into(),
                    )
                })?;
                check_rb_global_finite(&table, &opts)
            }
            "derivation-of-inverse" => {
                let op = op.as_ref().unwrap();
                let inv = inverse_on_window(op, w)?;
                check_derivation_of_inverse(&inv, w, &opts)?
            }
            "identities" => identity_suite(op.as_ref().unwrap(), w, &opts)?,
            "fundamental" => check_fundamental_identity(&GradedCoeff::standard(), w, &opts)?,
            other => {
                return Err(Error::InvalidSpec(format!(
                    "unknown check {other:?}; expected rb, global, derivation-of-inverse, identities, or fundamental"
                )))
            }
        };
        checks.push((name.clone(), report));
    }

    let passed = checks.iter().all(|(_, r)| r.passed);
    let body = match cli.format {
        Format::Json => json!({
            "passed": passed,
            "checks": checks
                .iter()
                .map(|(name, r)| json!({"name": name, "report": report_value(r)}))
                .collect::<Vec<_>>(),
        })
        .to_string(),
        Format::Text => {
            let mut lines = Vec::new();
            for (name, r) in &checks {
                lines.push(render_report_line(name, r));
            }
            lines.push(format!("overall: {}", if passed { "pass" } else { "FAIL" }));
            lines.join("\n")
        }
    };
    Ok(Outcome {
        exit: if passed { ExitCode::SUCCESS } else { ExitCode::from(1) },
        body,
    })
}

fn check_derivation_of_inverse(
    inv: &aomega::operators::InverseCoeff,
    w: Window,
    opts: &CheckOptions,
) -> Result<Report, Error> {
    aomega::alie::check_derivation(
        |m| inv.eval(m),
        &GradedCoeff::standard(),
        &Scalar::zero(),
        w,
        opts,
    )
}

fn render_report_line(name: &str, r: &Report) -> String {
    let mut line = format!(
        "{name}: {} ({} tuples",
        if r.passed { "pass" } else { "FAIL" },
        r.tuples_checked
    );
    if r.degenerate_skipped > 0 {
        line.push_str(&format!(", {} degenerate skipped", r.degenerate_skipped));
    }
    line.push(')');
    for cex in r.counterexamples.iter().take(4) {
        line.push_str(&format!(
            "\n  at {:?}: lhs = {}, rhs = {}",
            cex.tuple, cex.lhs, cex.rhs
        ));
    }
    line
}

fn cmd_classify(cli: &Cli, mode: &ClassifyCmd) -> Result<Outcome, Error> {
    let ClassifyCmd::Finite {
        range,
        max_size,
        values,
        pin,
        no_prune,
        budget,
        evidence,
    } = mode;
    let range: Window = range.parse()?;
    let evidence: Window = evidence.parse()?;
    let values: Vec<Rat> = values
        .split(',')
        .map(|v| v.trim().parse::<Rat>())
        .collect::<Result<_, _>>()?;
    let mut spec = SearchSpec::new(range, *max_size, values)?;
    spec.prune = !*no_prune;
    spec.budget = *budget;
    if let Some(pin) = pin {
        for (k, v) in parse_assignments(pin)? {
            spec = spec.pin(k, v);
        }
    }
    let solutions = enumerate_rb_finite(&spec)?;

    let mut rows = Vec::new();
    for table in &solutions {
        let op = HomogeneousOperator::finite(table.clone());
        let label = recognize(&op, evidence)?;
        let support: BTreeMap<String, String> = table
            .iter()
            .map(|(m, v)| (m.to_string(), v.to_string()))
            .collect();
        rows.push(json!({"support": support, "match": label.to_json()}));
    }
    let body = match cli.format {
        Format::Json => Value::Array(rows).to_string(),
        Format::Text => {
            let mut lines = vec![format!("{} solutions", solutions.len())];
            for row in &rows {
                lines.push(row.to_string());
            }
            lines.join("\n")
        }
    };
    Ok(Outcome {
        exit: ExitCode::SUCCESS,
        body,
    })
}

fn cmd_induce(cli: &Cli, args: &InduceArgs) -> Result<Outcome, Error> {
    let w: Window = args.window.parse()?;
    let opts = check_options(cli, args.skip_degenerate, false);
    let lambda = parse_lambda(&args.lambda)?;
    let op = args.op.build()?;

    let alg = build_table(&op, &lambda, w, &opts)?;
    let verification = verify_induced(&op, &lambda, w, &opts)?;

    let triples: Vec<Value> = alg
        .table
        .iter()
        .map(|(&(l, m, n), coeff)| {
            json!({
                "l": l,
                "m": m,
                "n": n,
                "coeff": coeff.to_string(),
                "out_index": l + m + n - 1,
            })
        })
        .collect();
    let passed = verification.passed();
    let body = match cli.format {
        Format::Json => json!({
            "triples": triples,
            "verified": {
                "fundamental": verification.fundamental.passed,
                "rota_baxter": verification.rota_baxter.passed,
            },
        })
        .to_string(),
        Format::Text => {
            let mut lines = vec![format!("{} nonzero triples on {w}", triples.len())];
            for t in &triples {
                lines.push(format!(
                    "  [L_{}, L_{}, L_{}] = {} L_{}",
                    t["l"], t["m"], t["n"], t["coeff"].as_str().unwrap(), t["out_index"]
                ));
            }
            lines.push(render_report_line("fundamental", &verification.fundamental));
            lines.push(render_report_line("rota_baxter", &verification.rota_baxter));
            lines.join("\n")
        }
    };
    Ok(Outcome {
        exit: if passed { ExitCode::SUCCESS } else { ExitCode::from(1) },
        body,
    })
}

fn cmd_report(cli: &Cli, args: &ReportArgs) -> Result<Outcome, Error> {
    let raw = if args.input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(&args.input)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", args.input)))?
    };
    let value: Value =
        serde_json::from_str(&raw).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;

    let (passed, lines) = summarize(&value)?;
    let body = match cli.format {
        Format::Json => json!({"passed": passed, "summary": lines}).to_string(),
        Format::Text => lines.join("\n"),
    };
    Ok(Outcome {
        exit: if passed { ExitCode::SUCCESS } else { ExitCode::from(1) },
        body,
    })
}

fn summarize(value: &Value) -> Result<(bool, Vec<String>), Error> {
    // verify output: {"passed": ..., "checks": [...]}
    if let (Some(passed), Some(checks)) = (
        value.get("passed").and_then(Value::as_bool),
        value.get("checks").and_then(Value::as_array),
    ) {
        let mut lines = Vec::new();
        for c in checks {
            let name = c["name"].as_str().unwrap_or("?");
            let r: Report = serde_json::from_value(c["report"].clone())
                .map_err(|e| Error::Parse(format!("malformed report: {e}")))?;
            lines.push(render_report_line(name, &r));
        }
        lines.push(format!("overall: {}", if passed { "pass" } else { "FAIL" }));
        return Ok((passed, lines));
    }
    // induce output: {"triples": [...], "verified": {...}}
    if let Some(verified) = value.get("verified") {
        let f = verified["fundamental"].as_bool().unwrap_or(false);
        let rb = verified["rota_baxter"].as_bool().unwrap_or(false);
        let n = value["triples"].as_array().map_or(0, Vec::len);
        let lines = vec![
            format!("induced table: {n} nonzero triples"),
            format!("fundamental: {}", if f { "pass" } else { "FAIL" }),
            format!("rota_baxter: {}", if rb { "pass" } else { "FAIL" }),
        ];
        return Ok((f && rb, lines));
    }
    // bare report
    if value.get("tuples_checked").is_some() {
        let r: Report = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("malformed report: {e}")))?;
        return Ok((r.passed, vec![render_report_line("check", &r)]));
    }
    Err(Error::Parse("unrecognized report document".into()))
}
