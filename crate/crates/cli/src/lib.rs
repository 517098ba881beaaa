//! Argument handling and output records for the `chernwork` binary.

use std::ffi::OsString;
use std::fmt::Write as _;

use chernwork::acceptance;
use chernwork::applications::{
    classical_genera, parity_certificate, projective_fixture_with_limits, rpp_obstruction_report,
    signature_mod4_check, theorem3_search, FixtureSpec,
};
use chernwork::genus::{evaluate_genus, genus_h_lambda_with_limit, GenusSpec, DEFAULT_KERNEL_ORDER};
use chernwork::hattori_stong::{b_polynomial_general, b_polynomial_with_limit, IntegralityChecker};
use chernwork::rational::{from_text, is_integer, to_text};
use chernwork::{ChernVector, Error, IntegerPartition, Limits, PowerSeries, TPolynomial, DEFAULT_DIMENSION_LIMIT};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "chernwork", version, about = "Exact Hattori-Stong coefficients, genera and Chern-number checks")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Largest complex dimension accepted by checks, fixtures and searches.
    #[arg(long, env = "CHERNWORK_DIM_LIMIT", default_value_t = DEFAULT_DIMENSION_LIMIT, global = true)]
    pub dim_limit: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenusKind {
    Signature,
    Todd,
    Custom,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficient b^(k)_λ of c_λ in ch(γ^k); all k when --k is omitted.
    CoeffB {
        #[arg(long, value_parser = parse_partition)]
        partition: IntegerPartition,
        #[arg(long)]
        k: Option<u32>,
    },
    /// The same coefficient for an arbitrary monic Q.
    CoeffBGeneral {
        /// Coefficients of Q starting with the constant term, e.g. "1,1,0,1".
        #[arg(long)]
        q_coeffs: String,
        #[arg(long, value_parser = parse_partition)]
        partition: IntegerPartition,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Coefficient h_λ of c_λ in a genus.
    CoeffH {
        #[arg(long, value_enum)]
        genus: GenusKind,
        #[arg(long)]
        q_coeffs: Option<String>,
        #[arg(long, value_parser = parse_partition)]
        partition: IntegerPartition,
    },
    /// Evaluate a genus on a Chern vector.
    GenusEval {
        #[arg(long, value_enum)]
        genus: GenusKind,
        #[arg(long)]
        q_coeffs: Option<String>,
        /// Complex dimension.
        #[arg(long)]
        dim: u32,
        /// Chern numbers as "(1,1)=9,(2)=3".
        #[arg(long)]
        chern: String,
    },
    /// Run every integrality condition on a Chern vector.
    Check {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        chern: String,
    },
    /// Signature parity certificate.
    Parity {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        chern: String,
    },
    /// Realizable vectors supported on c_2k and c_i c_{2k-i}, with their signatures.
    SearchThm3 {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        bound: u64,
        /// Worker threads; the output does not depend on it.
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
    /// Odd-signature obstruction in real dimension 4k.
    RppReport {
        /// Real dimension, a multiple of 4 and at least 8.
        #[arg(long)]
        dim: u32,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
    /// Chern numbers of a product of complex projective spaces.
    Fixture {
        /// Complex dimensions of the factors, e.g. "2,1".
        #[arg(long)]
        factors: String,
    },
    /// Replay the acceptance suite.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn parse_partition(s: &str) -> Result<IntegerPartition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorPayload {
    pub kind: String,
    pub message: String,
}

/// Exactly one of these is written to standard output per invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorPayload>,
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::LimitExceeded { .. } => "limit-exceeded",
        Error::BeyondOrder { .. } => "beyond-order",
        Error::NotInvertible => "not-invertible",
        Error::NotNilpotent => "not-nilpotent",
        Error::NotMonic => "not-monic",
        Error::NotSymmetric => "not-symmetric",
        Error::TooFewVariables { .. } => "too-few-variables",
        Error::WrongWeight { .. } => "wrong-weight",
        Error::NotRealizable => "not-realizable",
        Error::InvalidArgument(_) => "invalid-argument",
        Error::Parse(_) => "parse",
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        _ => 1,
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_q(s: &str, order: usize) -> Result<PowerSeries, Error> {
    let coeffs = s.split(',').map(|c| from_text(c.trim())).collect::<Result<Vec<_>, _>>()?;
    if coeffs.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    let q = PowerSeries::polynomial(&coeffs, order.max(coeffs.len() - 1));
    if !q.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(q)
}

fn genus_spec(kind: GenusKind, q_coeffs: Option<&str>, order: usize) -> Result<GenusSpec, Error> {
    match (kind, q_coeffs) {
        (GenusKind::Signature, _) => Ok(GenusSpec::signature()),
        (GenusKind::Todd, _) => Ok(GenusSpec::todd()),
        (GenusKind::Custom, Some(q)) => GenusSpec::custom("custom", parse_q(q, order.max(DEFAULT_KERNEL_ORDER))?),
        (GenusKind::Custom, None) => Err(Error::Parse("--genus custom needs --q-coeffs".into())),
    }
}

fn genus_name(kind: GenusKind) -> &'static str {
    match kind {
        GenusKind::Signature => "signature",
        GenusKind::Todd => "todd",
        GenusKind::Custom => "custom",
    }
}

fn b_result(poly: &TPolynomial, weight: u32, k: Option<u32>) -> Result<Value, Error> {
    match k {
        Some(0) => Err(Error::InvalidArgument("k must be positive".into())),
        Some(k) => Ok(json!({ "value": to_text(&poly.coefficient(k)) })),
        None => {
            let coefficients: serde_json::Map<String, Value> =
                (1..=weight).map(|k| (k.to_string(), Value::String(to_text(&poly.coefficient(k))))).collect();
            Ok(json!({ "polynomial": poly.to_string(), "coefficients": coefficients }))
        }
    }
}

/// Name, echoed inputs and the payload of one command. `--jobs` is not echoed, so
/// output does not depend on the worker count.
fn execute(cli: &Cli) -> (&'static str, Value, Result<(Value, bool), Error>) {
    let limits = Limits::with_dimension(cli.dim_limit);
    let checker = IntegralityChecker::new(limits);
    let ok = |v: Value| Ok((v, true));
    match &cli.command {
        Command::CoeffB { partition, k } => {
            let inputs = json!({ "partition": partition, "k": k });
            let r = b_polynomial_with_limit(partition, limits.set_partition)
                .and_then(|poly| b_result(&poly, partition.weight(), *k))
                .and_then(ok);
            ("coeff-b", inputs, r)
        }
        Command::CoeffBGeneral { q_coeffs, partition, k } => {
            let inputs = json!({ "q_coeffs": q_coeffs, "partition": partition, "k": k });
            let r = parse_q(q_coeffs, partition.weight() as usize)
                .and_then(|q| b_polynomial_general(&q, partition))
                .and_then(|poly| b_result(&poly, partition.weight(), *k))
                .and_then(ok);
            ("coeff-b-general", inputs, r)
        }
        Command::CoeffH { genus, q_coeffs, partition } => {
            let inputs = json!({ "genus": genus_name(*genus), "q_coeffs": q_coeffs, "partition": partition });
            let r = genus_spec(*genus, q_coeffs.as_deref(), partition.weight() as usize)
                .and_then(|g| genus_h_lambda_with_limit(&g, partition, limits.set_partition))
                .and_then(|h| ok(json!({ "value": to_text(&h) })));
            ("coeff-h", inputs, r)
        }
        Command::GenusEval { genus, q_coeffs, dim, chern } => {
            let inputs = json!({ "genus": genus_name(*genus), "q_coeffs": q_coeffs, "dim": dim, "chern": chern });
            let r = (|| {
                let v = ChernVector::parse(*dim, chern)?;
                let g = genus_spec(*genus, q_coeffs.as_deref(), *dim as usize)?;
                let value = evaluate_genus(&g, &v)?;
                ok(json!({ "value": to_text(&value), "integral": is_integer(&value) }))
            })();
            ("genus-eval", inputs, r)
        }
        Command::Check { dim, chern } => {
            let inputs = json!({ "dim": dim, "chern": chern });
            let r = (|| {
                let v = ChernVector::parse(*dim, chern)?;
                let report = checker.check_realizable(&v)?;
                let mut out = to_value(&report);
                if report.realizable && dim % 2 == 0 && *dim > 0 {
                    out["signature_mod4"] = to_value(&signature_mod4_check(&checker, &v)?);
                }
                ok(out)
            })();
            ("check", inputs, r)
        }
        Command::Parity { dim, chern } => {
            let inputs = json!({ "dim": dim, "chern": chern });
            let r = ChernVector::parse(*dim, chern)
                .and_then(|v| parity_certificate(&v))
                .and_then(|c| ok(to_value(&c)));
            ("parity", inputs, r)
        }
        Command::SearchThm3 { k, i, bound, jobs } => {
            let inputs = json!({ "k": k, "i": i, "bound": bound });
            let r = theorem3_search(&checker, *k, *i, *bound, *jobs).and_then(|rep| ok(to_value(&rep)));
            ("search-thm3", inputs, r)
        }
        Command::RppReport { dim, bound, jobs } => {
            let inputs = json!({ "dim": dim, "bound": bound });
            let r = rpp_obstruction_report(&checker, *dim, *bound, *jobs).and_then(|rep| ok(to_value(&rep)));
            ("rpp-report", inputs, r)
        }
        Command::Fixture { factors } => {
            let inputs = json!({ "factors": factors });
            let r = (|| {
                let fs = factors
                    .split(',')
                    .map(|f| f.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad factor list {factors:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let v = projective_fixture_with_limits(&FixtureSpec::new(fs)?, &limits)?;
                let genera: serde_json::Map<String, Value> = classical_genera(&v)?
                    .into_iter()
                    .map(|(k, q)| (k.to_string(), Value::String(to_text(&q))))
                    .collect();
                let realizable = checker.check_realizable(&v)?.realizable;
                ok(json!({ "dim": v.dim(), "chern": v.to_string(), "vector": v, "genera": genera, "realizable": realizable }))
            })();
            ("fixture", inputs, r)
        }
        Command::Selftest { only } => {
            let inputs = json!({ "only": only });
            let results: Vec<_> = if only.is_empty() {
                acceptance::run_all()
            } else {
                match only.iter().map(|&id| acceptance::run(id).ok_or(id)).collect::<Result<Vec<_>, _>>() {
                    Ok(r) => r,
                    Err(id) => return ("selftest", inputs, Err(Error::Parse(format!("no criterion {id}")))),
                }
            };
            let passed = results.iter().all(|r| r.passed);
            let out = json!({ "passed": passed, "criteria": results });
            ("selftest", inputs, Ok((out, passed)))
        }
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => m.iter().for_each(|(k, x)| flatten(&join(k), x, rows)),
        Value::Array(a) if !a.is_empty() => a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, rows)),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn render_table(rec: &OutputRecord) -> String {
    let mut rows = vec![("command".to_string(), rec.command.clone())];
    flatten("inputs", &rec.inputs, &mut rows);
    if let Some(r) = &rec.result {
        flatten("result", r, &mut rows);
    }
    if let Some(e) = &rec.error {
        rows.push(("error.kind".into(), e.kind.clone()));
        rows.push(("error.message".into(), e.message.clone()));
    }
    let width = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (command, inputs, result) = execute(&cli);
    let (record, code, stderr) = match result {
        Ok((value, passed)) => (
            OutputRecord { command: command.into(), inputs, result: Some(value), error: None },
            if passed { 0 } else { 1 },
            String::new(),
        ),
        Err(e) => (
            OutputRecord {
                command: command.into(),
                inputs,
                result: None,
                error: Some(ErrorPayload { kind: error_kind(&e).into(), message: e.to_string() }),
            },
            exit_code(&e),
            format!("chernwork {command}: {e}\n"),
        ),
    };
    let stdout = match cli.format {
        Format::Json => serde_json::to_string_pretty(&record).expect("serializable") + "\n",
        Format::Table => render_table(&record),
    };
    Outcome { code, stdout, stderr }
}
