use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use skein_cli::jobs::JobError;
use skein_cli::{batch, run, JobRequest, Task};
use skein_core::hilbert::CurveKind;
use skein_core::identities::calibrated_framing_sign;
use skein_core::links::{CurveGerm, FRAMING_SIGN};
use skein_core::symmetric::Partition;

/// Exact colored HOMFLY polynomials of algebraic links, Hilbert-scheme series, and checks of
/// the identities between them.
#[derive(Parser, Debug)]
#[command(name = "skein", version)]
struct Args {
    /// Task to run; overrides the task in --input.
    #[arg(long, value_enum)]
    task: Option<Task>,
    /// JSON request (an object) or list of requests (an array).
    #[arg(long)]
    input: Option<PathBuf>,
    /// JSON array of requests, run as a batch.
    #[arg(long, conflicts_with = "input")]
    suite: Option<PathBuf>,
    /// Truncation orders, e.g. q=24,Q=4,lam=4,N=12.
    #[arg(long)]
    orders: Option<String>,
    /// Curve germ as inline JSON.
    #[arg(long)]
    curve: Option<String>,
    /// Germ class for Hilbert-scheme tasks: smooth, node, or P,Q for y^P = x^Q.
    #[arg(long)]
    kind: Option<String>,
    /// Partition, e.g. 2,1.
    #[arg(long)]
    mu: Option<String>,
    /// Component labels separated by ';', e.g. "2,1;1".
    #[arg(long)]
    labels: Option<String>,
    /// Write results here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Include wall time per job (output is then no longer reproducible).
    #[arg(long)]
    timing: bool,
}

fn read(path: &Path) -> Result<String, JobError> {
    fs::read_to_string(path).map_err(|e| JobError::input("input", format!("{}: {e}", path.display())))
}

fn parse_partition(path: &str, text: &str) -> Result<Partition, JobError> {
    let parts = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|p| p.parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| JobError::input(path, e.to_string()))?;
    Partition::new(&parts).map_err(|e| JobError::input(path, e.to_string()))
}

fn parse_kind(text: &str) -> Result<CurveKind, JobError> {
    match text.trim() {
        "smooth" => Ok(CurveKind::Smooth),
        "node" => Ok(CurveKind::Node),
        other => {
            let bad = || JobError::input("kind", format!("expected smooth, node or P,Q; got {other:?}"));
            let (p, q) = other.split_once(',').ok_or_else(bad)?;
            Ok(CurveKind::Unibranch {
                p: p.trim().parse().map_err(|_| bad())?,
                q: q.trim().parse().map_err(|_| bad())?,
            })
        }
    }
}

/// Reads the requests named on the command line; flags override fields of every request.
fn requests(args: &Args) -> Result<(Vec<JobRequest>, bool), JobError> {
    let (mut reqs, is_list) = match args.suite.as_ref().or(args.input.as_ref()) {
        Some(path) => {
            let text = read(path)?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| JobError::input("input", e.to_string()))?;
            let is_list = value.is_array() || args.suite.is_some();
            let reqs = if value.is_array() {
                serde_json::from_value(value)
            } else {
                serde_json::from_value(value).map(|r| vec![r])
            };
            (reqs.map_err(|e| JobError::input("input", e.to_string()))?, is_list)
        }
        None => {
            let task = args.task.ok_or_else(|| JobError::input("task", "give --task, --input or --suite"))?;
            (vec![JobRequest::new(task)], false)
        }
    };
    for r in &mut reqs {
        if let Some(t) = args.task {
            r.task = t;
        }
        if let Some(o) = &args.orders {
            r.orders = r.orders.with_overrides(o)?;
        }
        if let Some(c) = &args.curve {
            r.curve = Some(serde_json::from_str::<CurveGerm>(c).map_err(|e| JobError::input("curve", e.to_string()))?);
        }
        if let Some(k) = &args.kind {
            r.kind = Some(parse_kind(k)?);
        }
        if let Some(m) = &args.mu {
            r.mu = Some(parse_partition("mu", m)?);
        }
        if let Some(l) = &args.labels {
            r.labels = Some(l.split(';').map(|p| parse_partition("labels", p)).collect::<Result<_, _>>()?);
        }
    }
    Ok((reqs, is_list))
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())? + "\n";
    match output {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match calibrated_framing_sign() {
        Ok(s) if s == FRAMING_SIGN => {}
        other => {
            eprintln!("error: framing calibration disagrees with the built-in sign: {other:?}");
            return ExitCode::from(1);
        }
    }
    let (reqs, is_list) = match requests(&args) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            let _ = emit(&e, args.output.as_deref());
            return ExitCode::from(2);
        }
    };
    let (written, code) = if is_list {
        let summary = batch(&reqs, args.timing);
        let code = summary.exit_code();
        (emit(&summary, args.output.as_deref()), code)
    } else {
        let result = run(&reqs[0], args.timing);
        let code = if result.is_input_error() {
            2
        } else if result.passed() {
            0
        } else {
            1
        };
        (emit(&result, args.output.as_deref()), code)
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
