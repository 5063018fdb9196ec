//! Job requests and results: the JSON contract of the command-line front end.
//!
//! A request names a task, the curve or partition it applies to, and truncation orders.
//! Every number in a result is exact; polynomial coefficients are decimal strings.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use skein_core::coefficients::{LambdaScalar, LaurentPoly};
use skein_core::hilbert::{z_curve_coefficients, CurveKind};
use skein_core::identities::{
    blowup_term_match, homfly_hilbert_check, low_order_colored_check, skein_flop_check, vertex_flop_check, MatchReport,
    Monomial, Orders,
};
use skein_core::links::CurveGerm;
use skein_core::skein::AnnulusElement;
use skein_core::symmetric::Partition;
use skein_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Homfly,
    Colored,
    Zcurve,
    CheckFlop,
    CheckSkeinFlop,
    CheckBlowup,
    CheckTheorem1,
    CheckTheorem2Low,
}

/// Truncation orders: `q` bounds the `q = s²` degree, `Q` the Kähler degree, `lam` the
/// partition sizes summed over, `N` the Hilbert-scheme colength.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobOrders {
    #[serde(default = "default_q")]
    pub q: u32,
    #[serde(rename = "Q", default = "default_big_q")]
    pub big_q: u32,
    #[serde(default = "default_lam")]
    pub lam: u32,
    #[serde(rename = "N", default = "default_n")]
    pub n: u32,
}

fn default_q() -> u32 {
    24
}
fn default_big_q() -> u32 {
    4
}
fn default_lam() -> u32 {
    4
}
fn default_n() -> u32 {
    12
}

impl Default for JobOrders {
    fn default() -> Self {
        Self { q: default_q(), big_q: default_big_q(), lam: default_lam(), n: default_n() }
    }
}

impl JobOrders {
    /// Applies `key=value` pairs such as `q=24,Q=4,lam=4,N=12` on top of `self`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, JobError> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| JobError::input("orders", format!("expected key=value, got {item:?}")))?;
            let value: u32 = value.trim().parse().map_err(|_| {
                JobError::input(format!("orders.{key}"), format!("not a non-negative integer: {value:?}"))
            })?;
            match key.trim() {
                "q" => self.q = value,
                "Q" => self.big_q = value,
                "lam" => self.lam = value,
                "N" => self.n = value,
                other => return Err(JobError::input("orders", format!("unknown order {other:?}"))),
            }
        }
        Ok(self)
    }
}

impl FromStr for JobOrders {
    type Err = JobError;
    fn from_str(s: &str) -> Result<Self, JobError> {
        JobOrders::default().with_overrides(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobRequest {
    pub task: Task,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveGerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<CurveKind>,
    /// Labels for every component, replacing those inside `curve`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Partition>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Partition>,
    #[serde(default)]
    pub orders: JobOrders,
}

impl JobRequest {
    pub fn new(task: Task) -> Self {
        Self { task, curve: None, kind: None, labels: None, mu: None, orders: JobOrders::default() }
    }

    fn germ(&self) -> Result<CurveGerm, JobError> {
        let germ = self.curve.clone().ok_or_else(|| JobError::input("curve", "required for this task"))?;
        match &self.labels {
            Some(l) => germ.with_labels(l.clone()).map_err(|e| JobError::from_core("labels", e)),
            None => Ok(germ),
        }
    }

    fn kind(&self) -> Result<CurveKind, JobError> {
        self.kind.ok_or_else(|| JobError::input("kind", "required for this task"))
    }

    fn mu(&self) -> Result<Partition, JobError> {
        self.mu.clone().ok_or_else(|| JobError::input("mu", "required for this task"))
    }

    /// Checks that the fields the task needs are present and the orders are positive.
    pub fn validate(&self) -> Result<(), JobError> {
        let o = &self.orders;
        for (name, v) in [("q", o.q), ("Q", o.big_q), ("lam", o.lam), ("N", o.n)] {
            if v == 0 {
                return Err(JobError::input(format!("orders.{name}"), "must be positive"));
            }
        }
        match self.task {
            Task::Homfly | Task::Colored | Task::CheckBlowup => self.germ().map(drop),
            Task::Zcurve | Task::CheckTheorem1 => self.kind().map(drop),
            Task::CheckTheorem2Low => {
                self.kind()?;
                match &self.labels {
                    Some(l) if !l.is_empty() => Ok(()),
                    _ => Err(JobError::input("labels", "required for this task")),
                }
            }
            Task::CheckFlop => self.mu().map(drop),
            Task::CheckSkeinFlop => match (&self.mu, &self.curve) {
                (Some(_), None) => Ok(()),
                (None, Some(_)) => self.germ().map(drop),
                _ => Err(JobError::input("mu", "give exactly one of mu and curve")),
            },
        }
    }
}

/// One term `coeff · v^v s^s` of a numerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub v: i32,
    pub s: i32,
    pub coeff: String,
}

/// `Σ terms / ∏_r (s^r − s^{−r})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    pub terms: Vec<Term>,
    pub denominator: Vec<u32>,
}

impl Polynomial {
    fn from_laurent(p: &LaurentPoly, denominator: Vec<u32>) -> Self {
        let terms = p.terms().map(|(&(v, s), c)| Term { v, s, coeff: c.to_string() }).collect();
        Self { terms, denominator }
    }

    fn from_scalar(x: &LambdaScalar) -> Self {
        Self::from_laurent(x.numerator(), x.denominator())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportOutput {
    pub check: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_shift: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_shift: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Monomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<String>,
    pub orders: Orders,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl From<MatchReport> for ReportOutput {
    fn from(r: MatchReport) -> Self {
        Self {
            check: r.check,
            status: if r.passed { Status::Pass } else { Status::Fail },
            sign: r.fitted.map(|m| m.sign),
            v_shift: r.fitted.map(|m| m.v_exponent),
            s_shift: r.fitted.map(|m| m.s_exponent),
            expected: r.expected,
            first_mismatch: r.mismatch,
            orders: r.orders,
            notes: r.notes,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    /// The request itself is malformed or outside the supported inputs.
    Input,
    /// A computation failed an internal consistency check.
    Computation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobError {
    pub kind: ErrorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub message: String,
}

impl JobError {
    pub fn input(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Input, path: Some(path.into()), message: message.into() }
    }

    fn from_core(path: &str, e: Error) -> Self {
        let kind = match e {
            Error::InvalidPartition(_)
            | Error::InvalidGerm(_)
            | Error::Inseparable(_)
            | Error::BlowupPrecondition(_)
            | Error::UnsupportedKind(_)
            | Error::NotHomogeneous(_)
            | Error::Validation { .. } => ErrorKind::Input,
            _ => ErrorKind::Computation,
        };
        let path = match &e {
            Error::Validation { path, .. } => path.clone(),
            _ => path.to_string(),
        };
        Self { kind, path: Some(path), message: e.to_string() }
    }
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.path {
            Some(p) => write!(f, "{p}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for JobError {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Outcome {
    Polynomial(Polynomial),
    Report(ReportOutput),
    Error(JobError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobResult {
    pub task: Task,
    pub outcome: Outcome,
    /// Wall time, present only when timing was requested so that output stays reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl JobResult {
    pub fn passed(&self) -> bool {
        match &self.outcome {
            Outcome::Polynomial(_) => true,
            Outcome::Report(r) => r.status == Status::Pass,
            Outcome::Error(_) => false,
        }
    }

    pub fn is_input_error(&self) -> bool {
        matches!(&self.outcome, Outcome::Error(e) if e.kind == ErrorKind::Input)
    }
}

fn compute(req: &JobRequest) -> Result<Outcome, JobError> {
    req.validate()?;
    let o = req.orders;
    let core = |path: &'static str| move |e: Error| JobError::from_core(path, e);
    let report = |r: MatchReport| Ok(Outcome::Report(r.into()));
    match req.task {
        Task::Homfly => {
            let p = req.germ()?.homfly_p().map_err(core("curve"))?;
            Ok(Outcome::Polynomial(Polynomial::from_scalar(&p)))
        }
        Task::Colored => {
            let w = req.germ()?.colored_w().map_err(core("curve"))?;
            Ok(Outcome::Polynomial(Polynomial::from_scalar(&w)))
        }
        Task::Zcurve => {
            let coeffs = z_curve_coefficients(req.kind()?, o.n).map_err(core("kind"))?;
            let mut z = LaurentPoly::zero();
            for (n, c) in coeffs.iter().enumerate() {
                z = &z + &c.shift(0, 2 * n as i32);
            }
            Ok(Outcome::Polynomial(Polynomial::from_laurent(&z, Vec::new())))
        }
        Task::CheckFlop => report(vertex_flop_check(&req.mu()?, o.q, o.big_q, o.lam).map_err(core("orders"))?),
        Task::CheckSkeinFlop => {
            let x = match &req.mu {
                Some(mu) => AnnulusElement::basis(mu.clone()),
                None => req.germ()?.annulus_element().map_err(core("curve"))?,
            };
            report(skein_flop_check(&x, o.q, o.big_q, o.lam).map_err(core("orders"))?)
        }
        Task::CheckBlowup => report(blowup_term_match(&req.germ()?, o.lam).map_err(core("curve"))?),
        Task::CheckTheorem1 => report(homfly_hilbert_check(req.kind()?, o.n).map_err(core("kind"))?),
        Task::CheckTheorem2Low => {
            let labels = req.labels.clone().unwrap_or_default();
            report(low_order_colored_check(req.kind()?, &labels, o.n).map_err(core("labels"))?)
        }
    }
}

/// Runs one request. Errors are captured in the result rather than returned.
pub fn run(req: &JobRequest, timing: bool) -> JobResult {
    let start = Instant::now();
    let outcome = compute(req).unwrap_or_else(Outcome::Error);
    JobResult { task: req.task, outcome, elapsed_ms: timing.then(|| start.elapsed().as_millis() as u64) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub input_errors: usize,
    pub results: Vec<JobResult>,
}

impl BatchSummary {
    /// 0 when everything passed, 2 when any request was malformed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.input_errors > 0 {
            2
        } else if self.failed > 0 {
            1
        } else {
            0
        }
    }
}

/// Runs requests in parallel; results keep request order.
pub fn batch(requests: &[JobRequest], timing: bool) -> BatchSummary {
    summarize(requests.par_iter().map(|r| run(r, timing)).collect())
}

pub fn summarize(results: Vec<JobResult>) -> BatchSummary {
    let passed = results.iter().filter(|r| r.passed()).count();
    let input_errors = results.iter().filter(|r| r.is_input_error()).count();
    BatchSummary { total: results.len(), passed, failed: results.len() - passed - input_errors, input_errors, results }
}
