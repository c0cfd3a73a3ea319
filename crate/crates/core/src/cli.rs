//! Command-line front end: `table`, `verify`, `props` and `series`.
//!
//! Every command renders into a `String` so it can be driven from tests;
//! [`run`] does argument parsing and maps outcomes to exit codes
//! (0 success, 1 usage error, 2 verification failure).

use std::cmp::Ordering;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_core::{factorial, lah, recovered_closed_form, LahError, LahTable};
use crate::factorial_basis::{
    alternating_generating_series, exp_reciprocal_derivative, from_falling_basis, lah_generating_series,
    lah_sum_derivative_limit, rational_from_uint, rising_factorial, rising_in_falling_coefficients, BasisError,
    ExpSign, Rational,
};
use crate::integral_verify::{
    compare_params, verify_derivative_representation_with, verify_exp_representation_with, verify_gamma_integral_with,
    verify_hk_representation_with, verify_lah_sum_representation_with, verify_recovery_chain_with,
    verify_total_sum_integral_with, IdentityReport, Param, Params, QuadratureOptions, VerifyError,
};
use crate::sequence_props::{
    absolute_convexity_check, root_certificate, total_lah_sequence, ConvexityViolation, RootCertificate, SequenceError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

/// Largest `n_max` accepted by `table`.
pub const TABLE_CAP: usize = 500;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lah(#[from] LahError),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Lah(_) | CliError::Basis(_) | CliError::Sequence(_) => EXIT_USAGE,
            _ => EXIT_FAILED,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

/// Parameters of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub n_max: usize,
    pub tol: f64,
    pub grid_x: Vec<f64>,
    pub grid_z: Vec<f64>,
    pub grid_k: Vec<usize>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_max: 6,
            tol: 1e-8,
            grid_x: vec![0.25, 0.5, 1.0, 2.0],
            grid_z: vec![0.5, 1.0, 2.0, 10.0],
            grid_k: vec![0, 1, 2, 3],
            output_format: OutputFormat::Text,
            output_path: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0) {
            return Err(CliError::Usage(format!("tol must be > 0 (got {})", self.tol)));
        }
        if self.n_max == 0 {
            return Err(CliError::Usage("n_max must be >= 1".into()));
        }
        if let Some(x) = self.grid_x.iter().find(|x| !(**x > 0.0)) {
            return Err(CliError::Usage(format!("grid x values must be > 0 (got {x})")));
        }
        if let Some(z) = self.grid_z.iter().find(|z| !(**z > 0.0)) {
            return Err(CliError::Usage(format!("grid z values must be > 0 (got {z})")));
        }
        Ok(())
    }
}

/// A check done entirely in exact arithmetic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub check_id: String,
    pub parameters: Params,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CheckRecord {
    Integral(IdentityReport),
    Exact(ExactReport),
}

impl CheckRecord {
    pub fn id(&self) -> &str {
        match self {
            CheckRecord::Integral(r) => &r.identity_id,
            CheckRecord::Exact(r) => &r.check_id,
        }
    }

    pub fn parameters(&self) -> &Params {
        match self {
            CheckRecord::Integral(r) => &r.parameters,
            CheckRecord::Exact(r) => &r.parameters,
        }
    }

    pub fn passed(&self) -> bool {
        match self {
            CheckRecord::Integral(r) => r.passed,
            CheckRecord::Exact(r) => r.passed,
        }
    }

    fn order(&self, other: &Self) -> Ordering {
        self.id().cmp(other.id()).then_with(|| compare_params(self.parameters(), other.parameters()))
    }
}

/// Result of a verification run: every completed check plus the checks
/// that could not produce a report at all.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub records: Vec<CheckRecord>,
    pub hard_failures: Vec<VerifyError>,
}

impl VerifyOutcome {
    pub fn all_passed(&self) -> bool {
        self.hard_failures.is_empty() && self.records.iter().all(CheckRecord::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            EXIT_OK
        } else {
            EXIT_FAILED
        }
    }
}

fn p_int(v: usize) -> Param {
    Param::Int(v as i64)
}

fn params<const N: usize>(items: [(&str, Param); N]) -> Params {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

type IntegralJob = Box<dyn Fn(&QuadratureOptions) -> Result<IdentityReport, VerifyError> + Send + Sync>;

const RECOVERY_X: [f64; 3] = [0.0, 1.0, 3.0];
const RECOVERY_K_MAX: usize = 5;

fn integral_jobs(config: &SuiteConfig) -> Vec<IntegralJob> {
    let tol = config.tol;
    let ns = 1..=config.n_max;
    let mut jobs: Vec<IntegralJob> = Vec::new();
    for &z in &config.grid_z {
        jobs.push(Box::new(move |o| verify_exp_representation_with(z, tol, o)));
        for &k in &config.grid_k {
            jobs.push(Box::new(move |o| verify_hk_representation_with(k, z, tol, o)));
        }
    }
    for n in ns.clone() {
        for &x in &config.grid_x {
            jobs.push(Box::new(move |o| verify_derivative_representation_with(n, x, tol, o)));
            jobs.push(Box::new(move |o| verify_lah_sum_representation_with(n, x, tol, o)));
        }
        jobs.push(Box::new(move |o| verify_total_sum_integral_with(n, tol, o)));
        jobs.push(Box::new(move |o| verify_gamma_integral_with(n, tol, o)));
    }
    for k in 1..=config.n_max.min(RECOVERY_K_MAX) {
        for x in RECOVERY_X {
            jobs.push(Box::new(move |o| verify_recovery_chain_with(k, k, x, tol, o)));
        }
    }
    jobs
}

const BASIS_N_MAX: usize = 25;
const SERIES_K_MAX: usize = 10;
const SERIES_ORDER: usize = 30;
const DERIVATIVE_N_MAX: usize = 20;
const RECOVERY_SUM_MAX: usize = 30;

/// The exact-arithmetic part of the catalog. These ranges are fixed: they
/// are cheap and do not depend on the quadrature grid.
pub fn exact_checks(n_max: usize) -> Result<Vec<ExactReport>, CliError> {
    let mut out = Vec::new();
    for n in 1..=BASIS_N_MAX {
        let c = rising_in_falling_coefficients(n)?;
        let mut mismatches = Vec::new();
        for (k, ck) in c.iter().enumerate().skip(1) {
            if *ck != rational_from_uint(lah(n, k)?) {
                mismatches.push(k);
            }
        }
        if !c[0].is_zero() {
            mismatches.push(0);
        }
        let round_trip = from_falling_basis(&c) == rising_factorial(n);
        out.push(ExactReport {
            check_id: "basis_conversion".into(),
            parameters: params([("n", p_int(n))]),
            passed: mismatches.is_empty() && round_trip,
            detail: if mismatches.is_empty() && round_trip {
                format!("(x)_{n} = Σ L({n},k) <x>_k")
            } else {
                format!("mismatched k: {mismatches:?}, round trip: {round_trip}")
            },
        });
    }
    for k in 1..=SERIES_K_MAX {
        for (id, series, alternating) in [
            ("generating_series", lah_generating_series(k, SERIES_ORDER)?, false),
            ("alternating_series", alternating_generating_series(k, SERIES_ORDER)?, true),
        ] {
            let mut bad = Vec::new();
            for n in 0..=SERIES_ORDER {
                let expected = if n == 0 {
                    Rational::zero()
                } else {
                    let mut v = rational_from_uint(lah(n, k)?) / rational_from_uint(factorial(n));
                    if alternating && n % 2 == 1 {
                        v = -v;
                    }
                    v
                };
                if series.coeff(n) != expected {
                    bad.push(n);
                }
            }
            out.push(ExactReport {
                check_id: id.into(),
                parameters: params([("k", p_int(k)), ("order", p_int(SERIES_ORDER))]),
                passed: bad.is_empty(),
                detail: if bad.is_empty() {
                    "all coefficients match".into()
                } else {
                    format!("mismatch at n = {bad:?}")
                },
            });
        }
    }
    for n in 1..=DERIVATIVE_N_MAX {
        for sign in [ExpSign::Plus, ExpSign::Minus] {
            let ok = exp_reciprocal_derivative(n, sign).matches_lah_formula()?;
            out.push(ExactReport {
                check_id: "derivative_formula".into(),
                parameters: params([("n", p_int(n)), ("sign", Param::Int(sign.value()))]),
                passed: ok,
                detail: if ok { "recurrence matches Lah coefficients".into() } else { "coefficient mismatch".into() },
            });
        }
    }
    for n in 1..=n_max {
        let bad: Vec<usize> = (1..=n)
            .filter(|&m| lah_sum_derivative_limit(n, m).ok() != lah(n, m).ok().map(rational_from_uint))
            .collect();
        out.push(ExactReport {
            check_id: "limit_formula".into(),
            parameters: params([("n", p_int(n))]),
            passed: bad.is_empty(),
            detail: if bad.is_empty() {
                format!("m-th derivative at 0 over m! equals L({n},m) for m = 1..={n}")
            } else {
                format!("mismatch at m = {bad:?}")
            },
        });
    }
    let mut bad = Vec::new();
    for total in 1..=RECOVERY_SUM_MAX {
        for k in 1..=total {
            if recovered_closed_form(total - k, k)? != lah(total, k)? {
                bad.push((total - k, k));
            }
        }
    }
    out.push(ExactReport {
        check_id: "recovered_closed_form".into(),
        parameters: params([("sum_max", p_int(RECOVERY_SUM_MAX))]),
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "all (m, k) agree".into() } else { format!("mismatch at (m, k) = {bad:?}") },
    });
    Ok(out)
}

/// Runs the full identity catalog. Integral checks run in parallel; the
/// records come back sorted by id and then parameters.
pub fn cmd_verify(config: &SuiteConfig) -> Result<VerifyOutcome, CliError> {
    cmd_verify_with(config, &QuadratureOptions::default())
}

pub fn cmd_verify_with(config: &SuiteConfig, opts: &QuadratureOptions) -> Result<VerifyOutcome, CliError> {
    config.validate()?;
    let results: Vec<Result<IdentityReport, VerifyError>> =
        integral_jobs(config).par_iter().map(|job| job(opts)).collect();
    let mut records = Vec::with_capacity(results.len());
    let mut hard_failures = Vec::new();
    for r in results {
        match r {
            Ok(report) => records.push(CheckRecord::Integral(report)),
            Err(e) => hard_failures.push(e),
        }
    }
    records.extend(exact_checks(config.n_max)?.into_iter().map(CheckRecord::Exact));
    records.sort_by(CheckRecord::order);
    Ok(VerifyOutcome { records, hard_failures })
}

/// 17 significant digits.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_params(p: &Params) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub fn render_verify(outcome: &VerifyOutcome, format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(&outcome.records)? + "\n"),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "id",
                "parameters",
                "lhs",
                "rhs",
                "error_estimate",
                "truncation_point",
                "evaluations",
                "abs_error",
                "rel_error",
                "passed",
                "detail",
            ])?;
            for r in &outcome.records {
                match r {
                    CheckRecord::Integral(r) => w.write_record([
                        r.identity_id.clone(),
                        fmt_params(&r.parameters),
                        fmt_real(r.lhs),
                        fmt_real(r.rhs.value),
                        fmt_real(r.rhs.error_estimate),
                        fmt_real(r.rhs.truncation_point),
                        r.rhs.evaluations.to_string(),
                        fmt_real(r.abs_error),
                        fmt_real(r.rel_error),
                        r.passed.to_string(),
                        String::new(),
                    ])?,
                    CheckRecord::Exact(r) => w.write_record([
                        r.check_id.clone(),
                        fmt_params(&r.parameters),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        r.passed.to_string(),
                        r.detail.clone(),
                    ])?,
                }
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf8"))
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for r in &outcome.records {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                match r {
                    CheckRecord::Integral(r) => writeln!(
                        s,
                        "{status} {} [{}] lhs={} rhs={} err_est={} rel_err={:.3e} abs_err={:.3e}",
                        r.identity_id,
                        fmt_params(&r.parameters),
                        fmt_real(r.lhs),
                        fmt_real(r.rhs.value),
                        fmt_real(r.rhs.error_estimate),
                        r.rel_error,
                        r.abs_error
                    ),
                    CheckRecord::Exact(r) => {
                        writeln!(s, "{status} {} [{}] {}", r.check_id, fmt_params(&r.parameters), r.detail)
                    }
                }
                .expect("write to string");
            }
            let passed = outcome.records.iter().filter(|r| r.passed()).count();
            writeln!(
                s,
                "{passed}/{} checks passed, {} hard failures",
                outcome.records.len(),
                outcome.hard_failures.len()
            )
            .expect("write to string");
            Ok(s)
        }
    }
}

#[derive(Debug, Serialize)]
struct TableRow {
    n: usize,
    values: Vec<String>,
    total: String,
}

#[derive(Debug, Serialize)]
struct TableJson {
    rows: Vec<TableRow>,
    totals: Vec<String>,
}

/// The triangle `L(n,k)` for `1 <= k <= n <= n_max` with row totals.
///
/// CSV has columns `n,k,value`; each row's total follows its entries with
/// `k = total`. Big integers are decimal strings in JSON.
pub fn cmd_table(n_max: usize, format: OutputFormat) -> Result<String, CliError> {
    if n_max == 0 {
        return Err(CliError::Usage("n_max must be >= 1".into()));
    }
    if n_max > TABLE_CAP {
        return Err(CliError::Usage(format!("n_max = {n_max} exceeds the safety cap of {TABLE_CAP}")));
    }
    let table = LahTable::new(n_max)?;
    match format {
        OutputFormat::Json => {
            let rows: Vec<TableRow> = table
                .rows()
                .map(|(n, row)| TableRow {
                    n,
                    values: row.iter().map(|v| v.to_string()).collect(),
                    total: row.iter().sum::<num_bigint::BigUint>().to_string(),
                })
                .collect();
            let totals = rows.iter().map(|r| r.total.clone()).collect();
            Ok(serde_json::to_string_pretty(&TableJson { rows, totals })? + "\n")
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "k", "value"])?;
            for (n, row) in table.rows() {
                for (i, v) in row.iter().enumerate() {
                    w.write_record([n.to_string(), (i + 1).to_string(), v.to_string()])?;
                }
                let total: num_bigint::BigUint = row.iter().sum();
                w.write_record([n.to_string(), "total".to_string(), total.to_string()])?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf8"))
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for (n, row) in table.rows() {
                let total: num_bigint::BigUint = row.iter().sum();
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(s, "{n:>3}: {} | total {total}", cells.join(" ")).expect("write to string");
            }
            Ok(s)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PropsReport {
    pub n_max: usize,
    pub max_total: usize,
    pub violations: Vec<ConvexityViolation>,
    pub certificates: Vec<RootCertificate>,
}

impl PropsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.certificates.iter().all(|c| c.real_distinct_nonpositive())
    }

    pub fn summary(&self) -> String {
        let good = self.certificates.iter().filter(|c| c.real_distinct_nonpositive()).count();
        let violations =
            if self.violations.is_empty() { "none".to_string() } else { self.violations.len().to_string() };
        format!("violations: {violations}; certificates: {good}/{} real-distinct-nonpositive", self.certificates.len())
    }
}

/// Absolute convexity of the total Lah sums over `n + 2k <= max_total`
/// (the sequence holds `n <= n_max`) and root certificates for
/// `P_{m,1}`, `m <= m_max`.
pub fn cmd_props(n_max: usize, max_total: usize, m_max: usize) -> Result<PropsReport, CliError> {
    if n_max == 0 || max_total == 0 || m_max == 0 {
        return Err(CliError::Usage("n_max, max_total and m_max must be >= 1".into()));
    }
    let seq = total_lah_sequence(n_max)?;
    let violations = absolute_convexity_check(&seq, max_total);
    let certificates = (1..=m_max).into_par_iter().map(root_certificate).collect::<Result<Vec<_>, _>>()?;
    Ok(PropsReport { n_max, max_total, violations, certificates })
}

pub fn render_props(report: &PropsReport, format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "kind", "m_or_n", "k", "value", "degree", "zero", "negative", "positive", "distinct", "all_real",
            ])?;
            for v in &report.violations {
                w.write_record([
                    "violation".into(),
                    v.n.to_string(),
                    v.k.to_string(),
                    v.value.to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                ])?;
            }
            for c in &report.certificates {
                w.write_record([
                    "certificate".into(),
                    c.m.to_string(),
                    String::new(),
                    String::new(),
                    c.degree.to_string(),
                    c.root_count_zero.to_string(),
                    c.root_count_negative.to_string(),
                    c.root_count_positive.to_string(),
                    c.distinct.to_string(),
                    c.all_real.to_string(),
                ])?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf8"))
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for v in &report.violations {
                writeln!(s, "violation: Δ^{} at n = {}: {}", 2 * v.k, v.n, v.value).expect("write to string");
            }
            for c in &report.certificates {
                writeln!(
                    s,
                    "P_{{{},1}}: degree {}, zero {}, negative {}, positive {}, distinct {}, all real {}",
                    c.m,
                    c.degree,
                    c.root_count_zero,
                    c.root_count_negative,
                    c.root_count_positive,
                    c.distinct,
                    c.all_real
                )
                .expect("write to string");
            }
            writeln!(s, "{}", report.summary()).expect("write to string");
            Ok(s)
        }
    }
}

#[derive(Debug, Serialize)]
struct SeriesRow {
    n: usize,
    coefficient: String,
    scaled: String,
}

/// Coefficients of `(1/k!)(x/(1−x))^k` (or the alternating form) up to
/// `order`, together with `n!` times each coefficient.
pub fn cmd_series(k: usize, order: usize, alternating: bool, format: OutputFormat) -> Result<String, CliError> {
    let series = if alternating { alternating_generating_series(k, order)? } else { lah_generating_series(k, order)? };
    let rows: Vec<SeriesRow> = series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| SeriesRow {
            n,
            coefficient: c.to_string(),
            scaled: (c * rational_from_uint(factorial(n))).to_string(),
        })
        .collect();
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(&rows)? + "\n"),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "coefficient", "n_factorial_times_coefficient"])?;
            for r in &rows {
                w.write_record([r.n.to_string(), r.coefficient.clone(), r.scaled.clone()])?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf8"))
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for r in &rows {
                writeln!(s, "x^{}: {}  (n! * c = {})", r.n, r.coefficient, r.scaled).expect("write to string");
            }
            Ok(s)
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lah", version, about = "Lah numbers and machine-checked identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Lah triangle with row totals.
    Table {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the identity catalog.
    Verify {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_delimiter = ',')]
        grid_x: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        grid_z: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        grid_k: Option<Vec<usize>>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Convexity of the total sums and real-root certificates.
    Props {
        #[arg(long, default_value_t = 25)]
        n_max: usize,
        #[arg(long, default_value_t = 25)]
        max_total: usize,
        #[arg(long, default_value_t = 12)]
        m_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dump generating-function coefficients of one Lah column.
    Series {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        alternating: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn emit(output: &OutputArgs, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Table { n_max, output } => {
            emit(&output, &cmd_table(n_max, output.format)?, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Verify { n_max, tol, grid_x, grid_z, grid_k, output } => {
            let defaults = SuiteConfig::default();
            let config = SuiteConfig {
                n_max,
                tol,
                grid_x: grid_x.unwrap_or(defaults.grid_x),
                grid_z: grid_z.unwrap_or(defaults.grid_z),
                grid_k: grid_k.unwrap_or(defaults.grid_k),
                output_format: output.format,
                output_path: output.out.clone(),
            };
            let outcome = cmd_verify(&config)?;
            emit(&output, &render_verify(&outcome, output.format)?, stdout)?;
            for e in &outcome.hard_failures {
                writeln!(stderr, "hard failure: {e}")?;
            }
            for r in outcome.records.iter().filter(|r| !r.passed()) {
                writeln!(stderr, "failed: {} [{}]", r.id(), fmt_params(r.parameters()))?;
            }
            Ok(outcome.exit_code())
        }
        Command::Props { n_max, max_total, m_max, output } => {
            let report = cmd_props(n_max, max_total, m_max)?;
            emit(&output, &render_props(&report, output.format)?, stdout)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Series { k, order, alternating, output } => {
            emit(&output, &cmd_series(k, order, alternating, output.format)?, stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
