//! Command line front end.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 invalid input, 3 resource cap.

pub mod output;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::circulant::{
    bc_relation_check, cramer_ratio_check_cached, hn_determinant_report, hn_target,
    lemma_column_substitution_check,
};
use crate::error::{Error, Result};
use crate::loops::LoopModel;
use crate::oracle::{
    count_escaping, count_loops, count_restricted, count_simple_loops, OracleBudget, PathCountTable,
};
use crate::periodic::{hn_set, parse_residues, PeriodicSet};
use crate::series::{rat, TruncatedSeries};
use crate::system::{solve_restricted, SolutionCache};

use output::{coefficients, series_csv, MultisectionSpec, SeriesDocument};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "lattice-gf", version, about = "Exact generating functions of directed lattice paths avoiding periodic points on the time axis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the restricted-path system and print the coefficients of P^r.
    Gf(GfArgs),
    /// Brute-force path counts by dynamic programming.
    Oracle(OracleArgs),
    /// Compare P^0 against the brute-force counts coefficient by coefficient.
    Compare(CompareArgs),
    /// Check the Hajnal–Nagy identity and its determinant chain for k = 1..k_max.
    VerifyHn(VerifyHnArgs),
    /// Check the circulant identities for one dimension and k = 1..k_max.
    VerifyCirculant(VerifyCirculantArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SetArgs {
    /// Space dimension d.
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Admissible residues, comma separated; must start at 0.
    #[arg(long, default_value = "0")]
    pub residues: String,
    /// Period t_A of the admissible set.
    #[arg(long, default_value_t = 2)]
    pub period: usize,
}

impl SetArgs {
    fn periodic_set(&self) -> Result<PeriodicSet> {
        let residues = parse_residues(&self.residues).map_err(Error::Shape)?;
        Ok(PeriodicSet::new(residues, self.period)?)
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GfArgs {
    #[command(flatten)]
    pub set: SetArgs,
    /// Truncation order N (coefficients t^0..t^{N-1}).
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    /// Starting residue r of P^r.
    #[arg(long, default_value_t = 0)]
    pub residue: usize,
    /// Emit only the multisection `q,r`.
    #[arg(long)]
    pub multisection: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    Restricted,
    Loops,
    SimpleLoops,
    Escaping,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub set: SetArgs,
    /// Number of half-lengths to count (k = 0..order-1).
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = OracleKind::Restricted)]
    pub kind: OracleKind,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyHnArgs {
    #[arg(long, default_value_t = 3)]
    pub k_max: usize,
    #[arg(long, default_value_t = 20)]
    pub order: usize,
    /// Add 1 to this coefficient of the solved series before comparing
    /// (negative control).
    #[arg(long, hide = true)]
    pub corrupt_index: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyCirculantArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 3)]
    pub k_max: usize,
    #[arg(long, default_value_t = 20)]
    pub order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Resource(_) | Error::DimensionTooLarge { .. } => EXIT_RESOURCE,
        Error::Inconsistent(_) | Error::Singular(_) => EXIT_FAIL,
        _ => EXIT_INVALID,
    }
}

/// Runs a parsed command, writing its document to the requested sink.
/// Returns the exit code.
pub fn run(cli: &Cli) -> Result<u8> {
    let (body, code, summary) = match &cli.command {
        Command::Gf(a) => (gf(a)?, EXIT_PASS, None),
        Command::Oracle(a) => (oracle(a)?, EXIT_PASS, None),
        Command::Compare(a) => {
            let report = compare(&a.set, a.order, &OracleBudget::from_env()?)?;
            let summary = format!("compare d={} {}: {}", report.dim, report.set, report.status());
            (render_compare(&report, a.output.format)?, report.code(), Some(summary))
        }
        Command::VerifyHn(a) => {
            let report = verify_hn(a.k_max, a.order, a.corrupt_index)?;
            let summary = format!("verify-hn k_max={} order={}: {}", a.k_max, a.order, report.status());
            (render_checks(&report, a.output.format)?, report.code(), Some(summary))
        }
        Command::VerifyCirculant(a) => {
            let report = verify_circulant(a.dim, a.k_max, a.order)?;
            let summary = format!("verify-circulant d={} k_max={}: {}", a.dim, a.k_max, report.status());
            (render_checks(&report, a.output.format)?, report.code(), Some(summary))
        }
    };
    let out = match &cli.command {
        Command::Gf(a) => &a.output,
        Command::Oracle(a) => &a.output,
        Command::Compare(a) => &a.output,
        Command::VerifyHn(a) => &a.output,
        Command::VerifyCirculant(a) => &a.output,
    };
    write_output(out, &body).map_err(|e| Error::Resource(format!("cannot write output: {e}")))?;
    if let Some(s) = summary {
        eprintln!("{s}");
    }
    Ok(code)
}

fn write_output(out: &OutputArgs, body: &str) -> io::Result<()> {
    match &out.out {
        Some(path) => File::create(path)?.write_all(body.as_bytes()),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Inconsistent(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn parse_multisection(spec: &str) -> Result<MultisectionSpec> {
    let (q, r) = spec
        .split_once(',')
        .ok_or_else(|| Error::Shape(format!("--multisection expects q,r, got {spec:?}")))?;
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| Error::Shape(format!("bad number {v:?}: {e}")));
    let (modulus, residue) = (parse(q)?, parse(r)?);
    if modulus == 0 || residue >= modulus {
        return Err(Error::ResidueOutOfRange { residue, modulus });
    }
    Ok(MultisectionSpec { modulus, residue })
}

/// `gf`: the series document for `P^r`, optionally multisected.
pub fn gf_document(set: &PeriodicSet, dim: usize, order: usize, start: usize, multisection: Option<MultisectionSpec>) -> Result<SeriesDocument> {
    let solution = solve_restricted(dim, set, order)?;
    let mut series = solution.for_residue(start)?.clone();
    if let Some(m) = multisection {
        series = series.multisection(m.modulus, m.residue)?;
    }
    Ok(SeriesDocument {
        dim,
        residues: set.residues().to_vec(),
        period: set.period(),
        order,
        start,
        multisection,
        coefficients: coefficients(&series),
    })
}

fn gf(a: &GfArgs) -> Result<String> {
    let set = a.set.periodic_set()?;
    LoopModel::new(a.set.dim, a.order)?;
    let multisection = a.multisection.as_deref().map(parse_multisection).transpose()?;
    let doc = gf_document(&set, a.set.dim, a.order, a.residue, multisection)?;
    match a.output.format {
        Format::Json => to_json(&doc),
        Format::Csv => Ok(series_csv(&doc.series()?)),
    }
}

#[derive(Debug, Serialize)]
struct OracleDocument {
    dim: usize,
    kind: OracleKind,
    residues: Option<Vec<usize>>,
    period: Option<usize>,
    counts: Vec<String>,
}

fn oracle_table(kind: OracleKind, dim: usize, set: &PeriodicSet, order: usize, budget: &OracleBudget) -> Result<PathCountTable> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let k = order - 1;
    match kind {
        OracleKind::Restricted => count_restricted(dim, set, k, budget),
        OracleKind::Loops => count_loops(dim, k, budget),
        OracleKind::SimpleLoops => count_simple_loops(dim, k, budget),
        OracleKind::Escaping => count_escaping(dim, k, budget),
    }
}

fn oracle(a: &OracleArgs) -> Result<String> {
    let set = a.set.periodic_set()?;
    let table = oracle_table(a.kind, a.set.dim, &set, a.order, &OracleBudget::from_env()?)?;
    match a.output.format {
        Format::Json => to_json(&OracleDocument {
            dim: table.dim,
            kind: a.kind,
            residues: table.restriction.as_ref().map(|s| s.residues().to_vec()),
            period: table.restriction.as_ref().map(PeriodicSet::period),
            counts: table.counts().iter().map(ToString::to_string).collect(),
        }),
        Format::Csv => {
            let mut out = String::from("k,length,count\n");
            for (k, c) in table.counts().iter().enumerate() {
                out.push_str(&format!("{k},{},{c}\n", 2 * k));
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareRow {
    pub k: usize,
    pub gf: String,
    pub oracle: String,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub dim: usize,
    #[serde(skip)]
    pub set: PeriodicSet,
    pub residues: Vec<usize>,
    pub period: usize,
    pub rows: Vec<CompareRow>,
    pub passed: bool,
}

impl CompareReport {
    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    fn code(&self) -> u8 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

/// Solves for `P^0` and compares with the DP counts for `k < order`.
pub fn compare(set_args: &SetArgs, order: usize, budget: &OracleBudget) -> Result<CompareReport> {
    let set = set_args.periodic_set()?;
    let dim = set_args.dim;
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    budget.check(dim, order - 1)?;
    let counts = count_restricted(dim, &set, order - 1, budget)?;
    let p0 = solve_restricted(dim, &set, order)?.series[0].clone();
    let rows: Vec<CompareRow> = p0
        .coeffs()
        .iter()
        .zip(counts.counts())
        .enumerate()
        .map(|(k, (g, c))| CompareRow {
            k,
            gf: g.to_string(),
            oracle: c.to_string(),
            equal: g.is_integer() && g.to_integer() == BigInt::from(c.clone()),
        })
        .collect();
    let passed = rows.iter().all(|r| r.equal);
    Ok(CompareReport {
        dim,
        residues: set.residues().to_vec(),
        period: set.period(),
        set,
        rows,
        passed,
    })
}

fn render_compare(report: &CompareReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut out = String::from("k,length,gf,oracle,equal\n");
            for r in &report.rows {
                out.push_str(&format!("{},{},{},{},{}\n", r.k, 2 * r.k, r.gf, r.oracle, r.equal));
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub k: usize,
    pub check: String,
    pub passed: bool,
    /// First coefficient index where the two sides differ, when applicable.
    pub first_mismatch: Option<usize>,
}

impl CheckResult {
    fn new(k: usize, check: &str, passed: bool) -> Self {
        Self {
            k,
            check: check.to_string(),
            passed,
            first_mismatch: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl CheckReport {
    fn from_checks(checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self { checks, passed }
    }

    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    fn code(&self) -> u8 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

fn render_checks(report: &CheckReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut out = String::from("k,check,passed,first_mismatch\n");
            for c in &report.checks {
                let idx = c.first_mismatch.map(|i| i.to_string()).unwrap_or_default();
                out.push_str(&format!("{},{},{},{idx}\n", c.k, c.check, c.passed));
            }
            Ok(out)
        }
    }
}

fn hn_checks_for(cache: &SolutionCache, k: usize, order: usize, corrupt: Option<usize>) -> Result<Vec<CheckResult>> {
    let p0 = &cache.get_or_solve(1, &hn_set(k)?, order)?.series[0];
    let mut section = p0.multisection(2 * k, 0)?;
    if let Some(i) = corrupt.filter(|&i| i < order) {
        let mut coeffs = section.into_coeffs();
        coeffs[i] += rat(1);
        section = TruncatedSeries::new(coeffs)?;
    }
    let mismatch = section.first_difference(&hn_target(k, order)?)?;
    let dets = hn_determinant_report(k, order)?;
    Ok(vec![
        CheckResult {
            k,
            check: "hn-series".into(),
            passed: mismatch.is_none(),
            first_mismatch: mismatch,
        },
        CheckResult::new(k, "cramer-ratio", cramer_ratio_check_cached(cache, 1, k, order)?),
        CheckResult::new(k, "block-determinant", dets.block_identity),
        CheckResult::new(k, "full-determinant", dets.full_determinant),
        CheckResult::new(k, "column-substitution", lemma_column_substitution_check(1, k, order)?),
        CheckResult::new(k, "bc-relation", bc_relation_check(1, 2 * k, order)?),
    ])
}

/// Runs every HN check for `k = 1..=k_max`, one thread per `k`.
pub fn verify_hn(k_max: usize, order: usize, corrupt: Option<usize>) -> Result<CheckReport> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let cache = SolutionCache::new();
    let per_k: Vec<Result<Vec<CheckResult>>> = thread::scope(|scope| {
        let handles: Vec<_> = (1..=k_max)
            .map(|k| {
                let cache = &cache;
                scope.spawn(move || hn_checks_for(cache, k, order, corrupt))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    let mut checks = Vec::new();
    for r in per_k {
        checks.extend(r?);
    }
    Ok(CheckReport::from_checks(checks))
}

/// Circulant identities in dimension `dim` for `k = 1..=k_max`.
pub fn verify_circulant(dim: usize, k_max: usize, order: usize) -> Result<CheckReport> {
    LoopModel::new(dim, order)?;
    let cache = SolutionCache::new();
    let mut checks = Vec::new();
    for k in 1..=k_max {
        checks.push(CheckResult::new(k, "bc-relation", bc_relation_check(dim, 2 * k, order)?));
        checks.push(CheckResult::new(k, "column-substitution", lemma_column_substitution_check(dim, k, order)?));
        checks.push(CheckResult::new(k, "cramer-ratio", cramer_ratio_check_cached(&cache, dim, k, order)?));
        if dim == 1 {
            let dets = hn_determinant_report(k, order)?;
            checks.push(CheckResult::new(k, "block-determinant", dets.block_identity));
            checks.push(CheckResult::new(k, "full-determinant", dets.full_determinant));
        }
    }
    Ok(CheckReport::from_checks(checks))
}
