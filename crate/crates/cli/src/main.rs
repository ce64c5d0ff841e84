//! `radiok`: radio-k-numbers of cycles from the command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure,
//! 3 uncovered case, 4 oracle budget exceeded.

mod files;
mod ranges;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use radiok::audit::{consistency_audit, OracleCheck};
use radiok::construct::build;
use radiok::cyclic::CycleInstance;
use radiok::dispatch::{applicable_rules, resolve, RnStatus};
use radiok::oracle::{exact_rn, scan_conjecture, Budget, OracleOutcome, ORACLE_MAX_N};
use radiok::verify::{verify_full, Labeling};
use serde::Serialize;
use serde_json::{Map, Value};

use ranges::{parse_n_range, KSpec};

const INVALID: u8 = 1;
const VERIFY_FAILED: u8 = 2;
const UNCOVERED: u8 = 3;
const BUDGET: u8 = 4;

/// Largest `n` the `audit --oracle` cross-check runs the oracle on.
const AUDIT_ORACLE_MAX_N: u64 = 10;

#[derive(Debug, Parser)]
#[command(name = "radiok", version, about = "Radio-k-labelings and radio-k-numbers of cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (default: text for reports, JSON for labelings, CSV for tables).
    #[arg(long, global = true)]
    format: Option<Format>,

    /// Write the main output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Φ(n,k), LB(n,k) and the parity data of an instance.
    Phi(InstanceArgs),
    /// Every known result that applies to an instance.
    Bounds(InstanceArgs),
    /// The exact value of rn_k(C_n), or the best known bounds.
    Rn {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Run the exact search (n ≤ 64).
        #[arg(long)]
        oracle: bool,
        /// Fail with exit code 3 unless an exact value is obtained.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Emit a verified optimal labeling.
    Label {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Fall back to the exact search when no construction covers the instance.
        #[arg(long)]
        oracle: bool,
        /// Print the jump schedule of the construction to stderr.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a labeling file (JSON or CSV).
    Verify {
        file: PathBuf,
        /// Overrides the cycle length recorded in the file.
        #[arg(long)]
        n: Option<u64>,
        /// Overrides the level recorded in the file.
        #[arg(long)]
        k: Option<u64>,
    },
    /// One row per (n, k): bounds, exact value, provenance and construction span.
    Table {
        /// `a..b` or a single value.
        #[arg(long, value_parser = parse_n_range)]
        n: RangeInclusive<u64>,
        /// `diam`, `diam+1`, `all` (d..n+2) or `a..b`.
        #[arg(long, default_value = "all")]
        k: KSpec,
    },
    /// Compare the oracle with LB + p − 1 where n is even, k odd and n/2 ∈ ⟨h⟩.
    Scan {
        #[arg(long, value_parser = parse_n_range)]
        n: RangeInclusive<u64>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Cross-check all results and constructions for 3 ≤ n ≤ N.
    Audit {
        #[arg(long, value_name = "N")]
        n: u64,
        /// Also compare with the exact search for n ≤ 10.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Debug, Args)]
struct InstanceArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Search nodes the oracle may expand.
    #[arg(long, value_name = "N")]
    budget_nodes: Option<u64>,
    /// Wall-clock seconds the oracle may use.
    #[arg(long, value_name = "S")]
    budget_secs: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget, Failure> {
        let mut budget = Budget::default();
        if let Some(nodes) = self.budget_nodes {
            budget.max_nodes = nodes;
        }
        if let Some(secs) = self.budget_secs {
            budget.max_time = Duration::try_from_secs_f64(secs)
                .map_err(|_| Failure::invalid(format!("bad --budget-secs {secs}")))?;
        }
        if let Ok(cap) = std::env::var("RADIOK_THREADS") {
            let cap: usize = cap
                .parse()
                .ok()
                .filter(|&c| c > 0)
                .ok_or_else(|| Failure::invalid(format!("bad RADIOK_THREADS {cap:?}")))?;
            budget = budget.with_threads(budget.threads.min(cap));
        }
        Ok(budget)
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure::new(INVALID, message)
    }
}

impl From<radiok::Error> for Failure {
    fn from(e: radiok::Error) -> Self {
        let code = match e {
            radiok::Error::ConstructionIntegrity { .. } => VERIFY_FAILED,
            _ => INVALID,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(INVALID)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("radiok: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let mut out = sink(cli.out.as_ref())?;
    let code = match &cli.command {
        Command::Phi(i) => phi(i, cli.format, &mut out)?,
        Command::Bounds(i) => bounds(i, cli.format, &mut out)?,
        Command::Rn {
            instance,
            oracle,
            exact,
            budget,
        } => rn(instance, *oracle, *exact, budget, cli.format, &mut out)?,
        Command::Label {
            instance,
            oracle,
            trace,
            budget,
        } => label(instance, *oracle, *trace, budget, cli.format, &mut out)?,
        Command::Verify { file, n, k } => verify(file, *n, *k, cli.format, &mut out)?,
        Command::Table { n, k } => table(n.clone(), *k, cli.format, &mut out)?,
        Command::Scan { n, budget } => scan(n.clone(), budget, cli.format, &mut out)?,
        Command::Audit { n, oracle, budget } => audit(*n, *oracle, budget, cli.format, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

fn sink(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::invalid(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Writes a flat record as `key: value` lines, a JSON object, or a one-row CSV.
fn emit_record<T: Serialize>(record: &T, format: Option<Format>, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        None => {
            let Value::Object(map) = serde_json::to_value(record)? else {
                unreachable!("records serialize to objects")
            };
            write_key_values(&map, out)?;
        }
        Some(Format::Json) => {
            serde_json::to_writer_pretty(&mut *out, record)?;
            writeln!(out)?;
        }
        Some(Format::Csv) => emit_rows(std::slice::from_ref(record), out)?,
    }
    Ok(())
}

fn write_key_values(map: &Map<String, Value>, out: &mut dyn Write) -> io::Result<()> {
    for (key, value) in map {
        match value {
            Value::Null => writeln!(out, "{key}: -")?,
            Value::String(s) => writeln!(out, "{key}: {s}")?,
            other => writeln!(out, "{key}: {other}")?,
        }
    }
    Ok(())
}

fn emit_rows<T: Serialize>(rows: &[T], out: &mut dyn Write) -> Result<(), Failure> {
    let mut csv = csv::Writer::from_writer(out);
    for row in rows {
        csv.serialize(row)?;
    }
    csv.flush()?;
    Ok(())
}

fn emit_table<T: Serialize>(rows: &[T], format: Option<Format>, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Some(Format::Json) => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
            Ok(())
        }
        None | Some(Format::Csv) => emit_rows(rows, out),
    }
}

#[derive(Serialize)]
struct PhiReport {
    n: u64,
    k: u64,
    diameter: u64,
    parity_case: &'static str,
    phi: u64,
    lb: u64,
    h: Option<u64>,
    p: Option<u64>,
    p_star: Option<u64>,
    half_in_h: Option<bool>,
}

fn phi(i: &InstanceArgs, format: Option<Format>, out: &mut dyn Write) -> Result<u8, Failure> {
    let inst = CycleInstance::new(i.n, i.k)?;
    let gap = inst.mismatch_gap();
    let report = PhiReport {
        n: inst.n(),
        k: inst.k(),
        diameter: inst.diameter(),
        parity_case: inst.parity().as_str(),
        phi: inst.phi(),
        lb: inst.lb(),
        h: gap.map(|g| g.h),
        p: gap.map(|g| g.p),
        p_star: gap.map(|g| g.p_star),
        half_in_h: gap.map(|g| g.d_in_h),
    };
    emit_record(&report, format, out)?;
    Ok(0)
}

#[derive(Serialize)]
struct BoundRow {
    n: u64,
    k: u64,
    provenance: &'static str,
    lower: u64,
    upper: Option<u64>,
    exact: bool,
}

fn bounds(i: &InstanceArgs, format: Option<Format>, out: &mut dyn Write) -> Result<u8, Failure> {
    let rows: Vec<BoundRow> = applicable_rules(i.n, i.k)?
        .into_iter()
        .map(|b| BoundRow {
            n: i.n,
            k: i.k,
            provenance: b.rule.tag(),
            lower: b.lower,
            upper: b.upper,
            exact: b.is_exact(),
        })
        .collect();
    match format {
        None => {
            for row in &rows {
                let upper = row.upper.map_or("inf".to_string(), |u| u.to_string());
                writeln!(out, "{}: [{}, {}]", row.provenance, row.lower, upper)?;
            }
            Ok(0)
        }
        Some(_) => {
            emit_table(&rows, format, out)?;
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct RnReport {
    n: u64,
    k: u64,
    kind: &'static str,
    value: Option<u64>,
    lower: u64,
    upper: Option<u64>,
    provenance: &'static str,
    closed_form: &'static str,
    construction_available: bool,
    oracle_nodes: Option<u64>,
}

impl RnReport {
    fn from_status(s: &RnStatus) -> Self {
        RnReport {
            n: s.n,
            k: s.k,
            kind: if s.exact().is_some() { "exact" } else { "bounds" },
            value: s.exact(),
            lower: s.lower(),
            upper: s.upper(),
            provenance: s.provenance(),
            closed_form: s.provenance(),
            construction_available: s.construction_available,
            oracle_nodes: None,
        }
    }
}

fn rn(
    i: &InstanceArgs,
    use_oracle: bool,
    demand_exact: bool,
    budget: &BudgetArgs,
    format: Option<Format>,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let status = resolve(i.n, i.k)?;
    let mut report = RnReport::from_status(&status);
    if use_oracle && i.n <= ORACLE_MAX_N {
        match exact_rn(i.n, i.k, &budget.budget()?)? {
            OracleOutcome::Solved { value, nodes, .. } => {
                if !status.contains(value) {
                    return Err(Failure::new(
                        VERIFY_FAILED,
                        format!(
                            "oracle value {value} contradicts {} for n = {}, k = {}",
                            status.provenance(),
                            i.n,
                            i.k
                        ),
                    ));
                }
                report.kind = "exact";
                report.value = Some(value);
                report.lower = value;
                report.upper = Some(value);
                report.provenance = "oracle";
                report.oracle_nodes = Some(nodes);
            }
            OracleOutcome::BudgetExceeded { best_upper, nodes, .. } => {
                if status.exact().is_none() {
                    emit_record(&report, format, out)?;
                    let best = best_upper.map_or("none".to_string(), |b| b.to_string());
                    return Err(Failure::new(
                        BUDGET,
                        format!("oracle budget exhausted after {nodes} nodes (best span found: {best})"),
                    ));
                }
            }
        }
    }
    emit_record(&report, format, out)?;
    if demand_exact && report.value.is_none() {
        return Err(Failure::new(
            UNCOVERED,
            format!(
                "no exact value is known for n = {}, k = {}{}",
                i.n,
                i.k,
                if use_oracle { "" } else { " (try --oracle)" }
            ),
        ));
    }
    Ok(0)
}

fn label(
    i: &InstanceArgs,
    use_oracle: bool,
    trace: bool,
    budget: &BudgetArgs,
    format: Option<Format>,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let lab = match build(i.n, i.k)? {
        Some(c) => {
            if trace {
                eprintln!("jumps: {}", c.schedule().dump());
            }
            c.into_labeling()
        }
        None if use_oracle && i.n <= ORACLE_MAX_N => match exact_rn(i.n, i.k, &budget.budget()?)? {
            OracleOutcome::Solved { witness, .. } => witness,
            OracleOutcome::BudgetExceeded { nodes, .. } => {
                return Err(Failure::new(
                    BUDGET,
                    format!("oracle budget exhausted after {nodes} nodes"),
                ));
            }
        },
        None => {
            let status = resolve(i.n, i.k)?;
            return Err(Failure::new(
                UNCOVERED,
                format!(
                    "no construction covers n = {}, k = {} ({}){}",
                    i.n,
                    i.k,
                    status.provenance(),
                    if i.n <= ORACLE_MAX_N { "; try --oracle" } else { "" }
                ),
            ));
        }
    };
    let verdict = verify_full(&lab);
    if let Some(w) = verdict.witness {
        return Err(Failure::new(VERIFY_FAILED, format!("refusing to emit an invalid labeling: {w}")));
    }
    match format {
        None | Some(Format::Json) => files::write_json(&lab, &mut *out)?,
        Some(Format::Csv) => files::write_csv(&lab, &mut *out)?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct VerifyReport {
    n: u64,
    k: u64,
    span: u64,
    valid: bool,
    violation: Option<String>,
}

fn verify(
    path: &PathBuf,
    n: Option<u64>,
    k: Option<u64>,
    format: Option<Format>,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    let lab: Labeling = files::read_labeling(&text, n, k)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    let verdict = verify_full(&lab);
    let report = VerifyReport {
        n: lab.n(),
        k: lab.k(),
        span: lab.span(),
        valid: verdict.valid,
        violation: verdict.witness.map(|w| w.to_string()),
    };
    emit_record(&report, format, out)?;
    Ok(if verdict.valid { 0 } else { VERIFY_FAILED })
}

#[derive(Serialize)]
struct TableRow {
    n: u64,
    k: u64,
    parity_case: &'static str,
    phi: u64,
    lb: u64,
    lower: u64,
    upper: Option<u64>,
    exact: Option<u64>,
    provenance: &'static str,
    construction_span: Option<u64>,
}

fn table(n_range: RangeInclusive<u64>, k_spec: KSpec, format: Option<Format>, out: &mut dyn Write) -> Result<u8, Failure> {
    let mut rows = Vec::new();
    for n in n_range {
        for k in k_spec.levels(n) {
            let inst = CycleInstance::new(n, k)?;
            let status = resolve(n, k)?;
            rows.push(TableRow {
                n,
                k,
                parity_case: inst.parity().as_str(),
                phi: inst.phi(),
                lb: inst.lb(),
                lower: status.lower(),
                upper: status.upper(),
                exact: status.exact(),
                provenance: status.provenance(),
                construction_span: build(n, k)?.map(|c| c.labeling().span()),
            });
        }
    }
    emit_table(&rows, format, out)?;
    Ok(0)
}

fn scan(
    n_range: RangeInclusive<u64>,
    budget: &BudgetArgs,
    format: Option<Format>,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    if *n_range.end() > ORACLE_MAX_N {
        return Err(Failure::invalid(format!("scan needs n ≤ {ORACLE_MAX_N}")));
    }
    let rows = scan_conjecture(n_range, &budget.budget()?)?;
    emit_table(&rows, format, out)?;
    Ok(0)
}

fn audit(n_max: u64, use_oracle: bool, budget: &BudgetArgs, format: Option<Format>, out: &mut dyn Write) -> Result<u8, Failure> {
    let oracle = if use_oracle {
        Some(OracleCheck {
            n_max: n_max.min(AUDIT_ORACLE_MAX_N),
            budget: budget.budget()?,
        })
    } else {
        None
    };
    let report = consistency_audit(n_max, oracle)?;
    match format {
        Some(Format::Json) => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        Some(Format::Csv) => emit_rows(&report.contradictions, out)?,
        None => {
            writeln!(out, "instances: {}", report.instances)?;
            writeln!(out, "constructions verified: {}", report.constructions)?;
            writeln!(out, "oracle checked: {}", report.oracle_checked)?;
            writeln!(out, "oracle inconclusive: {}", report.oracle_inconclusive)?;
            writeln!(out, "contradictions: {}", report.contradictions.len())?;
            for c in &report.contradictions {
                writeln!(out, "  n = {}, k = {}: {}", c.n, c.k, c.message)?;
            }
        }
    }
    Ok(if report.is_consistent() { 0 } else { VERIFY_FAILED })
}
