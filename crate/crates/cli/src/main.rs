//! `kulikov`: batch front end over `kulikov-core`.
//!
//! Every command writes one JSON document to stdout and a short summary to
//! stderr (suppressed by `--quiet`). Exit codes: 0 success, 1 a semantic
//! check failed (named on stderr), 2 unreadable or malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kulikov_core::degeneration::validate;
use kulikov_core::fan::{
    auto_scale, certify_fan, certify_for_data, check_gamma_admissible, check_h_freeness, check_h_freeness_on_lattice,
    check_property_d_unchecked, safe_window, WindowPolicy, GAMMA_CHECK_RADIUS,
};
use kulikov_core::monodromy::{kummer_monodromy, nilpotency_index, standard_n, toric_rank_from_n, type_from_index};
use kulikov_core::report::{classify, require_kummer_ready, Report, ReportOptions};
use kulikov_core::strata::{base_change_routes, dual_complex, euler_characteristic, h_quotient};
use kulikov_core::{DegenerationData, DeltaComplex, Error, PeriodicTriangulation, RationalOperator};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "kulikov", version, about = "Invariants of Kulikov models of Kummer surfaces")]
struct Cli {
    /// Suppress the human-readable summary on stderr.
    #[arg(short, long, global = true)]
    quiet: bool,
    /// Search radius for the windowed fan checks; refused below the safe
    /// bound unless --unsafe is given.
    #[arg(long, global = true, value_name = "RADIUS")]
    window: Option<u64>,
    /// Accept a --window below the safe bound. Results are then not
    /// certificates.
    #[arg(long = "unsafe", global = true, requires = "window")]
    allow_unsafe: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a degeneration data file.
    Validate { path: PathBuf },
    /// Run the full pipeline and emit every invariant.
    Classify { path: PathBuf },
    /// Periodic fans: build for data, or certify an existing fan.
    #[command(subcommand)]
    Fan(FanCommand),
    /// Dual complexes of certified fans and their quotients.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Component counts after a base change of ramification index E.
    BaseChange {
        path: PathBuf,
        #[arg(long, value_name = "E")]
        e: u64,
    },
    /// Nilpotency of the monodromy logarithm on H¹ and on the Kummer H².
    Monodromy(MonodromyArgs),
    /// The classification report together with a base-change table.
    Report {
        path: PathBuf,
        /// Largest ramification index in the base-change table.
        #[arg(long, default_value_t = 6)]
        max_e: u64,
    },
}

#[derive(Subcommand)]
enum FanCommand {
    /// Smallest base change whose standard fan passes every check.
    Build { path: PathBuf },
    /// Certify a fan file, optionally against degeneration data.
    Check {
        path: PathBuf,
        #[arg(long, value_name = "DATA")]
        data: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ComplexCommand {
    /// Dual complex of a fan file, with its involution.
    Dual {
        path: PathBuf,
        #[arg(long, value_name = "DATA")]
        data: Option<PathBuf>,
    },
    /// Quotient of a complex file by the involution it carries.
    Quotient { path: PathBuf },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MonodromyArgs {
    /// Use the standard logarithm of this toric rank.
    #[arg(long)]
    toric_rank: Option<usize>,
    /// Read the 4 × 4 logarithm from a matrix file.
    #[arg(long, value_name = "PATH")]
    matrix: Option<PathBuf>,
}

/// Why a command did not succeed.
enum Failure {
    /// A check failed on well-formed input: exit 1.
    Semantic(String),
    /// Input could not be read or parsed: exit 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Schema(_) | Error::DimensionMismatch { .. } => Failure::Input(e.to_string()),
            _ => Failure::Semantic(e.to_string()),
        }
    }
}

/// A finished command: the document, its summary, and the names of any
/// checks that failed (non-empty means exit 1).
struct Output {
    doc: Value,
    summary: String,
    failed: Vec<String>,
}

impl Output {
    fn ok(doc: Value, summary: String) -> Self {
        Self { doc, summary, failed: Vec::new() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let policy = match (cli.window, cli.allow_unsafe) {
        (None, _) => WindowPolicy::Safe,
        (Some(w), false) => WindowPolicy::Checked(w),
        (Some(w), true) => WindowPolicy::Unchecked(w),
    };
    match run(&cli.command, policy) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.doc).expect("JSON values always serialize"));
            if !cli.quiet {
                eprintln!("{}", out.summary);
            }
            if out.failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("kulikov: failed checks: {}", out.failed.join(", "));
                ExitCode::from(1)
            }
        }
        Err(Failure::Semantic(msg)) => {
            eprintln!("kulikov: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("kulikov: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command, policy: WindowPolicy) -> Result<Output, Failure> {
    match command {
        Command::Validate { path } => cmd_validate(path),
        Command::Classify { path } => cmd_classify(path, ReportOptions { window: policy, max_e: None }),
        Command::Report { path, max_e } => cmd_classify(path, ReportOptions { window: policy, max_e: Some(*max_e) }),
        Command::Fan(FanCommand::Build { path }) => cmd_fan_build(path, policy),
        Command::Fan(FanCommand::Check { path, data }) => cmd_fan_check(path, data.as_deref(), policy),
        Command::Complex(ComplexCommand::Dual { path, data }) => cmd_complex_dual(path, data.as_deref(), policy),
        Command::Complex(ComplexCommand::Quotient { path }) => cmd_complex_quotient(path),
        Command::BaseChange { path, e } => cmd_base_change(path, *e),
        Command::Monodromy(args) => cmd_monodromy(args),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_data(path: &Path) -> Result<DegenerationData, Failure> {
    Ok(DegenerationData::from_json(&read(path)?)?)
}

/// Reads a fan document, or the `fan` field of a `fan build` output.
fn read_fan(path: &Path) -> Result<PeriodicTriangulation, Failure> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("schema error: {e}")))?;
    match value.get("fan") {
        Some(fan) => Ok(PeriodicTriangulation::from_json(&fan.to_string())?),
        None => Ok(PeriodicTriangulation::from_json(&text)?),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("core documents always serialize")
}

fn cmd_validate(path: &Path) -> Result<Output, Failure> {
    let d = match read_data(path) {
        Ok(d) => d,
        // the default a_basis needs an even diagonal; that is an axiom-level
        // failure of the file, not a malformed one
        Err(Failure::Semantic(msg)) => {
            let doc = json!({ "passed": false, "diagnostics": [msg] });
            return Ok(Output { doc, summary: format!("invalid: {msg}"), failed: vec!["a_basis".into()] });
        }
        Err(e) => return Err(e),
    };
    let report = validate(&d);
    let failed: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
    let diagnostics: Vec<String> = report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    let mut doc = to_value(&report);
    doc["passed"] = json!(report.passed());
    doc["diagnostics"] = json!(diagnostics);
    let summary = if failed.is_empty() {
        format!("valid degeneration data of toric rank {}", d.rank())
    } else {
        format!("invalid: {}", diagnostics.join("; "))
    };
    Ok(Output { doc, summary, failed })
}

fn cmd_classify(path: &Path, options: ReportOptions) -> Result<Output, Failure> {
    let d = read_data(path)?;
    let report = classify(&d, options)?;
    let summary = report_summary(&report);
    Ok(Output { doc: to_value(&report), summary, failed: report.failures() })
}

fn report_summary(r: &Report) -> String {
    let mut s = format!(
        "type {} (toric rank {}), N_A = {}, N_X = {}, Delta_X: {} with chi = {}, nu = {}",
        r.kulikov_type, r.toric_rank, r.n_a, r.n_x, r.delta_x.shape, r.delta_x.euler_characteristic, r.nu
    );
    for row in r.base_change.iter().flatten() {
        s.push_str(&format!("\n  e = {}: N_L = {} (formula {})", row.e, row.n_l, row.formula_n_l));
    }
    s
}

fn cmd_fan_build(path: &Path, policy: WindowPolicy) -> Result<Output, Failure> {
    let d = read_data(path)?;
    require_kummer_ready(&d)?;
    let scaled = auto_scale(&d)?;
    let fan = match policy {
        WindowPolicy::Safe => scaled.fan,
        policy => certify_for_data(scaled.fan.triangulation, &scaled.data, policy)?,
    };
    let doc = json!({
        "nu": scaled.nu,
        "window": fan.window,
        "fan": to_value(&fan.triangulation.to_doc()),
        "certificates": to_value(&fan.certificates),
    });
    let summary = format!(
        "certified fan after base change nu = {}: {} vertices, {} edges, {} triangles per period",
        scaled.nu,
        fan.triangulation.count(0),
        fan.triangulation.count(1),
        fan.triangulation.count(2)
    );
    Ok(Output { doc, summary, failed: failed_certificates(&to_value(&fan.certificates)) })
}

fn failed_certificates(certs: &Value) -> Vec<String> {
    certs
        .as_object()
        .map(|m| m.iter().filter(|(_, v)| v.as_bool() == Some(false)).map(|(k, _)| k.clone()).collect())
        .unwrap_or_default()
}

fn cmd_fan_check(path: &Path, data: Option<&Path>, policy: WindowPolicy) -> Result<Output, Failure> {
    let t = read_fan(path)?;
    let data = data.map(read_data).transpose()?;
    let safe = safe_window(&t);
    let fan = match &data {
        Some(d) => certify_for_data(t, d, policy)?,
        None => certify_fan(t, policy)?,
    };
    let t = &fan.triangulation;
    // freeness of the involution is decided exactly; the window only has to
    // pass validation, so the safe bound is always acceptable here
    let (h_violations, gamma_violations) = match &data {
        Some(d) => (
            to_value(&check_h_freeness(t, d, safe)?),
            to_value(&check_gamma_admissible(t, d, GAMMA_CHECK_RADIUS)?),
        ),
        None => (to_value(&check_h_freeness_on_lattice(t, safe)?), json!([])),
    };
    let certificates = to_value(&fan.certificates);
    let failed = failed_certificates(&certificates);
    let doc = json!({
        "window": fan.window,
        "safe_window": safe,
        "certificates": certificates,
        "violations": {
            "property_d": to_value(&check_property_d_unchecked(t, fan.window)),
            "h_free": h_violations,
            "gamma_admissible": gamma_violations,
        },
    });
    let summary = if failed.is_empty() {
        format!("fan passes every check at window {}", fan.window)
    } else {
        format!("fan fails at window {}: {}", fan.window, failed.join(", "))
    };
    Ok(Output { doc, summary, failed })
}

fn cmd_complex_dual(path: &Path, data: Option<&Path>, policy: WindowPolicy) -> Result<Output, Failure> {
    let t = read_fan(path)?;
    let fan = match data {
        Some(p) => certify_for_data(t, &read_data(p)?, policy)?,
        None => certify_fan(t, policy)?,
    };
    let (complex, act) = dual_complex(&fan)?;
    let summary = format!("dual complex: {}", complex_summary(&complex));
    Ok(Output::ok(to_value(&complex.to_doc(Some(&act))), summary))
}

fn cmd_complex_quotient(path: &Path) -> Result<Output, Failure> {
    let (complex, act) = DeltaComplex::from_json(&read(path)?)?;
    let act = act.ok_or_else(|| Failure::Input("complex file carries no involution".into()))?;
    let quotient = h_quotient(&complex, &act);
    let summary = format!("quotient complex: {}", complex_summary(&quotient));
    Ok(Output::ok(to_value(&quotient.to_doc(None)), summary))
}

fn complex_summary(c: &DeltaComplex) -> String {
    format!("{} vertices, {} edges, {} triangles, chi = {}", c.count(0), c.count(1), c.count(2), euler_characteristic(c))
}

fn cmd_base_change(path: &Path, e: u64) -> Result<Output, Failure> {
    let d = read_data(path)?;
    require_kummer_ready(&d)?;
    let row = base_change_routes(&d, e)?;
    let failed = if row.consistent { Vec::new() } else { vec![format!("base_change_e{e}")] };
    let summary = format!("e = {}: N = {}, N_L = {} by recount, {} by formula", e, row.n, row.n_l, row.formula_n_l);
    Ok(Output { doc: to_value(&row), summary, failed })
}

fn cmd_monodromy(args: &MonodromyArgs) -> Result<Output, Failure> {
    let n = match (&args.toric_rank, &args.matrix) {
        (Some(t), _) => standard_n(*t)?,
        (None, Some(path)) => RationalOperator::from_json(&read(path)?)?,
        (None, None) => unreachable!("clap requires one of --toric-rank and --matrix"),
    };
    let n_x = kummer_monodromy(&n)?;
    let index = n_x.nilpotency_index()?;
    let kulikov_type = type_from_index(index)?;
    let rank = toric_rank_from_n(&n)?;
    let doc = json!({
        "rank_n": rank,
        "index_h1": nilpotency_index(&n)?,
        "index_h2": index,
        "kulikov_type": to_value(&kulikov_type),
        "wedge": to_value(&n_x.wedge.to_doc()),
    });
    let summary = format!("rank N = {rank}, nilpotency index of N_X = {index}, type {kulikov_type}");
    Ok(Output::ok(doc, summary))
}
