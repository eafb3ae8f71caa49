//! Command-line front-end: scenario loading, subcommands and report output.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qlan_core::format::{to_dot, GraphDocument};
use qlan_core::lemma::{analyze_partial, RetainedEdgeFate};
use qlan_core::oracle::{verify_pipeline, VerificationReport, VerifyOptions, MAX_QUBITS};
use qlan_core::routing::{compare, ComparisonReport};
use qlan_core::scenario::{Scenario, BUNDLED};
use qlan_core::sweep::{rows_to_csv, sweep, SweepRow};
use qlan_core::trace::trace_to_json;
use qlan_core::{augment, run_pipeline, AugmentedGraph, Case, ErrorKind, InterQlanGraph, PipelineRun, Qlan, Vertex};

#[derive(Debug, Parser)]
#[command(name = "qlan", version, about = "Graph-complement routing between two quantum LANs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the super-node pipeline and write the resulting graph and trace.
    Complement(RunArgs),
    /// Check the pipeline against the state-vector oracle on every outcome branch.
    Verify(VerifyArgs),
    /// Compare path-based routing with the complement strategy.
    Compare(RunArgs),
    /// Compare strategies over seeded random scenarios.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Scenario file, or one of the bundled names fig1, fig2, exhaustive-small.
    #[arg(long)]
    pub scenario: String,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Overrides the scenario seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also certify the pipeline with the state-vector oracle.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub case: Option<Case>,
    #[arg(long)]
    pub k0: Option<String>,
    /// Comma-separated clients to exclude from complementation.
    #[arg(long, value_delimiter = ',')]
    pub retain: Option<Vec<String>>,
    /// Zero wall-clock fields in reports.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Toggle one edge of the claimed graph (negative control).
    #[arg(long)]
    pub corrupt: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    pub n1: usize,
    #[arg(long, default_value_t = 4)]
    pub n2: usize,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Validation,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        exit_code(self.kind)
    }

    /// Machine-readable form written to standard error.
    pub fn to_json(&self) -> String {
        let kind = match self.kind {
            ErrorKind::Validation => "validation",
            ErrorKind::Capacity => "capacity",
            ErrorKind::Internal => "internal",
        };
        serde_json::json!({
            "error": {
                "kind": kind,
                "exit_code": self.exit_code(),
                "message": self.message,
            }
        })
        .to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<qlan_core::Error> for CliError {
    fn from(e: qlan_core::Error) -> Self {
        CliError {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Validation => 1,
        ErrorKind::Capacity => 2,
        ErrorKind::Internal => 3,
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Writes `contents` to `dir/name` through a temporary file in the same directory.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    let io = |e: std::io::Error| CliError::validation(format!("cannot write {}: {e}", dir.join(name).display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    let target = dir.join(name);
    tmp.persist(&target).map_err(|e| io(e.error))?;
    Ok(target)
}

pub fn load_scenario(arg: &str) -> CliResult<Scenario> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
        return Ok(Scenario::from_json(&text)?);
    }
    if BUNDLED.contains(&arg) {
        return Ok(Scenario::bundled(arg)?);
    }
    Err(CliError::validation(format!(
        "no scenario file {arg:?} and no bundled scenario of that name (bundled: {})",
        BUNDLED.join(", ")
    )))
}

fn prepared_scenario(args: &RunArgs) -> CliResult<Scenario> {
    let mut s = load_scenario(&args.scenario)?;
    if let Some(seed) = args.seed {
        s.seed = seed;
    }
    if let Some(case) = args.case {
        s.case = case;
    }
    if let Some(retain) = &args.retain {
        s.retain = retain
            .iter()
            .map(|r| r.trim().to_string())
            .filter(|r| !r.is_empty())
            .collect();
    }
    s.validate()?;
    Ok(s)
}

fn check_format(args: &RunArgs, allowed: &[Format], command: &str) -> CliResult<Format> {
    let format = args.format.unwrap_or(Format::Json);
    if !allowed.contains(&format) {
        return Err(CliError::validation(format!(
            "--format {} is not available for {command}",
            format.name()
        )));
    }
    Ok(format)
}

struct Pipeline {
    scenario: Scenario,
    input: InterQlanGraph,
    aug: AugmentedGraph,
    k0: Vertex,
    run: PipelineRun,
}

fn pipeline(args: &RunArgs) -> CliResult<Pipeline> {
    let scenario = prepared_scenario(args)?;
    let input = scenario.inter_qlan_graph()?;
    let aug = augment(&input, scenario.case, &scenario.retained()?)?;
    let k0 = match &args.k0 {
        Some(name) => name
            .parse()
            .map_err(|e: qlan_core::Error| CliError::validation(format!("--k0: {e}")))?,
        None => aug.default_k0()?,
    };
    let run = run_pipeline(&aug, k0)?;
    Ok(Pipeline {
        scenario,
        input,
        aug,
        k0,
        run,
    })
}

fn oracle_report(p: &Pipeline, claimed: &InterQlanGraph, normalize: bool) -> CliResult<VerificationReport> {
    let qubits = p.aug.graph().vertex_count();
    if qubits > MAX_QUBITS {
        return Err(qlan_core::Error::Capacity {
            qubits,
            max: MAX_QUBITS,
        }
        .into());
    }
    let options = VerifyOptions {
        branches: None,
        normalize_time: normalize,
    };
    Ok(verify_pipeline(p.aug.graph(), &p.run.records, claimed, &options)?)
}

fn verification_failed(report: &VerificationReport) -> CliError {
    CliError::validation(format!(
        "oracle verification failed: minimum branch fidelity {:.6} (tolerance {:e})",
        report.min_fidelity, report.tolerance
    ))
}

#[derive(Serialize)]
struct RetainedEdge {
    edge: String,
    fate: RetainedEdgeFate,
}

#[derive(Serialize)]
struct ComplementSummary<'a> {
    scenario: Option<&'a str>,
    case: Case,
    k0: Vertex,
    retained: Vec<Vertex>,
    input: GraphDocument,
    result: GraphDocument,
    measurements: usize,
    local_complementations: usize,
    matches_reference: bool,
    retained_edges: Vec<RetainedEdge>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationReport>,
}

fn cmd_complement(args: &RunArgs, out: &mut dyn Write) -> CliResult<()> {
    let format = check_format(args, &[Format::Json, Format::Dot], "complement")?;
    let p = pipeline(args)?;
    let retained = p.aug.retained();
    let (matches_reference, retained_edges) = if retained.is_empty() {
        (p.run.graph == p.input.complement_graph()?, Vec::new())
    } else {
        let report = analyze_partial(&p.input, retained, &p.run.graph)?;
        let edges = report
            .retained_pairs
            .iter()
            .map(|(e, fate)| RetainedEdge {
                edge: e.to_string(),
                fate: *fate,
            })
            .collect();
        (
            report.non_retained_complemented && report.intra_qlan_edges.is_empty(),
            edges,
        )
    };
    if !matches_reference {
        return Err(qlan_core::Error::Internal("pipeline output differs from the reference complement".into()).into());
    }
    let verification = if args.oracle {
        Some(oracle_report(&p, &p.run.graph, args.normalize)?)
    } else {
        None
    };

    let result_doc = GraphDocument::from_graph(&p.run.graph)?;
    write_atomic(&args.out, "graph.json", &result_doc.to_json())?;
    write_atomic(&args.out, "trace.json", &trace_to_json(&p.run.records))?;
    if format == Format::Dot {
        write_atomic(&args.out, "augmented.dot", &to_dot(p.aug.graph(), "augmented"))?;
        write_atomic(&args.out, "complement.dot", &to_dot(&p.run.graph, "complement"))?;
    }
    let summary = ComplementSummary {
        scenario: p.scenario.name.as_deref(),
        case: p.aug.case(),
        k0: p.k0,
        retained: retained.iter().copied().collect(),
        input: GraphDocument::from_graph(&p.input)?,
        result: result_doc,
        measurements: p.run.measurement_count(),
        local_complementations: p.run.tau_count(),
        matches_reference,
        retained_edges,
        verification,
    };
    write_atomic(&args.out, "complement.json", &to_pretty(&summary))?;

    let (s1, s2) = p.aug.super_nodes();
    writeln!(out, "scenario    {}", p.scenario.name.as_deref().unwrap_or("-")).ok();
    writeln!(out, "case        {} (k0 = {})", p.aug.case(), p.k0).ok();
    writeln!(
        out,
        "input       {} clients, {} inter-links",
        p.input.vertex_count(),
        p.input.edge_count()
    )
    .ok();
    writeln!(out, "measured    {s2}, then {s1}").ok();
    writeln!(out, "result      {} inter-links", p.run.graph.edge_count()).ok();
    writeln!(
        out,
        "reference   {}",
        if summary.matches_reference { "match" } else { "MISMATCH" }
    )
    .ok();
    if let Some(v) = &summary.verification {
        writeln!(
            out,
            "oracle      {} branches, min fidelity {:.12}",
            v.branches.len(),
            v.min_fidelity
        )
        .ok();
        if !v.passed {
            return Err(verification_failed(v));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    scenario: Option<&'a str>,
    case: Case,
    k0: Vertex,
    corrupted: Option<String>,
    #[serde(flatten)]
    report: VerificationReport,
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    check_format(&args.run, &[Format::Json], "verify")?;
    let s = prepared_scenario(&args.run)?;
    let qubits = s.qlan1 + s.qlan2 + 2;
    if qubits > MAX_QUBITS {
        return Err(CliError {
            kind: ErrorKind::Capacity,
            message: format!(
                "{qubits} qubits (n1 + n2 + 2 super-nodes) exceed the oracle capacity of {MAX_QUBITS}; \
                 use n1 + n2 <= {}",
                MAX_QUBITS - 2
            ),
        });
    }
    let p = pipeline(&args.run)?;
    let (claimed, corrupted) = if args.corrupt {
        let (a, b) = (Vertex::q1(1), Vertex::q2(1));
        (p.run.graph.with_edge_toggled(a, b)?, Some(format!("{a} -- {b}")))
    } else {
        (p.run.graph.clone(), None)
    };
    let report = oracle_report(&p, &claimed, args.run.normalize)?;
    for b in &report.branches {
        writeln!(
            out,
            "branch {}  fidelity {:.12}  {}",
            b.outcomes,
            b.fidelity,
            if b.pass { "pass" } else { "FAIL" }
        )
        .ok();
    }
    let passed = report.passed;
    let summary = VerifySummary {
        scenario: p.scenario.name.as_deref(),
        case: p.aug.case(),
        k0: p.k0,
        corrupted,
        report,
    };
    write_atomic(&args.run.out, "verification.json", &to_pretty(&summary))?;
    if !passed {
        return Err(verification_failed(&summary.report));
    }
    writeln!(
        out,
        "verified    {} qubits, {} branches",
        summary.report.qubits,
        summary.report.branches.len()
    )
    .ok();
    Ok(())
}

/// Fixed-width rendering of the four comparison axes.
pub fn axes_table(report: &ComparisonReport) -> String {
    let headers = ["Axis", "TQR", "Graph complement"];
    let rows: Vec<[&str; 3]> = report
        .axes
        .iter()
        .map(|r| [r.axis.as_str(), r.tqr.as_str(), r.complement.as_str()])
        .collect();
    let mut widths = headers.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: [&str; 3]| {
        format!(
            "{:<w0$} | {:<w1$} | {}\n",
            cells[0],
            cells[1],
            cells[2],
            w0 = widths[0],
            w1 = widths[1]
        )
    };
    let mut s = line(headers);
    s.push_str(&format!(
        "{}-+-{}-+-{}\n",
        "-".repeat(widths[0]),
        "-".repeat(widths[1]),
        "-".repeat(widths[2])
    ));
    for row in rows {
        s.push_str(&line(row));
    }
    s
}

fn cmd_compare(args: &RunArgs, out: &mut dyn Write) -> CliResult<()> {
    let format = check_format(args, &[Format::Json, Format::Csv], "compare")?;
    let s = prepared_scenario(args)?;
    let mut options = s.complement_options()?;
    if let Some(name) = &args.k0 {
        options.k0 = Some(
            name.parse()
                .map_err(|e: qlan_core::Error| CliError::validation(format!("--k0: {e}")))?,
        );
    }
    let report = compare(
        &s.physical_topology()?,
        &s.inter_qlan_graph()?,
        &s.request_set()?,
        &options,
    )?;
    match format {
        Format::Csv => write_atomic(
            &args.out,
            "comparison.csv",
            &rows_to_csv(&[SweepRow::new(&s, &report)])?,
        )?,
        _ => write_atomic(&args.out, "comparison.json", &to_pretty(&report))?,
    };
    write!(out, "{}", axes_table(&report)).ok();
    writeln!(
        out,
        "\nrequests {}: TQR served {} in {} rounds, complement served {} in {} rounds",
        report.requests,
        report.tqr.served.len(),
        report.tqr.rounds,
        report.complement.served.len(),
        report.complement.rounds
    )
    .ok();
    Ok(())
}

#[derive(Serialize)]
struct SweepEntry<'a> {
    scenario: &'a Scenario,
    report: &'a ComparisonReport,
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> CliResult<()> {
    if args.n1 == 0 {
        return Err(qlan_core::Error::EmptyQlan(Qlan::Q1).into());
    }
    if args.n2 == 0 {
        return Err(qlan_core::Error::EmptyQlan(Qlan::Q2).into());
    }
    let results = sweep(args.n1, args.n2, args.count, args.seed)?;
    let path = match args.format {
        Format::Csv => {
            let rows: Vec<SweepRow> = results.iter().map(|(s, r)| SweepRow::new(s, r)).collect();
            write_atomic(&args.out, "sweep.csv", &rows_to_csv(&rows)?)?
        }
        Format::Json => {
            let entries: Vec<SweepEntry> = results
                .iter()
                .map(|(scenario, report)| SweepEntry { scenario, report })
                .collect();
            write_atomic(&args.out, "sweep.json", &to_pretty(&entries))?
        }
        Format::Dot => return Err(CliError::validation("--format dot is not available for sweep")),
    };
    let tqr: usize = results.iter().map(|(_, r)| r.tqr.rounds).sum();
    let comp: usize = results.iter().map(|(_, r)| r.complement.rounds).sum();
    writeln!(
        out,
        "{} scenarios ({}+{} clients): {} TQR rounds, {} complement rounds -> {}",
        results.len(),
        args.n1,
        args.n2,
        tqr,
        comp,
        path.display()
    )
    .ok();
    Ok(())
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Complement(args) => cmd_complement(args, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Compare(args) => cmd_compare(args, out),
        Command::Sweep(args) => cmd_sweep(args, out),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
/// Errors go to `err` as one JSON object.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            write!(out, "{e}").ok();
            return 0;
        }
        Err(e) => {
            let error = CliError::validation(e.to_string().trim_end());
            writeln!(err, "{}", error.to_json()).ok();
            return error.exit_code();
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(error) => {
            writeln!(err, "{}", error.to_json()).ok();
            error.exit_code()
        }
    }
}
