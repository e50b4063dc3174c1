//! Command-line front end for generalized chip-firing on a pairing (L, M).
//!
//! Every command reads one JSON document from a file argument or stdin and
//! writes a report to stdout, as text by default or as JSON with
//! `--format json`. Exit codes: 0 for success or an affirmative verdict,
//! 1 for a negative verdict or invalid domain data, 2 for unparseable or
//! schema-violating input, 3 when an enumeration cap is exceeded.

mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use chipfire::exact::Int;
use chipfire::{
    check_m_matrix, classical_pairing, fundamental_parallelepiped_points, identity_pairing,
    reduced_combinatorial_laplacian, reduced_graph_laplacian, smith_normal_form, ClassReport,
    ConfigS, Digraph, Error as LibError, IntMatrix, Pairing, Policy, SimplicialComplex2D,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use input::{
    parse, read_document, to_int_matrix, to_int_vec, to_rat_matrix, to_zero_based, ComplexDoc,
    ConfigDoc, FireDoc, GraphDoc, LatticeDoc, MatrixDoc, PairDoc,
};
use render::{
    config_value, int_matrix_text, int_matrix_value, int_slice_value, int_value, rat_matrix_text,
    rat_matrix_value, rat_slice_text, rat_slice_value, rat_text, rat_value,
};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Lib(LibError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "{msg}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Lib(e) => match e {
                LibError::BoxTooLarge { .. }
                | LibError::BallTooLarge { .. }
                | LibError::DeterminantExceedsCap { .. }
                | LibError::IterationCapExceeded { .. } => 3,
                LibError::NonSquare { .. }
                | LibError::DimensionMismatch { .. }
                | LibError::IndexOutOfRange { .. } => 2,
                _ => 1,
            },
        }
    }
}

#[derive(Parser)]
#[command(
    name = "chipfire",
    version,
    about = "Exact chip-firing on a pairing of an invertible integer matrix L with an M-matrix M",
    after_help = "Input is a JSON document from FILE or stdin. Matrices are arrays of rows; \
                  scalars are integers or decimal strings; vertex and site numbers are 1-based. \
                  Commands taking both l and m treat a missing m as m = l."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Which ready site fires first during stabilization
    #[arg(long, global = true, value_enum, default_value_t = PolicyArg::Lowest)]
    policy: PolicyArg,

    /// Seed for the random policy
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest |det L| accepted by class enumerations
    #[arg(long, global = true, default_value_t = 1000)]
    cap_det: u64,

    /// Bound on search work: box and ball volumes, firing steps
    #[arg(long, global = true, default_value_t = 10_000_000)]
    cap_box: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Lowest,
    Highest,
    Random,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ClassifyWith {
    /// Pair the constructed L with itself
    #[value(name = "self")]
    SelfPairing,
    /// Pair the constructed L with the identity matrix
    Identity,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a square integer matrix is an M-matrix
    CheckMmatrix { input: Option<PathBuf> },
    /// Test whether a configuration is a valid element of S+
    Membership { input: Option<PathBuf> },
    /// Fire one site of a configuration
    Fire { input: Option<PathBuf> },
    /// Fire ready sites until the configuration is stable
    Stabilize { input: Option<PathBuf> },
    /// Report label, critical, superstable, and energy for every class
    Classify { input: Option<PathBuf> },
    /// List the superstable member of every class
    Superstables { input: Option<PathBuf> },
    /// List the critical member of every class
    Criticals { input: Option<PathBuf> },
    /// Energy of a configuration
    Energy { input: Option<PathBuf> },
    /// Invariant factors and order of coker(L)
    Coker { input: Option<PathBuf> },
    /// Integer points of the half-open fundamental parallelepiped of L
    Parallelepiped { input: Option<PathBuf> },
    /// Reduced Laplacian of a graph with a chosen sink
    FromGraph {
        input: Option<PathBuf>,
        /// Also classify the result under the chosen M
        #[arg(long, value_enum)]
        classify_with: Option<ClassifyWith>,
    },
    /// Reduced combinatorial Laplacian of a two-dimensional complex
    FromComplex {
        input: Option<PathBuf>,
        /// Also classify the result under the chosen M
        #[arg(long, value_enum)]
        classify_with: Option<ClassifyWith>,
    },
    /// Check whether duals of criticals coincide with the superstables
    CheckDuality { input: Option<PathBuf> },
}

/// A finished report: JSON tree, text lines, and the exit code.
struct Report {
    json: Value,
    text: Vec<String>,
    code: u8,
}

impl Report {
    fn ok(json: Value, text: Vec<String>) -> Self {
        Report {
            json,
            text,
            code: 0,
        }
    }

    fn verdict(affirmative: bool, json: Value, text: Vec<String>) -> Self {
        Report {
            json,
            text,
            code: if affirmative { 0 } else { 1 },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).unwrap(),
                Format::Text => report.text.join("\n"),
            };
            // tolerate a closed pipe (e.g. piping into head)
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{body}");
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::CheckMmatrix { input } => cmd_check_mmatrix(input),
        Command::Membership { input } => cmd_membership(input),
        Command::Fire { input } => cmd_fire(input),
        Command::Stabilize { input } => cmd_stabilize(input, cli),
        Command::Classify { input } => cmd_classify(input, cli),
        Command::Superstables { input } => cmd_superstables(input, cli),
        Command::Criticals { input } => cmd_criticals(input, cli),
        Command::Energy { input } => cmd_energy(input),
        Command::Coker { input } => cmd_coker(input),
        Command::Parallelepiped { input } => cmd_parallelepiped(input, cli),
        Command::FromGraph {
            input,
            classify_with,
        } => cmd_from_graph(input, *classify_with, cli),
        Command::FromComplex {
            input,
            classify_with,
        } => cmd_from_complex(input, *classify_with, cli),
        Command::CheckDuality { input } => cmd_check_duality(input, cli),
    }
}

fn policy(cli: &Cli) -> Policy {
    match cli.policy {
        PolicyArg::Lowest => Policy::LowestIndex,
        PolicyArg::Highest => Policy::HighestIndex,
        PolicyArg::Random => Policy::Random(cli.seed),
    }
}

fn build_pairing(
    l: &[Vec<input::IntScalar>],
    m: &Option<Vec<Vec<input::RatScalar>>>,
) -> Result<Pairing, CliError> {
    let l = to_int_matrix(l)?;
    let m = match m {
        Some(m) => to_rat_matrix(m)?,
        None => l.to_rational(),
    };
    Ok(Pairing::new(l, m)?)
}

fn cmd_check_mmatrix(input: &Option<PathBuf>) -> Result<Report, CliError> {
    let doc: MatrixDoc = parse(&read_document(input)?)?;
    let m = to_rat_matrix(&doc.m)?;
    let verdict = check_m_matrix(&m)?;
    let json = json!({
        "is_m_matrix": verdict.is_m_matrix,
        "failure": verdict.failure_reason.as_ref().map(|r| r.to_string()),
        "inverse": verdict.inverse.as_ref().map(rat_matrix_value),
        "witness": verdict.positive_witness.as_ref().map(|w| rat_slice_value(w)),
    });
    let mut text = Vec::new();
    match &verdict.failure_reason {
        None => text.push("M-matrix: yes".to_string()),
        Some(reason) => text.push(format!("M-matrix: no ({reason})")),
    }
    if let Some(inv) = &verdict.inverse {
        text.push("inverse:".to_string());
        text.extend(rat_matrix_text(inv).into_iter().map(|r| format!("  {r}")));
    }
    if let Some(w) = &verdict.positive_witness {
        text.push(format!("witness: {}", rat_slice_text(w)));
    }
    Ok(Report::verdict(verdict.is_m_matrix, json, text))
}

fn cmd_membership(input: &Option<PathBuf>) -> Result<Report, CliError> {
    let doc: ConfigDoc = parse(&read_document(input)?)?;
    let p = build_pairing(&doc.l, &doc.m)?;
    let f = ConfigS::new(to_int_vec(&doc.config)?);
    let member = p.in_s_plus(&f)?;
    let x = p.to_r_coords(&f)?;
    let json = json!({
        "member": member,
        "r_coords": rat_slice_value(x.entries()),
    });
    let text = vec![
        format!("member of S+: {}", if member { "yes" } else { "no" }),
        format!("r-coords: {x}"),
    ];
    Ok(Report::verdict(member, json, text))
}

fn cmd_fire(input: &Option<PathBuf>) -> Result<Report, CliError> {
    let doc: FireDoc = parse(&read_document(input)?)?;
    let p = build_pairing(&doc.l, &doc.m)?;
    let f = ConfigS::new(to_int_vec(&doc.config)?);
    let site = to_zero_based("site", doc.site)?;
    if site >= p.dim() {
        // report in the document's 1-based terms, not the library's 0-based index
        return Err(CliError::Parse(format!(
            "site {} out of range for {} sites",
            doc.site,
            p.dim()
        )));
    }
    let fired = p.fire(&f, site)?;
    let json = json!({ "config": config_value(&fired) });
    Ok(Report::ok(json, vec![format!("{fired}")]))
}

fn cmd_stabilize(input: &Option<PathBuf>, cli: &Cli) -> Result<Report, CliError> {
    let doc: ConfigDoc = parse(&read_document(input)?)?;
    let p = build_pairing(&doc.l, &doc.m)?;
    let f = ConfigS::new(to_int_vec(&doc.config)?);
    let result = p.stabilize_capped(&f, policy(cli), cli.cap_box)?;
    let json = json!({
        "stable": config_value(&result.stable_config),
        "script": int_slice_value(result.total_firings.entries()),
        "steps": result.steps,
    });
    let text = vec![
        format!("stable: {}", result.stable_config),
        format!("script: {}", result.total_firings),
        format!("steps: {}", result.steps),
    ];
    Ok(Report::ok(json, text))
}

fn class_report_json(reports: &[ClassReport], det: &Int) -> Value {
    json!({
        "det": int_value(det),
        "classes": reports
            .iter()
            .map(|r| {
                json!({
                    "label": int_slice_value(r.label.residues()),
                    "critical": config_value(&r.critical),
                    "superstable": config_value(&r.superstable),
                    "energy": rat_value(&r.energy_of_superstable),
                })
            })
            .collect::<Vec<_>>(),
    })
}

fn class_report_text(reports: &[ClassReport], det: &Int) -> Vec<String> {
    let mut text = vec![format!("|det L| = {det} ({} classes)", reports.len())];
    for r in reports {
        text.push(format!(
            "{}: critical {}, superstable {}, energy {}",
            r.label,
            r.critical,
            r.superstable,
            rat_text(&r.energy_of_superstable)
        ));
    }
    text
}

fn cmd_classify(input: &Option<PathBuf>, cli: &Cli) -> Result<Report, CliError> {
    let doc: PairDoc = parse(&read_document(input)?)?;
    let p = build_pairing(&doc.l, &doc.m)?;
    let reports = p.all_class_reports_capped(cli.cap_det, cli.cap_box)?;
    Ok(Report::ok(
        class_report_json(&reports, p.det_l_abs()),
        class_report_text(&reports, p.det_l_abs()),
    ))
}

fn cmd_superstables(input: &Option<PathBuf>, cli: &Cli) -> Result<Report, CliError> {
    let doc: PairDoc = parse(&read_document(input)?)?;
    let p = build_pairing(&doc.l, &doc.m)?;
    let reports = p.all_class_reports_capped(cli.cap_det, cli.cap_box)?;
    let json = json!({
        "det": int_value(p.det_l_abs()),
        "superstables": reports
            .iter()
            .map(|r| config_value(&r.superstable))
            .collect::<Vec<_>>(),
    });
    let text = reports
        .iter()
        .map(|r| format!("{}", r.superstable))
        .collect();
    Ok(Report::ok(json, text))
}

fn cmd_criticals(input: &Option<PathBuf>, cli: &Cli) -> Result<Report, CliError> {
    let doc: PairDoc = parse(&read_document(input)?)?;
    let p = build_pairing(&doc.l, &doc.m)?;
    let reports = p.all_class_reports_capped(cli.cap_det, cli.cap_box)?;
    let json = json!({
        "det": int_value(p.det_l_abs()),
        "criticals": reports
            .iter()
            .map(|r| config_value(&r.critical))
            .collect::<Vec<_>>(),
    });
    let text = reports.iter().map(|r| format!("{}", r.critical)).collect();
    Ok(Report::ok(json, text))
}

fn cmd_energy(input: &Option<PathBuf>) -> Result<Report, CliError> {
    let doc: ConfigDoc = parse(&read_document(input)?)?;
    let p = build_pairing(&doc.l, &doc.m)?;
    let f = ConfigS::new(to_int_vec(&doc.config)?);
    let e = p.energy(&f)?;
    let json = json!({ "energy": rat_value(&e) });
    Ok(Report::ok(json, vec![rat_text(&e)]))
}

fn cmd_coker(input: &Option<PathBuf>) -> Result<Report, CliError> {
    let doc: LatticeDoc = parse(&read_document(input)?)?;
    let l = to_int_matrix(&doc.l)?;
    let snf = smith_normal_form(&l)?;
    let factors = snf.invariant_factors();
    let det: Int = factors.iter().product();
    let nontrivial: Vec<String> = factors
        .iter()
        .filter(|d| **d != Int::from(1))
        .map(|d| format!("Z/{d}"))
        .collect();
    let group = if nontrivial.is_empty() {
        "trivial".to_string()
    } else {
        nontrivial.join(" x ")
    };
    let json = json!({
        "det": int_value(&det),
        "invariant_factors": int_slice_value(&factors),
        "group": group,
    });
    let factor_list: Vec<String> = factors.iter().map(Int::to_string).collect();
    let text = vec![
        format!("det: {det}"),
        format!("invariant factors: {}", factor_list.join(", ")),
        format!("group: {group}"),
    ];
    Ok(Report::ok(json, text))
}

fn cmd_parallelepiped(input: &Option<PathBuf>, cli: &Cli) -> Result<Report, CliError> {
    let doc: LatticeDoc = parse(&read_document(input)?)?;
    let l = to_int_matrix(&doc.l)?;
    let points = fundamental_parallelepiped_points(&l, cli.cap_det)?;
    let det = l.det()?;
    let json = json!({
        "det": int_value(&det),
        "points": points.iter().map(|p| int_slice_value(p)).collect::<Vec<_>>(),
    });
    let mut text = vec![format!("det: {det}")];
    text.extend(
        points
            .iter()
            .map(|p| format!("{}", ConfigS::new(p.clone()))),
    );
    Ok(Report::ok(json, text))
}

/// Classification block appended by --classify-with.
fn classification_under(
    l: &IntMatrix,
    with: ClassifyWith,
    cli: &Cli,
) -> Result<(Value, Vec<String>), CliError> {
    let p = match with {
        ClassifyWith::SelfPairing => classical_pairing(l)?,
        ClassifyWith::Identity => identity_pairing(l)?,
    };
    let reports = p.all_class_reports_capped(cli.cap_det, cli.cap_box)?;
    Ok((
        class_report_json(&reports, p.det_l_abs()),
        class_report_text(&reports, p.det_l_abs()),
    ))
}

fn cmd_from_graph(
    input: &Option<PathBuf>,
    classify_with: Option<ClassifyWith>,
    cli: &Cli,
) -> Result<Report, CliError> {
    let doc: GraphDoc = parse(&read_document(input)?)?;
    let sink = to_zero_based("vertex", doc.sink)?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (u, v, mult) in &doc.edges {
        edges.push((
            to_zero_based("vertex", *u)?,
            to_zero_based("vertex", *v)?,
            *mult,
        ));
    }
    let g = if doc.directed {
        Digraph::new(doc.vertices, edges, sink)?
    } else {
        Digraph::undirected(doc.vertices, &edges, sink)?
    };
    let l = reduced_graph_laplacian(&g)?;
    let sites: Vec<usize> = (1..=doc.vertices).filter(|v| *v != doc.sink).collect();
    let mut json = json!({
        "l": int_matrix_value(&l),
        "sites": sites,
    });
    let site_list: Vec<String> = sites.iter().map(usize::to_string).collect();
    let mut text = vec!["L:".to_string()];
    text.extend(int_matrix_text(&l).into_iter().map(|r| format!("  {r}")));
    text.push(format!("sites: {}", site_list.join(", ")));
    if let Some(with) = classify_with {
        let (cjson, ctext) = classification_under(&l, with, cli)?;
        json["classification"] = cjson;
        text.push(String::new());
        text.extend(ctext);
    }
    Ok(Report::ok(json, text))
}

fn cmd_from_complex(
    input: &Option<PathBuf>,
    classify_with: Option<ClassifyWith>,
    cli: &Cli,
) -> Result<Report, CliError> {
    let doc: ComplexDoc = parse(&read_document(input)?)?;
    let c = SimplicialComplex2D::new(doc.facets, doc.tree)?;
    let l = reduced_combinatorial_laplacian(&c)?;
    let rows = c.cycle_edges();
    let mut json = json!({
        "l": int_matrix_value(&l),
        "rows": rows,
    });
    let row_list: Vec<String> = rows.iter().map(|[i, j]| format!("({i}, {j})")).collect();
    let mut text = vec!["L:".to_string()];
    text.extend(int_matrix_text(&l).into_iter().map(|r| format!("  {r}")));
    text.push(format!("rows: {}", row_list.join(", ")));
    if let Some(with) = classify_with {
        let (cjson, ctext) = classification_under(&l, with, cli)?;
        json["classification"] = cjson;
        text.push(String::new());
        text.extend(ctext);
    }
    Ok(Report::ok(json, text))
}

fn cmd_check_duality(input: &Option<PathBuf>, cli: &Cli) -> Result<Report, CliError> {
    let doc: PairDoc = parse(&read_document(input)?)?;
    let p = build_pairing(&doc.l, &doc.m)?;
    let report = p.check_duality_capped(cli.cap_det, cli.cap_box)?;
    let json = json!({
        "holds": report.holds,
        "counterexample": report.counterexample.as_ref().map(config_value),
    });
    let text = match &report.counterexample {
        None => vec!["duality holds".to_string()],
        Some(c) => vec![format!("duality fails: {c} is not superstable")],
    };
    Ok(Report::verdict(report.holds, json, text))
}
