//! Command-line front end for the diagram-algebra toolkit.
//!
//! Every command takes a diagram (a bundled `--preset` or a `--graph`
//! JSON file), builds its presentation, and runs one stage of the
//! pipeline: completed rewriting system (`gb`), dimension (`dim`), graded
//! counts (`hilbert`), growth class (`growth`, `classify`), growth-graph
//! export (`growth-graph`), free-pair verification (`witness`), or an
//! exhaustive small-diagram cross-check (`sweep`).
//!
//! Output is line-oriented: `#`-prefixed header lines echo the exact
//! configuration (input, order, cap and where it came from, parameter
//! assignments), then the payload follows bare. With `--json` the same
//! information is emitted as a single JSON object with a versioned
//! `schema` field. Runs are deterministic: the same invocation in the
//! same environment produces byte-identical output.
//!
//! Exit codes: 0 on success, 1 on domain errors (unreadable or malformed
//! graph files, completion failures, failed verification), 2 on usage
//! errors. The degree cap defaults to twice the longest input relation
//! plus two and can be overridden per run with `--cap` or globally with
//! the `TLGROWTH_DEGREE_CAP` environment variable.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::json;

use tlgrowth::classify::{
    classify_by_theorem, classify_relations, compare, connected_diagrams, Agreement,
    ComputedClass, SweepRow, TheoremVerdict,
};
use tlgrowth::coeffs::Param;
use tlgrowth::coxeter::{
    preset, preset_catalog, witness_fixture, CoxGraph, FamilyId, Label,
};
use tlgrowth::freealg::{MonomialOrder, NCPoly, Word};
use tlgrowth::groebner::{
    complete, default_degree_cap, validate_specialization, CompletionStatus, CompletionStrategy,
    GroebnerBasis,
};
use tlgrowth::growth::{graded_counts_csv, GrowthClass, NormalWordAutomaton, TotalDimension};
use tlgrowth::witness::{exponential_lower_bound, verify_free_pair};

/// Environment variable overriding the default degree cap.
pub const CAP_ENV_VAR: &str = "TLGROWTH_DEGREE_CAP";

const EXIT_OK: i32 = 0;
const EXIT_DOMAIN: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
enum CliError {
    /// Bad invocation: malformed flags, unknown preset, bad word syntax.
    Usage(String),
    /// Valid invocation that cannot be satisfied: unreadable or malformed
    /// input files, completion failures, failed verification.
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(format!("write failed: {e}"))
    }
}

#[derive(Parser)]
#[command(
    name = "tlgrowth",
    version,
    about = "Dimension and growth of edge-labeled-diagram algebras",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Diagram source: exactly one of a bundled preset or a graph file.
#[derive(Args)]
struct InputArgs {
    /// Bundled diagram: NAME, optionally with a rank/label argument
    /// (see `tlgrowth preset list`)
    #[arg(long, num_args = 1..=2, value_names = ["NAME", "RANK"])]
    preset: Option<Vec<String>>,
    /// Graph file: {"version":1,"vertices":n,"edges":[[i,j,m],...]} with
    /// m an integer >= 3 or "inf"
    #[arg(long, conflicts_with = "preset", value_name = "FILE")]
    graph: Option<PathBuf>,
}

/// Pipeline options shared by the computing commands.
#[derive(Args)]
struct RunArgs {
    /// Ambiguity degree cap (default: twice the longest input relation
    /// plus two, or TLGROWTH_DEGREE_CAP when set)
    #[arg(long, value_name = "N")]
    cap: Option<usize>,
    /// Substitute a parameter, e.g. t=1/2 (repeatable or comma-separated;
    /// parameters: t, t1, t2)
    #[arg(long, value_delimiter = ',', value_name = "NAME=VALUE")]
    specialize: Vec<String>,
    /// Allow specializations that collapse the rewriting structure (t=0)
    #[arg(long)]
    allow_degenerate: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the completed rewriting system
    Gb {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Emit one JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// Print the algebra's total dimension, or "infinite"
    Dim {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Emit one JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// Print graded dimension counts up to a degree
    Hilbert {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Largest degree to count
        #[arg(long, default_value_t = 12, value_name = "N")]
        max_degree: usize,
        /// Emit one JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// Print the growth class with supporting evidence
    Growth {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Emit one JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// Print or export the cycle graph of normal words
    GrowthGraph {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Write the edge list to a file instead of stdout
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
    },
    /// Verify that two words generate a free subalgebra
    Witness {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// First word, comma-separated generator indices (e.g. 2,3,4,2,1,5)
        #[arg(long, value_name = "WORD")]
        q1: Option<String>,
        /// Second word, comma-separated generator indices
        #[arg(long, value_name = "WORD")]
        q2: Option<String>,
        /// Emit one JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// Classify growth by computation, optionally against the structural
    /// prediction
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Also run the structural classification and compare
        #[arg(long)]
        cross_check: bool,
        /// Emit one JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// List bundled diagrams, or show one as a graph file
    Preset {
        #[command(subcommand)]
        which: PresetCmd,
    },
    /// Cross-check every small connected diagram, streaming CSV rows
    Sweep {
        /// Largest vertex count (1 through 6)
        #[arg(long, default_value_t = 4, value_name = "K")]
        max_vertices: u8,
        /// Edge labels to draw from, comma-separated (each >= 3)
        #[arg(long, value_delimiter = ',', default_value = "3,4,5,6", value_name = "M,..")]
        labels: Vec<u32>,
        /// Ambiguity degree cap (default: twice the largest label plus two)
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
    },
}

#[derive(Subcommand)]
enum PresetCmd {
    /// List every bundled diagram with a one-line description
    List,
    /// Print one bundled diagram in the graph file format
    Show {
        /// Preset name (e.g. A, tilde-C, star, fig)
        name: String,
        /// Rank, label, or tag where the family needs one
        arg: Option<String>,
    },
}

/// Run the command line given by `args`, writing all output (payload,
/// headers, and error messages) to `out`. Returns the process exit code:
/// 0 success, 1 domain error, 2 usage error.
pub fn run_with_output<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            let _ = write!(out, "{rendered}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(out, "error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Gb { input, run, json } => cmd_gb(&input, &run, json, out),
        Command::Dim { input, run, json } => cmd_dim(&input, &run, json, out),
        Command::Hilbert {
            input,
            run,
            max_degree,
            json,
        } => cmd_hilbert(&input, &run, max_degree, json, out),
        Command::Growth { input, run, json } => cmd_growth(&input, &run, json, out),
        Command::GrowthGraph { input, run, export } => {
            cmd_growth_graph(&input, &run, export.as_deref(), out)
        }
        Command::Witness {
            input,
            run,
            q1,
            q2,
            json,
        } => cmd_witness(&input, &run, q1.as_deref(), q2.as_deref(), json, out),
        Command::Classify {
            input,
            run,
            cross_check,
            json,
        } => cmd_classify(&input, &run, cross_check, json, out),
        Command::Preset { which } => cmd_preset(which, out),
        Command::Sweep {
            max_vertices,
            labels,
            cap,
        } => cmd_sweep(max_vertices, &labels, cap, out),
    }
}

// ---------------------------------------------------------------------------
// Shared pipeline
// ---------------------------------------------------------------------------

/// A loaded diagram with its presentation and resolved run options.
struct Prepared {
    source: String,
    graph: CoxGraph,
    order: MonomialOrder,
    relations: Vec<NCPoly>,
    cap: usize,
    cap_source: String,
    params_note: String,
    high_labels: bool,
    fig_tag: Option<String>,
}

fn prepare(input: &InputArgs, run: &RunArgs) -> Result<Prepared, CliError> {
    let (graph, source, fig_tag) = load_graph(input)?;
    let order = graph.monomial_order();
    let mut relations = graph.relations();

    let assignment = parse_assignments(&run.specialize)?;
    validate_specialization(&assignment, run.allow_degenerate)
        .map_err(|e| CliError::Domain(format!("{e} (pass --allow-degenerate to override)")))?;
    if !assignment.is_empty() {
        relations = relations
            .iter()
            .map(|p| p.specialize(&assignment))
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Domain(e.to_string()))?;
    }
    let params_note = if assignment.is_empty() {
        "symbolic".to_string()
    } else {
        assignment
            .iter()
            .map(|(p, v)| format!("{} = {}", p.name(), v))
            .collect::<Vec<_>>()
            .join(", ")
    };

    let (cap, cap_source) = resolve_cap(run.cap, &relations)?;
    let high_labels = graph
        .edges()
        .any(|(_, _, l)| matches!(l, Label::Finite(m) if m >= 6));

    Ok(Prepared {
        source,
        graph,
        order,
        relations,
        cap,
        cap_source,
        params_note,
        high_labels,
        fig_tag,
    })
}

fn load_graph(input: &InputArgs) -> Result<(CoxGraph, String, Option<String>), CliError> {
    match (&input.preset, &input.graph) {
        (Some(parts), None) => {
            let name = &parts[0];
            let arg = parts.get(1).map(String::as_str);
            let id = FamilyId::from_cli(name, arg).map_err(|e| {
                CliError::Usage(format!("--preset {}: {e}", parts.join(" ")))
            })?;
            let graph = preset(&id)
                .map_err(|e| CliError::Usage(format!("--preset {}: {e}", parts.join(" "))))?;
            let fig_tag = match &id {
                FamilyId::Fig { tag } => Some(tag.clone()),
                _ => None,
            };
            Ok((graph, format!("preset {}", parts.join(" ")), fig_tag))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Domain(format!("cannot read {}: {e}", path.display()))
            })?;
            let graph = CoxGraph::from_json(&text)
                .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
            Ok((graph, format!("graph file {}", path.display()), None))
        }
        _ => Err(CliError::Usage(
            "exactly one of --preset or --graph is required".to_string(),
        )),
    }
}

fn parse_assignments(items: &[String]) -> Result<BTreeMap<Param, BigRational>, CliError> {
    let mut assignment = BTreeMap::new();
    for item in items {
        let (name, value) = item.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("--specialize {item:?}: expected NAME=VALUE"))
        })?;
        let param = match name.trim() {
            "t" => Param::T,
            "t1" => Param::T1,
            "t2" => Param::T2,
            other => {
                return Err(CliError::Usage(format!(
                    "--specialize: unknown parameter {other:?} (parameters: t, t1, t2)"
                )))
            }
        };
        let rational = BigRational::from_str(value.trim()).map_err(|e| {
            CliError::Usage(format!("--specialize {item:?}: bad value: {e}"))
        })?;
        assignment.insert(param, rational);
    }
    Ok(assignment)
}

fn resolve_cap(flag: Option<usize>, relations: &[NCPoly]) -> Result<(usize, String), CliError> {
    if let Some(cap) = flag {
        if cap < 2 {
            return Err(CliError::Usage("--cap must be at least 2".to_string()));
        }
        return Ok((cap, "--cap".to_string()));
    }
    if let Ok(raw) = std::env::var(CAP_ENV_VAR) {
        let cap: usize = raw.trim().parse().map_err(|_| {
            CliError::Usage(format!("{CAP_ENV_VAR}={raw:?} is not a whole number"))
        })?;
        if cap < 2 {
            return Err(CliError::Usage(format!("{CAP_ENV_VAR} must be at least 2")));
        }
        return Ok((cap, CAP_ENV_VAR.to_string()));
    }
    let cap = default_degree_cap(relations).max(2);
    Ok((cap, "default: twice the longest input plus two".to_string()))
}

const ORDER_NOTE: &str = "degree-lexicographic, natural generator precedence";
const HIGH_LABEL_NOTE: &str = "labels >= 6 rewrite the long alternating word to t times the \
     two-step-shorter one; leading words, hence dimension and growth, do not depend on that choice";

fn count(n: usize, singular: &str, plural: &str) -> String {
    if n == 1 {
        format!("{n} {singular}")
    } else {
        format!("{n} {plural}")
    }
}

fn emit_headers(out: &mut dyn Write, command: &str, prep: &Prepared) -> Result<(), CliError> {
    writeln!(out, "# tlgrowth {command}")?;
    writeln!(
        out,
        "# input: {} ({}, {})",
        prep.source,
        count(prep.graph.n_vertices() as usize, "vertex", "vertices"),
        count(prep.graph.n_edges(), "edge", "edges")
    )?;
    writeln!(out, "# order: {ORDER_NOTE}")?;
    writeln!(out, "# cap: {} ({})", prep.cap, prep.cap_source)?;
    writeln!(out, "# parameters: {}", prep.params_note)?;
    if prep.high_labels {
        writeln!(out, "# note: {HIGH_LABEL_NOTE}")?;
    }
    Ok(())
}

fn config_json(prep: &Prepared) -> serde_json::Value {
    json!({
        "input": prep.source,
        "vertices": prep.graph.n_vertices(),
        "edges": prep.graph.n_edges(),
        "order": ORDER_NOTE,
        "cap": prep.cap,
        "cap_source": prep.cap_source,
        "parameters": prep.params_note,
        "note": if prep.high_labels { Some(HIGH_LABEL_NOTE) } else { None },
    })
}

fn run_completion(prep: &Prepared) -> Result<GroebnerBasis, CliError> {
    complete(
        &prep.relations,
        &prep.order,
        prep.cap,
        CompletionStrategy::default(),
    )
    .map_err(|e| CliError::Domain(e.to_string()))
}

fn status_text(basis: &GroebnerBasis) -> String {
    match basis.status() {
        CompletionStatus::Complete => "complete".to_string(),
        CompletionStatus::Capped { at_degree } => format!("capped at degree {at_degree}"),
    }
}

fn require_complete(basis: &GroebnerBasis, cap: usize) -> Result<(), CliError> {
    if basis.is_complete() {
        Ok(())
    } else {
        Err(CliError::Domain(format!(
            "completion hit the degree cap {cap}; rerun with a larger --cap \
             (or set {CAP_ENV_VAR})"
        )))
    }
}

fn automaton_for(basis: &GroebnerBasis) -> Result<NormalWordAutomaton, CliError> {
    NormalWordAutomaton::from_basis(basis).map_err(|e| CliError::Domain(e.to_string()))
}

/// One-line rendering of a growth class, e.g. `polynomial degree 1 (linear)`.
fn class_line(class: &GrowthClass) -> String {
    match class {
        GrowthClass::FiniteDimensional { dimension } => {
            format!("finite-dimensional (dimension {dimension})")
        }
        GrowthClass::PolynomialGrowth { degree: 1 } => "polynomial degree 1 (linear)".to_string(),
        GrowthClass::PolynomialGrowth { degree } => format!("polynomial degree {degree}"),
        GrowthClass::Exponential => "exponential".to_string(),
        GrowthClass::Inconclusive { cap } => format!("inconclusive (cap {cap})"),
    }
}

fn class_json(class: &GrowthClass) -> serde_json::Value {
    match class {
        GrowthClass::FiniteDimensional { dimension } => {
            json!({"kind": "finite-dimensional", "dimension": dimension.to_string()})
        }
        GrowthClass::PolynomialGrowth { degree } => {
            json!({"kind": "polynomial", "degree": degree})
        }
        GrowthClass::Exponential => json!({"kind": "exponential"}),
        GrowthClass::Inconclusive { cap } => json!({"kind": "inconclusive", "cap": cap}),
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_gb(input: &InputArgs, run: &RunArgs, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let prep = prepare(input, run)?;
    let basis = run_completion(&prep)?;
    if json {
        let rules: Vec<serde_json::Value> = basis
            .rules()
            .iter()
            .map(|r| {
                json!({
                    "lhs": r.lhs().to_product_string(),
                    "rhs": r.rhs().to_string(),
                })
            })
            .collect();
        let payload = json!({
            "schema": "tlgrowth.gb/1",
            "config": config_json(&prep),
            "status": status_text(&basis),
            "rule_count": basis.rules().len(),
            "rules": rules,
        });
        writeln!(out, "{payload:#}")?;
        return Ok(());
    }
    emit_headers(out, "gb", &prep)?;
    writeln!(out, "# status: {} ({} rules)", status_text(&basis), basis.rules().len())?;
    for rule in basis.rules() {
        writeln!(out, "{rule}")?;
    }
    Ok(())
}

fn cmd_dim(input: &InputArgs, run: &RunArgs, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let prep = prepare(input, run)?;
    let basis = run_completion(&prep)?;
    require_complete(&basis, prep.cap)?;
    let total = automaton_for(&basis)?.total_dimension();
    let rendered = match &total {
        TotalDimension::Finite(d) => d.to_string(),
        TotalDimension::Infinite => "infinite".to_string(),
    };
    if json {
        let payload = json!({
            "schema": "tlgrowth.dim/1",
            "config": config_json(&prep),
            "dimension": match &total {
                TotalDimension::Finite(d) => Some(d.to_string()),
                TotalDimension::Infinite => None,
            },
            "infinite": matches!(total, TotalDimension::Infinite),
        });
        writeln!(out, "{payload:#}")?;
        return Ok(());
    }
    emit_headers(out, "dim", &prep)?;
    writeln!(out, "{rendered}")?;
    Ok(())
}

fn cmd_hilbert(
    input: &InputArgs,
    run: &RunArgs,
    max_degree: usize,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let prep = prepare(input, run)?;
    let basis = run_completion(&prep)?;
    require_complete(&basis, prep.cap)?;
    let counts = automaton_for(&basis)?.graded_counts(max_degree);
    if json {
        let payload = json!({
            "schema": "tlgrowth.hilbert/1",
            "config": config_json(&prep),
            "max_degree": max_degree,
            "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        });
        writeln!(out, "{payload:#}")?;
        return Ok(());
    }
    emit_headers(out, "hilbert", &prep)?;
    write!(out, "{}", graded_counts_csv(&counts))?;
    Ok(())
}

fn witness_note(out: &mut dyn Write, evidence: &tlgrowth::classify::WitnessEvidence) -> Result<(), CliError> {
    writeln!(
        out,
        "# witness: pair from bundled example {} transfers: q1 = {}, q2 = {} \
         (window {}, {} products checked)",
        evidence.fixture_tag,
        evidence.certificate.q1.to_product_string(),
        evidence.certificate.q2.to_product_string(),
        evidence.certificate.window,
        evidence.certificate.checked_count,
    )?;
    Ok(())
}

fn evidence_lines(
    out: &mut dyn Write,
    computed: &ComputedClass,
) -> Result<(), CliError> {
    match &computed.class {
        GrowthClass::Inconclusive { cap } => {
            writeln!(
                out,
                "# completion hit the degree cap {cap} and no bundled pair transfers; \
                 rerun with a larger --cap"
            )?;
        }
        _ => {
            if computed.basis.is_complete() {
                let automaton = automaton_for(&computed.basis)?;
                let counts = automaton.graded_counts(8);
                let rendered: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                writeln!(
                    out,
                    "# evidence: graded counts (degrees 0..=8): {}",
                    rendered.join(", ")
                )?;
            } else {
                writeln!(out, "# basis: {}", status_text(&computed.basis))?;
            }
            if let Some(evidence) = &computed.witness {
                witness_note(out, evidence)?;
            }
        }
    }
    Ok(())
}

fn cmd_growth(input: &InputArgs, run: &RunArgs, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let prep = prepare(input, run)?;
    let computed = classify_relations(&prep.graph, &prep.relations, prep.cap)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    if json {
        let payload = json!({
            "schema": "tlgrowth.growth/1",
            "config": config_json(&prep),
            "class": class_json(&computed.class),
            "basis_status": status_text(&computed.basis),
            "witness": computed.witness.as_ref().map(|w| json!({
                "from_example": w.fixture_tag,
                "q1": w.certificate.q1.to_string(),
                "q2": w.certificate.q2.to_string(),
                "window": w.certificate.window,
                "checked": w.certificate.checked_count,
            })),
        });
        writeln!(out, "{payload:#}")?;
        return Ok(());
    }
    emit_headers(out, "growth", &prep)?;
    writeln!(out, "{}", class_line(&computed.class))?;
    evidence_lines(out, &computed)?;
    Ok(())
}

fn cmd_growth_graph(
    input: &InputArgs,
    run: &RunArgs,
    export: Option<&std::path::Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let prep = prepare(input, run)?;
    let basis = run_completion(&prep)?;
    require_complete(&basis, prep.cap)?;
    let graph = automaton_for(&basis)?.growth_graph();
    emit_headers(out, "growth-graph", &prep)?;
    writeln!(
        out,
        "# vertices: {} (normal words of length {}), edges: {}",
        graph.vertex_count(),
        graph.vertex_len(),
        graph.edge_count()
    )?;
    match export {
        Some(path) => {
            std::fs::write(path, graph.to_text()).map_err(|e| {
                CliError::Domain(format!("cannot write {}: {e}", path.display()))
            })?;
            writeln!(out, "# exported: {}", path.display())?;
        }
        None => {
            write!(out, "{}", graph.to_text())?;
        }
    }
    Ok(())
}

fn cmd_witness(
    input: &InputArgs,
    run: &RunArgs,
    q1: Option<&str>,
    q2: Option<&str>,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let prep = prepare(input, run)?;
    let parse_word = |text: &str, which: &str| -> Result<Word, CliError> {
        Word::from_str(text)
            .map_err(|e| CliError::Usage(format!("--{which} {text:?}: {e}")))
    };
    let (q1, q2, bundled_note) = match (q1, q2) {
        (Some(a), Some(b)) => (parse_word(a, "q1")?, parse_word(b, "q2")?, None),
        (None, None) => {
            let tag = prep.fig_tag.as_deref().ok_or_else(|| {
                CliError::Usage(
                    "provide --q1 and --q2, or pick a bundled pair via --preset fig TAG"
                        .to_string(),
                )
            })?;
            let fixture = witness_fixture(tag).ok_or_else(|| {
                CliError::Usage(format!("no bundled pair for example {tag}"))
            })?;
            (fixture.q1.clone(), fixture.q2.clone(), fixture.note.clone())
        }
        _ => {
            return Err(CliError::Usage(
                "--q1 and --q2 must be given together".to_string(),
            ))
        }
    };

    let basis = run_completion(&prep)?;
    let verification = verify_free_pair(&basis, &q1, &q2);

    if json {
        let payload = json!({
            "schema": "tlgrowth.witness/1",
            "config": config_json(&prep),
            "q1": q1.to_string(),
            "q2": q2.to_string(),
            "basis_status": status_text(&basis),
            "bundled_note": bundled_note,
            "verified": verification.is_ok(),
            "certificate": verification.as_ref().ok().map(|c| json!({
                "window": c.window,
                "checked": c.checked_count,
            })),
            "failure": verification.as_ref().err().map(|e| e.to_string()),
        });
        writeln!(out, "{payload:#}")?;
        return match verification {
            Ok(_) => Ok(()),
            Err(e) => Err(CliError::Domain(format!("not verified: {e}"))),
        };
    }

    emit_headers(out, "witness", &prep)?;
    writeln!(out, "# q1 = {}, q2 = {}", q1.to_product_string(), q2.to_product_string())?;
    if let Some(note) = &bundled_note {
        writeln!(out, "# note: bundled pair is annotated {note:?}")?;
    }
    writeln!(out, "# basis: {}", status_text(&basis))?;
    if !basis.is_complete() {
        writeln!(
            out,
            "# a capped basis over-approximates the normal words, so a certificate \
             is strong evidence rather than proof"
        )?;
    }
    match verification {
        Ok(cert) => {
            let ways = exponential_lower_bound(&cert, 12);
            let total: num_bigint::BigUint = ways.iter().sum();
            writeln!(
                out,
                "# evidence: at least {total} distinct normal products up to degree 12"
            )?;
            writeln!(
                out,
                "verified: window {}, {} products checked",
                cert.window, cert.checked_count
            )?;
            Ok(())
        }
        Err(e) => Err(CliError::Domain(format!("not verified: {e}"))),
    }
}

fn theorem_line(verdict: &TheoremVerdict) -> String {
    let mut line = format!("{} ({})", verdict.class, verdict.family_summary());
    if let Some(d) = &verdict.expected_dimension {
        line.push_str(&format!(", expected dimension {d}"));
    }
    line
}

fn cmd_classify(
    input: &InputArgs,
    run: &RunArgs,
    cross_check: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let prep = prepare(input, run)?;
    let computed = classify_relations(&prep.graph, &prep.relations, prep.cap)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let structural = if cross_check {
        Some(classify_by_theorem(&prep.graph).map_err(|e| CliError::Domain(e.to_string()))?)
    } else {
        None
    };
    let agreement = structural.as_ref().map(|t| compare(t, &computed.class));

    if json {
        let payload = json!({
            "schema": "tlgrowth.classify/1",
            "config": config_json(&prep),
            "computed": class_json(&computed.class),
            "basis_status": status_text(&computed.basis),
            "witness": computed.witness.as_ref().map(|w| json!({
                "from_example": w.fixture_tag,
                "q1": w.certificate.q1.to_string(),
                "q2": w.certificate.q2.to_string(),
                "window": w.certificate.window,
            })),
            "structural": structural.as_ref().map(|t| json!({
                "class": t.class.to_string(),
                "family": t.family.as_ref().map(|f| f.to_string()),
                "expected_dimension": t.expected_dimension.as_ref().map(|d| d.to_string()),
            })),
            "agreement": agreement.as_ref().map(|a| a.to_string()),
        });
        writeln!(out, "{payload:#}")?;
        return Ok(());
    }

    emit_headers(out, "classify", &prep)?;
    if let Some(verdict) = &structural {
        writeln!(out, "structural: {}", theorem_line(verdict))?;
    }
    writeln!(out, "computed: {}", class_line(&computed.class))?;
    if let Some(evidence) = &computed.witness {
        witness_note(out, evidence)?;
    }
    if let Some(agreement) = &agreement {
        writeln!(out, "agreement: {agreement}")?;
    }
    Ok(())
}

fn cmd_preset(which: PresetCmd, out: &mut dyn Write) -> Result<(), CliError> {
    match which {
        PresetCmd::List => {
            writeln!(out, "# tlgrowth preset list")?;
            for (name, description) in preset_catalog() {
                writeln!(out, "{name:<12} {description}")?;
            }
            Ok(())
        }
        PresetCmd::Show { name, arg } => {
            let id = FamilyId::from_cli(&name, arg.as_deref()).map_err(|e| {
                CliError::Usage(format!("preset show {name}: {e}"))
            })?;
            let graph = preset(&id)
                .map_err(|e| CliError::Usage(format!("preset show {name}: {e}")))?;
            writeln!(out, "# tlgrowth preset show")?;
            writeln!(
                out,
                "# preset: {} ({}, {})",
                id,
                count(graph.n_vertices() as usize, "vertex", "vertices"),
                count(graph.n_edges(), "edge", "edges")
            )?;
            writeln!(out, "{}", graph.to_json())?;
            Ok(())
        }
    }
}

fn cmd_sweep(
    max_vertices: u8,
    labels: &[u32],
    cap: Option<usize>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if !(1..=6).contains(&max_vertices) {
        return Err(CliError::Usage(
            "--max-vertices must be between 1 and 6".to_string(),
        ));
    }
    if labels.is_empty() || labels.iter().any(|&m| m < 3) {
        return Err(CliError::Usage(
            "--labels needs at least one value, each >= 3".to_string(),
        ));
    }
    let max_label = usize::try_from(*labels.iter().max().expect("nonempty")).unwrap_or(usize::MAX);
    let (cap, cap_source) = match cap {
        Some(c) if c >= 2 => (c, "--cap"),
        Some(_) => return Err(CliError::Usage("--cap must be at least 2".to_string())),
        None => (
            2 * max_label + 2,
            "default: twice the largest label plus two",
        ),
    };

    writeln!(out, "# tlgrowth sweep")?;
    writeln!(
        out,
        "# connected diagrams, up to {} vertices, labels {{{}}}, one per isomorphism class",
        max_vertices,
        labels
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )?;
    writeln!(out, "# order: {ORDER_NOTE}")?;
    writeln!(out, "# cap: {cap} ({cap_source})")?;
    writeln!(out, "{}", SweepRow::CSV_HEADER)?;
    out.flush()?;

    let mut disagreements = 0usize;
    let mut inconclusive = 0usize;
    let mut total = 0usize;
    for (key, graph) in connected_diagrams(max_vertices, labels) {
        let report = tlgrowth::classify::cross_check(&graph, cap)
            .map_err(|e| CliError::Domain(format!("{key}: {e}")))?;
        let row = SweepRow {
            n_vertices: graph.n_vertices(),
            key,
            theorem: report.theorem,
            computed: report.computed.class,
            agreement: report.agreement,
        };
        match &row.agreement {
            Agreement::Disagree { .. } => disagreements += 1,
            Agreement::Inconclusive => inconclusive += 1,
            Agreement::Agree => {}
        }
        total += 1;
        writeln!(out, "{}", row.csv_line())?;
        out.flush()?;
    }
    writeln!(
        out,
        "# summary: {total} diagrams, {disagreements} disagreements, {inconclusive} inconclusive"
    )?;
    Ok(())
}
