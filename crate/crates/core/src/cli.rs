//! Command-line interface: argument parsing, source resolution, rendering
//! and the exit-code contract.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::constructions::{self, CheckStatus, IdentityCheckReport, CONSTRUCTION_NAMES};
use crate::curve_config::CurveConfigError;
use crate::derivations::{Derivation, DerivationError};
use crate::dynkin::{isotropic_class, maximal_parabolics, type_census, vinberg_check, DualGraph, DynkinError};
use crate::enriques_rules::{classify, trace, FibrationFacts, RulesError};
use crate::suite::{run_suite, SuiteError};
use crate::weierstrass::{builtins, WeierstrassCurve, WeierstrassError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_UNKNOWN_BUILTIN: i32 = 4;

const EXIT_HELP: &str = "\
Exit codes:
  0  success (no check failed)
  1  at least one check failed
  2  internal error, unreadable file or invalid command line
  3  parse error in an input file or expression (reported with line and column)
  4  unknown built-in name

Sources are built-in names or paths to JSON files in the module formats.
Built-in curves: E, R, Ystar, kummerEF. Derivations: D, Dprime.
Graphs: petersen, petersen-line, typeVII, E10. Facts: factsI .. factsVII.";

#[derive(Debug, Parser)]
#[command(name = "enriques", version, about = "Exact verification of characteristic-2 Enriques surface computations")]
#[command(after_help = EXIT_HELP)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the verification suite.
    Verify {
        target: VerifyTarget,
        /// Restrict to one module (weierstrass, derivations, curve_config,
        /// dynkin, enriques_rules, constructions).
        #[arg(long)]
        only: Option<String>,
        /// Worker threads (default: number of logical processors).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Discriminant, j-invariant and bad fibers of a Weierstrass curve.
    Fibration { source: String },
    /// p-closure, type and integral fibers of a derivation.
    Derivation { source: String },
    /// Parabolic subdiagram analysis of a dual graph.
    #[command(group(ArgGroup::new("mode").args(["vinberg", "maximal", "isotropic"])))]
    Graph {
        source: String,
        /// Vinberg finite-index criterion (the default).
        #[arg(long)]
        vinberg: bool,
        /// Maximal parabolic subdiagrams.
        #[arg(long)]
        maximal: bool,
        /// Isotropic classes of the components of maximal parabolics.
        #[arg(long)]
        isotropic: bool,
    },
    /// Admissible Enriques classes for a set of fibration facts.
    Classify { source: String },
    /// Identity checks of an explicit construction (typeI, typeII, typeVI,
    /// kummer, sigmaY or all).
    Constructions { case: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    UnknownBuiltin(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::UnknownBuiltin(_) => EXIT_UNKNOWN_BUILTIN,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

fn from_algebra(e: &AlgebraError) -> Option<CliError> {
    matches!(e, AlgebraError::Parse(_) | AlgebraError::InvalidVariable(_)).then(|| CliError::Parse(e.to_string()))
}

impl From<WeierstrassError> for CliError {
    fn from(e: WeierstrassError) -> Self {
        match &e {
            WeierstrassError::UnknownBuiltin(_) => CliError::UnknownBuiltin(e.to_string()),
            WeierstrassError::Format(_) => CliError::Parse(e.to_string()),
            WeierstrassError::Algebra(a) => from_algebra(a).unwrap_or(CliError::Internal(e.to_string())),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<DerivationError> for CliError {
    fn from(e: DerivationError) -> Self {
        match &e {
            DerivationError::UnknownBuiltin(_) => CliError::UnknownBuiltin(e.to_string()),
            DerivationError::Format(_) => CliError::Parse(e.to_string()),
            DerivationError::Algebra(a) => from_algebra(a).unwrap_or(CliError::Internal(e.to_string())),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<DynkinError> for CliError {
    fn from(e: DynkinError) -> Self {
        match &e {
            DynkinError::UnknownBuiltin(_) => CliError::UnknownBuiltin(e.to_string()),
            DynkinError::Format(_) | DynkinError::UnknownVertex(_) | DynkinError::TripleEdge(..) => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<RulesError> for CliError {
    fn from(e: RulesError) -> Self {
        match e {
            RulesError::UnknownBuiltin(_) => CliError::UnknownBuiltin(e.to_string()),
            RulesError::MalformedFacts(_) => CliError::Parse(e.to_string()),
            RulesError::Graph(g) => g.into(),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<CurveConfigError> for CliError {
    fn from(e: CurveConfigError) -> Self {
        match e {
            CurveConfigError::UnknownBuiltin(_) => CliError::UnknownBuiltin(e.to_string()),
            CurveConfigError::Format(_) => CliError::Parse(e.to_string()),
            CurveConfigError::Graph(g) => g.into(),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::UnknownModule(_) => CliError::UnknownBuiltin(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

/// Rendered output and whether any reported check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, failed: false }
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed {
            EXIT_CHECK_FAILED
        } else {
            EXIT_OK
        }
    }
}

/// Reads `source` as a file when one exists at that path, and as a built-in
/// name otherwise.
fn load<T, E: Into<CliError>>(
    source: &str,
    builtin: impl Fn(&str) -> Result<T, E>,
    parse: impl Fn(&str) -> Result<T, E>,
) -> Result<T, CliError> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Internal(format!("{source}: {e}")))?;
        return parse(&text).map_err(|e| match e.into() {
            CliError::Parse(m) => CliError::Parse(format!("{source}: {m}")),
            other => other,
        });
    }
    builtin(source).map_err(Into::into)
}

fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let md = cli.format == Format::Md;
    match &cli.command {
        Command::Verify { target: VerifyTarget::All, only, jobs } => {
            let report = run_suite(only.as_deref(), *jobs)?;
            let text = if md { report.to_markdown() } else { report.to_json() };
            Ok(Outcome { text, failed: report.has_failures() })
        }
        Command::Fibration { source } => {
            let curve = load(source, builtins::curve, WeierstrassCurve::from_json)?;
            fibration(&curve, md).map(Outcome::ok)
        }
        Command::Derivation { source } => {
            let d = load(source, Derivation::builtin, Derivation::from_json)?;
            derivation(&d, md).map(Outcome::ok)
        }
        Command::Graph { source, maximal, isotropic, .. } => {
            let g = load(source, DualGraph::builtin, DualGraph::from_json)?;
            let text = if *maximal {
                graph_maximal(source, &g, md)?
            } else if *isotropic {
                graph_isotropic(source, &g, md)?
            } else {
                graph_vinberg(source, &g, md)?
            };
            Ok(Outcome::ok(text))
        }
        Command::Classify { source } => {
            let name = Path::new(source).file_stem().and_then(|s| s.to_str()).unwrap_or(source).to_string();
            let facts = load(source, FibrationFacts::builtin, |t| FibrationFacts::from_json(&name, t))?;
            classify_facts(&facts, md).map(Outcome::ok)
        }
        Command::Constructions { case } => {
            let names: Vec<&str> = if case == "all" { CONSTRUCTION_NAMES.to_vec() } else { vec![case.as_str()] };
            let mut reports = Vec::new();
            for n in names {
                reports.extend(constructions::verify_construction(n).ok_or_else(|| {
                    CliError::UnknownBuiltin(format!(
                        "unknown construction `{n}`; expected one of {}, all",
                        CONSTRUCTION_NAMES.join(", ")
                    ))
                })?);
            }
            let failed = reports.iter().any(|r| r.status == CheckStatus::Fail);
            Ok(Outcome { text: render_constructions(&reports, md), failed })
        }
    }
}

fn fibration(curve: &WeierstrassCurve, md: bool) -> Result<String, CliError> {
    let inv = curve.invariants()?;
    let fibers = if curve.base.is_some() { curve.place_analysis()? } else { Vec::new() };
    if !md {
        return Ok(to_json(&json!({
            "curve": curve.to_string(),
            "discriminant": inv.delta.to_string(),
            "j": inv.j.to_string(),
            "fibers": fibers,
        })));
    }
    let mut s = format!("# Fibration\n\n`{curve}`\n\n- discriminant: `{}`\n- j: `{}`\n\n", inv.delta, inv.j);
    if !fibers.is_empty() {
        s.push_str("| place | degree | v(Delta) | v(j) | reduction | type |\n|---|---|---|---|---|---|\n");
        for f in &fibers {
            let kind = f.kodaira.map_or_else(|| "additive".to_string(), |k| k.to_string());
            let _ =
                writeln!(s, "| {} | {} | {} | {} | {} | {} |", f.place, f.degree, f.v_delta, f.v_j, f.reduction, kind);
        }
    }
    Ok(s)
}

fn derivation(d: &Derivation, md: bool) -> Result<String, CliError> {
    let file = d.to_file();
    let h = d.p_closure_multiplier();
    let kind = d.vector_field_type().ok();
    let places: Vec<(String, u32)> = d.integral_fiber_places()?.iter().map(|(p, m)| (p.to_string(), *m)).collect();
    if !md {
        return Ok(to_json(&json!({
            "derivation": file,
            "p_closed": h.is_some(),
            "multiplier": h.as_ref().map(ToString::to_string),
            "type": kind,
            "integral_fiber_places": places.iter().map(|(p, m)| json!({"place": p, "multiplicity": m})).collect::<Vec<_>>(),
        })));
    }
    let mut s = format!("# Derivation\n\nD = ({}) d/dt + ({}) d/dx\n\n", file.coeff_t, file.coeff_x);
    match &h {
        Some(h) => {
            let _ = writeln!(s, "- p-closed: D^2 = ({h}) D");
        }
        None => s.push_str("- not p-closed\n"),
    }
    if let Some(k) = kind {
        let _ = writeln!(s, "- type: {}", serde_json::to_value(k).expect("serializable").as_str().unwrap_or_default());
    }
    let list: Vec<String> = places.iter().map(|(p, m)| format!("{p} (multiplicity {m})")).collect();
    let _ = writeln!(s, "- integral fiber places: {}", if list.is_empty() { "none".into() } else { list.join(", ") });
    Ok(s)
}

fn graph_vinberg(source: &str, g: &DualGraph, md: bool) -> Result<String, CliError> {
    let r = vinberg_check(g)?;
    if !md {
        return Ok(to_json(&json!({ "graph": source, "vinberg": r })));
    }
    let mut s = format!("# Vinberg criterion for {source}\n\n");
    let _ = writeln!(s, "- finite index: {}", if r.finite_index { "yes" } else { "no" });
    let _ = writeln!(s, "- lattice rank {}, signature {:?}", r.lattice_rank, r.signature);
    let _ = writeln!(s, "- connected parabolic subdiagrams: {}", r.connected_parabolics);
    if let Some(c) = &r.counterexample {
        let _ = writeln!(s, "- counterexample: {c}");
    }
    if let Some(reason) = &r.reason {
        let _ = writeln!(s, "- {reason}");
    }
    if !r.witnesses.is_empty() {
        s.push_str("\n| connected type | rank-8 extension |\n|---|---|\n");
        for (c, w) in &r.witnesses {
            let _ = writeln!(s, "| {c} | {w} |");
        }
    }
    Ok(s)
}

fn graph_maximal(source: &str, g: &DualGraph, md: bool) -> Result<String, CliError> {
    let max = maximal_parabolics(g)?;
    let census = type_census(&max);
    if !md {
        let census: Vec<Value> = census.iter().map(|(t, n)| json!({"type": t, "count": n})).collect();
        let diagrams: Vec<Value> = max
            .iter()
            .map(|p| json!({"type": p.type_string(), "rank": p.rank(), "components": p.describe(g)}))
            .collect();
        return Ok(to_json(&json!({ "graph": source, "types": census, "maximal": diagrams })));
    }
    let mut s = format!("# Maximal parabolic subdiagrams of {source}\n\n| type | rank | count |\n|---|---|---|\n");
    for (t, n) in &census {
        let rank = max.iter().find(|p| &p.type_string() == t).map_or(0, |p| p.rank());
        let _ = writeln!(s, "| {t} | {rank} | {n} |");
    }
    s.push_str("\n| type | components |\n|---|---|\n");
    for p in &max {
        let _ = writeln!(s, "| {} | {} |", p.type_string(), escape(&p.describe(g)));
    }
    Ok(s)
}

fn graph_isotropic(source: &str, g: &DualGraph, md: bool) -> Result<String, CliError> {
    let mut comps: Vec<_> = maximal_parabolics(g)?.into_iter().flat_map(|p| p.components).collect();
    comps.sort();
    comps.dedup();
    let mut rows = Vec::new();
    for c in &comps {
        let marks = isotropic_class(g, &c.vertices)?;
        let names: Vec<&str> = c.vertices.iter().map(|&i| g.name(i)).collect();
        rows.push((c.label.to_string(), names.join(","), marks));
    }
    if !md {
        let items: Vec<Value> = rows.iter().map(|(l, v, m)| json!({"label": l, "vertices": v, "marks": m})).collect();
        return Ok(to_json(&json!({ "graph": source, "isotropic": items })));
    }
    let mut s = format!("# Isotropic classes on {source}\n\n| label | vertices | marks |\n|---|---|---|\n");
    for (l, v, m) in &rows {
        let marks: Vec<String> = m.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "| {l} | {} | {} |", escape(v), marks.join(","));
    }
    Ok(s)
}

fn classify_facts(facts: &FibrationFacts, md: bool) -> Result<String, CliError> {
    let set = classify(facts)?;
    let exclusions = trace(facts);
    let fibrations: Vec<String> = facts.fibrations.iter().map(|f| f.describe()).collect();
    if !md {
        return Ok(to_json(&json!({
            "facts": facts.name,
            "provenance": facts.provenance,
            "fibrations": fibrations,
            "classes": set,
            "verdict": set.to_string(),
            "exclusions": exclusions,
        })));
    }
    let mut s = format!("# Classification of {}\n\nverdict: {set}\n\n", facts.name);
    for f in &fibrations {
        let _ = writeln!(s, "- {f}");
    }
    if !exclusions.is_empty() {
        s.push_str("\n| excluded | fibration | rule |\n|---|---|---|\n");
        for e in &exclusions {
            let rule = serde_json::to_value(e.rule).expect("serializable");
            let _ = writeln!(s, "| {} | {} | {} |", e.class, e.description, rule.as_str().unwrap_or_default());
        }
    }
    Ok(s)
}

fn escape(s: &str) -> String {
    s.replace('|', "\\|")
}

fn render_constructions(reports: &[IdentityCheckReport], md: bool) -> String {
    if !md {
        return to_json(&json!({ "checks": reports }));
    }
    let mut s = String::from("| check | status | details |\n|---|---|---|\n");
    for r in reports {
        let mut details = escape(&r.details);
        if let Some(res) = &r.residual {
            let _ = write!(details, " [residual: {}]", escape(res));
        }
        let _ = writeln!(s, "| `{}` | {} | {} |", r.check_id, r.status, details);
    }
    s
}

/// Parses `args`, runs the command and writes the output. Returns the process
/// exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INTERNAL } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &outcome.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return EXIT_INTERNAL;
                }
            } else {
                print!("{}", outcome.text);
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("enriques").chain(args.iter().copied())).unwrap();
        execute(&cli)
    }

    #[test]
    fn help_documents_exit_codes() {
        use clap::CommandFactory;
        let help = Cli::command().render_long_help().to_string();
        assert!(help.contains("3  parse error"), "{help}");
        assert!(help.contains("4  unknown built-in"));
    }

    #[test]
    fn unknown_builtin_is_exit_4() {
        assert_eq!(run(&["fibration", "nope"]).unwrap_err().exit_code(), EXIT_UNKNOWN_BUILTIN);
        assert_eq!(run(&["graph", "nope"]).unwrap_err().exit_code(), EXIT_UNKNOWN_BUILTIN);
        assert_eq!(run(&["constructions", "nope"]).unwrap_err().exit_code(), EXIT_UNKNOWN_BUILTIN);
    }

    #[test]
    fn classify_type_iii_is_empty() {
        let out = run(&["classify", "factsIII", "--format", "md"]).unwrap();
        assert!(out.text.contains("verdict: none (non-existent)"), "{}", out.text);
    }

    #[test]
    fn ystar_fiber_table() {
        let out = run(&["fibration", "Ystar"]).unwrap();
        let v: Value = serde_json::from_str(&out.text).unwrap();
        let kinds: Vec<&str> = v["fibers"].as_array().unwrap().iter().map(|f| f["kodaira"].as_str().unwrap()).collect();
        assert_eq!(kinds, ["I10", "I2", "I2", "I10"]);
    }
}
