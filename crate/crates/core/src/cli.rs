//! Command-line front end. Results go to standard output as JSON carrying
//! `"schema": 1`; a one-line summary goes to standard error.
//!
//! Exit status: 0 on success, 1 for usage, input or format errors, 2 when a
//! verification fails (a certificate is rejected, a scan finds a violation,
//! a coherence check fails).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{enumerate_algebras_with, EnumerationConfig, FiniteAlgebra, Law};
use crate::axioms::{cycle_free_laws, restriction_semigroup_laws, soundness_scan, AxiomCatalog, CatalogName, ScanConfig};
use crate::decision::{certify, Decider, Verdict};
use crate::demonic_repr::{
    range_defects_unchecked, repair, verify_partial_repr, wagner_preston, RepairMode, DEFAULT_REPAIR_ROUNDS,
};
use crate::error::{Error, Result};
use crate::relation::{eval, Mode, RelationalModel};
use crate::saturation::{coherence_check, parse_element_pool, run_saturation_with};
use crate::term::{parse_term, Term};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "domran", version, about = "Decide, evaluate and explore equations of relations with domain, range and composition")]
pub struct Cli {
    /// Worker threads for commands that can use them.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide `LHS <= RHS` or `LHS = RHS` over relations with angelic composition.
    Decide(DecideArgs),
    /// Evaluate a term in a model file.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Angelic)]
        mode: Mode,
        term: String,
    },
    /// Check an axiom catalog on seeded random models.
    Scan {
        #[arg(long, value_enum)]
        catalog: CatalogName,
        #[arg(long, default_value_t = 1000)]
        models: usize,
        /// Largest universe; sizes are drawn from 2 up to this.
        #[arg(long, default_value_t = 5)]
        universe: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Random substitution instances per axiom and model.
        #[arg(long, default_value_t = 3)]
        substitutions: usize,
    },
    /// Axiom catalogs.
    Axioms {
        #[command(subcommand)]
        action: AxiomsAction,
    },
    /// Run finite stages of the labelled-graph construction.
    Saturate {
        /// JSON array of terms, or one term per line.
        #[arg(long)]
        elements: PathBuf,
        #[arg(long, default_value_t = 50)]
        rounds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check coherence after every step.
        #[arg(long)]
        check_coherence: bool,
        /// Also write the final stage as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Enumerate finite (∗, D, R) algebras satisfying a set of laws.
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Comma-separated: `axd`, `rs` (restriction semigroup laws), `cyclefree`.
        #[arg(long, value_delimiter = ',', default_value = "axd")]
        constraints: Vec<ConstraintSet>,
        #[arg(long, default_value_t = EnumerationConfig::default().node_budget)]
        budget: u64,
        /// Keep one algebra per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Wagner–Preston representation of an algebra file, with range-defect repair.
    Wp {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = DEFAULT_REPAIR_ROUNDS)]
        repair_rounds: usize,
        /// Repair even when the algebra is not cycle-free.
        #[arg(long = "unsafe")]
        unsafe_repair: bool,
    },
    /// Re-check a verdict produced by `decide`.
    Certify {
        #[arg(long)]
        verdict: PathBuf,
        lhs: String,
        rhs: String,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct DecideKind {
    #[arg(long)]
    leq: bool,
    #[arg(long)]
    eq: bool,
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    #[command(flatten)]
    kind: DecideKind,
    lhs: String,
    rhs: String,
}

#[derive(Subcommand, Debug)]
pub enum AxiomsAction {
    /// Print label and both sides of every law.
    List {
        #[arg(long, value_enum)]
        catalog: CatalogName,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstraintSet {
    Axd,
    Rs,
    Cyclefree,
}

impl ConstraintSet {
    fn laws(self) -> Vec<Law> {
        match self {
            ConstraintSet::Axd => AxiomCatalog::get(CatalogName::AxD).equations.iter().map(|a| a.as_law()).collect(),
            ConstraintSet::Rs => restriction_semigroup_laws(),
            ConstraintSet::Cyclefree => cycle_free_laws(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            ConstraintSet::Axd => "axd",
            ConstraintSet::Rs => "rs",
            ConstraintSet::Cyclefree => "cyclefree",
        }
    }
}

/// What a command produced: the JSON document (or plain text), a summary
/// line, and the exit status.
struct Output {
    stdout: String,
    summary: String,
    status: i32,
}

impl Output {
    fn json(mut value: Value, summary: String, status: i32) -> Output {
        if let Value::Object(map) = &mut value {
            map.insert("schema".into(), json!(SCHEMA_VERSION));
        }
        let mut stdout = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        stdout.push('\n');
        Output { stdout, summary, status }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn verdict_value(v: &Verdict, lhs: &Term, rhs: &Term) -> Value {
    let mut value = to_value(v);
    if let Value::Object(map) = &mut value {
        map.insert("lhs".into(), json!(lhs.to_string()));
        map.insert("rhs".into(), json!(rhs.to_string()));
    }
    value
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Decide(args) => {
            let (lhs, rhs) = (parse_term(&args.lhs)?, parse_term(&args.rhs)?);
            let mut decider = Decider::new();
            let v = if args.kind.eq { decider.decide_eq(&lhs, &rhs)? } else { decider.decide_leq(&lhs, &rhs)? };
            let op = if args.kind.eq { "=" } else { "<=" };
            let summary = format!("{lhs} {op} {rhs}: {}", if v.valid { "valid" } else { "invalid" });
            Ok(Output::json(verdict_value(&v, &lhs, &rhs), summary, 0))
        }
        Command::Eval { model, mode, term } => {
            let m = RelationalModel::from_json(&read(model)?)?;
            let t = parse_term(term)?;
            let r = eval(&t, &m, *mode)?;
            let pairs: Vec<[usize; 2]> = r.pairs().into_iter().map(|(u, v)| [u, v]).collect();
            let summary = format!("{t} ({mode}) has {} pairs", pairs.len());
            Ok(Output::json(
                json!({"term": t.to_string(), "mode": mode, "universe": m.universe(), "pairs": pairs}),
                summary,
                0,
            ))
        }
        Command::Scan { catalog, models, universe, seed, depth, substitutions } => {
            let cat = AxiomCatalog::get(*catalog);
            let config = ScanConfig {
                models: *models,
                min_universe: (*universe).min(2),
                max_universe: *universe,
                substitution_depth: *depth,
                substitutions_per_axiom: *substitutions,
                seed: *seed,
                threads: cli.threads,
            };
            let report = soundness_scan(&cat, catalog.mode(), &config)?;
            let status = if report.violations.is_empty() { 0 } else { 2 };
            let summary = format!(
                "{catalog}: {} models, {} instances, {} violations",
                report.models_tested,
                report.instances_checked,
                report.violations.len()
            );
            Ok(Output::json(to_value(&report), summary, status))
        }
        Command::Axioms { action: AxiomsAction::List { catalog, json } } => {
            let cat = AxiomCatalog::get(*catalog);
            let summary = format!("{catalog}: {} equations, {} quasi-equations", cat.equations.len(), cat.quasi_equations.len());
            if *json {
                Ok(Output::json(to_value(&cat), summary, 0))
            } else {
                Ok(Output { stdout: cat.listing(), summary, status: 0 })
            }
        }
        Command::Saturate { elements, rounds, seed, check_coherence, dot } => {
            let pool = parse_element_pool(&read(elements)?)?;
            let mut incoherent: Vec<Value> = Vec::new();
            let mut decider = Decider::new();
            let run = run_saturation_with(&mut decider, &pool, *rounds, *seed, |d, g, record| {
                if *check_coherence {
                    let report = coherence_check(d, g)?;
                    if !report.is_coherent() {
                        incoherent.push(json!({"round": record.round, "failures": report.failures}));
                    }
                }
                Ok(())
            })?;
            if let Some(path) = dot {
                std::fs::write(path, run.graph.to_dot())?;
            }
            let applied = run.steps.iter().filter(|s| s.outcome.applied()).count();
            let uncured = run.uncured_initial_defects().len();
            let mut value = to_value(&run);
            if let Value::Object(map) = &mut value {
                map.insert("uncured_initial_defects".into(), json!(uncured));
                if *check_coherence {
                    map.insert("coherence_failures".into(), json!(incoherent));
                }
            }
            let summary = format!(
                "{} rounds, {applied} steps applied, {} nodes, {} of {} initial defects uncured, {} defects now",
                run.steps.len(),
                run.graph.node_count(),
                uncured,
                run.initial_defects.len(),
                run.defects.len()
            );
            Ok(Output::json(value, summary, if incoherent.is_empty() { 0 } else { 2 }))
        }
        Command::Enumerate { size, constraints, budget, up_to_iso } => {
            let mut laws = Vec::new();
            let mut names = Vec::new();
            for c in constraints {
                if !names.contains(&c.name()) {
                    laws.extend(c.laws());
                    names.push(c.name());
                }
            }
            let config = EnumerationConfig { node_budget: *budget, up_to_isomorphism: *up_to_iso };
            let mut algebras = Vec::new();
            let outcome = enumerate_algebras_with(*size, &laws, &config, |a| algebras.push(a.clone()))?;
            let all_domain = algebras.iter().filter(|a| a.elements().all(|x| a.is_domain_element(x))).count();
            let summary = format!(
                "size {size} [{}]: {} algebras{}",
                names.join(","),
                outcome.algebras_found,
                if outcome.complete { "" } else { " (budget exhausted, incomplete)" }
            );
            Ok(Output::json(
                json!({
                    "size": size,
                    "constraints": names,
                    "complete": outcome.complete,
                    "nodes_visited": outcome.nodes_visited,
                    "count": outcome.algebras_found,
                    "all_domain_elements": all_domain,
                    "algebras": algebras,
                }),
                summary,
                0,
            ))
        }
        Command::Wp { algebra, repair_rounds, unsafe_repair } => {
            let alg = FiniteAlgebra::from_json(&read(algebra)?)?;
            let wp = wagner_preston(&alg)?;
            let verify = verify_partial_repr(&alg, &wp);
            let defects = range_defects_unchecked(&alg, &wp);
            let mode = if *unsafe_repair { RepairMode::Unsafe } else { RepairMode::Checked };
            let repaired = match repair(&alg, wp.clone(), *repair_rounds, mode) {
                Ok(hist) => {
                    let after = verify_partial_repr(&alg, &hist.repr);
                    json!({"history": hist, "verify": after, "defects": range_defects_unchecked(&alg, &hist.repr)})
                }
                Err(Error::Precondition(reason)) => json!({"skipped": reason}),
                Err(e) => return Err(e),
            };
            let summary = format!(
                "{} points, {} range defects, representation {}",
                wp.point_count(),
                defects.len(),
                if verify.passes() { "verified" } else { "fails verification" }
            );
            let status = if verify.passes() { 0 } else { 2 };
            Ok(Output::json(
                json!({"representation": wp, "verify": verify, "defects": defects, "repair": repaired}),
                summary,
                status,
            ))
        }
        Command::Certify { verdict, lhs, rhs } => {
            let (l, r) = (parse_term(lhs)?, parse_term(rhs)?);
            let v: Verdict = serde_json::from_str(&read(verdict)?)?;
            let ok = certify(&v, &l, &r);
            let summary = format!("certificate {}", if ok { "accepted" } else { "rejected" });
            Ok(Output::json(json!({"certified": ok, "valid": v.valid}), summary, if ok { 0 } else { 2 }))
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing to the
/// given streams. Returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if status == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return status;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = writeln!(stderr, "{}", out.summary);
            out.status
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let status = run(std::iter::once("domran").chain(args.iter().copied()), &mut out, &mut err);
        (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn decide_valid_and_invalid() {
        let (status, out, _) = run_args(&["decide", "--eq", "dom(x;y)", "dom(x;dom(y))"]);
        assert_eq!(status, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["valid"], json!(true));
        assert_eq!(v["schema"], json!(1));

        let (status, out, _) = run_args(&["decide", "--eq", "x;dom(y)", "dom(x;y);x"]);
        assert_eq!(status, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["valid"], json!(false));
        assert!(v["counterexample"]["model"]["universe"].is_number());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&["decide", "x", "y"]).0, 1);
        assert_eq!(run_args(&["decide", "--leq", "--eq", "x", "y"]).0, 1);
        assert_eq!(run_args(&["decide", "--leq", "x;", "y"]).0, 1);
        assert_eq!(run_args(&["frobnicate"]).0, 1);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn axioms_listing() {
        let (status, out, _) = run_args(&["axioms", "list", "--catalog", "axa"]);
        assert_eq!(status, 0);
        assert_eq!(out.lines().count(), 19);
        assert!(out.contains("dom-locality\tdom(x;y)\tdom(x;dom(y))"));
    }

    #[test]
    fn certify_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let (_, out, _) = run_args(&["decide", "--leq", "dom(x)", "x"]);
        let path = dir.path().join("v.json");
        std::fs::write(&path, &out).unwrap();
        let p = path.to_str().unwrap();
        assert_eq!(run_args(&["certify", "--verdict", p, "dom(x)", "x"]).0, 0);
        assert_eq!(run_args(&["certify", "--verdict", p, "x", "dom(x)"]).0, 2);
    }

    fn json_of(out: &str) -> Value {
        serde_json::from_str(out).unwrap()
    }

    #[test]
    fn eval_reads_model_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        std::fs::write(&path, r#"{"universe": 3, "vars": {"x": [[0, 1], [0, 2]], "y": [[1, 1]]}}"#).unwrap();
        let m = path.to_str().unwrap();
        let (status, out, _) = run_args(&["eval", "--model", m, "x;y"]);
        assert_eq!(status, 0);
        assert_eq!(json_of(&out)["pairs"], json!([[0, 1]]));
        let (_, out, _) = run_args(&["eval", "--model", m, "--mode", "demonic", "x;y"]);
        assert_eq!(json_of(&out)["pairs"], json!([]));
        assert_eq!(run_args(&["eval", "--model", m, "w"]).0, 1);
        assert_eq!(run_args(&["eval", "--model", "/nonexistent/m.json", "x"]).0, 1);
    }

    #[test]
    fn scan_and_enumerate() {
        let (status, out, err) = run_args(&["scan", "--catalog", "axd", "--models", "20", "--seed", "3"]);
        assert_eq!(status, 0, "{err}");
        let v = json_of(&out);
        assert_eq!(v["models_tested"], json!(20));
        assert_eq!(v["violations"], json!([]));

        let (status, out, _) = run_args(&["enumerate", "--size", "2", "--constraints", "axd,cyclefree"]);
        assert_eq!(status, 0);
        let v = json_of(&out);
        assert_eq!(v["count"], json!(2));
        assert_eq!(v["all_domain_elements"], json!(2));
        assert_eq!(v["complete"], json!(true));
        let (_, out, _) = run_args(&["enumerate", "--size", "2", "--constraints", "axd", "--budget", "3"]);
        assert_eq!(json_of(&out)["complete"], json!(false));
    }

    #[test]
    fn wp_reports_repair() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ea.json");
        std::fs::write(&path, r#"{"size": 2, "star": [[0, 1], [1, 1]], "D": [0, 0], "R": [0, 0]}"#).unwrap();
        let a = path.to_str().unwrap();
        let (status, out, _) = run_args(&["wp", "--algebra", a]);
        assert_eq!(status, 0);
        let v = json_of(&out);
        assert_eq!(v["defects"], json!([{"element": 1, "point": 0}]));
        assert!(v["repair"]["skipped"].as_str().unwrap().contains("cycle-free"));
        let (_, out, _) = run_args(&["wp", "--algebra", a, "--unsafe", "--repair-rounds", "1"]);
        assert_eq!(json_of(&out)["repair"]["history"]["repr"]["points"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn saturate_with_coherence_checks() {
        let dir = tempfile::tempdir().unwrap();
        let pool = dir.path().join("pool.txt");
        std::fs::write(&pool, "# pool\nx;y\nx\ny\n").unwrap();
        let dot = dir.path().join("g.dot");
        let args = ["saturate", "--elements", pool.to_str().unwrap(), "--rounds", "40", "--seed", "1", "--check-coherence"];
        let (status, out, _) = run_args(&[&args[..], &["--dot", dot.to_str().unwrap()]].concat());
        assert_eq!(status, 0);
        let v = json_of(&out);
        assert_eq!(v["coherence_failures"], json!([]));
        assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    }

    #[test]
    fn output_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let pool = dir.path().join("pool.json");
        std::fs::write(&pool, r#"["x;y", "dom(x;y)"]"#).unwrap();
        let runs: [&[&str]; 3] = [
            &["scan", "--catalog", "axa", "--models", "15", "--seed", "9"],
            &["saturate", "--elements", pool.to_str().unwrap(), "--rounds", "30", "--seed", "5"],
            &["decide", "--leq", "dom(x;y);x", "x;dom(y)"],
        ];
        for args in runs {
            let first = run_args(args);
            assert_eq!(first, run_args(args), "{args:?}");
        }
        let one = run_args(&["scan", "--catalog", "axa", "--models", "15", "--seed", "9"]).1;
        let four = run_args(&["--threads", "4", "scan", "--catalog", "axa", "--models", "15", "--seed", "9"]).1;
        assert_eq!(one, four);
    }
}
