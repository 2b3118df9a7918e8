//! The `latfun` command line: argument parsing, file loading and output
//! rendering over the library.
//!
//! Exit codes: 0 success, 1 a check or suite failed, 2 usage, parse or
//! guard errors. Results go to stdout, diagnostics to stderr.

use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::duality::{crosscut_values, extend_to_ultracone, verify_complete_distributivity, Cone, SetFamily};
use crate::error::{Error, Result};
use crate::formats::{parse_capacity, parse_table, read_file, resolve_lattice};
use crate::functionals::ClassificationReport;
use crate::lattice::Lattice;
use crate::maps::Continuity;
use crate::subset::IndexSet;
use crate::suite::{run_suite, SuiteConfig, SuiteName};
use crate::terms::{FormKind, Signature};

const FORMATS_HELP: &str = "\
LATTICES
  Every --lattice option takes a catalog name (chain2 chain3 chain4 chain5
  bool2 bool3 chain3xchain2 n5 m3) or the path of a lattice file. Bottom and
  top are inferred. Blank lines and lines starting with '#' are ignored in
  every file format.

    lattice n5
    elements: 0 x y z 1
    covers: 0<x x<z z<1
    covers: 0<y y<1

FUNCTIONAL TABLES (--table)
  One line per input tuple, each tuple exactly once, in any order:

    functional k=2 lattice=chain3
    0 0 -> 0
    0 a -> 0
    0 1 -> a
    a 0 -> 0
    a a -> a
    a 1 -> a
    1 0 -> a
    1 a -> a
    1 1 -> 1

CAPACITIES (--capacity)
  One line per subset of {1..k}, '{}' for the empty set. The capacity must
  be nondecreasing with {} -> bottom and {1..k} -> top:

    capacity k=2 lattice=chain3
    {} -> 0
    {1} -> a
    {2} -> 0
    {1,2} -> 1

EXPRESSIONS
  Meet is '&' (or '∧', '/\\'), join is '|' (or '∨', '\\/'); meet binds
  tighter. Identifiers are variables or element names:

    latfun expr normalize --lattice chain4 --vars x1,x2 \"(x1 & a) | (x2 & a) | (x1 & x2)\"
    latfun expr eval --lattice chain4 --at x1=1,x2=0 \"(x1 & a) | x2\"

SET FAMILIES (--hfamily, --kfamily)
  Comma separated sets of element names: \"{x},{y,z}\".

EXIT CODES
  0 success, 1 a check or suite failed, 2 usage, parse or guard error.";

#[derive(Debug, Parser)]
#[command(
    name = "latfun",
    version,
    about = "Finite lattices, normal forms, Sugeno integrals and invariance checks",
    after_long_help = FORMATS_HELP
)]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Continuous maps must also fix bottom and top.
    #[arg(long, global = true)]
    pub strict_continuity: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a lattice and test distributivity.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Normalize or evaluate lattice expressions.
    #[command(subcommand)]
    Expr(ExprCommand),
    /// Classify a functional table.
    #[command(subcommand)]
    Functional(FunctionalCommand),
    /// Evaluate Sugeno integrals.
    #[command(subcommand)]
    Sugeno(SugenoCommand),
    /// Blocker identities and cone cross-cuts.
    #[command(subcommand)]
    Duality(DualityCommand),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum LatticeCommand {
    /// Check the lattice axioms and report distributivity.
    Check {
        /// Catalog name or lattice file.
        lattice: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Form {
    Dnf,
    Cnf,
}

#[derive(Debug, Subcommand)]
pub enum ExprCommand {
    /// Print the canonical normal form term and its coefficients.
    Normalize {
        #[arg(long)]
        lattice: String,
        /// Variable names in order, e.g. x1,x2.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long, value_enum, default_value = "dnf")]
        form: Form,
        expr: String,
    },
    /// Evaluate an expression at a variable assignment.
    Eval {
        #[arg(long)]
        lattice: String,
        /// Bindings such as x1=a,x2=1; they also declare the variables.
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<String>,
        expr: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum FunctionalCommand {
    /// Report every predicate with witnesses for those that fail.
    Classify {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        table: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SugenoCommand {
    /// Integrate an input tuple against a capacity.
    Eval {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        capacity: String,
        /// Input values v1,v2,...
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DualityCommand {
    /// Search every family over ground sets up to a size for a failure of
    /// the blocker identity.
    CheckCd {
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value_t = 3)]
        max_ground: usize,
    },
    /// Cross-cut values of a cone and of its ultracone extension.
    Crosscut {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        hfamily: String,
        #[arg(long)]
        kfamily: String,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all` or a comma list of suite ids.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Skip lattices with more elements than this.
    #[arg(long, default_value_t = 8)]
    pub max_size: usize,
    /// Restrict to these catalog lattices.
    #[arg(long, value_delimiter = ',')]
    pub lattice: Option<Vec<String>>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Zero the timing field so reports are byte-stable.
    #[arg(long)]
    pub deterministic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(_) => 2,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = run(&cli, out);
    if let Err(e) = &result {
        let _ = writeln!(err, "error: {e}");
    }
    exit_code(&result)
}

fn io(e: std::io::Error) -> Error {
    Error::Io { path: "<stdout>".into(), message: e.to_string() }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    if text.ends_with('\n') {
        write!(out, "{text}").map_err(io)
    } else {
        writeln!(out, "{text}").map_err(io)
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v).expect("json values serialize");
    writeln!(out, "{text}").map_err(io)
}

fn load(source: &str) -> Result<Arc<Lattice>> {
    resolve_lattice(source).map(Arc::new)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let mode = if cli.strict_continuity { Continuity::Strict } else { Continuity::Lenient };
    match &cli.command {
        Command::Lattice(LatticeCommand::Check { lattice }) => lattice_check(lattice, cli.json, out),
        Command::Expr(ExprCommand::Normalize { lattice, vars, form, expr }) => {
            expr_normalize(&load(lattice)?, vars, *form, expr, cli.json, out)
        }
        Command::Expr(ExprCommand::Eval { lattice, at, expr }) => expr_eval(&load(lattice)?, at, expr, cli.json, out),
        Command::Functional(FunctionalCommand::Classify { lattice, table }) => {
            let l = load(lattice)?;
            let t = parse_table(&read_file(Path::new(table))?, table, l.clone())?;
            let report = t.classify(mode)?;
            if cli.json {
                emit_json(out, &classification_json(&report, &l))?;
            } else {
                emit(out, &report.render(&l))?;
            }
            Ok(Outcome::Pass)
        }
        Command::Sugeno(SugenoCommand::Eval { lattice, capacity, at }) => {
            let l = load(lattice)?;
            let cap = parse_capacity(&read_file(Path::new(capacity))?, capacity, l.clone())?;
            let f = at.iter().map(|n| l.element_or_err(n.trim())).collect::<Result<Vec<_>>>()?;
            let value = l.element_name(cap.sugeno_integral(&f)?);
            if cli.json {
                emit_json(out, &json!({ "input": at, "value": value }))?;
            } else {
                emit(out, value)?;
            }
            Ok(Outcome::Pass)
        }
        Command::Duality(DualityCommand::CheckCd { lattice, max_ground }) => {
            let l = load(lattice)?;
            let verdict = verify_complete_distributivity(&l, *max_ground)?;
            let witness = verdict.witness.as_ref();
            if cli.json {
                emit_json(
                    out,
                    &json!({
                        "lattice": l.name(),
                        "max_ground": max_ground,
                        "instances": verdict.instances,
                        "passed": verdict.passed(),
                        "witness": witness.map(|w| json!({
                            "ground": w.ground.iter().map(|&e| l.element_name(e)).collect::<Vec<_>>(),
                            "family": w.family_in_lattice(&l).render_elements(&l),
                            "lower": l.element_name(w.lower),
                            "upper": l.element_name(w.upper),
                        })),
                    }),
                )?;
            } else if let Some(w) = witness {
                emit(out, &format!("FAIL {}", w.describe(&l)))?;
            } else {
                emit(out, &format!("PASS ({} instances)", verdict.instances))?;
            }
            Ok(if verdict.passed() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Duality(DualityCommand::Crosscut { lattice, hfamily, kfamily }) => {
            crosscut(&load(lattice)?, hfamily, kfamily, cli.json, out)
        }
        Command::Verify(args) => verify(args, mode, cli.json, out),
    }
}

fn lattice_check(source: &str, json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let l = match resolve_lattice(source).and_then(|l| l.validate_axioms().map(|_| l)) {
        Ok(l) => l,
        Err(e @ (Error::Format { .. } | Error::Io { .. })) => return Err(e),
        Err(e) => {
            if json {
                emit_json(out, &json!({ "valid": false, "error": e.to_string() }))?;
            } else {
                emit(out, &format!("invalid lattice: {e}"))?;
            }
            return Ok(Outcome::Fail);
        }
    };
    let witness = l
        .distributivity_witness()
        .map(|(x, y, z)| [x, y, z].map(|e| l.element_name(e).to_string()));
    if json {
        emit_json(
            out,
            &json!({
                "lattice": l.name(),
                "valid": true,
                "elements": l.element_names(),
                "distributive": witness.is_none(),
                "witness": witness,
            }),
        )?;
    } else {
        let mut line = format!("valid lattice; distributive: {}", witness.is_none());
        if let Some(w) = witness {
            line.push_str(&format!("; witness: ({})", w.join(",")));
        }
        emit(out, &line)?;
    }
    Ok(Outcome::Pass)
}

fn expr_normalize(l: &Arc<Lattice>, vars: &[String], form: Form, expr: &str, json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let sig = Signature::new(l.clone(), vars)?;
    let term = sig.parse(expr)?;
    let nf = match form {
        Form::Dnf => sig.dnf_of(&term)?,
        Form::Cnf => sig.cnf_of(&term)?,
    };
    let canonical = sig.print(&sig.term_of(&nf));
    if json {
        let coefficients: Vec<Value> = IndexSet::canonical_order(sig.arity())
            .into_iter()
            .map(|x| json!({ "subset": x.to_string(), "value": l.element_name(nf.coefficient(x)) }))
            .collect();
        let kind = match nf.kind() {
            FormKind::Dnf => "dnf",
            FormKind::Cnf => "cnf",
        };
        emit_json(out, &json!({ "form": kind, "term": canonical, "coefficients": coefficients }))?;
    } else {
        emit(out, &canonical)?;
        emit(out, &nf.listing())?;
    }
    Ok(Outcome::Pass)
}

fn expr_eval(l: &Arc<Lattice>, at: &[String], expr: &str, json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let mut names = Vec::new();
    let mut values = Vec::new();
    for binding in at {
        let (name, value) = binding.split_once('=').ok_or_else(|| Error::SyntaxError {
            position: 0,
            message: format!("binding `{binding}` is not of the form name=element"),
        })?;
        names.push(name.trim());
        values.push(l.element_or_err(value.trim())?);
    }
    let sig = Signature::new(l.clone(), &names)?;
    let value = sig.evaluate(&sig.parse(expr)?, &values)?;
    let value = l.element_name(value);
    if json {
        emit_json(out, &json!({ "value": value }))?;
    } else {
        emit(out, value)?;
    }
    Ok(Outcome::Pass)
}

fn crosscut(l: &Arc<Lattice>, h: &str, k: &str, json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let cone = Cone::new(SetFamily::parse_elements(l, h)?, SetFamily::parse_elements(l, k)?)?;
    let (lower, upper) = crosscut_values(l, &cone);
    let ultra = extend_to_ultracone(l, &cone)?;
    let (ulower, uupper) = crosscut_values(l, &ultra);
    let name = |e| l.element_name(e);
    if json {
        emit_json(
            out,
            &json!({
                "lower": name(lower),
                "upper": name(upper),
                "equal": lower == upper,
                "ultracone": {
                    "h": ultra.h.render_elements(l),
                    "k": ultra.k.render_elements(l),
                    "lower": name(ulower),
                    "upper": name(uupper),
                    "equal": ulower == uupper,
                },
            }),
        )?;
    } else {
        emit(
            out,
            &format!(
                "lower = {}\nupper = {}\nequal: {}\nultracone H = {}\nultracone K = {}\nultracone lower = {}, upper = {}\nultracone equality: {}",
                name(lower),
                name(upper),
                lower == upper,
                ultra.h.render_elements(l),
                ultra.k.render_elements(l),
                name(ulower),
                name(uupper),
                ulower == uupper
            ),
        )?;
    }
    Ok(Outcome::Pass)
}

fn verify(args: &VerifyArgs, mode: Continuity, json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let config = SuiteConfig {
        suites: SuiteName::parse_list(&args.suite)?,
        lattices: args.lattice.clone(),
        max_size: args.max_size,
        jobs: args.jobs,
        deterministic: args.deterministic,
        continuity: mode,
        ..SuiteConfig::all(args.seed)
    };
    let report = run_suite(&config)?;
    if json {
        emit(out, &report.to_json())?;
    } else {
        emit(out, &report.render())?;
    }
    Ok(if report.passed { Outcome::Pass } else { Outcome::Fail })
}

fn classification_json(r: &ClassificationReport, l: &Lattice) -> Value {
    let witnesses: serde_json::Map<String, Value> = r
        .witness_lines(l)
        .into_iter()
        .map(|(k, v)| (k.to_string(), Value::String(v)))
        .collect();
    json!({
        "lattice": l.name(),
        "nondecreasing": r.nondecreasing,
        "idempotent": r.idempotent,
        "homogeneous": r.homogeneous,
        "range_homogeneous": r.range_homogeneous,
        "invariant": r.invariant,
        "polynomial": r.polynomial,
        "sugeno": r.sugeno,
        "term_functional": r.term_functional,
        "witnesses": witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with(std::iter::once("latfun").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Ok(Outcome::Pass)), 0);
        assert_eq!(exit_code(&Ok(Outcome::Fail)), 1);
        assert_eq!(exit_code(&Err(Error::EmptyFamily)), 2);
    }

    #[test]
    fn lattice_check_catalog() {
        let (code, out, _) = run_args(&["lattice", "check", "n5"]);
        assert_eq!(code, 0);
        assert_eq!(out, "valid lattice; distributive: false; witness: (z,x,y)\n");
        let (code, out, _) = run_args(&["lattice", "check", "bool3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "valid lattice; distributive: true\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _, err) = run_args(&["lattice", "check", "/nonexistent/file.lat"]);
        assert_eq!(code, 2);
        assert!(err.contains("error:"));
        let (code, _, _) = run_args(&["frobnicate"]);
        assert_eq!(code, 2);
        let (code, _, err) = run_args(&["expr", "eval", "--lattice", "chain3", "--at", "x1=a", "x1 &"]);
        assert_eq!(code, 2);
        assert!(err.contains("syntax error"));
    }

    #[test]
    fn normalize_and_eval() {
        let (code, out, _) =
            run_args(&["expr", "normalize", "--lattice", "chain4", "--vars", "x1,x2", "--form", "dnf", "(x1 | x2) & a"]);
        assert_eq!(code, 0);
        assert_eq!(out, "x1 & a | x1 & x2 & a | x2 & a\n{} -> 0\n{1} -> a\n{2} -> a\n{1,2} -> a\n");
        let (code, out, _) = run_args(&["expr", "eval", "--lattice", "chain4", "--at", "x1=b,x2=1", "(x1 | x2) & a"]);
        assert_eq!(code, 0);
        assert_eq!(out, "a\n");
    }

    #[test]
    fn check_cd_exit_status() {
        assert_eq!(run_args(&["duality", "check-cd", "--lattice", "chain3"]).0, 0);
        let (code, out, _) = run_args(&["duality", "check-cd", "--lattice", "n5"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("FAIL "));
        let (code, _, err) = run_args(&["duality", "check-cd", "--lattice", "n5", "--max-ground", "9"]);
        assert_eq!(code, 2);
        assert!(err.contains("size guard"));
    }

    #[test]
    fn help_documents_formats() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        for needle in ["covers: 0<x", "functional k=2", "capacity k=2", "{x},{y,z}"] {
            assert!(out.contains(needle), "{needle}");
        }
    }
}
