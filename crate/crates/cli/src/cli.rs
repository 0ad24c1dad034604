//! Argument handling and exit codes: 0 ok or pass, 1 failed check,
//! 2 parse error or rejected input, 3 resource limit or inconclusive.

use std::path::PathBuf;

use blowup_core::graded::DegreeWindow;
use blowup_core::AlgebraError;
use clap::{Parser, Subcommand};
use serde_json::json;

use crate::commands::{run, Command, Options};
use crate::problem::{parse, FieldSpec};
use crate::report::error_exit_code;

fn window(s: &str) -> Result<DegreeWindow, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, found `{s}`"))?;
    let lo: i64 = a.trim().parse().map_err(|_| format!("bad lower end `{a}`"))?;
    let hi: i64 = b.trim().parse().map_err(|_| format!("bad upper end `{b}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok(DegreeWindow::new(lo, hi))
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, found `{s}`")),
    }
}

#[derive(Parser, Debug)]
#[command(name = "blowup", version, about = "Rees algebras, blowup cohomology and refined-blowup certificates")]
pub struct Cli {
    /// Field override: QQ or FP<p>.
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,
    /// Degree window lo..hi for windowed commands.
    #[arg(long, global = true, value_parser = window, allow_hyphen_values = true)]
    pub window: Option<DegreeWindow>,
    /// Term budget for Gröbner computations.
    #[arg(long, global = true, value_parser = positive)]
    pub max_terms: Option<usize>,
    /// Colimit steps allowed for each cohomology group.
    #[arg(long, global = true, value_parser = positive, default_value_t = 6)]
    pub max_sat_steps: usize,
    /// Emit the structured report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory caching Rees kernels by content hash.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Declared module or filtration to use in place of O_Y.
    #[arg(long, global = true)]
    pub of: Option<String>,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// Presentation of the Rees algebra.
    Rees { input: Option<PathBuf> },
    /// Presentation and graded pieces of the extended Rees algebra.
    Extrees { input: Option<PathBuf> },
    /// The associated graded ring and its Hilbert data.
    Grring { input: Option<PathBuf> },
    /// Affine charts of the blowup.
    Charts { input: Option<PathBuf> },
    /// Twisted global sections.
    Sections {
        #[arg(long, value_parser = window, allow_hyphen_values = true)]
        twist: DegreeWindow,
        input: Option<PathBuf>,
    },
    /// Cohomology table, rows by twist and columns by index.
    Cohomology {
        #[arg(long, value_parser = window, allow_hyphen_values = true)]
        twist: DegreeWindow,
        #[arg(long, default_value_t = 1)]
        max_h: usize,
        input: Option<PathBuf>,
    },
    /// Effective bound n: sections are I^m and higher cohomology vanishes for n <= m <= limit.
    Bound {
        #[arg(long)]
        limit: i64,
        input: Option<PathBuf>,
    },
    /// Certificate that rho lands in the orthogonal of level-n torsion.
    RhoCert {
        #[arg(long)]
        level: i64,
        input: Option<PathBuf>,
    },
    /// Ext-vanishing certificate for a named family scenario.
    Semiorth {
        #[arg(long)]
        scenario: String,
        input: Option<PathBuf>,
    },
    /// Run a built-in verification suite (no input needed).
    Verify {
        #[arg(long)]
        suite: String,
    },
}

impl Sub {
    fn split(self) -> (Command, Option<PathBuf>, bool) {
        match self {
            Sub::Rees { input } => (Command::Rees, input, true),
            Sub::Extrees { input } => (Command::ExtRees, input, true),
            Sub::Grring { input } => (Command::GrRing, input, true),
            Sub::Charts { input } => (Command::Charts, input, true),
            Sub::Sections { twist, input } => (Command::Sections { twist }, input, true),
            Sub::Cohomology { twist, max_h, input } => (Command::Cohomology { twist, max_h }, input, true),
            Sub::Bound { limit, input } => (Command::Bound { limit }, input, true),
            Sub::RhoCert { level, input } => (Command::RhoCert { level }, input, true),
            Sub::Semiorth { scenario, input } => (Command::Semiorth { scenario }, input, true),
            Sub::Verify { suite } => (Command::Verify { suite }, None, false),
        }
    }
}

/// Outcome of one invocation: exit code, standard output, standard error.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn failure(command: &str, e: &AlgebraError, as_json: bool) -> Outcome {
    let code = error_exit_code(e);
    let mut err = json!({ "message": e.to_string() });
    if let AlgebraError::Parse { line, col, expected } = e {
        err = json!({ "message": e.to_string(), "line": line, "col": col, "expected": expected });
    }
    let stdout = if as_json { serde_json::to_string_pretty(&json!({ "command": command, "entries": [], "error": err })).expect("json") + "\n" } else { String::new() };
    Outcome { code, stdout, stderr: format!("error: {e}\n") }
}

/// Run a parsed command line; `read_stdin` supplies the problem when no path is given.
pub fn execute(cli: Cli, read_stdin: impl FnOnce() -> std::io::Result<String>) -> Outcome {
    let as_json = cli.json;
    let opts = Options { field: cli.field, window: cli.window, max_terms: cli.max_terms, max_sat_steps: cli.max_sat_steps, cache_dir: cli.cache_dir, of: cli.of };
    let (cmd, input, needs_input) = cli.command.split();
    let spec = if needs_input {
        let text = match &input {
            Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display())),
            _ => read_stdin().map_err(|e| format!("cannot read standard input: {e}")),
        };
        let text = match text {
            Ok(t) => t,
            Err(msg) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        };
        match parse(&text) {
            Ok(s) => Some(s),
            Err(e) => return failure(cmd.name(), &e, as_json),
        }
    } else {
        None
    };
    let placeholder;
    let spec_ref = match &spec {
        Some(s) => s,
        None => {
            placeholder = parse("ring R = QQ[x];").expect("fixed text parses");
            &placeholder
        }
    };
    match run(spec_ref, &cmd, &opts) {
        Ok(report) => {
            let stdout = if as_json { report.to_json() + "\n" } else { report.to_text() };
            Outcome { code: report.verdict().exit_code(), stdout, stderr: String::new() }
        }
        Err(e) => failure(cmd.name(), &e, as_json),
    }
}

/// Parse `args` (including the program name) and execute.
pub fn execute_args<I, T>(args: I, read_stdin: impl FnOnce() -> std::io::Result<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli, read_stdin),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_on(args: &[&str], input: &str) -> Outcome {
        let input = input.to_string();
        execute_args(std::iter::once("blowup").chain(args.iter().copied()), move || Ok(input))
    }

    #[test]
    fn rees_of_the_plane_from_stdin() {
        let o = run_on(&["rees"], "ring R = QQ[x,y]; ideal I = (x,y);");
        assert_eq!(o.code, 0, "{}", o.stderr);
        // the generator is determined up to a unit
        assert!(o.stdout.contains("x*y1 - y*y0") || o.stdout.contains("y*y0 - x*y1"), "{}", o.stdout);
    }

    #[test]
    fn unterminated_ideal_exits_two_with_position() {
        let o = run_on(&["--json", "rees"], "ring R = QQ[x,y];\nideal I = (x");
        assert_eq!(o.code, 2);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["error"]["line"], 2);
        assert_eq!(v["error"]["col"], 13);
        assert_eq!(v["entries"], json!([]));
    }

    #[test]
    fn bad_flags_exit_two() {
        assert_eq!(run_on(&["sections", "--twist", "3..1"], "").code, 2);
        assert_eq!(run_on(&["--max-terms", "0", "rees"], "").code, 2);
        assert_eq!(run_on(&["frobnicate"], "").code, 2);
    }

    #[test]
    fn missing_ideal_is_rejected_input() {
        let o = run_on(&["rees"], "ring R = QQ[x,y];");
        assert_eq!(o.code, 2);
    }

    #[test]
    fn negative_windows_parse() {
        let o = run_on(&["--json", "sections", "--twist", "-1..0"], "ring R = QQ[x]; ideal I = (x);");
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["window"], json!({ "lo": -1, "hi": 0 }));
        assert_eq!(v["entries"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert_eq!(run_on(&["verify", "--suite", "nope"], "").code, 2);
    }

    #[test]
    fn tiny_budget_is_a_resource_limit() {
        let o = run_on(&["--max-terms", "1", "rees"], "ring R = QQ[x,y,z]; ideal I = (x^2 - y*z, y^2 - x*z, z^2 - x*y);");
        assert_eq!(o.code, 3, "{} {}", o.stdout, o.stderr);
    }
}
