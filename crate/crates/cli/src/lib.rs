//! The `bdu` command line: one subcommand per capability of the workspace,
//! with plain text output by default and JSON under `--json`.
//!
//! Exit codes: 0 when a verdict was produced, 1 when the verdict is
//! negative (invalid, unsat, violated), 2 on usage errors, 3 on bad input.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

mod commands;
pub mod json;
mod output;

pub use output::Out;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// The outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

/// Raised for flag combinations clap cannot rule out by itself.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Debug, Parser)]
#[command(name = "bdu", version, about = "Belnap-Dunn logic, belief functions and their two-layered logics")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every sampling step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also show rationals rounded to this many decimals (display only).
    #[arg(long, global = true, value_name = "K")]
    pub decimals: Option<usize>,
}

/// Shared options for commands that read BD formulas.
#[derive(Debug, Clone, Args)]
pub struct VarsArg {
    /// Variables in order, comma separated. Inferred from the input when
    /// omitted.
    #[arg(long, value_delimiter = ',')]
    pub vars: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide BD entailment `premise |- conclusion`.
    Entail {
        #[arg(allow_hyphen_values = true)]
        premise: String,
        #[arg(allow_hyphen_values = true)]
        conclusion: String,
        #[command(flatten)]
        vars: VarsArg,
    },
    /// Normal forms of a BD formula.
    Nf {
        #[arg(allow_hyphen_values = true)]
        formula: String,
        /// One of nnf, dnf, cnf, idnf, fdnf.
        #[arg(long)]
        form: String,
        /// Literal set for fdnf, e.g. `p,-p,q,-q`. Defaults to every literal.
        #[arg(long)]
        lits: Option<String>,
        /// Build the fdnf over BD with the constants T and F.
        #[arg(long)]
        consts: bool,
        #[command(flatten)]
        vars: VarsArg,
    },
    /// List the classes of the finite Lindenbaum algebra.
    Lindenbaum {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long)]
        consts: bool,
    },
    /// Print the canonical frame over the given variables.
    CanonicalModel {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
    },
    /// Möbius transform of a function on a finite lattice (JSON file or
    /// inline JSON); `--inverse` sums a mass back into a function.
    Mobius {
        input: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Check that a function on a finite lattice is a belief (or
    /// plausibility) function up to k-monotonicity.
    CheckMeasure {
        input: String,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
    },
    /// Combine two mass functions; prints the result as a mass document.
    Combine {
        m1: String,
        m2: String,
        /// dempster or dubois_prade.
        #[arg(long, default_value = "dempster")]
        rule: String,
        /// powerset, demorgan_free or demorgan_bounded. Defaults to the
        /// algebra named in the inputs.
        #[arg(long)]
        algebra: Option<String>,
        /// Also report the combined belief of these elements.
        #[arg(long = "bel")]
        bel: Vec<String>,
    },
    /// Satisfiability of a weight formula.
    SatWeight {
        #[arg(allow_hyphen_values = true)]
        formula: String,
        #[command(flatten)]
        sat: SatArgs,
    },
    /// Satisfiability of a belief formula.
    SatBelief {
        #[arg(allow_hyphen_values = true)]
        formula: String,
        #[command(flatten)]
        sat: SatArgs,
    },
    /// Entailment between weight formulas; the last argument is the
    /// conclusion.
    EntailWeight {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        formulas: Vec<String>,
        #[command(flatten)]
        sat: SatArgs,
    },
    /// Entailment between belief formulas; the last argument is the
    /// conclusion.
    EntailBelief {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        formulas: Vec<String>,
        #[command(flatten)]
        sat: SatArgs,
    },
    /// Evaluate an L2 or NL formula under a valuation.
    EvalLuk {
        #[arg(allow_hyphen_values = true)]
        formula: String,
        /// l2 or nl.
        #[arg(long, default_value = "l2")]
        logic: String,
        /// Valuation as JSON, e.g. `{"p": ["3/5", "3/10"]}`, or a path.
        #[arg(long = "val", default_value = "{}")]
        valuation: String,
    },
    /// Evaluate a two-layered formula on a model.
    EvalTwoLayer {
        #[arg(allow_hyphen_values = true)]
        formula: String,
        /// pr, bel-l2 or bel-nl.
        #[arg(long)]
        logic: String,
        /// Model JSON or a path to it.
        #[arg(long)]
        model: String,
    },
    /// Check the axioms of a calculus on random instances.
    CheckAxioms {
        /// l2, nl, pr, bel-l2, bel-nl, weight or belief.
        #[arg(long)]
        logic: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Sample DS_pl models with bel <= pl and add `B p ~> Pl p` (bel-nl).
        #[arg(long)]
        bel_leq_pl: bool,
    },
    /// Translate between inequality formulas and two-layered formulas.
    Translate {
        /// w2l, l2w, b2l or l2b.
        #[arg(long)]
        dir: String,
        /// Read the formula from this file.
        #[arg(long = "in", conflicts_with = "formula")]
        input: Option<PathBuf>,
        #[arg(allow_hyphen_values = true)]
        formula: Option<String>,
    },
    /// Classify a value of the twist product as classical, incomplete or
    /// contradictory.
    Classify { first: String, second: String },
}

#[derive(Debug, Clone, Args)]
pub struct SatArgs {
    /// Require belief masses to sum to exactly 1.
    #[arg(long)]
    pub normalized: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut o = Out::new(out, cli.global.json, cli.global.decimals);
    match commands::dispatch(&cli.command, &cli.global, &mut o) {
        Ok(Verdict::Yes) => EXIT_OK,
        Ok(Verdict::No) => EXIT_NO,
        // A closed pipe (e.g. `| head`) is not an error of the command.
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                EXIT_USAGE
            } else {
                EXIT_INPUT
            }
        }
    }
}

/// Runs with captured output; returns the exit code, stdout and stderr.
pub fn run_captured<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(args, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}
