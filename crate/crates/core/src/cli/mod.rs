//! The `plumbing` command-line front end.
//!
//! Every command produces a [`Report`] (or, for `polytopes enumerate`, a
//! table) rendered as canonical JSON or text. Exit codes: 0 when every check
//! passes, 1 when some check fails, 2 on input errors. `PLUMBING_THREADS`
//! caps the number of worker threads.

mod commands;

use crate::error::Error;
use crate::report::Report;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub use commands::{
    cmd_build, cmd_formal_import, cmd_minimal_model, cmd_polytopes_enumerate, cmd_signs_check, cmd_verify, Output,
};

/// Output format.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Canonical pretty-printed JSON.
    #[default]
    Json,
    /// One line per entry.
    Text,
}

/// Options shared by every command.
#[derive(Clone, Debug, PartialEq, Eq, Args)]
pub struct RunConfig {
    /// Largest arity / number of inputs checked (command-specific default).
    #[arg(long, global = true)]
    pub d_max: Option<usize>,
    /// Seed for every sampler.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            d_max: None,
            seed: 0,
            format: Format::Json,
            out: None,
        }
    }
}

impl RunConfig {
    /// `d_max`, or the given default.
    pub fn d_max_or(&self, default: usize) -> usize {
        self.d_max.unwrap_or(default)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "plumbing",
    version,
    about = "Build and verify DG/A∞ categories of plumbings and their sign calculus"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// What to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    /// DG axioms of a plumbing spec.
    Dg,
    /// A∞ relations of a count file or a plumbing spec.
    Ainf,
    /// Functor equation and quasi-isomorphism of a functor file.
    Functor,
    /// Edge orders, walls, boundary-sign lemmas and sign ledgers.
    Signs,
    /// Stratification counts of the moduli polytopes.
    Polytopes,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the DG category of a plumbing spec and summarize it.
    Build {
        /// Plumbing spec (JSON).
        spec: PathBuf,
    },
    /// Run a verifier.
    Verify {
        /// What to verify.
        #[arg(value_enum)]
        kind: VerifyKind,
        /// Input file (dg, ainf, functor).
        input: Option<PathBuf>,
        /// Random samples per sign ledger.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Compute a minimal model and check the inclusion is a quasi-isomorphism.
    MinimalModel {
        /// Plumbing spec or count file.
        input: PathBuf,
        /// Restrict to the endomorphism algebra of this object.
        #[arg(long)]
        object: Option<String>,
        /// Work over ℤ/p instead of ℤ.
        #[arg(long)]
        modulus: Option<u64>,
        /// Write the model (count-file format) here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Moduli polytopes.
    Polytopes {
        #[command(subcommand)]
        command: PolytopesCommand,
    },
    /// Sign formulas.
    Signs {
        #[command(subcommand)]
        command: SignsCommand,
    },
    /// Formal count files.
    Formal {
        #[command(subcommand)]
        command: FormalCommand,
    },
}

#[derive(Debug, Subcommand)]
enum PolytopesCommand {
    /// Count strata per number of inputs.
    Enumerate,
}

#[derive(Debug, Subcommand)]
enum SignsCommand {
    /// Evaluate one sign formula, comparing with the first-principles value
    /// where there is one.
    Check {
        #[command(subcommand)]
        which: SignQuery,
    },
}

/// A single sign evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum SignQuery {
    /// Breaking a Stasheff tree: a `d2`-input tree grafted on leaf `k+1` of a `d1`-input tree.
    Stasheff {
        /// Inputs of the lower tree.
        d1: usize,
        /// Inputs of the grafted tree.
        d2: usize,
        /// Leaf index, `0 ≤ k < d1`.
        k: usize,
    },
    /// A shrub breaking into a tree carrying shrubs with these inputs.
    Break {
        /// Comma-separated inputs of each shrub, e.g. `1,2,1`.
        #[arg(value_delimiter = ',', required = true)]
        parts: Vec<usize>,
    },
    /// Collapsing inputs `k−1` and `k` of a shrub with `d` inputs.
    Collapse {
        /// Inputs.
        d: usize,
        /// Higher collapsed input, `2 ≤ k ≤ d`.
        k: usize,
    },
    /// A named sign twist on `;`-separated groups of `,`-separated degrees.
    Twist {
        /// Formula name.
        name: String,
        /// Degree groups, e.g. `2;1,3`.
        #[arg(default_value = "")]
        groups: String,
        /// Manifold dimension.
        #[arg(long, default_value_t = 0)]
        n: i64,
    },
}

#[derive(Debug, Subcommand)]
enum FormalCommand {
    /// Import a count file: build it, check its relations, and optionally
    /// re-export it with the twist applied (raw mode).
    Import {
        /// Count file (JSON).
        file: PathBuf,
        /// Write the raw-mode export here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("PLUMBING_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| format!("PLUMBING_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("PLUMBING_THREADS must be at least 1".into());
    }
    // A pool may already exist when running inside a test harness.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Render a report in the requested format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    }
}

fn dispatch(cli: &Cli) -> crate::Result<Output> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Build { spec } => cmd_build(spec, cfg),
        Command::Verify { kind, input, samples } => cmd_verify(*kind, input.as_deref(), *samples, cfg),
        Command::MinimalModel {
            input,
            object,
            modulus,
            emit,
        } => cmd_minimal_model(input, object.as_deref(), *modulus, emit.as_deref(), cfg),
        Command::Polytopes {
            command: PolytopesCommand::Enumerate,
        } => cmd_polytopes_enumerate(cfg),
        Command::Signs {
            command: SignsCommand::Check { which },
        } => cmd_signs_check(which, cfg),
        Command::Formal {
            command: FormalCommand::Import { file, emit },
        } => cmd_formal_import(file, emit.as_deref(), cfg),
    }
}

/// Run the CLI on `args` (including the program name), writing output and
/// diagnostics to the given streams. Returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(stderr, "error: {msg}");
        return 2;
    }
    let output = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let code = if output.all_pass { 0 } else { 1 };
    match &cli.config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output.text) {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(output.text.as_bytes());
        }
    }
    if !output.all_pass {
        let _ = writeln!(stderr, "verification failed");
    }
    code
}

/// Run the CLI on the process arguments.
pub fn run() -> i32 {
    run_with(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

pub(crate) fn input_error(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
