//! Command-line harness: expand `B(n)`, run verification suites, self-check
//! the engine.
//!
//! Exit codes: 0 when every case passes, 1 when a case fails, 2 on usage or
//! parse errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncbinom::rewrite::PresetName;
use ncbinom::scalars::{parse_scalar, CycloScalar};

mod expand;
mod output;
mod selfcheck;
pub mod suites;

pub use output::Summary;

/// Exit code on success; any error is a usage error.
pub type CliResult = Result<i32, Box<dyn std::error::Error>>;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ncbinom", version, about = "Exact verification of binomial identities for non-commuting operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Print B(n, λ, U, D) in normal form under a preset (free by default).
    Expand(ExpandArgs),
    /// Run a verification suite over a grid of cases.
    Verify(VerifyArgs),
    /// Field axioms, confluence of every preset, and oracle agreement.
    Selfcheck(SelfcheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn parse_lambda(s: &str) -> Result<CycloScalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

fn parse_preset(s: &str) -> Result<PresetName, String> {
    s.parse().map_err(|e: ncbinom::error::Error| e.to_string())
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "1", value_parser = parse_lambda)]
    pub lambda: CycloScalar,
    #[arg(long, default_value = "free", value_parser = parse_preset)]
    pub preset: PresetName,
    /// μ for the partial-vw preset, where `U` stands for `V + W`.
    #[arg(long, default_value = "1", value_parser = parse_lambda)]
    pub mu: CycloScalar,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(value_name = "SUITE", required_unless_present = "suite_flag", conflicts_with = "suite_flag")]
    pub suite: Option<String>,
    #[arg(long = "suite", value_name = "SUITE")]
    pub suite_flag: Option<String>,
    /// Largest n; defaults to 10 for first-order suites, 8 otherwise.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Comma-separated λ samples, e.g. `1,i,1/2,1+i`.
    #[arg(long, value_delimiter = ',', value_parser = parse_lambda)]
    pub lambda: Option<Vec<CycloScalar>>,
    /// Comma-separated μ values for cor-vw and third-order.
    #[arg(long, value_delimiter = ',', value_parser = parse_lambda)]
    pub mu: Option<Vec<CycloScalar>>,
    /// Fixed j for the kernel identities; out-of-range values are run as
    /// negative controls.
    #[arg(long)]
    pub j: Option<usize>,
    /// Matrix dimension for vector and eq5-matrix.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Word length for the confluence suite.
    #[arg(long, default_value_t = 6)]
    pub degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; output order does not depend on it.
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl VerifyArgs {
    pub fn suite_name(&self) -> &str {
        self.suite.as_deref().or(self.suite_flag.as_deref()).unwrap_or("all")
    }
}

#[derive(Args, Debug)]
pub struct SelfcheckArgs {
    #[arg(long, default_value_t = 6)]
    pub degree: usize,
    /// Also check the partial-vw fixture without the `DV` rule, which is
    /// expected to diverge.
    #[arg(long)]
    pub include_broken_fixture: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Expand(a) => expand::run(&a, out),
        Command::Verify(a) => suites::run_verify(&a, out),
        Command::Selfcheck(a) => selfcheck::run(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs `f` on a pool with `jobs` threads, or the global pool.
pub(crate) fn with_jobs<R: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> Result<R, Box<dyn std::error::Error>> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err("--jobs must be at least 1".into()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build()?;
            Ok(pool.install(f))
        }
    }
}
