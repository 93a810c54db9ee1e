//! `bowen` command-line tool.
//!
//! Exit codes: 0 success or pass, 1 verified negative (a monochromatic
//! clique, a failing check, an invalid certificate, an unseparated set),
//! 2 usage or input error, 3 search budget, degenerate map or unsupported
//! parameters.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use bowen::{CirclePoint, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};

use io::{point_arg, rational_arg};

#[derive(Parser)]
#[command(
    name = "bowen",
    version,
    about = "Exact Bowen balls, separated sets and dynamical Ramsey colorings on the circle"
)]
pub struct Cli {
    /// Output printed on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the JSON report here (plus a `.meta.json` sidecar). Defaults
    /// to `$BOWEN_OUT_DIR/<command>.json` when that variable is set.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Replace an existing report file.
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
pub enum Command {
    /// Exact Bowen ball `B_n(x, eps)` and its measure.
    BowenBall(BallArgs),
    /// Separated-set search and checking.
    #[command(subcommand)]
    Separated(SeparatedCmd),
    /// Edge colorings from separated sets.
    #[command(subcommand)]
    Color(ColorCmd),
    /// Look for a monochromatic `K_k` in a coloring file.
    Clique(CliqueArgs),
    /// Issue, or with `verify` re-check, a Ramsey lower-bound certificate.
    Certify(CertifyArgs),
    /// Run one of the exact checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Find a `×p` orbit within `delta` of given targets.
    Shadow(ShadowArgs),
    /// Move a separated set of a PL map to one of `×p`.
    Transfer(TransferArgs),
    /// Check that the circle holds at most two points pairwise > 1/3 apart.
    Capacity(CapacityArgs),
}

#[derive(Args)]
pub struct BallArgs {
    /// Integer p for `×p`, inline JSON, or a map file.
    #[arg(long)]
    pub map: String,
    #[arg(long, value_parser = point_arg)]
    pub x: CirclePoint,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = rational_arg)]
    pub eps: Rational,
}

#[derive(Subcommand)]
pub enum SeparatedCmd {
    /// Largest separated subset of the grid `{i / G}`.
    Search(SearchArgs),
    /// Certify a given point set, with a witness for every pair.
    Check(CheckArgs),
}

#[derive(Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub map: String,
    /// Candidate grid size G.
    #[arg(long)]
    pub grid: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = rational_arg)]
    pub eps: Rational,
    /// Exact maximum-clique search instead of greedy.
    #[arg(long)]
    pub exact: bool,
    /// Node budget for the exact search.
    #[arg(long, default_value_t = bowen::separated::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

#[derive(Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub map: String,
    #[arg(long)]
    pub set: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = rational_arg)]
    pub eps: Rational,
}

#[derive(Subcommand)]
pub enum ColorCmd {
    /// The r-coloring of `K_{2^r}` on `{i / 2^r}` under doubling.
    #[command(alias = "dyadic")]
    Prop12 {
        #[arg(long)]
        r: usize,
    },
    /// Color a separated set by least separating index.
    Dyn(CheckArgs),
}

#[derive(Args)]
pub struct CliqueArgs {
    #[arg(long)]
    pub coloring: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Also write color class C in DIMACS format to this file.
    #[arg(long, requires = "dimacs_color")]
    pub dimacs: Option<PathBuf>,
    #[arg(long)]
    pub dimacs_color: Option<u32>,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct CertifyArgs {
    #[command(subcommand)]
    pub action: Option<CertifyCmd>,
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    /// Capacity k: the certificate states that no color holds `K_{k+1}`.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// A passing capacity report to rely on.
    #[arg(long, conflicts_with = "seed")]
    pub capacity: Option<PathBuf>,
    /// Seed for running the capacity check afresh.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
}

#[derive(Subcommand)]
pub enum CertifyCmd {
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum VerifyCmd {
    /// Translation equivariance of Bowen balls under `×p`.
    #[command(alias = "translation")]
    Lemma21 {
        /// Use `p = 6^l`.
        #[arg(long, conflicts_with = "p")]
        l: Option<u32>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational_arg, default_value = "1/6")]
        eps: Rational,
        /// Sample centres; defaults to `{i / 12}`.
        #[arg(long, value_parser = point_arg)]
        x: Vec<CirclePoint>,
    },
    /// Each component of `B_n(0, 1/6)` keeps a third of its length at n + 1.
    #[command(alias = "thirds")]
    Lemma22 {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        n: usize,
    },
    /// `μ(B_n(0, 1/6)) = 3^-n` and the packing bound `3^n`.
    #[command(alias = "measure")]
    Prop23 {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        n: usize,
    },
    /// `{i / 2^r}` is `(r, 1/3)`-separated under doubling.
    Grid {
        #[arg(long)]
        r: usize,
    },
}

#[derive(Args)]
pub struct ShadowArgs {
    /// JSON list of points, or a list of such lists.
    #[arg(long)]
    pub targets: PathBuf,
    #[arg(long, value_parser = rational_arg)]
    pub delta: Rational,
    /// Defaults to the least p that expands `2·delta` over the circle.
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Args)]
pub struct TransferArgs {
    #[arg(long = "map-g")]
    pub map_g: String,
    #[arg(long)]
    pub set: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = rational_arg)]
    pub eps: Rational,
}

#[derive(Args)]
pub struct CapacityArgs {
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
