mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Outcome;

/// Verification suites for Suzuki and Ree groups, the B/C isogenies in
/// characteristic 2, and mixed groups.
#[derive(Parser, Debug)]
#[command(name = "twistgroup", version)]
struct Cli {
    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The Suzuki group Sz(q).
    Suzuki(SuzukiArgs),
    /// The small Ree group ²G₂(q).
    Ree(ReeArgs),
    /// The maps ρ and θ between orthogonal and symplectic groups.
    Isogeny(IsogenyArgs),
    /// Membership in an ambient mixed group.
    Mixed(MixedArgs),
    /// Brute-force computations on small groups.
    Lab(LabArgs),
    /// Every verification suite.
    VerifyAll,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Abort enumeration beyond this many elements.
    #[arg(long)]
    limit: Option<usize>,

    /// Binary cache of the enumerated table.
    #[arg(long, value_name = "PATH")]
    cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SuzukiArgs {
    #[arg(long, value_parser = ["2", "8", "32"])]
    q: String,

    /// Enumerate the group and report its order.
    #[arg(long)]
    order: bool,

    /// Decompose every element.
    #[arg(long)]
    bruhat_all: bool,

    /// Check the relations at N random parameter tuples.
    #[arg(long, value_name = "N")]
    relations: Option<usize>,

    #[command(flatten)]
    table: TableArgs,
}

#[derive(Args, Debug)]
struct ReeArgs {
    #[arg(long, value_parser = ["3", "27"])]
    q: String,

    #[arg(long)]
    order: bool,

    /// Order of the commutator subgroup.
    #[arg(long)]
    derived_order: bool,

    #[arg(long, value_name = "N")]
    relations: Option<usize>,

    #[arg(long)]
    bruhat_all: bool,

    #[command(flatten)]
    table: TableArgs,
}

#[derive(Args, Debug)]
struct IsogenyArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
    n: u8,

    #[arg(long, value_parser = ["gf2", "gf4", "f2t"])]
    ring: String,

    /// Print θ(g) for the symplectic matrix given by --element.
    #[arg(long)]
    theta: bool,

    /// Print ρ(g) for the orthogonal matrix given by --element.
    #[arg(long)]
    rho: bool,

    /// Check both Frobenius factorisations on N random elements.
    #[arg(long, value_name = "N")]
    check_frobenius: Option<usize>,

    /// Check the norm and SCliff conditions on N random elements.
    #[arg(long, value_name = "N")]
    check_norm: Option<usize>,

    /// Matrix as JSON ({"ring", "rows", "cols", "entries"}) or a path to such a file.
    #[arg(long, value_name = "JSON")]
    element: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MixedKind {
    Bc,
    G2,
}

#[derive(Args, Debug)]
struct MixedArgs {
    #[arg(long = "type", value_enum)]
    kind: MixedKind,

    #[arg(long, value_parser = ["f2t2-f2t", "gf3-gf27"])]
    pair: String,

    /// Matrix as JSON or a path to a JSON file.
    #[arg(long, value_name = "JSON")]
    check_element: String,
}

#[derive(Args, Debug)]
struct LabArgs {
    #[arg(long, value_parser = ["sz2", "sz8", "sz32", "ree3"])]
    group: String,

    #[arg(long)]
    order: bool,

    /// Order of the commutator subgroup.
    #[arg(long)]
    derived: bool,

    /// Normal closures of N random nontrivial elements.
    #[arg(long, value_name = "N")]
    simple_check: Option<usize>,

    #[arg(long)]
    bruhat_census: bool,

    #[command(flatten)]
    table: TableArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match &cli.command {
        Command::Suzuki(a) => commands::suzuki(a, cli.seed),
        Command::Ree(a) => commands::ree(a, cli.seed),
        Command::Isogeny(a) => commands::isogeny(a, cli.seed),
        Command::Mixed(a) => commands::mixed(a, cli.seed),
        Command::Lab(a) => commands::lab(a, cli.seed),
        Command::VerifyAll => commands::verify_all(cli.seed),
    };
    match outcome {
        Outcome::Report(report) => report.emit(cli.json.as_deref()),
        Outcome::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Outcome::Failed(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
