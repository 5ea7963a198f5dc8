//! `netvalue`: compute allocation rules, audit axioms and check identities on
//! games over networks.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use netvalue::limits;

#[derive(Parser, Debug)]
#[command(name = "netvalue", version, about = "Exact allocation rules for games on networks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Seed for sampled symmetry audits and the `hashed` rule.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Largest player count accepted.
    #[arg(long, global = true)]
    cap_players: Option<usize>,
    /// Largest link count for rules that recurse over link subsets.
    #[arg(long, global = true)]
    cap_links: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
pub struct GameNetwork {
    /// Game file.
    #[arg(long)]
    pub game: PathBuf,
    /// Network file.
    #[arg(long)]
    pub network: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AxiomArg {
    Bc,
    F,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExpectArg {
    /// Every requested audit must pass.
    All,
    /// Only the axioms characterizing each rule must pass.
    Characterized,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Payoffs of one allocation rule.
    Compute {
        /// bce, fce, fce-direct, myerson, jw, ef, shapley, pff-value or hashed.
        #[arg(long)]
        rule: String,
        #[command(flatten)]
        input: GameNetwork,
    },
    /// Audit rules against axioms; exits 1 when an expected-pass audit fails.
    Audit {
        /// Comma-separated rule names.
        #[arg(long, value_delimiter = ',', required = true)]
        rule: Vec<String>,
        /// Comma-separated axioms: ce, bc, f, bcplus, sym.
        #[arg(long, value_delimiter = ',', required = true)]
        axioms: Vec<String>,
        #[arg(long, value_enum, default_value_t = ExpectArg::All)]
        expect: ExpectArg,
        /// Permutations sampled for symmetry above six players.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        input: GameNetwork,
    },
    /// Unanimity dividends of a partition function game.
    Dividends {
        #[arg(long)]
        game: PathBuf,
        /// Re-sum the dividends and compare with the game.
        #[arg(long)]
        verify: bool,
    },
    /// Graph-restricted partition function game.
    Restrict {
        #[command(flatten)]
        input: GameNetwork,
    },
    /// Graph-projected worth function as a worth table.
    Project {
        #[command(flatten)]
        input: GameNetwork,
        /// Networks to tabulate; defaults to every player deletion of the network.
        #[arg(long)]
        target: Vec<PathBuf>,
    },
    /// Solve efficiency plus one pairwise axiom by exact elimination.
    Oracle {
        #[arg(long, value_enum)]
        axiom: AxiomArg,
        #[command(flatten)]
        input: GameNetwork,
    },
    /// Both sides of the cycle-sum identity; exits 1 when they differ.
    Identity {
        #[arg(long, default_value = "bce")]
        rule: String,
        /// Comma-separated cycle; defaults to every cycle of the network.
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
        #[command(flatten)]
        input: GameNetwork,
    },
    /// Write the built-in examples and their manifest.
    Examples {
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut caps = limits::current();
    if let Some(p) = cli.cap_players {
        caps.players = p;
    }
    if let Some(l) = cli.cap_links {
        caps.links = l;
    }
    limits::set(caps);
    let ctx = commands::Context {
        format: cli.format,
        seed: cli.seed,
    };
    match commands::run(&ctx, &cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(err) => {
            eprintln!("netvalue: {err}");
            ExitCode::from(err.status())
        }
    }
}
