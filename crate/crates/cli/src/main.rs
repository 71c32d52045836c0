use std::path::PathBuf;

use clap::{Parser, Subcommand};
use jcd_cli::commands::{self, PickArg, TraceArg, ViaArg};

#[derive(Parser)]
#[command(
    name = "jcd",
    version,
    about = "Exact Jordan-Chevalley decomposition of upper-triangular rational matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split S + N into commuting diagonalizable and nilpotent parts.
    Decompose {
        /// Instance file (JSON with fields n, S, N).
        input: PathBuf,
        /// Strategy choosing the component absorbed each round.
        #[arg(long, value_enum, default_value_t = PickArg::LowestBand)]
        pick: PickArg,
        /// How the splitting is refreshed after an absorption.
        #[arg(long, value_enum, default_value_t = ViaArg::Neweigm)]
        via: ViaArg,
        /// Include the per-round trace; `--trace=full` adds the matrices.
        #[arg(long, value_enum, num_args = 0..=1, default_missing_value = "summary")]
        trace: Option<TraceArg>,
    },
    /// Decompose and check every documented contract on one instance.
    Verify {
        input: PathBuf,
        /// Result file whose S_prime/N_prime must match the computation.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Classical polynomial-based decomposition (accepts any square matrix).
    Oracle { input: PathBuf },
    /// Emit seeded random instances as JSON lines or numbered files.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Number of consecutive seeds to emit.
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Draw N from the centralizer so that [S, N] = 0.
        #[arg(long)]
        commuting: bool,
        /// Allow repeated diagonal values in S.
        #[arg(long)]
        multiplicity: bool,
        /// Write numbered files here instead of printing JSON lines.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Generate and verify a seed range, printing a summary line.
    Batch {
        #[arg(long)]
        n: usize,
        /// Half-open seed range, e.g. 0..200.
        #[arg(long)]
        seeds: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Decompose {
            input,
            pick,
            via,
            trace,
        } => commands::decompose(&input, pick, via, trace),
        Command::Verify { input, expect } => commands::verify(&input, expect.as_deref()),
        Command::Oracle { input } => commands::oracle(&input),
        Command::Gen {
            n,
            seed,
            count,
            commuting,
            multiplicity,
            out_dir,
        } => commands::gen(n, seed, count, commuting, multiplicity, out_dir.as_deref()),
        Command::Batch { n, seeds } => commands::batch(n, &seeds),
    };
    if let Err(e) = outcome {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
