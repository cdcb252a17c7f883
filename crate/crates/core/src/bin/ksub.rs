use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ksubmod::cli::{parse_budget, run, Command, ProblemKind, RunConfig};

#[derive(Parser)]
#[command(name = "ksub", version, about = "LP-branching solver for k-submodular deletion problems")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
    /// Print key=value records instead of text.
    #[arg(long, global = true)]
    structured: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance within a budget.
    Solve {
        input: PathBuf,
        /// vertex-cover, fvs, a2sat-clause, a2sat-var, ulc, multiway-cut or gfvs.
        #[arg(long, short)]
        problem: Option<ProblemKind>,
        /// In problem units; halves allowed (2.5).
        #[arg(long, short, value_parser = parse_budget)]
        budget: Option<ksubmod::HalfCost>,
        /// Skip the independent certificate check.
        #[arg(long)]
        no_verify: bool,
    },
    /// Print the relaxed optimum and the extreme half-integral solution.
    Relax {
        input: PathBuf,
        #[arg(long, short)]
        problem: Option<ProblemKind>,
    },
    /// Run the randomised property suites.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut config = RunConfig { structured: args.structured, ..RunConfig::default() };
    match args.command {
        Cmd::Solve { input, problem, budget, no_verify } => {
            config.input = Some(input);
            config.problem = problem;
            config.budget = budget;
            config.verify = !no_verify;
        }
        Cmd::Relax { input, problem } => {
            config.command = Command::Relax;
            config.input = Some(input);
            config.problem = problem;
        }
        Cmd::Verify { seed, cases } => {
            config.command = Command::Verify;
            config.seed = seed;
            config.cases = cases;
        }
    }
    let outcome = run(&config);
    print!("{}", outcome.report);
    ExitCode::from(outcome.code as u8)
}
