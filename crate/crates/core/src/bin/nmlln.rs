use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use nmlln::cli::{exit, run, Command, Overrides};

#[derive(Clone, Copy, ValueEnum)]
enum Workflow {
    Analyze,
    Simulate,
    Weaklaw,
    Certify,
}

/// Exact and simulated laws of large numbers for nonmeasurable iid variables.
#[derive(Parser)]
#[command(name = "nmlln", version)]
struct Args {
    #[arg(value_enum)]
    command: Workflow,
    /// Scenario config (JSON).
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
    /// Print the validated, canonical config instead of running.
    #[arg(long)]
    dump_config: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.config.display());
            return ExitCode::from(exit::FAILURE as u8);
        }
    };
    let command = match args.command {
        Workflow::Analyze => Command::Analyze,
        Workflow::Simulate => Command::Simulate,
        Workflow::Weaklaw => Command::Weaklaw,
        Workflow::Certify => Command::Certify,
    };
    let overrides = Overrides {
        seed: args.seed,
        n_max: args.n_max,
        trials: args.trials,
        budget: args.budget,
    };
    match run(command, &text, &overrides, args.dump_config) {
        Ok(output) => {
            if let Some(path) = &args.out {
                if let Err(e) = std::fs::write(path, output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(exit::FAILURE as u8);
                }
            } else {
                print!("{output}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
