use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dframe::cli::{
    cmd_check, cmd_coproduct, cmd_gen, cmd_search, cmd_validate, CommandError, Outcome, Status,
};
use dframe::search::{SearchConfig, SearchMode};
use dframe::text::{parse, Document};
use dframe::Capacity;

/// Finite d-frame toolkit. Capacity guards can be raised through the
/// DFRM_CAPACITY environment variable, e.g. `generators=24,homs=10000000000000,family=22`.
#[derive(Parser)]
#[command(name = "dfrm", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a file and check every declaration.
    Validate { file: PathBuf },
    /// Generate the pre-d-frame of a predframe declaration.
    Gen {
        file: PathBuf,
        #[arg(long)]
        name: String,
    },
    /// Decide (con-tot) and the sufficient conditions for a predframe.
    Check {
        file: PathBuf,
        #[arg(long)]
        name: String,
        /// Print the full condition table.
        #[arg(long)]
        conditions: bool,
    },
    /// Build and certify the coproduct of d-frames.
    Coproduct {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        names: Vec<String>,
    },
    /// Sweep small presentations for implication violations.
    Search {
        #[arg(long, default_value_t = 2)]
        max_b: usize,
        #[arg(long, default_value_t = 2)]
        max_rel: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load(path: &Path) -> Result<Document, CommandError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli, cap: &Capacity) -> Result<Outcome, CommandError> {
    match &cli.command {
        Command::Validate { file } => Ok(cmd_validate(&load(file)?)),
        Command::Gen { file, name } => cmd_gen(&load(file)?, name, cap),
        Command::Check {
            file,
            name,
            conditions,
        } => cmd_check(&load(file)?, name, *conditions, cap),
        Command::Coproduct { file, names } => cmd_coproduct(&load(file)?, names, cap),
        Command::Search {
            max_b,
            max_rel,
            mode,
            samples,
            seed,
        } => {
            let config = SearchConfig {
                max_b: *max_b,
                max_rel: *max_rel,
                mode: match mode {
                    Mode::Exhaustive => SearchMode::Exhaustive,
                    Mode::Random => SearchMode::Random,
                },
                samples: *samples,
                seed: *seed,
            };
            cmd_search(&config, cap)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = match Capacity::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("dfrm: DFRM_CAPACITY: {e}");
            return ExitCode::from(Status::InputError.code() as u8);
        }
    };
    match run(&cli, &cap) {
        Ok(o) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&o.json).expect("json"));
            } else {
                print!("{}", o.text);
            }
            ExitCode::from(o.status.code() as u8)
        }
        Err(e) => {
            if cli.json {
                let kind = match e.status() {
                    Status::Capacity => "capacity",
                    _ => "input",
                };
                println!(
                    "{}",
                    serde_json::json!({"error": kind, "message": e.to_string()})
                );
            }
            eprintln!("dfrm: {e}");
            ExitCode::from(e.status().code() as u8)
        }
    }
}
