use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use diamond_cli::{CliError, Options, Outcome, SystemDocument};
use diamond_core::ambiguity::Mode;
use diamond_core::dgmodel::Differential;
use diamond_core::rewrite::DEFAULT_FUSE;

#[derive(Parser)]
#[command(name = "diamond", version, about = "Check noncommutative rewriting systems for convergence")]
struct Args {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of reduction steps per normal form.
    #[arg(long, global = true, default_value_t = DEFAULT_FUSE)]
    fuse: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Diamond,
    Triangle,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the certificate decreases along every rule.
    Certify { file: Option<PathBuf> },
    /// Resolve every ambiguity and report convergence.
    Check {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "diamond")]
        mode: ModeArg,
    },
    /// Reduce an expression to normal form.
    Nf {
        file: Option<PathBuf>,
        #[arg(long)]
        expr: String,
    },
    /// Print obstructions, residues and the witness residuals.
    Obstructions { file: Option<PathBuf> },
    /// List chains and check d^2 = 0 on them.
    Chains {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
    },
    /// Homology of the truncated Shafarevich complex.
    Homology {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, conflicts_with = "full")]
        monomial: bool,
        #[arg(long)]
        full: bool,
    },
    /// Brute-force normal form uniqueness on all short words.
    Oracle {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
    /// Add rules until every ambiguity resolves.
    Complete {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        max_rounds: usize,
    },
}

fn read_document(file: &Option<PathBuf>) -> Result<SystemDocument, CliError> {
    let text = match file {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            s
        }
    };
    SystemDocument::from_json(&text)
}

fn run(args: Args) -> Result<Outcome, CliError> {
    let opts = Options {
        json: args.json,
        fuse: args.fuse,
    };
    match args.command {
        Command::Certify { file } => diamond_cli::cmd_certify(&read_document(&file)?, opts),
        Command::Check { file, mode } => {
            let mode = match mode {
                ModeArg::Diamond => Mode::Diamond,
                ModeArg::Triangle => Mode::Triangle,
            };
            diamond_cli::cmd_check(&read_document(&file)?, mode, opts)
        }
        Command::Nf { file, expr } => diamond_cli::cmd_nf(&read_document(&file)?, &expr, opts),
        Command::Obstructions { file } => diamond_cli::cmd_obstructions(&read_document(&file)?, opts),
        Command::Chains {
            file,
            max_degree,
            max_length,
        } => diamond_cli::cmd_chains(&read_document(&file)?, max_degree, max_length, opts),
        Command::Homology {
            file,
            max_length,
            max_degree,
            monomial: _,
            full,
        } => {
            let d = if full { Differential::Full } else { Differential::Monomial };
            diamond_cli::cmd_homology(&read_document(&file)?, max_length, max_degree, d, opts)
        }
        Command::Oracle { file, max_length } => {
            diamond_cli::cmd_oracle(&read_document(&file)?, max_length, opts)
        }
        Command::Complete { file, max_rounds } => {
            diamond_cli::cmd_complete(&read_document(&file)?, max_rounds, opts)
        }
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
