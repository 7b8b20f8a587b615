use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use conecorr::cli::{self, CliError, Overrides};

#[derive(Parser)]
#[command(name = "conecorr", about = "Checks for linear and sublinear correspondences on cones")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of an experiment config.
    Run {
        config: PathBuf,
        /// Output directory (overrides the config).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Grid resolution (overrides the config).
        #[arg(long)]
        resolution: Option<usize>,
        /// Tolerance for sup-based comparisons (overrides the config).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print built-in correspondences, families, norms and checks as JSON.
    ListBuiltins,
    /// Print the version.
    Version,
}

fn run(config: PathBuf, overrides: Overrides) -> Result<i32, CliError> {
    cli::init_threads()?;
    let (report, out) = cli::run(&config, &overrides)?;
    for r in &report.checks {
        println!("{:<6} {}", serde_json::to_value(r.status).unwrap().as_str().unwrap_or("?"), r.check);
    }
    println!("{} -> {}", serde_json::to_value(report.overall).unwrap().as_str().unwrap_or("?"), out.display());
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = match args.command {
        Command::Run { config, out, resolution, tol } => {
            match run(config, Overrides { out, resolution, tol }) {
                Ok(code) => code,
                Err(e) => {
                    eprintln!("{e}");
                    e.exit_code()
                }
            }
        }
        Command::ListBuiltins => {
            println!("{}", serde_json::to_string_pretty(&cli::list_builtins()).expect("catalog serializes"));
            cli::EXIT_OK
        }
        Command::Version => {
            println!("conecorr {}", conecorr::VERSION);
            cli::EXIT_OK
        }
    };
    ExitCode::from(code as u8)
}
