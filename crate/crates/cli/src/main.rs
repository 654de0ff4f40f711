use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lie_dmoc_cli::config::Mode;
use lie_dmoc_cli::{CliError, Run};

#[derive(Parser)]
#[command(
    name = "lie-dmoc",
    version,
    about = "Rigid-body attitude simulation and minimum-torque maneuvers"
)]
struct Cli {
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the discrete rigid body under a prescribed torque.
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Solve a two-point minimum-torque maneuver.
    Solve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the invariant suite.
    Verify {
        /// Only run checks whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Planar error study over several step counts.
    Convergence {
        #[arg(long)]
        config: PathBuf,
    },
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    lie_dmoc_cli::init_threads()?;
    let out = cli.out.as_path();
    match &cli.command {
        Command::Simulate { config } => {
            let run = Run::load(config, out, Mode::Simulate)?;
            let path = lie_dmoc_cli::simulate(&run)?;
            println!("wrote {}", path.display());
        }
        Command::Solve { config } => {
            let run = Run::load(config, out, Mode::Solve)?;
            let (_, s) = lie_dmoc_cli::solve_maneuver(&run)?;
            println!(
                "cost {:.10e}, residual {:.3e}, {} iterations, multiplier residual {:.3e}",
                s.cost, s.residual_norm, s.iterations, s.multiplier_residual
            );
            println!("wrote {}", run.trajectory_path().display());
            println!("wrote {}", run.summary_path().display());
        }
        Command::Verify { filter } => return verify(filter.as_deref(), out),
        Command::Convergence { config } => {
            let run = Run::load(config, out, Mode::Convergence)?;
            let path = lie_dmoc_cli::convergence(&run)?;
            print!(
                "{}",
                std::fs::read_to_string(&path).map_err(|e| CliError::Io(e.to_string()))?
            );
            println!("wrote {}", path.display());
        }
    }
    Ok(true)
}

fn verify(filter: Option<&str>, out: &Path) -> Result<bool, CliError> {
    let outcomes = lie_dmoc_cli::verify(filter, out)?;
    if outcomes.is_empty() {
        return Err(CliError::Config(format!(
            "--filter {:?} matches no check",
            filter.unwrap_or("")
        )));
    }
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("{status}  {:width$}  {}", o.name, o.detail);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    println!(
        "wrote {}",
        out.join(lie_dmoc_cli::LOG_VECTOR_FILE).display()
    );
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
