use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use twotime_cli::{
    cmd_figure1, cmd_lambda, cmd_report, cmd_tpm_gap, Format, RunConfig, Scenario, DEFAULT_SAMPLES,
    DEFAULT_SEED,
};

/// Reproduce the two-time realism results as tables and pass/fail summaries.
#[derive(Debug, Parser)]
#[command(name = "twotime", version)]
struct Cli {
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random states per band for the Figure-1 scan.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, global = true, env = "TWOTIME_OUT_DIR", default_value = ".")]
    out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Torque/spin irreality scatter and boundary curves.
    Figure1 {
        #[arg(long, value_delimiter = ',', default_values_t = twotime::spinlab::FIGURE1_RADII)]
        r_list: Vec<f64>,
    },
    /// Bloch norm of the conditional operator over a polar grid.
    Lambda {
        #[arg(long, default_value_t = 180)]
        theta_steps: usize,
    },
    /// Two-point measurement versus Heisenberg correlator.
    TpmGap {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Run a named invariant suite.
    Report {
        #[arg(value_enum)]
        scenario: Scenario,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let cfg = RunConfig::new(cli.seed, cli.samples, cli.out, cli.format)?;
    let summary = match cli.command {
        Command::Figure1 { r_list } => cmd_figure1(&cfg, &r_list)?,
        Command::Lambda { theta_steps } => cmd_lambda(&cfg, theta_steps)?,
        Command::TpmGap { dim, trials } => cmd_tpm_gap(&cfg, dim, trials)?,
        Command::Report { scenario } => cmd_report(&cfg, scenario)?,
    };
    print!("{summary}");
    Ok(summary.passed())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
