//! Command-line front end: parse arguments, load the configuration, run one
//! subcommand, and print its report.

use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;
use twistkan::cli::run_subcommand;
use twistkan::config::read_config;

/// Scattering forces in highly twisted beams and the charged-droplet
/// balance they mirror.
#[derive(Parser)]
#[command(name = "twistkan", version)]
struct Cli {
    /// What to compute: beam, force, millikan, analogy, or trajectory.
    subcommand: String,

    /// Path to the run configuration file.
    #[arg(long)]
    config: PathBuf,

    /// Directory for CSV outputs.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Reference speed for the damping-force comparison, m/s.
    #[arg(long, default_value_t = 40.0)]
    vref: f64,
}

fn run(cli: &Cli) -> twistkan::Result<()> {
    let config = read_config(&cli.config)?;
    let outcome = run_subcommand(&cli.subcommand, &config, &cli.out, cli.vref)?;
    print!("{}", outcome.stdout);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
