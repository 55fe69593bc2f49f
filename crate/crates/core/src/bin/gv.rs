use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gv_core::cli::{self, ConfigFile, OutputFormat, Overrides, RunConfig};
use gv_core::Error;

#[derive(Parser)]
#[command(
    name = "gv",
    version,
    about = "Exact Gopakumar-Vafa integrality checks for local toric surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute t G_d and the GV numbers over a range of degrees.
    Compute(ComputeArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// List surface presets.
    Surfaces,
}

#[derive(Args)]
struct Common {
    /// TOML file with the same fields as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ComputeArgs {
    /// Preset name (P2, F0, F1, B2, B3).
    #[arg(long, conflicts_with = "gamma")]
    surface: Option<String>,
    /// Framing vector such as "-1,-1" or a preset name.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Largest total degree.
    #[arg(long)]
    max_degree: Option<u32>,
    /// Componentwise degree cap such as "2,2,2".
    #[arg(long)]
    bound: Option<String>,
    /// Explicit degree vector; repeatable.
    #[arg(long = "degree")]
    degrees: Vec<String>,
    /// Partition-function paths: def, matrix, graphs. The first feeds the
    /// free energy, the others are compared with it.
    #[arg(long, value_delimiter = ',')]
    paths: Vec<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name; repeatable. Defaults to all suites.
    #[arg(long = "suite")]
    suites: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn load(common: &Common) -> Result<Option<ConfigFile>, Error> {
    common.config.as_deref().map(ConfigFile::load).transpose()
}

fn run(command: Command) -> Result<bool, Error> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Compute(args) => {
            let flags = Overrides {
                gamma: args.surface.or(args.gamma),
                max_total_degree: args.max_degree,
                bound: args.bound,
                degrees: args.degrees,
                paths: args.paths,
                output_format: args.format.map(|f| match f {
                    Format::Json => OutputFormat::Json,
                    Format::Csv => OutputFormat::Csv,
                }),
                jobs: args.common.jobs,
                ..Overrides::default()
            };
            let config = RunConfig::resolve(load(&args.common)?, flags)?;
            let reports = cli::compute(&config)?;
            cli::emit_reports(&config, &reports, &mut out)
        }
        Command::Verify(args) => {
            let flags = Overrides {
                verify_suites: args.suites,
                jobs: args.common.jobs,
                ..Overrides::default()
            };
            let config = RunConfig::resolve(load(&args.common)?, flags)?;
            cli::verify(&config, &mut out)
        }
        Command::Surfaces => {
            cli::list_surfaces(&mut out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let parsed = Cli::parse();
    match run(parsed.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::Config(_) | Error::InvalidInput(_))) => {
            let _ = writeln!(io::stderr(), "gv: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            let _ = writeln!(io::stderr(), "gv: {e}");
            ExitCode::from(1)
        }
    }
}
