use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clifford_dfs_cli::commands::{self, Outcome};
use clifford_dfs_cli::report::Output;
use clifford_dfs_cli::spec::ProblemSpec;
use clifford_dfs_cli::{CliError, Settings, Theorem};

/// Decoherence-free subspaces from monomial subalgebras of Cl3 tensor powers.
#[derive(Parser)]
#[command(name = "clifford-dfs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Numerical tolerance for residual checks [default: 1e-9]
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Largest factor count for matrix paths [default: 4]
    #[arg(long, global = true)]
    max_factors: Option<usize>,
    /// Seed for sampled checks
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Basis, semisimplicity, center, irreps, characters and projectors
    Analyze(Input),
    /// Project the spec's state and check each component against the noise
    Dfs(Input),
    /// Run one verification battery
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        theorem: Theorem,
    },
}

#[derive(Args)]
struct Input {
    /// Spec file
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    spec: Option<PathBuf>,
    /// Use a bundled fixture (gamma1, gamma1-weighted, gamma2, gamma3, gamma3-unit, dual-numbers, cl3)
    #[arg(long)]
    builtin: Option<String>,
}

impl Input {
    fn load(&self) -> Result<ProblemSpec, CliError> {
        match (&self.spec, &self.builtin) {
            (_, Some(name)) => ProblemSpec::builtin(name),
            (Some(path), None) => ProblemSpec::load(path),
            (None, None) => Err(CliError::Parse("no spec given".into())),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

fn run(cli: &Cli) -> Result<Outcome<Output>, CliError> {
    let settings = Settings { tolerance: cli.tolerance, max_factors: cli.max_factors, seed: cli.seed };
    if let Some(t) = cli.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Parse("--tolerance must be positive".into()));
        }
    }
    Ok(match &cli.command {
        Command::Analyze(input) => commands::analyze(&input.load()?)?.map(Output::Report),
        Command::Dfs(input) => commands::dfs(&input.load()?, &settings)?.map(Output::Report),
        Command::Verify { input, theorem } => {
            commands::verify(&input.load()?, *theorem, &settings)?.map(Output::Verify)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = match cli.format {
        Format::Table => outcome.output.to_table(),
        Format::Json => outcome.output.to_json(),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| CliError::Output(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    match outcome.failure {
        Some(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        None => ExitCode::SUCCESS,
    }
}
