use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;
mod inputs;
mod report;

/// Symmetry and asymmetry of quantum states under finite groups.
///
/// Groups are builtin specs (`cyclic:4`, `klein4`, `dihedral:5`,
/// `symmetric3`) or JSON files. Reports are JSON with sorted keys.
#[derive(Parser)]
#[command(name = "wavicle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, irreps, character table and reference states of a group.
    GroupInfo(GroupInfoArgs),
    /// Capacity report of a state under a representation.
    Analyze(AnalyzeArgs),
    /// Two-path interferometer or superdense coding.
    Scenario(ScenarioArgs),
    /// Randomized property sweep over a representation.
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct Common {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<String>,
    /// Validation tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args)]
pub struct GroupInfoArgs {
    #[arg(long)]
    pub group: String,
    /// `regular`, `irrep-basis`, `pauli` or a representation file.
    #[arg(long)]
    pub rep: Option<String>,
    /// Irreducible representation file.
    #[arg(long)]
    pub irreps: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub group: String,
    /// `regular` (default), `irrep-basis`, `pauli` or a representation file.
    #[arg(long)]
    pub rep: Option<String>,
    #[arg(long)]
    pub irreps: Option<String>,
    /// State file with `ket` or `density`.
    #[arg(long)]
    pub state: String,
    /// Number of copies acted on collectively.
    #[arg(long, default_value_t = 1)]
    pub copies: usize,
    #[arg(long, default_value_t = wavicle::SearchConfig::default().seed)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ScenarioName {
    Interferometer,
    Superdense,
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioName::Interferometer => "interferometer",
            ScenarioName::Superdense => "superdense",
        })
    }
}

#[derive(Args)]
pub struct ScenarioArgs {
    pub name: ScenarioName,
    /// State file, or `zero`/`one`/`plus`/`minus` (interferometer) or
    /// `phi+`/`phi-`/`psi+`/`psi-` (superdense).
    #[arg(long)]
    pub state: Option<String>,
    /// Number of phases over [0, 2π].
    #[arg(long, default_value_t = 361)]
    pub phases: usize,
    /// Message priors `a,b,c,d` for superdense coding.
    #[arg(long)]
    pub priors: Option<String>,
    /// Fringe CSV path; defaults to the report path with a `.csv` extension.
    #[arg(long)]
    pub csv: Option<String>,
    #[arg(long, default_value_t = wavicle::SearchConfig::default().seed)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub rep: Option<String>,
    #[arg(long)]
    pub irreps: Option<String>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = wavicle::SearchConfig::default().seed)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::GroupInfo(a) => commands::group_info(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Scenario(a) => commands::scenario(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
