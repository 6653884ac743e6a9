//! `igames`: run intersection-crossing batches, the leader/follower matrix
//! demo, equilibrium checks and timing benchmarks.

mod bench;
mod manifest;
mod matrix;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use igames::sim::{BehaviorKind, ConstantSpeed, GameKind, ScenarioConfig, Setting};
use igames::Error;

#[derive(Debug, Parser)]
#[command(name = "igames", version, about = "Nash and Stackelberg games for unsupervised intersection crossing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run seeded scenario batches and print the crash / speed / timing table.
    Simulate(SimulateArgs),
    /// Regenerate the 3x3 leader/follower table and list its equilibria.
    MatrixDemo,
    /// Check a profile of a matrix game for equilibrium.
    Verify(VerifyArgs),
    /// Time every game and setting on the same scenarios.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Scenario parameters shared by `simulate` and `bench`.
#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    #[arg(long, env = "IGAMES_SEED", default_value_t = 7)]
    pub seed: u64,
    #[arg(long, env = "IGAMES_SCENARIOS", default_value_t = 100)]
    pub scenarios: u64,
    #[arg(long, env = "IGAMES_EPOCHS", default_value_t = 50)]
    pub epochs: usize,
    /// Crash distance D, m.
    #[arg(long, env = "IGAMES_CRASH_DISTANCE", default_value_t = 5.0)]
    pub crash_distance: f64,
    /// Safe distance d_xc = d_yc of the collision penalty, m.
    #[arg(long, env = "IGAMES_SAFE_DISTANCE", default_value_t = 6.0)]
    pub safe_distance: f64,
    /// What a constant-speed target holds.
    #[arg(long, env = "IGAMES_CONSTANT_SPEED", value_enum, default_value_t = HoldArg::Desired)]
    pub constant_speed: HoldArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HoldArg {
    Desired,
    Current,
}

impl ScenarioArgs {
    pub fn config(&self, n_players: usize, game: GameKind, setting: Setting, behavior: BehaviorKind) -> ScenarioConfig {
        let mut cfg = ScenarioConfig {
            n_players,
            game,
            setting,
            behavior,
            seed: self.seed,
            epochs: self.epochs,
            crash_distance: self.crash_distance,
            constant_speed: match self.constant_speed {
                HoldArg::Desired => ConstantSpeed::Desired,
                HoldArg::Current => ConstantSpeed::Current,
            },
            ..ScenarioConfig::default()
        };
        cfg.cost.d_xc = self.safe_distance;
        cfg.cost.d_yc = self.safe_distance;
        cfg
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, env = "IGAMES_PLAYERS", default_value_t = 2)]
    pub players: usize,
    /// Comma-separated games: nbr, npf, sse, wse, snf.
    #[arg(long, env = "IGAMES_GAME", value_delimiter = ',', default_values_t = [GameKind::NashBrd, GameKind::StackelbergStrong, GameKind::StackelbergWeak])]
    pub game: Vec<GameKind>,
    /// multiplayer, pairwise or hierarchy.
    #[arg(long, env = "IGAMES_SETTING", default_value_t = Setting::Multiplayer)]
    pub setting: Setting,
    /// Comma-separated target behaviours: ideal, simple, constant.
    #[arg(long, env = "IGAMES_BEHAVIOR", value_delimiter = ',', default_values_t = [BehaviorKind::Ideal, BehaviorKind::SimpleRules, BehaviorKind::ConstantSpeed])]
    pub behavior: Vec<BehaviorKind>,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Directory for scenarios.csv, summary.json and manifest.json.
    #[arg(long, env = "IGAMES_OUT", default_value = "igames-out")]
    pub out: PathBuf,
    #[arg(long, env = "IGAMES_FORMAT", value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Run scenarios one at a time; decision times are then comparable.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Matrix game in the text table format; the built-in 3x3 demo game when omitted.
    pub file: Option<PathBuf>,
    /// Leader and follower actions, e.g. "0,0".
    #[arg(long, allow_hyphen_values = true)]
    pub profile: String,
    /// Also check the strong or weak Stackelberg definition with the row player leading.
    #[arg(long, value_enum)]
    pub stackelberg: Option<ModeArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strong,
    Weak,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated player counts.
    #[arg(long, env = "IGAMES_PLAYERS", value_delimiter = ',', default_values_t = [2, 4])]
    pub players: Vec<usize>,
    #[arg(long, env = "IGAMES_BEHAVIOR", default_value_t = BehaviorKind::Ideal)]
    pub behavior: BehaviorKind,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Directory for bench.csv and manifest.json.
    #[arg(long, env = "IGAMES_OUT")]
    pub out: Option<PathBuf>,
}

/// Maps library errors onto the documented exit codes.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::ProfileSpaceTooLarge { .. } => 3,
        _ => 2,
    }
}

/// A command failure with the exit code to report.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: 4, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate(args) => simulate::run(&args),
        Command::MatrixDemo => matrix::demo(),
        Command::Verify(args) => matrix::verify(&args),
        Command::Bench(args) => bench::run(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
