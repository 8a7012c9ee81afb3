use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Coinless 2D quantum walks of a single photon over polarization, path and OAM.
#[derive(Debug, Parser)]
#[command(name = "hyperwalk", version)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Reserved; nothing in the simulator is stochastic.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Read every angle argument in degrees.
    #[arg(long, global = true)]
    deg: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    /// Graphviz, `layout` only.
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Site probability distribution after a number of steps.
    Walk(WalkArgs),
    /// Negativity between two degrees of freedom.
    Negativity(NegativityArgs),
    /// Negativity while sweeping one plate parameter.
    Sweep(SweepArgs),
    /// Optical netlist and component counts.
    Layout(LayoutArgs),
    /// Compare operator evolution with the site recurrences.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Args)]
struct WalkConfig {
    /// modified-pauli, pauli, alternate or modified-alternate.
    #[arg(long, default_value = "modified-pauli")]
    variant: String,

    /// `q`, `{"xi":..,"zeta":..,"theta":..}` or `{"u1":[re,im,re,im],"u2":[..]}`.
    #[arg(long, default_value = "q")]
    plate: String,

    /// Full variant as JSON `{"kind":..,"plate":..}`; overrides --variant/--plate.
    #[arg(long)]
    spec: Option<String>,

    /// Input polarization angle [default: π/4].
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,

    #[arg(long)]
    steps: usize,
}

#[derive(Debug, Args)]
struct WalkArgs {
    #[command(flatten)]
    config: WalkConfig,
}

#[derive(Debug, Args)]
struct NegativityArgs {
    #[command(flatten)]
    config: WalkConfig,

    /// pol-oam, pol-path or path-oam (either order).
    #[arg(long, default_value = "pol-oam")]
    pair: String,

    /// Emit one row per step 1..=steps.
    #[arg(long)]
    curve: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// xi, zeta or theta.
    #[arg(long)]
    param: String,

    #[arg(long, allow_negative_numbers = true)]
    from: f64,

    #[arg(long, allow_negative_numbers = true)]
    to: f64,

    #[arg(long)]
    step: f64,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    xi: f64,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    zeta: f64,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,

    #[arg(long, default_value = "modified-pauli")]
    variant: String,

    /// Input polarization angle [default: π/4].
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,

    #[arg(long, default_value_t = 25)]
    steps: usize,

    #[arg(long, default_value = "path-oam")]
    pair: String,
}

#[derive(Debug, Args)]
struct LayoutArgs {
    #[arg(long, allow_negative_numbers = true)]
    steps: i64,

    /// jplate, qplate-modified or qplate-pauli.
    #[arg(long, default_value = "jplate")]
    realization: String,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    xi: f64,

    /// [default: −π/2]
    #[arg(long, allow_negative_numbers = true)]
    zeta: Option<f64>,

    /// [default: π/4]
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,

    /// Input polarization angle [default: π/4].
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,

    #[arg(long, default_value_t = 10)]
    steps: usize,

    /// Evolve the operator side with this plate instead (checks that a
    /// mismatch is detected).
    #[arg(long, hide = true)]
    operator_plate: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hyperwalk: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
