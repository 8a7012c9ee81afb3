use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::fs;
use std::io::Write;
use std::process::ExitCode;

use hyperwalk::io::{
    curve_csv, distribution_csv, format_sig10, state_to_json, sweep_csv, PlateSpec, VariantSpec,
};
use hyperwalk::layout::{emit_layout, OpticalLayout, Realization};
use hyperwalk::{
    compare_with_operator, evolve, negativity_curve, oracle_evolve, parameter_sweep,
    state_negativity, DofPair, InitialStateParams, Plate, SU2Params, SweepParam, SweepSpec,
    WalkKind, WalkState, WalkVariant,
};
use serde_json::json;

use crate::{Cli, Command, Format, LayoutArgs, NegativityArgs, OracleArgs, SweepArgs, WalkConfig};

/// Operator and recurrence amplitudes must agree to this.
const ORACLE_TOL: f64 = 1e-12;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Runtime(m) => f.write_str(m),
        }
    }
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn runtime(e: impl fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

type CliResult<T> = Result<T, CliError>;

pub fn run(cli: &Cli) -> CliResult<ExitCode> {
    if cli.format == Format::Dot && !matches!(cli.command, Command::Layout(_)) {
        return Err(usage("--format dot is only available for `layout`"));
    }
    let angle = |v: f64| if cli.deg { v.to_radians() } else { v };
    let (text, code) = match &cli.command {
        Command::Walk(args) => (
            cmd_walk(&args.config, cli.format, angle)?,
            ExitCode::SUCCESS,
        ),
        Command::Negativity(args) => (cmd_negativity(args, cli.format, angle)?, ExitCode::SUCCESS),
        Command::Sweep(args) => (cmd_sweep(args, cli.format, angle)?, ExitCode::SUCCESS),
        Command::Layout(args) => (cmd_layout(args, cli.format)?, ExitCode::SUCCESS),
        Command::OracleCheck(args) => cmd_oracle_check(args, cli.format, angle)?,
    };
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))?,
        None => match std::io::stdout().write_all(text.as_bytes()) {
            // a closed reader (`| head`) is not an error
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            other => other.map_err(runtime)?,
        },
    }
    Ok(code)
}

fn check_finite(name: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("--{name} must be finite")))
    }
}

fn variant_of(config: &WalkConfig) -> CliResult<WalkVariant> {
    let spec = match &config.spec {
        Some(text) => VariantSpec::parse(text).map_err(usage)?,
        None => VariantSpec {
            kind: config.variant.clone(),
            plate: PlateSpec::parse(&config.plate).map_err(usage)?,
        },
    };
    spec.to_variant().map_err(usage)
}

/// Converts a user-supplied angle; built-in defaults are already in radians.
fn angle_or(
    name: &str,
    value: Option<f64>,
    default: f64,
    angle: &impl Fn(f64) -> f64,
) -> CliResult<f64> {
    match value {
        Some(v) => Ok(angle(check_finite(name, v)?)),
        None => Ok(default),
    }
}

fn initial_of(config: &WalkConfig, angle: impl Fn(f64) -> f64) -> CliResult<InitialStateParams> {
    Ok(InitialStateParams::new(
        angle_or("alpha", config.alpha, FRAC_PI_4, &angle)?,
        angle(check_finite("beta", config.beta)?),
    ))
}

fn parse_pair(text: &str) -> CliResult<DofPair> {
    text.parse().map_err(usage)
}

fn cmd_walk(config: &WalkConfig, format: Format, angle: impl Fn(f64) -> f64) -> CliResult<String> {
    let variant = variant_of(config)?;
    let init = initial_of(config, angle)?;
    let state = evolve(&WalkState::initial(init), &variant, config.steps);
    match format {
        Format::Json => state_to_json(&state).map_err(runtime),
        _ => Ok(distribution_csv(&state)),
    }
}

fn cmd_negativity(
    args: &NegativityArgs,
    format: Format,
    angle: impl Fn(f64) -> f64,
) -> CliResult<String> {
    let pair = parse_pair(&args.pair)?;
    let variant = variant_of(&args.config)?;
    let init = initial_of(&args.config, angle)?;
    let steps = args.config.steps;
    if args.curve {
        if steps == 0 {
            return Err(usage("--curve needs --steps >= 1"));
        }
        let curve = negativity_curve(&variant, init, pair, steps).map_err(runtime)?;
        return Ok(match format {
            Format::Json => {
                let rows: Vec<_> = curve
                    .iter()
                    .map(|(n, v)| json!({"n": n, "negativity": v}))
                    .collect();
                json!({"pair": pair.to_string(), "curve": rows}).to_string() + "\n"
            }
            _ => curve_csv(&curve),
        });
    }
    let state = evolve(&WalkState::initial(init), &variant, steps);
    let value = state_negativity(&state, pair).map_err(runtime)?.value();
    Ok(match format {
        Format::Json => {
            json!({"pair": pair.to_string(), "steps": steps, "negativity": value}).to_string()
                + "\n"
        }
        _ => format!("{}\n", format_sig10(value)),
    })
}

fn cmd_sweep(args: &SweepArgs, format: Format, angle: impl Fn(f64) -> f64) -> CliResult<String> {
    let param: SweepParam = args.param.parse().map_err(usage)?;
    let kind: WalkKind = args.variant.parse().map_err(usage)?;
    let pair = parse_pair(&args.pair)?;
    let mut spec = SweepSpec::new(
        param,
        angle(check_finite("from", args.from)?),
        angle(check_finite("to", args.to)?),
        angle(check_finite("step", args.step)?),
    );
    spec.kind = kind;
    spec.grid().map_err(usage)?;
    let fixed = SU2Params::new(
        angle(check_finite("xi", args.xi)?),
        angle(check_finite("zeta", args.zeta)?),
        angle(check_finite("theta", args.theta)?),
    );
    let init = InitialStateParams::new(
        angle_or("alpha", args.alpha, FRAC_PI_4, &angle)?,
        angle(check_finite("beta", args.beta)?),
    );
    let rows = parameter_sweep(&spec, fixed, init, args.steps, pair).map_err(runtime)?;
    Ok(match format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(a, v)| json!({"angle_rad": a, "negativity": v}))
                .collect();
            json!({"param": param.name(), "pair": pair.to_string(), "steps": args.steps, "points": rows})
                .to_string()
                + "\n"
        }
        _ => sweep_csv(&rows),
    })
}

fn layout_csv(layout: &OpticalLayout) -> String {
    let mut out = String::from("kind,step_index,position_index\n");
    for e in &layout.elements {
        let kind = serde_json::to_value(e.kind).unwrap();
        out.push_str(&format!(
            "{},{},{}\n",
            kind.as_str().unwrap(),
            e.step_index,
            e.position_index
        ));
    }
    out
}

fn cmd_layout(args: &LayoutArgs, format: Format) -> CliResult<String> {
    let realization: Realization = args.realization.parse().map_err(usage)?;
    let layout = emit_layout(args.steps, realization).map_err(usage)?;
    match format {
        Format::Json => Ok(layout.to_json().map_err(runtime)? + "\n"),
        Format::Dot => Ok(layout.to_dot()),
        Format::Csv => Ok(layout_csv(&layout)),
    }
}

fn cmd_oracle_check(
    args: &OracleArgs,
    format: Format,
    angle: impl Fn(f64) -> f64,
) -> CliResult<(String, ExitCode)> {
    let params = SU2Params::new(
        angle(check_finite("xi", args.xi)?),
        angle_or("zeta", args.zeta, -FRAC_PI_2, &angle)?,
        angle_or("theta", args.theta, FRAC_PI_4, &angle)?,
    );
    let init = InitialStateParams::new(
        angle_or("alpha", args.alpha, FRAC_PI_4, &angle)?,
        angle(check_finite("beta", args.beta)?),
    );
    let plate = match &args.operator_plate {
        Some(text) => PlateSpec::parse(text)
            .and_then(|p| p.to_plate())
            .map_err(usage)?,
        None => Plate::Params(params),
    };
    let grids = oracle_evolve(init, params, args.steps);
    let state = evolve(
        &WalkState::initial(init),
        &WalkVariant::new(WalkKind::ModifiedPauli, plate),
        args.steps,
    );
    let deviation = compare_with_operator(&grids, &state).map_err(runtime)?;
    let pass = deviation < ORACLE_TOL;
    let text = match format {
        Format::Json => {
            json!({"steps": args.steps, "max_deviation": deviation, "pass": pass}).to_string()
                + "\n"
        }
        _ => format!(
            "steps,max_deviation\n{},{}\n",
            args.steps,
            format_sig10(deviation)
        ),
    };
    if !pass {
        eprintln!(
            "hyperwalk: operator and recurrence differ by {deviation:e} (tolerance {ORACLE_TOL:e})"
        );
    }
    Ok((
        text,
        if pass {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(2)
        },
    ))
}
