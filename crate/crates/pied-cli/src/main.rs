use clap::{Args, Parser, Subcommand};
use pied_cli::commands::{
    cmd_calibrate, cmd_classify, cmd_mitigate, cmd_simulate, cmd_spectrum, cmd_zne,
    SpectrumSource,
};
use pied_cli::record::{RunConfig, StateFamily};
use pied_cli::{CliError, CliResult};
use pied_core::statesim::EpsilonModel;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "pied",
    version,
    about = "Purity-trace laboratory: simulate entangling dynamics, extract cosine modes, \
             classify them against analytic prime/composite bounds, and undo synthetic noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a purity trace and write an experiment record
    Simulate(SimulateArgs),
    /// Extract the cosine-mode spectrum from a record or a fresh run
    Spectrum(SpectrumArgs),
    /// Fit the rescaling-factor model from calibration records or injected factors
    Calibrate(CalibrateArgs),
    /// Rescale a record's spectrum by a fitted model or an explicit factor
    Mitigate(MitigateArgs),
    /// Label each mode prime/composite against the bound curves
    Classify(ClassifyArgs),
    /// Extrapolate a trace to zero noise from amplified-noise reruns
    Zne(ZneArgs),
}

#[derive(Args)]
struct ConfigArgs {
    /// JSON run config; explicit flags below override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Subsystem dimension (power of two, at least 2)
    #[arg(long)]
    d: Option<usize>,
    /// Coupling frequency (default 0.1)
    #[arg(long)]
    omega: Option<f64>,
    /// Simpson subinterval count over one period (even)
    #[arg(long)]
    p: Option<usize>,
    /// Initial-state family
    #[arg(long, value_enum)]
    state: Option<StateFamily>,
    /// Constant contraction strength in [0, 1)
    #[arg(long, conflicts_with = "noise_model")]
    noise_eps: Option<f64>,
    /// Dimension-scaled contraction as "lambda0,kappa,eta"
    #[arg(long)]
    noise_model: Option<String>,
    /// Swap-test shot count; a bare --shots means 8192
    #[arg(long, num_args = 0..=1, default_missing_value = "8192")]
    shots: Option<u64>,
    /// RNG seed (default 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Relative tolerance band for classification (default 0.05)
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Record output path (defaults into $PIED_OUT_DIR)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Reuse the config of an existing record and write the spectrum back into it
    #[arg(long, conflicts_with_all = ["config", "d", "p", "state", "noise_eps", "noise_model", "shots", "seed"])]
    record: Option<PathBuf>,
    /// Evaluate the divisor-sum closed form instead of Simpson integration
    #[arg(long)]
    closed_form: bool,
    /// Average this many independently seeded runs; adds a standard-error column
    #[arg(long)]
    repeat: Option<u32>,
    /// Also export the spectrum table as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Record output path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Record files with noisy spectra, one per calibration dimension
    #[arg(long = "records", num_args = 1..)]
    records: Vec<PathBuf>,
    /// Inject a measured factor directly, as d=lambda (repeatable)
    #[arg(long = "lambda", value_name = "D=LAMBDA")]
    lambdas: Vec<String>,
    /// Model output path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MitigateArgs {
    /// Record whose spectrum gets rescaled (updated in place)
    #[arg(long)]
    record: PathBuf,
    /// Fitted correction model file
    #[arg(long, conflicts_with = "lambda")]
    model: Option<PathBuf>,
    /// Explicit rescaling factor
    #[arg(long)]
    lambda: Option<f64>,
    /// Also export the spectrum table as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Record with a spectrum (mitigated spectrum preferred when present)
    #[arg(long)]
    record: PathBuf,
    /// Relative tolerance band; defaults to the record's configured value
    #[arg(long)]
    tolerance: Option<f64>,
    /// Also export the verdict table as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct ZneArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Comma-separated noise amplification factors (must include 1)
    #[arg(long, default_value = "1,2")]
    scale_factors: String,
    /// Polynomial order of the zero-noise fit
    #[arg(long, default_value_t = 1)]
    order: usize,
    /// Record output path
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_noise_model(text: &str) -> CliResult<EpsilonModel> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!(
            "--noise-model wants \"lambda0,kappa,eta\", got {text:?}"
        )));
    }
    let mut values = [0.0f64; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|_| {
            CliError::Config(format!("--noise-model field {part:?} is not a number"))
        })?;
    }
    Ok(EpsilonModel::DimensionScaled {
        lambda0: values[0],
        kappa: values[1],
        eta: values[2],
    })
}

fn parse_scale_factors(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim().parse().map_err(|_| {
                CliError::Config(format!("--scale-factors entry {part:?} is not a number"))
            })
        })
        .collect()
}

fn parse_lambda_pair(text: &str) -> CliResult<(usize, f64)> {
    let (d, lambda) = text
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--lambda wants D=LAMBDA, got {text:?}")))?;
    let d = d.trim().parse().map_err(|_| {
        CliError::Config(format!("--lambda dimension {d:?} is not an integer"))
    })?;
    let lambda = lambda.trim().parse().map_err(|_| {
        CliError::Config(format!("--lambda value {lambda:?} is not a number"))
    })?;
    Ok((d, lambda))
}

/// Merge a config file (if any) with flag overrides. `default_p` covers
/// commands where the subinterval count is irrelevant (closed-form route).
fn resolve_config(args: &ConfigArgs, default_p: Option<usize>) -> CliResult<RunConfig> {
    let flag_noise = match (&args.noise_eps, &args.noise_model) {
        (Some(epsilon), None) => Some(EpsilonModel::Constant { epsilon: *epsilon }),
        (None, Some(text)) => Some(parse_noise_model(text)?),
        (None, None) => None,
        (Some(_), Some(_)) => {
            return Err(CliError::Config("choose one of --noise-eps / --noise-model".into()));
        }
    };

    let config = if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::MissingInput(format!("cannot read config {}: {e}", path.display()))
        })?;
        let mut base: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        if let Some(d) = args.d {
            base.d = d;
        }
        if let Some(omega) = args.omega {
            base.omega = omega;
        }
        if let Some(p) = args.p {
            base.p = p;
        }
        if let Some(state) = args.state {
            base.state = state;
        }
        if let Some(shots) = args.shots {
            base.shots = Some(shots);
        }
        if flag_noise.is_some() {
            base.noise = flag_noise;
        }
        if let Some(seed) = args.seed {
            base.seed = seed;
        }
        if let Some(tolerance) = args.tolerance {
            base.tolerance = tolerance;
        }
        base
    } else {
        RunConfig {
            d: args
                .d
                .ok_or_else(|| CliError::Config("--d is required (or pass --config)".into()))?,
            omega: args.omega.unwrap_or(0.1),
            p: args.p.or(default_p).ok_or_else(|| {
                CliError::Config("--p is required (or pass --config)".into())
            })?,
            state: args.state.unwrap_or_default(),
            shots: args.shots,
            noise: flag_noise,
            seed: args.seed.unwrap_or(0),
            tolerance: args.tolerance.unwrap_or(0.05),
        }
    };
    config.validate()?;
    Ok(config)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Simulate(args) => {
            let config = resolve_config(&args.config, None)?;
            cmd_simulate(config, args.out)?;
        }
        Command::Spectrum(args) => {
            let source = match args.record {
                Some(path) => SpectrumSource::Record(path),
                None => {
                    let default_p = if args.closed_form { Some(2) } else { None };
                    SpectrumSource::Fresh(resolve_config(&args.config, default_p)?)
                }
            };
            cmd_spectrum(source, args.closed_form, args.repeat, args.csv, args.out)?;
        }
        Command::Calibrate(args) => {
            let pairs = args
                .lambdas
                .iter()
                .map(|text| parse_lambda_pair(text))
                .collect::<CliResult<Vec<_>>>()?;
            cmd_calibrate(args.records, pairs, args.out)?;
        }
        Command::Mitigate(args) => {
            cmd_mitigate(args.record, args.model, args.lambda, args.csv)?;
        }
        Command::Classify(args) => {
            cmd_classify(args.record, args.tolerance, args.csv)?;
        }
        Command::Zne(args) => {
            let config = resolve_config(&args.config, None)?;
            let factors = parse_scale_factors(&args.scale_factors)?;
            cmd_zne(config, factors, args.order, args.out)?;
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
