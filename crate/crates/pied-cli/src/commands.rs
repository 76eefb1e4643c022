//! Implementations behind the six subcommands. Each returns the path it
//! wrote so tests can follow the artifacts.

use crate::error::{CliError, CliResult};
use crate::record::{
    evidence_str, label_str, out_dir, region_str, spectrum_csv, BoundsSummary, ExperimentRecord,
    MitigationInfo, RunConfig,
};
use pied_core::bounds::{classify, BoundsTable, Label, Verdict};
use pied_core::mitigation::{
    cfe_apply, cfe_extrapolate, cfe_fit, cfe_lambda_opt, zne_run_synthetic, CorrectionModel,
};
use pied_core::spectral::{spectrum, FourierSpectrum, SpectrumMethod};
use pied_core::statesim::sample_trace;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

pub fn cmd_simulate(config: RunConfig, out: Option<PathBuf>) -> CliResult<PathBuf> {
    config.validate()?;
    let profile = config.profile()?;
    let noise = config.noise_spec()?;
    let trace = sample_trace(&profile, config.omega, config.p, noise.as_ref())?;

    let shots = config.shots.map_or("none".into(), |s| s.to_string());
    let first = trace.gamma.first().copied().unwrap_or(f64::NAN);
    let last = trace.gamma.last().copied().unwrap_or(f64::NAN);
    println!(
        "trace: d={} p={} state={} shots={shots} gamma_first={first:.8} gamma_last={last:.8}",
        config.d,
        config.p,
        config.state.as_str()
    );

    let path = out.unwrap_or_else(|| {
        out_dir().join(format!("simulate-d{}-seed{}.json", config.d, config.seed))
    });
    let mut record = ExperimentRecord::new(config);
    record.trace = Some(trace);
    record.save(&path)?;
    println!("wrote {}", path.display());
    Ok(path)
}

pub enum SpectrumSource {
    Record(PathBuf),
    Fresh(RunConfig),
}

pub fn cmd_spectrum(
    source: SpectrumSource,
    closed_form: bool,
    repeat: Option<u32>,
    csv: Option<PathBuf>,
    out: Option<PathBuf>,
) -> CliResult<PathBuf> {
    let (mut record, origin) = match source {
        SpectrumSource::Record(path) => (ExperimentRecord::load(&path)?, Some(path)),
        SpectrumSource::Fresh(config) => (ExperimentRecord::new(config), None),
    };
    let config = record.config.clone();
    config.validate()?;
    let profile = config.profile()?;

    let (spec, stderr) = if closed_form {
        if repeat.is_some() {
            return Err(CliError::Config("--repeat requires the numeric route".into()));
        }
        (spectrum(&profile, config.omega, config.p, None, SpectrumMethod::ClosedForm)?, None)
    } else {
        match repeat {
            None => {
                let noise = config.noise_spec()?;
                (
                    spectrum(
                        &profile,
                        config.omega,
                        config.p,
                        noise.as_ref(),
                        SpectrumMethod::Numeric,
                    )?,
                    None,
                )
            }
            Some(k) if k < 2 => {
                return Err(CliError::Config(format!("--repeat must be at least 2, got {k}")));
            }
            Some(k) => {
                let mut runs = Vec::with_capacity(k as usize);
                for j in 0..k as u64 {
                    let run_config = config.with_seed(config.seed + j);
                    let noise = run_config.noise_spec()?;
                    runs.push(spectrum(
                        &profile,
                        run_config.omega,
                        run_config.p,
                        noise.as_ref(),
                        SpectrumMethod::Numeric,
                    )?);
                }
                let mut mean = runs[0].clone();
                let mut stderr = BTreeMap::new();
                let kf = k as f64;
                let indices: Vec<u64> = mean.modes.keys().copied().collect();
                for n in indices {
                    let values: Vec<f64> = runs.iter().map(|r| r.modes[&n]).collect();
                    let m = values.iter().sum::<f64>() / kf;
                    let var =
                        values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (kf - 1.0);
                    mean.modes.insert(n, m);
                    stderr.insert(n, (var / kf).sqrt());
                }
                (mean, Some(stderr))
            }
        }
    };

    let method = if closed_form { "closed" } else { "numeric" };
    println!("spectrum: d={} modes={} method={method}", config.d, spec.modes.len());

    record.spectrum = Some(spec);
    record.spectrum_stderr = stderr;
    let path = out.or(origin).unwrap_or_else(|| {
        out_dir().join(format!("spectrum-d{}-seed{}.json", config.d, config.seed))
    });
    record.save(&path)?;
    println!("wrote {}", path.display());
    if let Some(csv_path) = csv {
        write_text(&csv_path, &spectrum_csv(&record)?)?;
        println!("wrote {}", csv_path.display());
    }
    Ok(path)
}

pub fn cmd_calibrate(
    records: Vec<PathBuf>,
    mut pairs: Vec<(usize, f64)>,
    out: Option<PathBuf>,
) -> CliResult<PathBuf> {
    for path in &records {
        let record = ExperimentRecord::load(path)?;
        let noisy = record.spectrum.as_ref().ok_or_else(|| {
            CliError::MissingInput(format!(
                "{} has no spectrum; run `pied spectrum` on it first",
                path.display()
            ))
        })?;
        let profile = record.config.profile()?;
        let reference =
            spectrum(&profile, record.config.omega, 2, None, SpectrumMethod::ClosedForm)?;
        let lambda = cfe_lambda_opt(&noisy.values(), &reference.values())?;
        pairs.push((record.config.d, lambda));
    }
    pairs.sort_by_key(|&(d, _)| d);
    for &(d, lambda) in &pairs {
        println!("lambda_opt(d={d}) = {lambda}");
    }
    let model = cfe_fit(&pairs)?;
    println!(
        "model: lambda0={} kappa={} eta={}",
        model.lambda0, model.kappa, model.eta
    );

    let path = out.unwrap_or_else(|| out_dir().join("correction-model.json"));
    let text = serde_json::to_string_pretty(&model)
        .map_err(|e| CliError::Config(format!("model serialization failed: {e}")))?;
    write_text(&path, &text)?;
    println!("wrote {}", path.display());
    Ok(path)
}

fn load_model(path: &Path) -> CliResult<CorrectionModel> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::MissingInput(format!("cannot read model {}: {e}", path.display()))
    })?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::MissingInput(format!("{} is not a valid correction model: {e}", path.display()))
    })
}

pub fn cmd_mitigate(
    record_path: PathBuf,
    model_path: Option<PathBuf>,
    lambda_flag: Option<f64>,
    csv: Option<PathBuf>,
) -> CliResult<()> {
    let mut record = ExperimentRecord::load(&record_path)?;
    let raw = record.spectrum.clone().ok_or_else(|| {
        CliError::MissingInput(format!(
            "{} has no spectrum to mitigate; run `pied spectrum` first",
            record_path.display()
        ))
    })?;

    let (lambda, model) = match (lambda_flag, model_path) {
        (Some(lambda), _) => (lambda, None),
        (None, Some(path)) => {
            let model = load_model(&path)?;
            (cfe_extrapolate(&model, record.config.d), Some(model))
        }
        (None, None) => {
            return Err(CliError::Config("provide --model or --lambda".into()));
        }
    };

    record.spectrum_mitigated = Some(cfe_apply(lambda, &raw)?);
    record.mitigation = Some(MitigationInfo { lambda_used: lambda, model });
    println!("mitigate: d={} lambda={lambda}", record.config.d);
    record.save(&record_path)?;
    println!("wrote {}", record_path.display());
    if let Some(csv_path) = csv {
        write_text(&csv_path, &spectrum_csv(&record)?)?;
        println!("wrote {}", csv_path.display());
    }
    Ok(())
}

pub fn cmd_classify(
    record_path: PathBuf,
    tolerance: Option<f64>,
    csv: Option<PathBuf>,
) -> CliResult<()> {
    let mut record = ExperimentRecord::load(&record_path)?;
    let spec: &FourierSpectrum = record
        .spectrum_mitigated
        .as_ref()
        .or(record.spectrum.as_ref())
        .ok_or_else(|| {
            CliError::MissingInput(format!(
                "{} has no spectrum; run `pied spectrum` first",
                record_path.display()
            ))
        })?;
    let tolerance = tolerance.unwrap_or(record.config.tolerance);
    if !(0.0..1.0).contains(&tolerance) {
        return Err(CliError::Config(format!("tolerance must lie in [0, 1), got {tolerance}")));
    }

    let table = BoundsTable::new(spec.d)?;
    let verdicts: Vec<Verdict> = spec
        .modes
        .iter()
        .map(|(&n, &alpha)| classify(n, alpha, &table, tolerance))
        .collect::<Result<_, _>>()?;

    let mut counts = (0usize, 0usize, 0usize);
    for v in &verdicts {
        println!(
            "n={:<3} region={:<10} label={:<14} evidence={}",
            v.n,
            region_str(v.region),
            label_str(v.label),
            evidence_str(v.evidence)
        );
        match v.label {
            Label::Prime => counts.0 += 1,
            Label::ProbablePrime => counts.1 += 1,
            Label::Composite => counts.2 += 1,
        }
    }
    println!(
        "classified {} modes at tolerance {tolerance}: {} prime, {} probable_prime, {} composite",
        verdicts.len(),
        counts.0,
        counts.1,
        counts.2
    );

    record.bounds = Some(BoundsSummary::from_table(&table));
    record.verdicts = Some(verdicts);
    record.save(&record_path)?;
    println!("wrote {}", record_path.display());
    if let Some(csv_path) = csv {
        write_text(&csv_path, &spectrum_csv(&record)?)?;
        println!("wrote {}", csv_path.display());
    }
    Ok(())
}

pub fn cmd_zne(
    config: RunConfig,
    scale_factors: Vec<f64>,
    order: usize,
    out: Option<PathBuf>,
) -> CliResult<PathBuf> {
    config.validate()?;
    if config.noise.is_none() {
        return Err(CliError::Config(
            "zne requires a noise layer: set --noise-eps or --noise-model".into(),
        ));
    }
    let profile = config.profile()?;
    let noise = config.noise_spec()?.expect("noise presence checked");
    let run = zne_run_synthetic(&profile, config.omega, config.p, &noise, &scale_factors, order)?;

    println!(
        "zne: d={} p={} factors={scale_factors:?} order={order}",
        config.d, config.p
    );
    let path = out
        .unwrap_or_else(|| out_dir().join(format!("zne-d{}-seed{}.json", config.d, config.seed)));
    let mut record = ExperimentRecord::new(config);
    record.trace = Some(run.mitigated);
    record.zne_scaled = Some(run.scaled);
    record.save(&path)?;
    println!("wrote {}", path.display());
    Ok(path)
}
