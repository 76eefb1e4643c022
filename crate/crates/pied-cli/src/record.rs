//! One JSON document per run, plus the fixed-column CSV export.
//!
//! The record's `config` block fully determines every random draw, so a
//! rerun from the same record reproduces the trace bit for bit. Timestamps
//! are bookkeeping only and excluded from that guarantee.

use crate::error::{CliError, CliResult};
use chrono::Utc;
use pied_core::bounds::{BoundsTable, Evidence, Label, Region, Verdict};
use pied_core::mitigation::CorrectionModel;
use pied_core::spectral::FourierSpectrum;
use pied_core::statesim::{
    prepare_spin_coherent, prepare_uniform, AmplitudeProfile, EpsilonModel, NoiseSpec, PurityTrace,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

/// Initial-state family of the bipartite register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum StateFamily {
    #[default]
    Uniform,
    SpinCoherent,
}

impl StateFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            StateFamily::Uniform => "uniform",
            StateFamily::SpinCoherent => "spin_coherent",
        }
    }
}

fn default_omega() -> f64 {
    0.1
}

fn default_tolerance() -> f64 {
    0.05
}

/// Everything a run needs; parsed from a JSON file and/or flag overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub d: usize,
    #[serde(default = "default_omega")]
    pub omega: f64,
    pub p: usize,
    #[serde(default)]
    pub state: StateFamily,
    #[serde(default)]
    pub shots: Option<u64>,
    #[serde(default)]
    pub noise: Option<EpsilonModel>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.d < 2 || !self.d.is_power_of_two() {
            return Err(CliError::Config(format!(
                "d must be a power of two and at least 2, got {}",
                self.d
            )));
        }
        if self.p < 2 || self.p % 2 != 0 {
            return Err(CliError::Config(format!("p must be even and at least 2, got {}", self.p)));
        }
        if !(self.omega > 0.0) {
            return Err(CliError::Config(format!("omega must be positive, got {}", self.omega)));
        }
        if self.shots == Some(0) {
            return Err(CliError::Config("shots must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&self.tolerance) {
            return Err(CliError::Config(format!(
                "tolerance must lie in [0, 1), got {}",
                self.tolerance
            )));
        }
        if let Some(model) = &self.noise {
            model.epsilon(self.d).map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(())
    }

    pub fn profile(&self) -> CliResult<AmplitudeProfile> {
        let profile = match self.state {
            StateFamily::Uniform => prepare_uniform(self.d)?,
            StateFamily::SpinCoherent => prepare_spin_coherent(self.d)?,
        };
        Ok(profile)
    }

    /// The noise layer implied by the config: None for an exact run, a spec
    /// combining the contraction model, shots, and seed otherwise.
    pub fn noise_spec(&self) -> CliResult<Option<NoiseSpec>> {
        if self.noise.is_none() && self.shots.is_none() {
            return Ok(None);
        }
        let epsilon = self.noise.unwrap_or(EpsilonModel::Constant { epsilon: 0.0 });
        Ok(Some(NoiseSpec::new(epsilon, self.shots, self.seed)?))
    }

    /// Same run, different seed; used by repeat aggregation.
    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }
}

/// Bound curves and thresholds snapshot persisted next to the verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsSummary {
    pub d: usize,
    pub b: BTreeMap<u64, f64>,
    pub p: BTreeMap<u64, f64>,
    pub n_th2: Option<f64>,
    pub n_th3: Option<f64>,
    pub k_set: Vec<u64>,
}

impl BoundsSummary {
    pub fn from_table(table: &BoundsTable) -> Self {
        let band = FourierSpectrum::band(table.dim());
        let b = band.clone().map(|n| (n, table.b(n).expect("in band"))).collect();
        let p = band.map(|n| (n, table.p(n).expect("in band"))).collect();
        Self {
            d: table.dim(),
            b,
            p,
            n_th2: table.n_th2(),
            n_th3: table.n_th3(),
            k_set: table.k_set().to_vec(),
        }
    }
}

/// How the mitigated spectrum was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MitigationInfo {
    pub lambda_used: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<CorrectionModel>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub schema_version: u32,
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<PurityTrace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<FourierSpectrum>,
    /// Standard error per mode when the spectrum is a repeat aggregate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum_stderr: Option<BTreeMap<u64, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum_mitigated: Option<FourierSpectrum>,
    /// Per-scale-factor raw traces of a ZNE run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zne_scaled: Option<Vec<PurityTrace>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mitigation: Option<MitigationInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<Verdict>>,
    pub created_at: String,
    pub updated_at: String,
}

impl ExperimentRecord {
    pub fn new(config: RunConfig) -> Self {
        let now = Utc::now().to_rfc3339();
        Self {
            schema_version: SCHEMA_VERSION,
            config,
            trace: None,
            spectrum: None,
            spectrum_stderr: None,
            spectrum_mitigated: None,
            zne_scaled: None,
            bounds: None,
            mitigation: None,
            verdicts: None,
            created_at: now.clone(),
            updated_at: now,
        }
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::MissingInput(format!("cannot read record {}: {e}", path.display()))
        })?;
        let record: Self = serde_json::from_str(&text).map_err(|e| {
            CliError::MissingInput(format!("{} is not a valid record: {e}", path.display()))
        })?;
        if record.schema_version != SCHEMA_VERSION {
            return Err(CliError::MissingInput(format!(
                "{}: unsupported schema_version {} (expected {SCHEMA_VERSION})",
                path.display(),
                record.schema_version
            )));
        }
        Ok(record)
    }

    pub fn save(&mut self, path: &Path) -> CliResult<()> {
        self.updated_at = Utc::now().to_rfc3339();
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Config(format!("record serialization failed: {e}")))?;
        std::fs::write(path, text).map_err(|e| {
            CliError::Config(format!("cannot write record {}: {e}", path.display()))
        })?;
        Ok(())
    }
}

pub fn region_str(region: Region) -> &'static str {
    match region {
        Region::Green => "green",
        Region::LightBlue => "light_blue",
        Region::Purple => "purple",
    }
}

pub fn label_str(label: Label) -> &'static str {
    match label {
        Label::Prime => "prime",
        Label::ProbablePrime => "probable_prime",
        Label::Composite => "composite",
    }
}

pub fn evidence_str(evidence: Evidence) -> String {
    match evidence {
        Evidence::BelowB => "below_b".into(),
        Evidence::AboveP => "above_p".into(),
        Evidence::WitnessFound { divisor } => format!("witness:{divisor}"),
        Evidence::NoWitness => "no_witness".into(),
    }
}

/// Fixed-schema CSV of the record's spectrum: one row per mode with the raw
/// value, the mitigated value when present, both bound curves, and the
/// verdict columns when classification ran. A trailing alpha_stderr column
/// appears only for repeat aggregates.
pub fn spectrum_csv(record: &ExperimentRecord) -> CliResult<String> {
    let spectrum = record
        .spectrum
        .as_ref()
        .ok_or_else(|| CliError::MissingInput("record has no spectrum to export".into()))?;
    let table = BoundsTable::new(spectrum.d)?;
    let verdicts: BTreeMap<u64, &Verdict> = record
        .verdicts
        .iter()
        .flatten()
        .map(|v| (v.n, v))
        .collect();
    let with_stderr = record.spectrum_stderr.is_some();

    let mut out = String::from("n,alpha_raw,alpha_mitigated,B_n,P_n,region,label");
    if with_stderr {
        out.push_str(",alpha_stderr");
    }
    out.push('\n');
    for (&n, &alpha) in &spectrum.modes {
        let mitigated = record
            .spectrum_mitigated
            .as_ref()
            .and_then(|s| s.modes.get(&n))
            .map(|v| v.to_string())
            .unwrap_or_default();
        let (region, label) = verdicts
            .get(&n)
            .map(|v| (region_str(v.region), label_str(v.label)))
            .unwrap_or(("", ""));
        out.push_str(&format!(
            "{n},{alpha},{mitigated},{},{},{region},{label}",
            table.b(n)?,
            table.p(n)?
        ));
        if with_stderr {
            let se = record
                .spectrum_stderr
                .as_ref()
                .and_then(|m| m.get(&n))
                .map(|v| v.to_string())
                .unwrap_or_default();
            out.push(',');
            out.push_str(&se);
        }
        out.push('\n');
    }
    Ok(out)
}

/// Default output directory: $PIED_OUT_DIR when set, the working directory
/// otherwise.
pub fn out_dir() -> PathBuf {
    std::env::var_os("PIED_OUT_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."))
}
