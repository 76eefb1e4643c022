//! Cosine-mode extraction from purity traces.
//!
//! The n-th mode is alpha_n = (2 omega / pi) * int_0^{pi/omega} gamma(t)
//! cos(n omega t) dt. The numeric route integrates a sampled trace with
//! composite Simpson; the closed route evaluates the divisor correlation
//! sum alpha_n = 4 sum_{y | n} A(n/y) A(y) over the profile
//! autocorrelation A, which is what makes the mode a primality probe: for
//! prime n only the trivial divisor pair survives.

use crate::error::{Error, Result};
use crate::numtheory;
use crate::par;
use crate::statesim::{sample_trace, AmplitudeProfile, NoiseSpec, PurityTrace, TraceProvenance};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// How a spectrum was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumProvenance {
    ClosedForm,
    Numeric { p: usize },
    NumericNoisy { p: usize, epsilon: f64, shots: Option<u64> },
    Mitigated { lambda: f64, base: Box<SpectrumProvenance> },
}

/// Cosine modes over the analysis band n in [2, 2(d-1)], keyed by n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSpectrum {
    pub d: usize,
    pub omega: f64,
    pub modes: BTreeMap<u64, f64>,
    pub provenance: SpectrumProvenance,
}

impl FourierSpectrum {
    /// Mode values in ascending n order.
    pub fn values(&self) -> Vec<f64> {
        self.modes.values().copied().collect()
    }

    /// The band [2, 2(d-1)] as an inclusive range.
    pub fn band(d: usize) -> std::ops::RangeInclusive<u64> {
        2..=2 * (d as u64 - 1)
    }
}

/// Composite Simpson integral of uniformly spaced samples (odd count).
fn simpson_uniform(values: &[f64], h: f64) -> f64 {
    let last = values.len() - 1;
    let mut acc = values[0] + values[last];
    for (i, v) in values.iter().enumerate().take(last).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    acc * h / 3.0
}

/// Simpson estimate of the n-th cosine mode of a sampled trace.
pub fn fourier_mode_numeric(trace: &PurityTrace, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let len = trace.gamma.len();
    if len < 3 || len % 2 == 0 {
        return Err(Error::BadTraceLength { len });
    }
    let h = trace.times[1] - trace.times[0];
    let integrand: Vec<f64> = trace
        .times
        .iter()
        .zip(&trace.gamma)
        .map(|(t, g)| g * (n as f64 * trace.omega * t).cos())
        .collect();
    Ok(2.0 * trace.omega / PI * simpson_uniform(&integrand, h))
}

/// Divisor-correlation closed form of the n-th mode. Autocorrelations of
/// shifts at or beyond d vanish, which silently skips the out-of-range
/// divisor pairs.
pub fn fourier_mode_closed(profile: &AmplitudeProfile, n: u64) -> f64 {
    assert!(n >= 1, "mode index must be positive");
    let divs = numtheory::divisors(n).expect("n >= 1").divisors;
    4.0 * divs
        .iter()
        .map(|&y| {
            profile.autocorrelation((n / y) as usize) * profile.autocorrelation(y as usize)
        })
        .sum::<f64>()
}

/// Which route `spectrum` takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    ClosedForm,
    Numeric,
}

/// Full spectrum over the band [2, 2(d-1)]. The numeric route samples one
/// trace (through the optional noise layer) and integrates every mode from
/// it; mode evaluations run in parallel under the `parallel` feature.
pub fn spectrum(
    profile: &AmplitudeProfile,
    omega: f64,
    p: usize,
    noise: Option<&NoiseSpec>,
    method: SpectrumMethod,
) -> Result<FourierSpectrum> {
    let d = profile.dim();
    let band: Vec<u64> = FourierSpectrum::band(d).collect();
    let (values, provenance) = match method {
        SpectrumMethod::ClosedForm => {
            let values = par::map_indexed(band.len(), |i| fourier_mode_closed(profile, band[i]));
            (values, SpectrumProvenance::ClosedForm)
        }
        SpectrumMethod::Numeric => {
            let trace = sample_trace(profile, omega, p, noise)?;
            let values = par::map_indexed(band.len(), |i| {
                fourier_mode_numeric(&trace, band[i]).expect("trace length already validated")
            });
            let provenance = match trace.provenance {
                TraceProvenance::Exact => SpectrumProvenance::Numeric { p },
                TraceProvenance::ShotSampled { shots, .. } => {
                    SpectrumProvenance::NumericNoisy { p, epsilon: 0.0, shots: Some(shots) }
                }
                TraceProvenance::Noisy { epsilon, shots, .. } => {
                    SpectrumProvenance::NumericNoisy { p, epsilon, shots }
                }
                TraceProvenance::ZneExtrapolated { .. } => unreachable!("sample_trace never returns it"),
            };
            (values, provenance)
        }
    };
    let modes = band.into_iter().zip(values).collect();
    Ok(FourierSpectrum { d, omega, modes, provenance })
}
