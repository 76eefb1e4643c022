//! Noise mitigation: global rescaling calibrated in the L1 sense (CFE) and
//! zero-noise extrapolation over amplified copies of the run (ZNE).
//!
//! The rescaling factor minimizing sum |lambda * noisy - reference| is found
//! exactly: the objective is piecewise-linear convex in lambda, so the
//! weighted median of the pointwise ratios is a global minimizer — no
//! iterative solver, no tolerance. The dimension dependence of the factor is
//! fitted as lambda0 + kappa * d^eta and extrapolated to registers too large
//! to calibrate directly. ZNE instead reruns the experiment at amplified
//! noise (folding emulated by scaling the contraction parameter), fits a
//! polynomial in the scale factor per time point, and reads off the
//! zero-noise intercept.

use crate::error::{Error, Result};
use crate::par;
use crate::spectral::{FourierSpectrum, SpectrumProvenance};
use crate::statesim::{
    sample_trace_stream, AmplitudeProfile, NoiseSpec, PurityTrace, TraceProvenance,
};
use serde::{Deserialize, Serialize};

/// Fitted dimension dependence of the optimal rescaling factor,
/// lambda(d) = lambda0 + kappa * d^eta, with the calibration pairs it came
/// from. Strictly increasing in d when kappa < 0 and eta < 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionModel {
    pub lambda0: f64,
    pub kappa: f64,
    pub eta: f64,
    pub calibration: Vec<(usize, f64)>,
}

/// Exact minimizer of sum_i |lambda * noisy_i - reference_i|: the weighted
/// median of the ratios reference_i / noisy_i with weights |noisy_i|. Pairs
/// with a zero noisy value contribute a lambda-independent constant and are
/// dropped. On a flat optimal segment the smallest optimizer is returned.
pub fn cfe_lambda_opt(noisy: &[f64], reference: &[f64]) -> Result<f64> {
    if noisy.len() != reference.len() || noisy.is_empty() {
        return Err(Error::LengthMismatch { left: noisy.len(), right: reference.len() });
    }
    let mut pairs: Vec<(f64, f64)> = noisy
        .iter()
        .zip(reference)
        .filter(|(x, _)| **x != 0.0)
        .map(|(x, y)| (y / x, x.abs()))
        .collect();
    if pairs.is_empty() {
        return Err(Error::AllZeroNoisy);
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = pairs.iter().map(|&(_, w)| w).sum();
    let mut cumulative = 0.0;
    for &(ratio, weight) in &pairs {
        cumulative += weight;
        if cumulative >= 0.5 * total {
            return Ok(ratio);
        }
    }
    Ok(pairs.last().expect("nonempty").0)
}

/// Rescales every mode by lambda, recording the factor in the provenance.
pub fn cfe_apply(lambda: f64, spectrum: &FourierSpectrum) -> Result<FourierSpectrum> {
    if lambda <= 0.0 {
        return Err(Error::NonPositiveFactor);
    }
    let mut out = spectrum.clone();
    for value in out.modes.values_mut() {
        *value *= lambda;
    }
    out.provenance = SpectrumProvenance::Mitigated {
        lambda,
        base: Box::new(spectrum.provenance.clone()),
    };
    Ok(out)
}

/// Inner closed-form least squares of (lambda0, kappa) against the basis
/// {1, d^eta} at a fixed eta; returns the summed squared residual with the
/// coefficients.
fn fit_at_eta(calibration: &[(usize, f64)], eta: f64) -> (f64, f64, f64) {
    let m = calibration.len() as f64;
    let (mut sx, mut sxx, mut sy, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(d, lambda) in calibration {
        let x = (d as f64).powf(eta);
        sx += x;
        sxx += x * x;
        sy += lambda;
        sxy += x * lambda;
    }
    let det = m * sxx - sx * sx;
    let (lambda0, kappa) = if det.abs() < 1e-300 {
        (sy / m, 0.0)
    } else {
        ((sxx * sy - sx * sxy) / det, (m * sxy - sx * sy) / det)
    };
    let sse = calibration
        .iter()
        .map(|&(d, lambda)| {
            let r = lambda - (lambda0 + kappa * (d as f64).powf(eta));
            r * r
        })
        .sum();
    (lambda0, kappa, sse)
}

/// Fits lambda(d) = lambda0 + kappa * d^eta to calibration pairs by a
/// deterministic coarse-to-fine search on eta in [-3, 0) with closed-form
/// linear least squares inside. Exactly flat calibrations return kappa = 0
/// with eta = -1 by convention. Dimensions need not be powers of two.
pub fn cfe_fit(calibration: &[(usize, f64)]) -> Result<CorrectionModel> {
    if calibration.len() < 3 {
        return Err(Error::TooFewPoints { need: 3, got: calibration.len() });
    }
    let mut dims: Vec<usize> = calibration.iter().map(|&(d, _)| d).collect();
    dims.sort_unstable();
    dims.dedup();
    if dims.len() != calibration.len() {
        return Err(Error::DuplicateDimension);
    }
    if dims[0] == 0 {
        return Err(Error::InvalidDimension { d: 0 });
    }
    if calibration.iter().any(|&(_, lambda)| lambda <= 0.0) {
        return Err(Error::NonPositiveFactor);
    }

    let lambdas: Vec<f64> = calibration.iter().map(|&(_, lambda)| lambda).collect();
    let (lo, hi) = lambdas.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &l| {
        (lo.min(l), hi.max(l))
    });
    if hi - lo <= 1e-12 * hi.abs().max(1.0) {
        let mean = lambdas.iter().sum::<f64>() / lambdas.len() as f64;
        return Ok(CorrectionModel {
            lambda0: mean,
            kappa: 0.0,
            eta: -1.0,
            calibration: calibration.to_vec(),
        });
    }

    const ETA_LO: f64 = -3.0;
    const ETA_HI: f64 = -1e-4;
    let mut best = (f64::NAN, 0.0, 0.0, f64::INFINITY); // (eta, lambda0, kappa, sse)
    let scan = |lo: f64, hi: f64, step: f64, best: &mut (f64, f64, f64, f64)| {
        let steps = ((hi - lo) / step).ceil() as usize;
        for i in 0..=steps {
            let eta = (lo + i as f64 * step).min(hi);
            let (lambda0, kappa, sse) = fit_at_eta(calibration, eta);
            if sse < best.3 {
                *best = (eta, lambda0, kappa, sse);
            }
        }
    };
    let mut step = 1e-2;
    scan(ETA_LO, ETA_HI, step, &mut best);
    for _ in 0..4 {
        let window_lo = (best.0 - step).max(ETA_LO);
        let window_hi = (best.0 + step).min(ETA_HI);
        step /= 10.0;
        scan(window_lo, window_hi, step, &mut best);
    }
    Ok(CorrectionModel {
        lambda0: best.1,
        kappa: best.2,
        eta: best.0,
        calibration: calibration.to_vec(),
    })
}

/// Model evaluation lambda0 + kappa * d^eta. Meaningful as an extrapolation
/// only for d at or beyond the smallest calibrated dimension.
pub fn cfe_extrapolate(model: &CorrectionModel, d: usize) -> f64 {
    model.lambda0 + model.kappa * (d as f64).powf(model.eta)
}

/// Gate-count arithmetic of unitary folding: folding `folded` of `total`
/// gates amplifies noise by approximately 1 + 2 * folded / total.
pub fn zne_scale_factor(total_gates: u64, folded_gates: u64) -> Result<f64> {
    if total_gates == 0 {
        return Err(Error::ZeroGateCount);
    }
    if folded_gates > total_gates {
        return Err(Error::FoldedExceedsTotal { folded: folded_gates, total: total_gates });
    }
    Ok(1.0 + 2.0 * folded_gates as f64 / total_gates as f64)
}

/// One observable measured at several noise-scale factors, ready for
/// polynomial extrapolation to the zero-noise intercept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZneSeries {
    pub scale_factors: Vec<f64>,
    pub values: Vec<f64>,
    pub fit_order: usize,
}

impl ZneSeries {
    pub fn new(scale_factors: Vec<f64>, values: Vec<f64>, fit_order: usize) -> Result<Self> {
        let series = Self { scale_factors, values, fit_order };
        series.validate()?;
        Ok(series)
    }

    /// The default first-order series.
    pub fn linear(scale_factors: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::new(scale_factors, values, 1)
    }

    fn validate(&self) -> Result<()> {
        if self.scale_factors.len() != self.values.len() || self.scale_factors.is_empty() {
            return Err(Error::LengthMismatch {
                left: self.scale_factors.len(),
                right: self.values.len(),
            });
        }
        for (i, &xi) in self.scale_factors.iter().enumerate() {
            if xi < 1.0 || self.scale_factors[..i].contains(&xi) {
                return Err(Error::BadScaleFactors);
            }
        }
        let need = self.fit_order + 1;
        if self.scale_factors.len() < need {
            return Err(Error::UnderDetermined {
                order: self.fit_order,
                need,
                got: self.scale_factors.len(),
            });
        }
        Ok(())
    }
}

/// Zero-noise intercept of the ordinary-least-squares polynomial of
/// `fit_order` in the scale factor.
pub fn zne_extrapolate(series: &ZneSeries) -> Result<f64> {
    series.validate()?;
    Ok(poly_intercept(&series.scale_factors, &series.values, series.fit_order))
}

/// OLS polynomial fit via the normal equations, returning the value at
/// x = 0. Orders stay small (a handful of scale factors), so the
/// Vandermonde conditioning is harmless.
fn poly_intercept(xs: &[f64], ys: &[f64], order: usize) -> f64 {
    let m = order + 1;
    let mut power_sums = vec![0.0f64; 2 * order + 1];
    let mut rhs = vec![0.0f64; m];
    for (&x, &y) in xs.iter().zip(ys) {
        let mut xp = 1.0;
        for (s, slot) in power_sums.iter_mut().enumerate() {
            *slot += xp;
            if s < m {
                rhs[s] += y * xp;
            }
            xp *= x;
        }
    }
    let mut a = vec![vec![0.0f64; m + 1]; m];
    for (i, row) in a.iter_mut().enumerate() {
        for j in 0..m {
            row[j] = power_sums[i + j];
        }
        row[m] = rhs[i];
    }
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .expect("nonempty pivot range");
        a.swap(col, pivot);
        assert!(a[col][col] != 0.0, "normal matrix singular despite distinct scale factors");
        for row in col + 1..m {
            let factor = a[row][col] / a[col][col];
            for j in col..=m {
                a[row][j] -= factor * a[col][j];
            }
        }
    }
    let mut coeffs = vec![0.0f64; m];
    for i in (0..m).rev() {
        let mut acc = a[i][m];
        for j in i + 1..m {
            acc -= a[i][j] * coeffs[j];
        }
        coeffs[i] = acc / a[i][i];
    }
    coeffs[0]
}

/// The full synthetic ZNE product: the extrapolated trace plus the
/// amplified-noise traces it was built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZneRun {
    pub mitigated: PurityTrace,
    pub scaled: Vec<PurityTrace>,
}

/// Runs the synthetic ZNE recipe: samples one trace per scale factor at the
/// amplified contraction xi * epsilon (digital folding emulated on the
/// noise parameter), then extrapolates each time point to xi = 0. Scale
/// factors must include 1.0 and keep every xi * epsilon below 1. Factor j
/// draws from RNG stream block (j + 1) << 32, so no draw is shared with any
/// other factor or with plain trace sampling under the same seed.
pub fn zne_run_synthetic(
    profile: &AmplitudeProfile,
    omega: f64,
    p: usize,
    noise: &NoiseSpec,
    scale_factors: &[f64],
    fit_order: usize,
) -> Result<ZneRun> {
    ZneSeries::new(scale_factors.to_vec(), vec![0.0; scale_factors.len()], fit_order)?;
    if !scale_factors.contains(&1.0) {
        return Err(Error::BadScaleFactors);
    }
    let epsilon = noise.epsilon.epsilon(profile.dim())?;
    for &xi in scale_factors {
        if xi * epsilon >= 1.0 {
            return Err(Error::ScaledNoiseTooStrong { xi, epsilon });
        }
    }

    let scaled: Vec<PurityTrace> = scale_factors
        .iter()
        .enumerate()
        .map(|(j, &xi)| {
            let eps_j = xi * epsilon;
            let stream_base = (j as u64 + 1) << 32;
            let trace =
                sample_trace_stream(profile, omega, p, eps_j, noise.shots, noise.seed, stream_base)?;
            let provenance = match (eps_j > 0.0, noise.shots) {
                (false, None) => TraceProvenance::Exact,
                (false, Some(shots)) => TraceProvenance::ShotSampled { shots, seed: noise.seed },
                (true, shots) => TraceProvenance::Noisy { epsilon: eps_j, shots, seed: noise.seed },
            };
            Ok(PurityTrace { provenance, ..trace })
        })
        .collect::<Result<_>>()?;

    let gamma = par::map_indexed(scaled[0].gamma.len(), |i| {
        let values: Vec<f64> = scaled.iter().map(|trace| trace.gamma[i]).collect();
        poly_intercept(scale_factors, &values, fit_order)
    });
    let mitigated = PurityTrace {
        omega,
        times: scaled[0].times.clone(),
        gamma,
        provenance: TraceProvenance::ZneExtrapolated {
            epsilon,
            shots: noise.shots,
            seed: noise.seed,
            scale_factors: scale_factors.to_vec(),
        },
    };
    Ok(ZneRun { mitigated, scaled })
}
