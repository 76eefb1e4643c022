//! Subsystem state preparation and exact reduced-purity dynamics for a
//! bipartite d x d register evolved under a diagonal coupling, plus the
//! synthetic noise contraction and swap-test shot sampling used to emulate
//! hardware runs.
//!
//! Both halves share one real amplitude profile c_1..c_d over the local
//! eigenbasis, and the evolution only attaches phases
//! exp(-i omega t n_A n_B), so the reduced purity is the quadruple sum
//! gamma(t) = sum_{j,k,l,m} p_j p_k p_l p_m exp(-i omega t (j-k)(l-m)),
//! with p_i the squared amplitudes. Grouping by the index differences
//! u = j-k, v = l-m turns it into sum_{u,v} A(|u|) A(|v|) e^{-i omega t uv},
//! where A is the profile autocorrelation; the imaginary part must cancel.

use crate::error::{Error, Result};
use crate::par;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Real amplitude profile of one subsystem half. Normalized, all entries
/// nonzero, dimension a power of two.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeProfile {
    c: Vec<f64>,
}

impl AmplitudeProfile {
    /// Validates and wraps a raw amplitude vector.
    pub fn new(c: Vec<f64>) -> Result<Self> {
        let d = c.len();
        if d < 2 || !d.is_power_of_two() {
            return Err(Error::InvalidDimension { d });
        }
        let sum: f64 = c.iter().map(|x| x * x).sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { sum });
        }
        if let Some(index) = c.iter().position(|x| *x == 0.0) {
            return Err(Error::ZeroAmplitude { index });
        }
        Ok(Self { c })
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.c
    }

    /// Occupation probability |c_i|^2 of local level i (zero-based).
    pub fn prob(&self, i: usize) -> f64 {
        self.c[i] * self.c[i]
    }

    /// Probability autocorrelation A(s) = sum_k p_k p_{k+s}; zero once the
    /// shift leaves the register.
    pub fn autocorrelation(&self, shift: usize) -> f64 {
        let d = self.dim();
        if shift >= d {
            return 0.0;
        }
        (0..d - shift).map(|k| self.prob(k) * self.prob(k + shift)).sum()
    }

    /// All autocorrelations A(0)..A(d-1) in one pass.
    pub(crate) fn autocorrelations(&self) -> Vec<f64> {
        (0..self.dim()).map(|s| self.autocorrelation(s)).collect()
    }
}

/// Uniform superposition over all d levels.
pub fn prepare_uniform(d: usize) -> Result<AmplitudeProfile> {
    if d < 2 || !d.is_power_of_two() {
        return Err(Error::InvalidDimension { d });
    }
    let a = 1.0 / (d as f64).sqrt();
    AmplitudeProfile::new(vec![a; d])
}

/// Spin-coherent profile at polar angle pi/2: binomial occupations
/// p_i = C(d-1, i) / 2^(d-1), built by the multiplicative recurrence and
/// renormalized to absorb floating-point drift.
pub fn prepare_spin_coherent(d: usize) -> Result<AmplitudeProfile> {
    if d < 2 || !d.is_power_of_two() {
        return Err(Error::InvalidDimension { d });
    }
    let mut p = vec![0.0f64; d];
    p[0] = (2.0f64).powi(-(d as i32 - 1));
    for i in 1..d {
        p[i] = p[i - 1] * (d - i) as f64 / i as f64;
    }
    let sum: f64 = p.iter().sum();
    AmplitudeProfile::new(p.iter().map(|q| (q / sum).sqrt()).collect())
}

/// Exact reduced purity at time t from the grouped phase sum. Asserts that
/// the imaginary part cancels below 1e-10 before dropping it.
pub fn purity_closed_form(profile: &AmplitudeProfile, omega: f64, t: f64) -> f64 {
    let auto = profile.autocorrelations();
    let (re, im) = phase_sum(&auto, omega, t);
    assert!(im.abs() < 1e-10, "imaginary residue {im} of the purity phase sum");
    re
}

/// Complex phase sum over index differences; exposed crate-wide so callers
/// can amortize the autocorrelation pass and tests can observe the residue.
pub(crate) fn phase_sum(auto: &[f64], omega: f64, t: f64) -> (f64, f64) {
    let d = auto.len() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for u in -(d - 1)..=(d - 1) {
        let wu = auto[u.unsigned_abs() as usize];
        for v in -(d - 1)..=(d - 1) {
            let w = wu * auto[v.unsigned_abs() as usize];
            let (s, c) = (-omega * t * (u * v) as f64).sin_cos();
            acc.re += w * c;
            acc.im += w * s;
        }
    }
    (acc.re, acc.im)
}

/// Independent purity route: build the evolved joint state, trace out one
/// half, and sum the squared moduli of the reduced density matrix.
pub fn purity_statevector(profile: &AmplitudeProfile, omega: f64, t: f64) -> f64 {
    let d = profile.dim();
    let c = profile.amplitudes();
    let mut psi = vec![Complex64::new(0.0, 0.0); d * d];
    for a in 0..d {
        for b in 0..d {
            let phase = -omega * t * ((a + 1) * (b + 1)) as f64;
            let (s, cth) = phase.sin_cos();
            let amp = c[a] * c[b];
            psi[a * d + b] = Complex64::new(amp * cth, amp * s);
        }
    }
    let mut purity = 0.0;
    for a in 0..d {
        for a2 in 0..d {
            let mut rho = Complex64::new(0.0, 0.0);
            for b in 0..d {
                rho += psi[a * d + b] * psi[a2 * d + b].conj();
            }
            purity += rho.norm_sqr();
        }
    }
    purity
}

/// Purity contraction channel: gamma -> (1 - epsilon) gamma.
pub fn apply_noise(gamma: f64, epsilon: f64) -> f64 {
    (1.0 - epsilon) * gamma
}

/// How the contraction strength depends on the subsystem dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EpsilonModel {
    /// The same epsilon for every dimension.
    Constant { epsilon: f64 },
    /// epsilon(d) = 1 - 1/(lambda0 + kappa d^eta), the contraction whose
    /// exact inverse factor is lambda0 + kappa d^eta.
    DimensionScaled { lambda0: f64, kappa: f64, eta: f64 },
}

impl EpsilonModel {
    pub fn epsilon(&self, d: usize) -> Result<f64> {
        let eps = match self {
            EpsilonModel::Constant { epsilon } => *epsilon,
            EpsilonModel::DimensionScaled { lambda0, kappa, eta } => {
                1.0 - 1.0 / (lambda0 + kappa * (d as f64).powf(*eta))
            }
        };
        if !(0.0..1.0).contains(&eps) {
            return Err(Error::EpsilonOutOfRange { epsilon: eps });
        }
        Ok(eps)
    }
}

/// Synthetic noise-and-measurement layer applied to exact traces: an
/// epsilon contraction, optional swap-test shot sampling, and the seed all
/// derived randomness flows from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub epsilon: EpsilonModel,
    pub shots: Option<u64>,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(epsilon: EpsilonModel, shots: Option<u64>, seed: u64) -> Result<Self> {
        if shots == Some(0) {
            return Err(Error::ZeroShots);
        }
        Ok(Self { epsilon, shots, seed })
    }

    /// Constant-epsilon spec without shot sampling.
    pub fn contraction(epsilon: f64, seed: u64) -> Result<Self> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::EpsilonOutOfRange { epsilon });
        }
        Self::new(EpsilonModel::Constant { epsilon }, None, seed)
    }
}

/// How a trace was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceProvenance {
    Exact,
    ShotSampled { shots: u64, seed: u64 },
    Noisy { epsilon: f64, shots: Option<u64>, seed: u64 },
    ZneExtrapolated { epsilon: f64, shots: Option<u64>, seed: u64, scale_factors: Vec<f64> },
}

/// Reduced-purity samples on the p+1 uniform nodes of one half period
/// [0, pi/omega].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PurityTrace {
    pub omega: f64,
    pub times: Vec<f64>,
    pub gamma: Vec<f64>,
    pub provenance: TraceProvenance,
}

impl PurityTrace {
    /// Number of subintervals (nodes minus one).
    pub fn subintervals(&self) -> usize {
        self.times.len() - 1
    }
}

/// Swap-test estimate of gamma from `shots` binomial draws; the ancilla
/// success probability is (1 + gamma)/2. Deterministic in the seed.
pub fn swap_test_sample(gamma_true: f64, shots: u64, seed: u64) -> Result<f64> {
    swap_test_sample_stream(gamma_true, shots, seed, 0)
}

/// Stream-indexed variant: (seed, stream) selects an independent ChaCha
/// stream, letting per-point draws run in parallel without sharing state.
pub(crate) fn swap_test_sample_stream(
    gamma_true: f64,
    shots: u64,
    seed: u64,
    stream: u64,
) -> Result<f64> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let p0 = (0.5 * (1.0 + gamma_true)).clamp(0.0, 1.0);
    let binomial = Binomial::new(shots, p0).expect("success probability in [0, 1]");
    let successes = binomial.sample(&mut rng_stream(seed, stream));
    Ok(2.0 * successes as f64 / shots as f64 - 1.0)
}

pub(crate) fn rng_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&stream.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Samples the purity on p+1 uniform nodes of [0, pi/omega], pushing each
/// exact value through the contraction and (optionally) shot sampling.
/// p must be even so the trace feeds composite Simpson directly. Node i
/// draws from stream (seed, i), so parallel and sequential builds agree
/// bit for bit.
pub fn sample_trace(
    profile: &AmplitudeProfile,
    omega: f64,
    p: usize,
    noise: Option<&NoiseSpec>,
) -> Result<PurityTrace> {
    let (epsilon, shots, seed) = match noise {
        None => (0.0, None, 0),
        Some(spec) => {
            if spec.shots == Some(0) {
                return Err(Error::ZeroShots);
            }
            (spec.epsilon.epsilon(profile.dim())?, spec.shots, spec.seed)
        }
    };
    let trace = sample_trace_stream(profile, omega, p, epsilon, shots, seed, 0)?;
    let provenance = match (epsilon > 0.0, shots) {
        (false, None) => TraceProvenance::Exact,
        (false, Some(shots)) => TraceProvenance::ShotSampled { shots, seed },
        (true, shots) => TraceProvenance::Noisy { epsilon, shots, seed },
    };
    Ok(PurityTrace { provenance, ..trace })
}

/// Shared sampling core; `stream_base` offsets the per-node RNG streams so
/// multi-trace protocols (ZNE folding) keep every draw independent.
pub(crate) fn sample_trace_stream(
    profile: &AmplitudeProfile,
    omega: f64,
    p: usize,
    epsilon: f64,
    shots: Option<u64>,
    seed: u64,
    stream_base: u64,
) -> Result<PurityTrace> {
    if p < 2 || p % 2 != 0 {
        return Err(Error::OddSubintervals { p });
    }
    if shots == Some(0) {
        return Err(Error::ZeroShots);
    }
    let h = PI / (omega * p as f64);
    let times: Vec<f64> = (0..=p).map(|i| i as f64 * h).collect();
    let auto = profile.autocorrelations();
    let gamma: Vec<f64> = par::map_indexed(p + 1, |i| {
        let (exact, im) = phase_sum(&auto, omega, times[i]);
        assert!(im.abs() < 1e-10, "imaginary residue {im} of the purity phase sum");
        let contracted = apply_noise(exact, epsilon);
        match shots {
            Some(s) => swap_test_sample_stream(contracted, s, seed, stream_base + i as u64)
                .expect("shot count already validated"),
            None => contracted,
        }
    });
    Ok(PurityTrace { omega, times, gamma, provenance: TraceProvenance::Exact })
}

#[cfg(test)]
mod tests {
    use super::*;

    const OMEGA: f64 = 0.1;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn uniform_profiles() {
        let p = prepare_uniform(2).unwrap();
        for a in p.amplitudes() {
            assert_close(*a, 0.5f64.sqrt(), 1e-15);
        }
        let p = prepare_uniform(16).unwrap();
        assert!(p.amplitudes().iter().all(|&a| a == 0.25));
        assert!(matches!(prepare_uniform(3), Err(Error::InvalidDimension { d: 3 })));
        assert!(matches!(prepare_uniform(0), Err(Error::InvalidDimension { d: 0 })));
        assert!(matches!(prepare_uniform(1), Err(Error::InvalidDimension { d: 1 })));
    }

    #[test]
    fn profile_validation() {
        assert!(matches!(
            AmplitudeProfile::new(vec![0.7, 0.7]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            AmplitudeProfile::new(vec![1.0, 0.0]),
            Err(Error::ZeroAmplitude { index: 1 })
        ));
        let up_to_sign = AmplitudeProfile::new(vec![-0.5f64.sqrt(), 0.5f64.sqrt()]);
        assert!(up_to_sign.is_ok());
    }

    #[test]
    fn spin_coherent_small_dimensions() {
        let p = prepare_spin_coherent(2).unwrap();
        let r = 0.5f64.sqrt();
        for (got, want) in p.amplitudes().iter().zip([r, r]) {
            assert_close(*got, want, 1e-15);
        }

        // d = 4: amplitudes proportional to sqrt of (1, 3, 3, 1).
        let p = prepare_spin_coherent(4).unwrap();
        let s8 = 8.0f64.sqrt();
        let want = [1.0 / s8, 3.0f64.sqrt() / s8, 3.0f64.sqrt() / s8, 1.0 / s8];
        for (got, want) in p.amplitudes().iter().zip(want) {
            assert_close(*got, want, 1e-15);
        }

        // d = 8: row seven of Pascal's triangle under the square root.
        let p = prepare_spin_coherent(8).unwrap();
        let s128 = 128.0f64.sqrt();
        let binom = [1.0f64, 7.0, 21.0, 35.0, 35.0, 21.0, 7.0, 1.0];
        for (got, want) in p.amplitudes().iter().zip(binom) {
            assert_close(*got, want.sqrt() / s128, 1e-15);
        }
    }

    #[test]
    fn spin_coherent_normalization() {
        for d in [2usize, 4, 8, 16, 64, 256] {
            let p = prepare_spin_coherent(d).unwrap();
            let sum: f64 = p.amplitudes().iter().map(|a| a * a).sum();
            assert_close(sum, 1.0, 1e-12);
        }
    }

    #[test]
    fn purity_d2_matches_hand_formula() {
        // For the uniform qubit profile the phase sum collapses to
        // 3/4 + cos(omega t)/4.
        let p = prepare_uniform(2).unwrap();
        for i in 0..200 {
            let t = i as f64 * 0.37;
            let want = 0.75 + 0.25 * (OMEGA * t).cos();
            assert_close(purity_closed_form(&p, OMEGA, t), want, 1e-12);
            assert_close(purity_statevector(&p, OMEGA, t), want, 1e-12);
        }
    }

    /// Literal quadruple sum with one-based level indices, the brute-force
    /// oracle for both production routes.
    fn purity_quadruple_sum(profile: &AmplitudeProfile, omega: f64, t: f64) -> f64 {
        let d = profile.dim();
        let mut acc = 0.0;
        for j in 1..=d {
            for k in 1..=d {
                for l in 1..=d {
                    for m in 1..=d {
                        let w = profile.prob(j - 1)
                            * profile.prob(k - 1)
                            * profile.prob(l - 1)
                            * profile.prob(m - 1);
                        let phase =
                            -omega * t * ((j as f64 - k as f64) * (l as f64 - m as f64));
                        acc += w * phase.cos();
                    }
                }
            }
        }
        acc
    }

    #[test]
    fn purity_routes_agree_with_quadruple_oracle() {
        for d in [2usize, 4, 8] {
            for profile in [prepare_uniform(d).unwrap(), prepare_spin_coherent(d).unwrap()] {
                for i in 0..25 {
                    let t = i as f64 * 3.1;
                    let oracle = purity_quadruple_sum(&profile, OMEGA, t);
                    assert_close(purity_closed_form(&profile, OMEGA, t), oracle, 1e-12);
                    assert_close(purity_statevector(&profile, OMEGA, t), oracle, 1e-10);
                }
            }
        }
    }

    #[test]
    fn purity_dual_route_agreement_on_random_times() {
        let mut rng = rng_stream(7, 0);
        use rand::Rng;
        for d in [2usize, 4, 8, 16] {
            let profile = prepare_uniform(d).unwrap();
            let period = 2.0 * PI / OMEGA;
            for _ in 0..100 {
                let t = rng.random::<f64>() * period;
                let a = purity_closed_form(&profile, OMEGA, t);
                let b = purity_statevector(&profile, OMEGA, t);
                assert_close(a, b, 1e-10);
                assert!(a <= 1.0 + 1e-12 && a > 0.0);
            }
        }
    }

    proptest::proptest! {
        /// Grouped autocorrelation sum and literal statevector trace give
        /// the same purity at any time, for either profile family.
        #[test]
        fn purity_routes_agree_everywhere(t in -100.0f64..100.0, log_d in 1u32..5, spin in proptest::bool::ANY) {
            let d = 1usize << log_d;
            let profile = if spin { prepare_spin_coherent(d).unwrap() } else { prepare_uniform(d).unwrap() };
            let a = purity_closed_form(&profile, OMEGA, t);
            let b = purity_statevector(&profile, OMEGA, t);
            proptest::prop_assert!((a - b).abs() <= 1e-10, "{} vs {}", a, b);
            proptest::prop_assert!(a > 0.0 && a <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn purity_periodicity_and_unit_start() {
        let period = 2.0 * PI / OMEGA;
        for d in [2usize, 4, 8] {
            let profile = prepare_uniform(d).unwrap();
            assert_close(purity_closed_form(&profile, OMEGA, 0.0), 1.0, 1e-12);
            for i in 0..40 {
                let t = i as f64 * 1.7;
                assert_close(
                    purity_closed_form(&profile, OMEGA, t),
                    purity_closed_form(&profile, OMEGA, t + period),
                    1e-10,
                );
                // Symmetry about the half period.
                assert_close(
                    purity_closed_form(&profile, OMEGA, period / 2.0 - t),
                    purity_closed_form(&profile, OMEGA, period / 2.0 + t),
                    1e-10,
                );
            }
        }
    }

    #[test]
    fn imaginary_residue_stays_tiny() {
        for d in [2usize, 4, 8, 16, 64] {
            let profile = prepare_uniform(d).unwrap();
            let auto = profile.autocorrelations();
            let mut max_im: f64 = 0.0;
            for i in 0..=200 {
                let t = i as f64 * PI / (OMEGA * 200.0);
                let (_, im) = phase_sum(&auto, OMEGA, t);
                max_im = max_im.max(im.abs());
            }
            assert!(max_im < 1e-10, "residue {max_im} at d = {d}");
        }
    }

    #[test]
    fn swap_test_edge_cases() {
        assert_eq!(swap_test_sample(1.0, 8192, 3).unwrap(), 1.0);
        assert!(matches!(swap_test_sample(0.5, 0, 3), Err(Error::ZeroShots)));
        let a = swap_test_sample(0.5, 8192, 11).unwrap();
        let b = swap_test_sample(0.5, 8192, 11).unwrap();
        assert_eq!(a, b);
        let c = swap_test_sample(0.5, 8192, 12).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn swap_test_mean_converges() {
        let gamma = 0.5;
        let shots = 8192u64;
        let reps = 200;
        let mean = (0..reps)
            .map(|s| swap_test_sample(gamma, shots, s).unwrap())
            .sum::<f64>()
            / reps as f64;
        let se = ((1.0 - gamma * gamma) / shots as f64).sqrt() / (reps as f64).sqrt();
        assert!((mean - gamma).abs() <= 4.0 * se, "mean {mean}, se {se}");
    }

    #[test]
    fn swap_test_near_zero_overlap() {
        let shots = 8192u64;
        let bound = 5.0 / (shots as f64).sqrt();
        for seed in 0..20 {
            let est = swap_test_sample(0.0, shots, seed).unwrap();
            assert!(est.abs() <= bound, "estimate {est} at seed {seed}");
        }
    }

    #[test]
    fn noise_contraction_values() {
        assert_eq!(apply_noise(1.0, 0.2), 0.8);
        assert_eq!(apply_noise(0.5, 0.0), 0.5);
        let model = EpsilonModel::DimensionScaled { lambda0: 2.388, kappa: -1.9164, eta: -0.4408 };
        let eps = model.epsilon(8).unwrap();
        assert_close(eps, 1.0 - 1.0 / (2.388 - 1.9164 * 8.0f64.powf(-0.4408)), 1e-15);
        let bad = EpsilonModel::Constant { epsilon: 1.0 };
        assert!(bad.epsilon(4).is_err());
    }

    #[test]
    fn exact_trace_shape() {
        let profile = prepare_uniform(4).unwrap();
        let trace = sample_trace(&profile, OMEGA, 30, None).unwrap();
        assert_eq!(trace.gamma.len(), 31);
        assert_eq!(trace.times.len(), 31);
        assert_eq!(trace.provenance, TraceProvenance::Exact);
        assert_eq!(trace.gamma[0], 1.0);
        assert_close(*trace.times.last().unwrap(), PI / OMEGA, 1e-12);
        for (i, g) in trace.gamma.iter().enumerate() {
            assert_close(*g, purity_closed_form(&profile, OMEGA, trace.times[i]), 0.0);
        }
    }

    #[test]
    fn odd_subinterval_count_is_rejected_for_simpson() {
        let profile = prepare_uniform(4).unwrap();
        let err = sample_trace(&profile, OMEGA, 31, None).unwrap_err();
        assert_eq!(err, Error::OddSubintervals { p: 31 });
        assert!(err.to_string().contains("even"));
        assert!(sample_trace(&profile, OMEGA, 0, None).is_err());
    }

    #[test]
    fn contraction_only_trace_scales_every_sample() {
        let profile = prepare_uniform(4).unwrap();
        let exact = sample_trace(&profile, OMEGA, 30, None).unwrap();
        let noise = NoiseSpec::contraction(0.2, 0).unwrap();
        let noisy = sample_trace(&profile, OMEGA, 30, Some(&noise)).unwrap();
        assert_eq!(
            noisy.provenance,
            TraceProvenance::Noisy { epsilon: 0.2, shots: None, seed: 0 }
        );
        for (e, n) in exact.gamma.iter().zip(&noisy.gamma) {
            assert_close(*n, 0.8 * e, 1e-15);
        }
    }

    #[test]
    fn sampled_trace_is_reproducible_and_seed_sensitive() {
        let profile = prepare_uniform(4).unwrap();
        let noise = NoiseSpec::new(EpsilonModel::Constant { epsilon: 0.2 }, Some(8192), 1).unwrap();
        let a = sample_trace(&profile, OMEGA, 30, Some(&noise)).unwrap();
        let b = sample_trace(&profile, OMEGA, 30, Some(&noise)).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a.provenance,
            TraceProvenance::Noisy { epsilon: 0.2, shots: Some(8192), seed: 1 }
        );
        let other = NoiseSpec::new(EpsilonModel::Constant { epsilon: 0.2 }, Some(8192), 2).unwrap();
        let c = sample_trace(&profile, OMEGA, 30, Some(&other)).unwrap();
        assert_ne!(a.gamma, c.gamma);
        for g in &a.gamma {
            assert!((-1.0..=1.0).contains(g));
        }
    }

    #[test]
    fn shot_only_trace_provenance() {
        let profile = prepare_uniform(4).unwrap();
        let noise =
            NoiseSpec::new(EpsilonModel::Constant { epsilon: 0.0 }, Some(4096), 9).unwrap();
        let trace = sample_trace(&profile, OMEGA, 30, Some(&noise)).unwrap();
        assert_eq!(trace.provenance, TraceProvenance::ShotSampled { shots: 4096, seed: 9 });
    }
}
