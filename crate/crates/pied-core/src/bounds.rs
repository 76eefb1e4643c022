//! Analytic bound curves for uniform-profile cosine modes, the semiprime
//! reversal thresholds, and the traffic-light classifier built on them.
//!
//! For the uniform profile, every prime mode equals the trivial-divisor
//! floor B_n, and every square of a prime lands exactly on the curve P_n.
//! Most composites stay at or above P_n; the only families that can dip
//! below it inside the band [2, 2(d-1)] are the semiprimes 2k and 3k, and
//! each does so only beyond a real threshold n_th(k). A mode caught between
//! the curves is settled by the cheap divisibility tests that exactly cover
//! those families.

use crate::error::{Error, Result};
use crate::numtheory::{self, TestOutcome};
use crate::statesim::AmplitudeProfile;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Trivial-divisor floor for the uniform profile:
/// 8 (d - n)(d - 1) / d^4 inside the register, zero for n >= d.
pub fn b_uniform(n: u64, d: usize) -> f64 {
    b_uniform_real(n as f64, d)
}

fn b_uniform_real(n: f64, d: usize) -> f64 {
    let df = d as f64;
    if n >= df {
        return 0.0;
    }
    8.0 * (df - n) * (df - 1.0) / df.powi(4)
}

/// Trivial-divisor floor for an arbitrary profile: 8 A(n) A(1).
pub fn b_general(profile: &AmplitudeProfile, n: u64) -> f64 {
    let shift = usize::try_from(n).unwrap_or(usize::MAX);
    8.0 * profile.autocorrelation(shift) * profile.autocorrelation(1)
}

/// Square-composite curve: the exact mode value at n = k^2 for prime k,
/// B_n + (4/d^4)(d - sqrt(n))^2.
pub fn p_uniform(n: u64, d: usize) -> f64 {
    let df = d as f64;
    let nf = n as f64;
    b_uniform(n, d) + 4.0 * (df * df + nf - 2.0 * df * nf.sqrt()) / df.powi(4)
}

/// Analytic semiprime curve for divisor class k, defined for real n so it
/// can be plotted off-lattice: B_n + (8/d^4)(d^2 + n - d(k + n/k)).
pub fn bk_uniform(n: f64, k: u64, d: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::KTooSmall { k });
    }
    let df = d as f64;
    let kf = k as f64;
    Ok(b_uniform_real(n, d) + 8.0 * (df * df + n - df * (kf + n / kf)) / df.powi(4))
}

/// Scaled gap (d^4/4)(Bk - P) = d^2 + n - 2d(k + n/k) + 2d sqrt(n); the
/// semiprime family k undercuts the square curve exactly where this is
/// negative.
pub fn delta(n: f64, k: u64, d: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::KTooSmall { k });
    }
    if n <= 0.0 {
        return Err(Error::NonPositiveArgument { n });
    }
    let df = d as f64;
    let kf = k as f64;
    Ok(df * df + n - 2.0 * df * (kf + n / kf) + 2.0 * df * n.sqrt())
}

/// Argument of the unique interior maximum of delta(., k).
pub fn delta_crit(k: u64, d: usize) -> f64 {
    let df = d as f64;
    let kf = k as f64;
    df * df * kf * kf / (2.0 * df - kf).powi(2)
}

/// Rightmost root of delta(., k): the threshold beyond which the family k
/// can undercut the square curve. Closed radical formula with a residual
/// assertion guarding transcription errors.
pub fn n_threshold(k: u64, d: usize) -> Result<f64> {
    let df = d as f64;
    let kf = k as f64;
    if k < 2 || kf >= df / 2.0 {
        return Err(Error::KOutOfRange { k, half: df / 2.0 });
    }
    let numerator = 4.0 * df.powi(3) / kf - 6.0 * df * df + 4.0 * df * kf
        + 4.0 * (2.0 / kf).sqrt() * (df - kf) * df.powf(1.5);
    let denominator = 2.0 * (1.0 - 2.0 * df / kf).powi(2);
    let root = numerator / denominator;
    let residual = delta(root, k, d).expect("threshold root is positive");
    assert!(
        residual.abs() < 1e-9 * df * df,
        "threshold root residual {residual} at k = {k}, d = {d}"
    );
    Ok(root)
}

/// Smaller root of the admissibility quadratic in k, computed through the
/// root product to avoid cancellation at large d; increases to 4 from below.
pub fn k_minus(d: usize) -> f64 {
    let df = d as f64;
    let s = (2.0 * (df - 1.0)).sqrt();
    let b = (df + s) * (df + s);
    let u = (b * b - 32.0 * df * df * (df - 1.0)).sqrt();
    8.0 * df * (df - 1.0) / (b + u)
}

/// Primes k whose semiprime family can actually undercut the square curve
/// inside the band: k <= k_minus(d) and threshold inside [2, 2(d-1)].
/// Provably a subset of {2, 3}.
pub fn k_admissible_set(d: usize) -> Vec<u64> {
    assert!(d >= 4, "admissible set needs d >= 4, got {d}");
    let km = k_minus(d);
    let mut out = Vec::new();
    let mut k = 2u64;
    while (k as f64) <= km && (k as f64) < d as f64 / 2.0 {
        if numtheory::is_prime(k) {
            let threshold = n_threshold(k, d).expect("k < d/2 checked");
            if threshold < 2.0 * (d as f64 - 1.0) {
                out.push(k);
            }
        }
        k += 1;
    }
    out
}

/// Where a measured mode fell relative to the bound curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Green,
    LightBlue,
    Purple,
}

/// Why the classifier decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    BelowB,
    AboveP,
    WitnessFound { divisor: u64 },
    NoWitness,
}

/// Final call for one mode index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Prime,
    ProbablePrime,
    Composite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub n: u64,
    pub label: Label,
    pub evidence: Evidence,
    pub region: Region,
}

impl Verdict {
    /// Collapses the hedged label for accuracy scoring: Prime and
    /// ProbablePrime both predict a prime.
    pub fn predicts_prime(&self) -> bool {
        matches!(self.label, Label::Prime | Label::ProbablePrime)
    }
}

/// Precomputed bound curves and thresholds for one dimension (uniform
/// profile; the square-curve apparatus is proven only there). Immutable
/// after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsTable {
    d: usize,
    b: BTreeMap<u64, f64>,
    p: BTreeMap<u64, f64>,
    bk: BTreeMap<(u64, u64), f64>,
    n_th2: Option<f64>,
    n_th3: Option<f64>,
    k_set: Vec<u64>,
}

impl BoundsTable {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 || !d.is_power_of_two() {
            return Err(Error::InvalidDimension { d });
        }
        let band: Vec<u64> = (2..=2 * (d as u64 - 1)).collect();
        let b = band.iter().map(|&n| (n, b_uniform(n, d))).collect();
        let p = band.iter().map(|&n| (n, p_uniform(n, d))).collect();
        let mut bk = BTreeMap::new();
        for &k in &[2u64, 3] {
            for &n in &band {
                bk.insert((n, k), bk_uniform(n as f64, k, d)?);
            }
        }
        let n_th2 = n_threshold(2, d).ok();
        let n_th3 = n_threshold(3, d).ok();
        let k_set = if d >= 4 { k_admissible_set(d) } else { Vec::new() };
        Ok(Self { d, b, p, bk, n_th2, n_th3, k_set })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn b(&self, n: u64) -> Result<f64> {
        self.b.get(&n).copied().ok_or(self.out_of_band(n))
    }

    pub fn p(&self, n: u64) -> Result<f64> {
        self.p.get(&n).copied().ok_or(self.out_of_band(n))
    }

    pub fn bk(&self, n: u64, k: u64) -> Option<f64> {
        self.bk.get(&(n, k)).copied()
    }

    pub fn n_th2(&self) -> Option<f64> {
        self.n_th2
    }

    pub fn n_th3(&self) -> Option<f64> {
        self.n_th3
    }

    pub fn k_set(&self) -> &[u64] {
        &self.k_set
    }

    /// Thresholds for interval dispatch; a missing threshold means no
    /// reversal inside the band and acts as +infinity.
    pub fn effective_thresholds(&self) -> (f64, f64) {
        (
            self.n_th2.unwrap_or(f64::INFINITY),
            self.n_th3.unwrap_or(f64::INFINITY),
        )
    }

    fn out_of_band(&self, n: u64) -> Error {
        Error::ModeOutOfRange { n, lo: 2, hi: 2 * (self.d as u64 - 1) }
    }
}

/// Traffic-light classification of one measured mode value with a relative
/// tolerance band applied to both curves: below the floor is certainly
/// prime, above the square curve certainly composite, and the strip between
/// is settled by the divisibility tests of the matching subinterval.
pub fn classify(n: u64, alpha: f64, table: &BoundsTable, tolerance: f64) -> Result<Verdict> {
    assert!(tolerance >= 0.0, "tolerance must be nonnegative");
    let b = table.b(n)?;
    let p = table.p(n)?;
    if alpha < b * (1.0 - tolerance) {
        return Ok(Verdict { n, label: Label::Prime, evidence: Evidence::BelowB, region: Region::Green });
    }
    if alpha > p * (1.0 + tolerance) {
        return Ok(Verdict { n, label: Label::Composite, evidence: Evidence::AboveP, region: Region::Purple });
    }
    let plan = numtheory::classify_interval(n, table.dim(), table.effective_thresholds())?;
    let verdict = match numtheory::run_divisibility_tests(n, &plan.required_tests) {
        TestOutcome::CompositeWitness(divisor) => Verdict {
            n,
            label: Label::Composite,
            evidence: Evidence::WitnessFound { divisor },
            region: Region::LightBlue,
        },
        TestOutcome::NoWitness => Verdict {
            n,
            label: Label::ProbablePrime,
            evidence: Evidence::NoWitness,
            region: Region::LightBlue,
        },
    };
    Ok(verdict)
}
