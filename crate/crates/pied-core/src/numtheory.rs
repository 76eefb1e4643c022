//! Divisor structure, primality, and the divisibility tests the spectral
//! classifier dispatches when a mode lands between the analytic bounds.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Complete, ascending divisor list of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorList {
    pub n: u64,
    pub divisors: Vec<u64>,
}

/// All divisors of `n` in ascending order (1 and n included).
pub fn divisors(n: u64) -> Result<DivisorList> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(DivisorList { n, divisors: small })
}

/// Deterministic trial-division primality; 0 and 1 are not prime.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// One cheap divisibility probe. `PerfectSquare` succeeds on squares with the
/// integer root as witness; the others check the fixed small divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DivisibilityTest {
    PerfectSquare,
    ByTwo,
    ByThree,
}

/// Which band subinterval a mode index falls in; each widens the test set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subinterval {
    I1,
    I2,
    I3,
    Endpoint,
}

/// Test plan for an in-band mode index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalVerdict {
    pub n: u64,
    pub subinterval: Subinterval,
    pub required_tests: Vec<DivisibilityTest>,
}

/// Places n within [2, 2(d-1)] relative to the reversal thresholds
/// `(t2, t3)` and returns the divisibility tests that subinterval requires.
/// Below t2 only the square test can expose a composite; from t2 the even
/// semiprimes can undercut the square curve, from t3 the triples as well.
/// A threshold of +infinity disables its cut. The right endpoint always
/// receives the full test set.
pub fn classify_interval(n: u64, d: usize, thresholds: (f64, f64)) -> Result<IntervalVerdict> {
    use DivisibilityTest::*;
    let hi = 2 * (d as u64 - 1);
    if n < 2 || n > hi {
        return Err(Error::ModeOutOfRange { n, lo: 2, hi });
    }
    let (t2, t3) = thresholds;
    let x = n as f64;
    let (subinterval, required_tests) = if n == hi {
        (Subinterval::Endpoint, vec![PerfectSquare, ByTwo, ByThree])
    } else if x < t2 {
        (Subinterval::I1, vec![PerfectSquare])
    } else if x < t3 {
        (Subinterval::I2, vec![PerfectSquare, ByTwo])
    } else {
        (Subinterval::I3, vec![PerfectSquare, ByTwo, ByThree])
    };
    Ok(IntervalVerdict { n, subinterval, required_tests })
}

/// Outcome of running the divisibility tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestOutcome {
    CompositeWitness(u64),
    NoWitness,
}

/// Runs the requested tests in the fixed order (2, 3, square root) and
/// returns the first witness found.
pub fn run_divisibility_tests(n: u64, tests: &[DivisibilityTest]) -> TestOutcome {
    use DivisibilityTest::*;
    if tests.contains(&ByTwo) && n % 2 == 0 {
        return TestOutcome::CompositeWitness(2);
    }
    if tests.contains(&ByThree) && n % 3 == 0 {
        return TestOutcome::CompositeWitness(3);
    }
    if tests.contains(&PerfectSquare) {
        let r = n.isqrt();
        if r >= 2 && r * r == n {
            return TestOutcome::CompositeWitness(r);
        }
    }
    TestOutcome::NoWitness
}
