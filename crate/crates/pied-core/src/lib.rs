//! Numerical laboratory for prime identification via entanglement dynamics.
//!
//! A bipartite register of two d-level halves, prepared in a product of
//! identical real-amplitude states and evolved under a diagonal coupling,
//! has a reduced purity gamma(t) whose cosine modes are divisor sums over
//! the mode index n. Primes in [2, 2(d-1)] are exactly the indices whose
//! mode collapses to the trivial-divisor floor, which turns primality into
//! a spectral measurement. This crate provides:
//!
//! - [`statesim`]: state preparation, exact purity dynamics by two
//!   independent routes, and a synthetic noise + shot-sampling layer;
//! - [`spectral`]: cosine-mode extraction, numerically (composite Simpson)
//!   and in closed form (divisor correlation sums);
//! - [`bounds`]: the analytic floor/ceiling curves, semiprime reversal
//!   thresholds, and the traffic-light classifier;
//! - [`numtheory`]: divisor lists, primality, and the divisibility tests
//!   the classifier dispatches on;
//! - [`mitigation`]: correction-factor extrapolation (exact L1 rescaling)
//!   and zero-noise extrapolation over synthetically folded traces.
//!
//! With the default `parallel` feature the hot loops (trace sampling, mode
//! evaluation, per-point extrapolation) run on rayon; disabling it yields a
//! bit-for-bit identical sequential build, since every random draw derives
//! its own stream from (seed, index).

pub mod bounds;
pub mod error;
pub mod mitigation;
pub mod numtheory;
pub mod spectral;
pub mod statesim;

mod par;

pub use error::{Error, Result};
