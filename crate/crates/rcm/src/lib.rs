//! Exact and Monte Carlo statistics of subgraph counts with fixed endpoints
//! in the Gaussian random-connection model.
//!
//! The random-connection model places a Poisson cloud of intensity `λ` in
//! `ℝ^d` and connects each pair of points independently with probability
//! `exp(-β‖x−y‖²)`; a set of deterministic endpoint vertices may be adjoined.
//! This crate computes moments, cumulants and joint cumulants of the number
//! of embeddings of a template graph — exactly, as polynomials in `λ` whose
//! coefficients are finite sums of rational multiples of square roots — by
//! summing closed-form Gaussian integrals over set partitions of a multirow
//! ground set.
//!
//! The pieces:
//!
//! * [`partition`] — enumeration and classification of set partitions of
//!   `[n]×[r]`-style ground sets (the summation domains of every formula).
//! * [`diagram`] — template graphs, the merged graph induced by a partition,
//!   and the integer quadratic form of the resulting Gaussian integral.
//! * [`algebra`] — exact scalars `Σ q·√s`, polynomials in `λ`, fraction-free
//!   determinants, Stirling transforms.
//! * [`engine`] — the moment/cumulant assembler, exact and numeric paths.
//! * [`stats`] — connectivity bounds, factorial-moment series, Gram-Charlier
//!   densities, Berry-Esseen rates, correlations.
//! * [`sim`] — a Monte Carlo sampler and embedding counter used to
//!   cross-validate the exact engine.
//! * [`tables`] — reference censuses and closed-form cumulants for the
//!   bundled example graphs, used by the validation suite.

pub mod algebra;
pub mod diagram;
pub mod engine;
pub mod error;
pub mod partition;
pub mod sim;
pub mod stats;
pub mod tables;

pub use error::{Error, Result};

pub(crate) mod pool {
    /// Runs `f` inside a rayon pool of the requested size, or inline on the
    /// global pool when no worker count is given.
    pub fn run<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
        match workers {
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .expect("failed to build worker pool")
                .install(f),
            None => f(),
        }
    }
}
