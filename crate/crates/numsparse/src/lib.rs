//! Estimation of numerical sparsity and lq norms of an unknown signal from
//! randomized linear measurements with possibly heavy-tailed noise.
//!
//! Measurements follow y_i = <a_i, x> + sigma eps_i with a_i drawn from a
//! symmetric q-stable law, so each y_i carries |x|_q in its scale parameter.
//! The estimator deconvolves the known noise characteristic function out of
//! the empirical characteristic function of the y_i, recovers |x|_q^q from
//! the log of the result, and combines two such estimates (orders q and 1)
//! into the sparsity measure s_q(x) with asymptotically exact confidence
//! intervals.
//!
//! Modules:
//! - [`sparsity`]: exact ground-truth functionals s_q, Renyi entropies,
//!   majorization.
//! - [`noise`] and [`stable`]: noise families, stable-law sampling, and
//!   measurement generation (explicit matrix or exact induced scalar law).
//! - [`estimator`]: the deconvolution estimator and its tuning pipeline.
//! - [`inference`]: sparsity combination, confidence intervals, tests,
//!   regularizer radii.
//! - [`bounds`]: recovery-error bound calculators and the adversarial
//!   null-space construction.
//! - [`simlab`]: reproducible Monte Carlo experiments with theory overlays.
//! - [`cli`]: the command-line front end.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod estimator;
pub mod inference;
pub mod io;
pub mod noise;
pub mod rng;
pub mod simlab;
pub mod sparsity;
pub mod special;
pub mod stable;

pub use error::{Error, Result};
