//! Numerical machinery for heavy-tailed (Pareto-type) distributions.
//!
//! The crate provides, roughly bottom-up:
//!
//! * [`tails`] — Pareto specifications and a generic log-domain tail
//!   representation ([`TailFunction`]) with inverse-transform sampling.
//! * [`constructions`] — piecewise and smoothed slowly-varying tail
//!   constructions whose normalized tails oscillate forever, together with
//!   their verification predicates.
//! * [`quad`] / [`transforms`] — adaptive Gauss–Kronrod quadrature and the
//!   moment functionals built on it (truncated moments, tail integrals,
//!   damped and fractional moments, Laplace/characteristic-function
//!   identity checks).
//! * [`certificates`] — measured moment-growth constants, the relations the
//!   equivalence proofs imply between them, Chebyshev-optimized tail bounds
//!   and log-convex tail recovery.
//! * [`chaos`] — coefficient tensors, multiplicity decompositions,
//!   multilinear/recentered chaos evaluation and the closed-form moment and
//!   tail bounds for chaos in heavy-tailed variables (including Fuk–Nagaev).
//! * [`mc`] — a seeded, chunk-reproducible Monte Carlo harness for
//!   empirical tails, L^p tables, slope fits and bound dominance checks.
//!
//! Everything that touches the far tail works in log-domain: the
//! construction breakpoints reach exp(4e^4), far outside linear-domain
//! floats. Survival functions are handled as `log g(e^l)` throughout.
//!
//! With the default `parallel` feature, grid measurements and Monte Carlo
//! chunks run on rayon; disabling the feature yields a dependency-free
//! sequential build with bitwise-identical results.

pub mod certificates;
pub mod chaos;
pub mod constructions;
pub mod descriptor;
pub mod error;
pub mod mc;
pub(crate) mod par;
pub mod quad;
pub mod tails;
pub mod transforms;

pub use error::{Error, Result};
pub use quad::QuadratureConfig;
pub use tails::{ParetoSpec, SampleBatch, TailFunction};
