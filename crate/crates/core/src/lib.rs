//! A workbench for syllogistic reasoning.
//!
//! The crate brings four pieces under one roof:
//!
//! * [`syllogism`] and [`oracle`] - the combinatorial space of the 64
//!   two-premise syllogisms, natural-language rendering/parsing, and exact
//!   ground-truth validity by enumerating monadic models;
//! * [`mental`] - a stochastic mental-models reasoner (model construction,
//!   conclusion scanning, counterexample search) with four interpretable
//!   parameters;
//! * [`behavior`] - parameter-grid sweeps, 216-dimensional behavior
//!   vectors, and the PCA space other reasoners are projected into;
//! * [`harness`], [`data`], and [`metrics`] - eliciting responses from
//!   text-completion endpoints, the file formats for human and LM response
//!   data, and the comparative statistics (accuracy, correlation, ordering
//!   effects, fallacy residuals, NVC rates).
//!
//! The numeric kernel ([`dist`], [`stats`], [`pca`]) is generic over the
//! scalar type via [`Float`]; the pipeline instantiates it at `f64` (the
//! aliases below). Everything stochastic takes explicit seeds and
//! reproduces bit-identically (see [`seeding`]).

pub mod behavior;
pub mod data;
pub mod dist;
pub mod error;
pub mod float;
pub mod harness;
pub mod mental;
pub mod metrics;
pub mod oracle;
pub mod pca;
pub mod seeding;
pub mod stats;
pub mod syllogism;

pub use error::{Error, Result};
pub use float::Float;

/// Default scalar for pipeline computations.
pub type Scalar = f64;

/// PCA model at the default scalar.
pub type Pca64 = pca::Pca<f64>;
/// PCA model at single precision.
pub type Pca32 = pca::Pca<f32>;
/// Fitted regression line at the default scalar.
pub type OlsFit64 = stats::OlsFit<f64>;
/// Response distribution at the default scalar.
pub type ResponseDistribution = dist::ResponseDistribution<Scalar>;
