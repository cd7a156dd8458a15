//! General-equilibrium engine behind the big-picture diagram atlas.
//!
//! The engine solves a small classical/Keynesian model (labor market,
//! production, IS-LM, AS-AD, Phillips curve), renders each of the 27
//! diagrams as sampled curves, and tracks how a parameter shock propagates
//! through the derivation graph linking them.

// Negated comparisons are used on purpose so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod curve;
pub mod demand;
pub mod econ;
pub mod equilibrium;
pub mod error;
pub mod graph;
pub mod numerics;
pub mod params;
pub mod plot;
pub mod scenario;
pub mod state;
pub mod supply;
pub mod symbols;

pub use curve::{Curve, Marker};
pub use equilibrium::{long_run_ge, short_run_ge};
pub use error::{Error, Result};
pub use graph::{BigPicture, EdgeKind, PropagationPlan};
pub use params::Params;
pub use state::EconState;
pub use symbols::SymbolRegistry;
