//! Exact rewriting engine for cross products and braided tensor products of
//! Hopf-module algebras over `Q(q, eta)`, with verifiers for decoupling maps.

pub mod actions;
pub mod coeff;
pub mod decouple;
pub mod error;
pub mod format;
pub mod hopf;
pub mod ncpoly;
pub mod products;
pub mod presets;
pub mod report;
pub mod suites;
pub mod rewrite;

pub use error::{Error, Result};
