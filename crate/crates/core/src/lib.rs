//! Rough set approximations over a finite approximation space.
//!
//! The crate computes Pawlak, variable-precision (single error `β`) and
//! variable-error (`β` for the lower approximation, `γ` for the upper)
//! approximations of a target set, with every threshold handled as an exact
//! rational. On top of that it provides the order and join/meet algebra of
//! approximation families, an exhaustive lattice-law checker, and loaders for
//! explicit instances and attribute-value tables.

pub mod approximation;
pub mod cli;
pub mod error;
pub mod ingest;
pub mod lattice;
pub mod ratio;
pub mod subset;
pub mod universe;
pub mod verify;

pub use approximation::{
    overlap_degree, pawlak, sweep, thresholds, vprs, vprsve, Approximator, Precision, Regions,
    RoughResult, ThresholdProfile, VprsResult, VprsveResult,
};
pub use error::{Error, Result};
pub use ratio::{ratio, ExactRatio};
pub use subset::SubsetHandle;
pub use universe::{Partition, Universe};
