//! Exact proportions of derangements in finite affine classical groups.
//!
//! The crate re-derives, at desk scale, closed forms for the proportion of
//! derangements (and of p-power derangements) of `AGL`, `AU`, `ASp` and `AO`,
//! the partition sums they come from, the cycle-index series manipulations
//! behind them, and a brute-force group oracle for tiny instances.

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod cyclesums;
pub mod formulas;
pub mod grouporacle;
pub mod partitions;
pub mod report;
pub mod series;

pub use error::{Error, Result};
