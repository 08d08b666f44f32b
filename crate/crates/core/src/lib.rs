//! Selection principles on finite samples of compact metric spaces.
//!
//! Each module turns one family of covering constructions into an executable,
//! checkable procedure:
//!
//! - [`space`]: samples, exact metrics, diameters, schedules.
//! - [`cover`]: open regions, covers, refinement, disjointness, Lebesgue numbers.
//! - [`netting`]: ε-nets and σ-totally-bounded decompositions.
//! - [`screen`]: disjoint refinements built from shifted brick families.
//! - [`game`]: the Hurewicz game, block indices and the strengthened selection.
//! - [`haver`]: small-diameter disjoint covers from a bounded chain.
//! - [`cli`]: command-line entry point and JSON reports.

pub mod cli;
pub mod cover;
pub mod error;
pub mod game;
pub mod haver;
pub mod instances;
pub mod io;
pub mod netting;
pub mod rational;
pub mod registry;
pub mod screen;
pub mod space;

pub use error::{Error, Result};
