//! Exact representation and master-equation evolution of the two models on a
//! finite window of the integer lattice.
//!
//! The window is sites 0..N with truncation at the edges: any jump, branch,
//! or immigration event that would involve a site outside the window is
//! deleted from the dynamics. Ground truth for small systems comes from
//! [`evolve_exact`], which the duality and Monte Carlo layers are tested
//! against.

mod distribution;
mod generator;
mod model;
mod occupancy;

pub use distribution::{evolve_exact, StateDistribution};
pub use generator::{build_generator, events_from, MasterGenerator, EXACT_WINDOW_CAP};
pub use model::{ArwpiRates, BcrwConstants, BcrwRates, ModelKind, ModelSpec};
pub use occupancy::OccupancyConfig;
