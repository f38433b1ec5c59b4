//! Exact weighted counts of domino tilings of reduced Aztec diamonds and
//! lozenge tilings of reduced hexagons.
//!
//! Counts come from Padé and Hermite-Padé approximation problems solved in
//! exact rational arithmetic. Each formula has an independent check: a
//! transfer-matrix count over the cells, a non-intersecting path
//! determinant, a finite-section kernel determinant, or a Monte Carlo run
//! of domino shuffling.

// Bounds are written as in the inequalities they encode.
#![allow(clippy::int_plus_one, clippy::needless_range_loop)]

pub mod algebra;
pub mod approximants;
pub mod error;
pub mod gaps;
pub mod kernels;
pub mod oracle;
pub mod regions;
pub mod shuffling;
pub mod sweeps;

pub use error::{Error, Result};
pub use gaps::GapSet;
