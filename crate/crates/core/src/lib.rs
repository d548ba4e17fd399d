//! Exact-arithmetic toolkit for translational tilings of `Z^1` and `Z^2`.
//!
//! Everything here is integer or rational arithmetic on finite quotients:
//! there is no floating point anywhere. The building blocks are finite
//! tiles, full-rank integer lattices in Hermite normal form, and
//! lattice-periodic sets and functions. On top of those sit tiling
//! verification, dilation invariance, exact structure decompositions into
//! ray densities, universal one-dimensional periods, exhaustive torus
//! search, weak-periodicity analysis, tiling improvement, a level-4
//! aperiodic-style construction, and a decision procedure for
//! non-one-periodic tilings.

pub mod corpus;
pub mod counterexample;
pub mod dilation;
pub mod error;
pub mod io;
pub mod lattice;
pub mod onedim;
pub mod oneper;
pub mod point;
pub mod periodic;
pub mod search2d;
pub mod slicing;
pub mod structure;
pub mod tile;
pub mod weak;

pub use error::TilingError;
pub use lattice::Lattice;
pub use point::{Dim, Point};
pub use periodic::{PeriodicIntFunction, PeriodicRationalFunction, PeriodicSet};
pub use tile::Tile;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, TilingError>;
