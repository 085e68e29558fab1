//! Exact combinatorics of mu-ordinary unitary Shimura data.
//!
//! The crate is split along the lines of the computations it performs:
//!
//! - [`padic`]: residues modulo `p^M` and degree-truncated multivariate
//!   expansions over them, including the `(1+u)^a` basis.
//! - [`shimura`]: PEL data at `p`, mu-ordinary Newton polygons, Levi shapes,
//!   the Hasse weight, graded ranks and cascade inventories.
//! - [`weights`]: dominant weights, Littlewood-Richardson branching to the
//!   mu-ordinary Levi, simple weights and character congruences.
//! - [`theta`]: theta operators on expansions, their congruences and the
//!   moments of the associated measures.
//! - [`suites`]: exhaustive and randomized invariant suites, run in parallel
//!   through [`par`] when the `parallel` feature is enabled.

pub mod error;
pub mod padic;
pub mod par;
pub mod shimura;
pub mod suites;
pub mod theta;
pub mod weights;

pub use error::{Error, Result};
pub use par::Execution;
