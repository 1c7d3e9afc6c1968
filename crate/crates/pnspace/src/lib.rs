//! Numerical toolkit for probabilistic normed spaces: distribution functions
//! on a uniform grid, t-norms and conorms, sup-convolutions and pointwise
//! lifts, m-transforms, finite and countable product constructions, strong
//! neighborhoods, and randomized verification campaigns over all of them.
//!
//! The `examples/` directory is the front door; each example exercises one
//! capability end to end. The `pnspace` binary exposes the same campaigns as
//! CLI subcommands.

pub mod campaigns;
pub mod config;
pub mod ddf;
pub mod error;
pub mod grid;
pub mod products;
pub mod report;
pub mod sample;
pub mod spaces;
pub mod tnorm;
pub mod topology;
pub mod transform;
pub mod trifn;

pub use error::{Error, Result};
