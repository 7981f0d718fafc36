//! Exact construction and verification of n-Lie algebras, n-Lie-Rinehart
//! algebras over polynomial rings, n-Lie algebroids on affine space and
//! polynomial Nambu-Poisson structures.
//!
//! All arithmetic is over ℚ. Checkers return a [`Verdict`]: either a pass or a
//! [`Witness`] naming the first violated condition in lexicographic order.

pub mod algebroid;
pub mod builtins;
pub mod config;
pub mod error;
pub mod generators;
pub mod kernel;
pub mod nambu;
pub mod nlie;
pub mod rinehart;
pub mod verdict;

pub use config::Config;
pub use error::{Error, Result};
pub use kernel::{
    canonical_multiindex, combinations, limits, parse_poly, parse_rat, rat, MultiIndex, Poly,
    PolyDerivation, Rat,
};
pub use verdict::{PairedVerdict, Verdict, Witness};
