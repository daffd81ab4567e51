//! Contraction bounds and numerical checks for graphs of Weierstrass-type
//! functions `w(x) = sum a^n phi(b^n x)`.
//!
//! The graph of `w` is the attractor of the `b` maps
//! `S_i(x, y) = ((x + i - 1)/b, a y + phi((x + i - 1)/b))`. When `|phi'| <= 1`
//! and `a^2 + a/b < 1` every map is a strict contraction with the common
//! factor `h` returned by [`bounds::contraction_factor_h`], and the Moran root
//! `log_h(1/b)` bounds the Hausdorff dimension of the graph.
//!
//! The crate is `no_std` (it needs `alloc`); the IO-facing pieces live in the
//! `fractal-bound` companion crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod boxcount;
mod error;
pub mod ifs;
mod params;
pub mod phi;
pub mod series;

pub use error::{Error, Result};

pub use bounds::{DimensionReport, EigenPair, HypothesisCheck};
pub use boxcount::BoxCountResult;
pub use ifs::{IfsMap, IfsSystem, Point2, PointSet2D, PointSource, Provenance};
pub use params::WeierstrassParams;
pub use phi::PhiFunction;
