//! Harmonic fields in two-layer plane geometries.
//!
//! A harmonic function `û` known on a half-plane or disk is deformed into the
//! solution of a layered problem by summing its reflected images. Where that
//! ladder converges too slowly, Euler–Maclaurin summation links the layered
//! solution to Robin and Neumann problems for `û`. The [`oracle`] module
//! provides independent checks: closed forms, brute summation and
//! finite-difference solvers.

pub mod asymptotics;
pub mod error;
pub mod geometry;
pub mod harmonic;
pub mod oracle;
pub mod transform;

pub use error::{Error, Result};
pub use geometry::{Point2, PolarPoint};
