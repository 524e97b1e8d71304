//! Model harmonic functions û and the argument transforms applied to them.
//!
//! Two exact representations are provided: decaying Fourier modes plus
//! Poisson point sources on the right half-plane, and trigonometric
//! polynomials on the unit disk. Sampled boundary data is turned into one of
//! these representations (trapezoid-weighted Poisson sources, discrete
//! Fourier projection) so that every later stage works with closed forms.

mod disk;
mod halfplane;
mod stencil;
mod trace;

pub use disk::DiskField;
pub use halfplane::{HalfPlaneField, PlanarMode, PoissonSource};
pub use stencil::{
    anisotropic_laplacian_residual, laplacian_residual, richardson_laplacian_residual, FnField,
    ScalarField,
};
pub use trace::{disk_from_boundary, halfplane_poisson_eval, BoundaryTrace, PoissonValue};

use crate::error::Result;
use crate::geometry::Point2;

/// A model harmonic function in one of the supported representations.
#[derive(Debug, Clone, PartialEq)]
pub enum HarmonicField {
    HalfPlane(HalfPlaneField),
    Disk(DiskField),
}

impl HarmonicField {
    /// Checked evaluation; disk points are given in Cartesian coordinates.
    pub fn eval(&self, p: Point2) -> Result<f64> {
        match self {
            HarmonicField::HalfPlane(f) => f.eval(p),
            HarmonicField::Disk(f) => f.eval(p.to_polar()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            HarmonicField::HalfPlane(f) => f.is_zero(),
            HarmonicField::Disk(f) => f.is_zero(),
        }
    }
}

impl From<HalfPlaneField> for HarmonicField {
    fn from(f: HalfPlaneField) -> Self {
        HarmonicField::HalfPlane(f)
    }
}

impl From<DiskField> for HarmonicField {
    fn from(f: DiskField) -> Self {
        HarmonicField::Disk(f)
    }
}
