//! Link integrals turning the Dirichlet data û into Robin (û₃) and Neumann
//! (û₂) solutions.
//!
//! Planar Robin: `û₃(x,y) = ∫₀^∞ e^{hε} û(x+ε, y) dε`, so `∂ₓû₃ + h·û₃ + û = 0`.
//! Radial Robin: `û₃ = ∫₀¹ ε^{h−1} û(εx, εy) dε`, so `L₀û₃ + h·û₃ − û = 0`.
//! Neumann: `∂ₓû₂ = û` on the half-plane, `L₀û₂ = û` on the disk.

use crate::asymptotics::profile::integrate_ray;
use crate::error::{ensure, Error, Result};
use crate::harmonic::{DiskField, HalfPlaneField};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RobinGeometry {
    /// `|ρ| = e^{2hl}`
    Planar { l: f64 },
    /// `|ρ| = R^{2h}`
    Radial { radius: f64 },
}

/// Robin coefficient tied to a reflection ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobinParameter {
    pub h: f64,
    pub geometry: RobinGeometry,
}

impl RobinParameter {
    /// `h = ln|ρ| / (2l)`
    pub fn planar(rho: f64, l: f64) -> Result<Self> {
        ensure(rho != 0.0 && rho.abs() < 1.0, || {
            format!("Robin parameter needs 0 < |ρ| < 1, got ρ = {rho}")
        })?;
        ensure(l > 0.0, || {
            format!("layer thickness must be positive, got {l}")
        })?;
        Ok(Self {
            h: rho.abs().ln() / (2.0 * l),
            geometry: RobinGeometry::Planar { l },
        })
    }

    /// `h = ln|ρ| / (2 ln R)`
    pub fn radial(rho: f64, radius: f64) -> Result<Self> {
        ensure(rho != 0.0 && rho.abs() < 1.0, || {
            format!("Robin parameter needs 0 < |ρ| < 1, got ρ = {rho}")
        })?;
        ensure(radius > 0.0 && radius < 1.0, || {
            format!("inner radius must lie in (0, 1), got {radius}")
        })?;
        Ok(Self {
            h: rho.abs().ln() / (2.0 * radius.ln()),
            geometry: RobinGeometry::Radial { radius },
        })
    }

    /// `|ρ|` reconstructed from `h`.
    pub fn abs_rho(&self) -> f64 {
        match self.geometry {
            RobinGeometry::Planar { l } => (2.0 * self.h * l).exp(),
            RobinGeometry::Radial { radius } => radius.powf(2.0 * self.h),
        }
    }
}

/// Planar Robin field: closed form on modes, quadrature for Poisson sources.
#[derive(Debug, Clone, PartialEq)]
pub enum PlanarRobinField {
    Modes(HalfPlaneField),
    Quadrature { base: HalfPlaneField, h: f64 },
}

impl PlanarRobinField {
    pub fn value(&self, x: f64, y: f64) -> f64 {
        match self {
            PlanarRobinField::Modes(f) => f.value(x, y),
            PlanarRobinField::Quadrature { base, h } => {
                integrate_ray(|e| (h * e).exp() * base.value(x + e, y), 1e-12)
            }
        }
    }

    pub fn dx(&self, x: f64, y: f64) -> f64 {
        match self {
            PlanarRobinField::Modes(f) => f.dx(x, y),
            PlanarRobinField::Quadrature { base, h } => {
                integrate_ray(|e| (h * e).exp() * base.dx(x + e, y), 1e-12)
            }
        }
    }
}

pub fn robin_link_halfplane(field: &HalfPlaneField, h: f64) -> Result<PlanarRobinField> {
    ensure(h < 0.0, || {
        format!("planar Robin link needs h < 0, got {h}")
    })?;
    if field.has_sources() {
        // the kernel decays like 1/x, e^{hε} keeps the integral finite
        return Ok(PlanarRobinField::Quadrature {
            base: field.clone(),
            h,
        });
    }
    if let Some(m) = field.modes().iter().find(|m| m.frequency - h <= 0.0) {
        return Err(Error::DivergentLink(format!(
            "ω − h = {} ≤ 0",
            m.frequency - h
        )));
    }
    Ok(PlanarRobinField::Modes(field.map_modes(|w| 1.0 / (w - h))))
}

/// `r^n{cos, sin}nθ ↦ (same)/(n + h)`; the constant mode maps to `a₀/(2h)`.
pub fn robin_link_disk(field: &DiskField, h: f64) -> Result<DiskField> {
    ensure(h > 0.0, || {
        format!("radial Robin link needs h > 0, got {h}")
    })?;
    Ok(field.map_modes(|n| 1.0 / (n as f64 + h)))
}

pub fn neumann_link_halfplane(field: &HalfPlaneField) -> Result<HalfPlaneField> {
    if field.has_sources() {
        return Err(Error::DivergentLink(
            "∫ₓ^∞ of a Poisson kernel diverges logarithmically".into(),
        ));
    }
    Ok(field.map_modes(|w| -1.0 / w))
}

pub fn neumann_link_disk(field: &DiskField) -> Result<DiskField> {
    if field.cos_coeffs()[0] != 0.0 {
        return Err(Error::Solvability(format!(
            "boundary data has mean a₀/2 = {}; Neumann data must have zero mean",
            0.5 * field.cos_coeffs()[0]
        )));
    }
    Ok(field.map_modes(|n| if n == 0 { 0.0 } else { 1.0 / n as f64 }))
}
