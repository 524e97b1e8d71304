//! Image-series solutions of the four problems.

use std::f64::consts::PI;

use crate::error::{ensure, Result};
use crate::geometry::Point2;
use crate::harmonic::{DiskField, HalfPlaneField};
use crate::transform::config::{PlanarLayerConfig, RadialLayerConfig};
use crate::transform::layered::{Geometry, LayeredSolution, Region};
use crate::transform::truncation::Truncation;

/// Coupled half-plane:
/// `u₁ = Σ ρ^j [û(x+2lj, y) − ρ·û(2l−x+2lj, y)]`,
/// `u₂ = (2k/(k+1)) Σ ρ^j û((a₁/a₂)(x−l) + l + 2lj, y)`.
#[derive(Debug, Clone)]
pub struct CoupledHalfPlaneSeries {
    field: HalfPlaneField,
    geometry: Geometry,
    cfg: PlanarLayerConfig,
    terms: usize,
    tail: f64,
}

pub fn halfplane_coupled(
    field: &HalfPlaneField,
    cfg: PlanarLayerConfig,
    trunc: Truncation,
) -> Result<CoupledHalfPlaneSeries> {
    let rho = cfg.rho();
    let sup = match trunc {
        Truncation::TailTol {
            sup_bound: Some(m), ..
        } => m,
        _ => field.sup_bound(2.0 * cfg.l()),
    };
    let (terms, tail) = trunc.resolve_geometric(rho, (1.0 + rho.abs()) * sup)?;
    Ok(CoupledHalfPlaneSeries {
        field: field.clone(),
        geometry: Geometry::HalfPlaneCoupled(cfg),
        cfg,
        terms,
        tail,
    })
}

impl CoupledHalfPlaneSeries {
    pub fn u1(&self, x: f64, y: f64) -> f64 {
        let (rho, l) = (self.cfg.rho(), self.cfg.l());
        let mut w = 1.0;
        let mut acc = 0.0;
        for j in 0..self.terms {
            let s = 2.0 * l * j as f64;
            acc += w * (self.field.value(x + s, y) - rho * self.field.value(2.0 * l - x + s, y));
            w *= rho;
        }
        acc
    }

    pub fn u2(&self, x: f64, y: f64) -> f64 {
        let (rho, l, k) = (self.cfg.rho(), self.cfg.l(), self.cfg.k());
        let base = self.cfg.stretch() * (x - l) + l;
        let mut w = 1.0;
        let mut acc = 0.0;
        for j in 0..self.terms {
            acc += w * self.field.value(base + 2.0 * l * j as f64, y);
            w *= rho;
        }
        2.0 * k / (k + 1.0) * acc
    }

    pub fn du1_dx(&self, x: f64, y: f64) -> f64 {
        let (rho, l) = (self.cfg.rho(), self.cfg.l());
        let mut w = 1.0;
        let mut acc = 0.0;
        for j in 0..self.terms {
            let s = 2.0 * l * j as f64;
            acc += w * (self.field.dx(x + s, y) + rho * self.field.dx(2.0 * l - x + s, y));
            w *= rho;
        }
        acc
    }

    pub fn du2_dx(&self, x: f64, y: f64) -> f64 {
        let (rho, l, k) = (self.cfg.rho(), self.cfg.l(), self.cfg.k());
        let stretch = self.cfg.stretch();
        let base = stretch * (x - l) + l;
        let mut w = 1.0;
        let mut acc = 0.0;
        for j in 0..self.terms {
            acc += w * self.field.dx(base + 2.0 * l * j as f64, y);
            w *= rho;
        }
        2.0 * k / (k + 1.0) * stretch * acc
    }

    pub fn config(&self) -> &PlanarLayerConfig {
        &self.cfg
    }
}

impl LayeredSolution for CoupledHalfPlaneSeries {
    fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    fn eval_in(&self, region: Region, p: Point2) -> f64 {
        match region {
            Region::Layer1 => self.u1(p.x, p.y),
            Region::Layer2 => self.u2(p.x, p.y),
            Region::Outside => f64::NAN,
        }
    }

    fn flux_in(&self, region: Region, p: Point2) -> Option<f64> {
        match region {
            Region::Layer1 => Some(self.du1_dx(p.x, p.y)),
            Region::Layer2 => Some(self.du2_dx(p.x, p.y)),
            Region::Outside => None,
        }
    }

    fn tail_bound(&self) -> f64 {
        self.tail
    }

    fn terms(&self) -> usize {
        self.terms
    }
}

/// Dirichlet strip: `u = Σ [û(x+2lj, y) − û(2l−x+2lj, y)]` on `0 < x < l`.
#[derive(Debug, Clone)]
pub struct StripSeries {
    field: HalfPlaneField,
    geometry: Geometry,
    l: f64,
    terms: usize,
    tail: f64,
}

/// Tail of the unweighted strip ladder from term `J` on.
fn strip_tail(field: &HalfPlaneField, l: f64, terms: usize) -> f64 {
    let j = terms as f64;
    let modes: f64 = field
        .modes()
        .iter()
        .map(|m| {
            let q = (-2.0 * l * m.frequency).exp();
            2.0 * m.amplitude.abs() * q.powf(j) / (1.0 - q)
        })
        .sum();
    let q: f64 = field.sources().iter().map(|s| s.strength.abs()).sum();
    if q == 0.0 {
        modes
    } else if terms < 2 {
        f64::INFINITY
    } else {
        // |P(a) − P(b)| ≤ |a−b|·sup|Pₓ| ≤ 2l·(q/π)/(2lj)², summed from J
        modes + q / PI / (2.0 * l * (j - 1.0))
    }
}

pub fn strip_dirichlet(field: &HalfPlaneField, l: f64, trunc: Truncation) -> Result<StripSeries> {
    ensure(l > 0.0 && l.is_finite(), || {
        format!("strip width must be positive, got {l}")
    })?;
    let (terms, tail) = trunc.resolve_decaying(|j| strip_tail(field, l, j))?;
    Ok(StripSeries {
        field: field.clone(),
        geometry: Geometry::Strip { l },
        l,
        terms,
        tail,
    })
}

impl StripSeries {
    pub fn value(&self, x: f64, y: f64) -> f64 {
        let l = self.l;
        (0..self.terms)
            .map(|j| {
                let s = 2.0 * l * j as f64;
                self.field.value(x + s, y) - self.field.value(2.0 * l - x + s, y)
            })
            .sum()
    }

    pub fn dx(&self, x: f64, y: f64) -> f64 {
        let l = self.l;
        (0..self.terms)
            .map(|j| {
                let s = 2.0 * l * j as f64;
                self.field.dx(x + s, y) + self.field.dx(2.0 * l - x + s, y)
            })
            .sum()
    }
}

impl LayeredSolution for StripSeries {
    fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    fn eval_in(&self, region: Region, p: Point2) -> f64 {
        match region {
            Region::Layer1 => self.value(p.x, p.y),
            _ => f64::NAN,
        }
    }

    fn flux_in(&self, region: Region, p: Point2) -> Option<f64> {
        (region == Region::Layer1).then(|| self.dx(p.x, p.y))
    }

    fn tail_bound(&self) -> f64 {
        self.tail
    }

    fn terms(&self) -> usize {
        self.terms
    }
}

/// Coupled disk:
/// `u₁ = Σ ρ^j [û(rR^{2j}, θ) − ρ·û(R^{2j+2}/r, θ)]` on the shell,
/// `u₂ = (2k/(k+1)) Σ ρ^j û(rR^{2j}, θ)` on `r < R`.
#[derive(Debug, Clone)]
pub struct CoupledDiskSeries {
    field: DiskField,
    geometry: Geometry,
    cfg: RadialLayerConfig,
    terms: usize,
    tail: f64,
}

pub fn disk_coupled(
    field: &DiskField,
    cfg: RadialLayerConfig,
    trunc: Truncation,
) -> Result<CoupledDiskSeries> {
    let rho = cfg.rho();
    let sup = match trunc {
        Truncation::TailTol {
            sup_bound: Some(m), ..
        } => m,
        _ => field.sup_bound(),
    };
    let (terms, tail) = trunc.resolve_geometric(rho, (1.0 + rho.abs()) * sup)?;
    Ok(CoupledDiskSeries {
        field: field.clone(),
        geometry: Geometry::DiskCoupled(cfg),
        cfg,
        terms,
        tail,
    })
}

impl CoupledDiskSeries {
    pub fn u1(&self, r: f64, theta: f64) -> f64 {
        let (rho, r2) = (self.cfg.rho(), self.cfg.radius().powi(2));
        let mut w = 1.0;
        let mut scale = 1.0; // R^{2j}
        let mut acc = 0.0;
        for _ in 0..self.terms {
            let direct = self.field.value(r * scale, theta);
            let image = self.field.value(scale * r2 / r, theta);
            acc += w * (direct - rho * image);
            w *= rho;
            scale *= r2;
        }
        acc
    }

    pub fn u2(&self, r: f64, theta: f64) -> f64 {
        let (rho, r2, k) = (self.cfg.rho(), self.cfg.radius().powi(2), self.cfg.k());
        let mut w = 1.0;
        let mut scale = 1.0;
        let mut acc = 0.0;
        for _ in 0..self.terms {
            acc += w * self.field.value(r * scale, theta);
            w *= rho;
            scale *= r2;
        }
        2.0 * k / (k + 1.0) * acc
    }

    /// `L₀u₁`; inversion flips the sign of `L₀`.
    pub fn l0_u1(&self, r: f64, theta: f64) -> f64 {
        let (rho, r2) = (self.cfg.rho(), self.cfg.radius().powi(2));
        let mut w = 1.0;
        let mut scale = 1.0;
        let mut acc = 0.0;
        for _ in 0..self.terms {
            let direct = self.field.l0(r * scale, theta);
            let image = self.field.l0(scale * r2 / r, theta);
            acc += w * (direct + rho * image);
            w *= rho;
            scale *= r2;
        }
        acc
    }

    pub fn l0_u2(&self, r: f64, theta: f64) -> f64 {
        let (rho, r2, k) = (self.cfg.rho(), self.cfg.radius().powi(2), self.cfg.k());
        let mut w = 1.0;
        let mut scale = 1.0;
        let mut acc = 0.0;
        for _ in 0..self.terms {
            acc += w * self.field.l0(r * scale, theta);
            w *= rho;
            scale *= r2;
        }
        2.0 * k / (k + 1.0) * acc
    }

    pub fn config(&self) -> &RadialLayerConfig {
        &self.cfg
    }
}

impl LayeredSolution for CoupledDiskSeries {
    fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    fn eval_in(&self, region: Region, p: Point2) -> f64 {
        let q = p.to_polar();
        match region {
            Region::Layer1 => self.u1(q.r, q.theta),
            Region::Layer2 => self.u2(q.r, q.theta),
            Region::Outside => f64::NAN,
        }
    }

    fn flux_in(&self, region: Region, p: Point2) -> Option<f64> {
        let q = p.to_polar();
        match region {
            Region::Layer1 => Some(self.l0_u1(q.r, q.theta)),
            Region::Layer2 => Some(self.l0_u2(q.r, q.theta)),
            Region::Outside => None,
        }
    }

    fn tail_bound(&self) -> f64 {
        self.tail
    }

    fn terms(&self) -> usize {
        self.terms
    }
}

/// Dirichlet annulus: `u = Σ [û(rR^{2j}, θ) − û(R^{2j+2}/r, θ)]`.
///
/// Each bracket is summed as a pair, so the constant mode cancels term by
/// term and contributes nothing.
#[derive(Debug, Clone)]
pub struct AnnulusSeries {
    field: DiskField,
    geometry: Geometry,
    radius: f64,
    terms: usize,
    tail: f64,
}

fn annulus_tail(field: &DiskField, radius: f64, terms: usize) -> f64 {
    let a = field.cos_coeffs();
    let b = field.sin_coeffs();
    (1..a.len())
        .map(|n| {
            let q = radius.powi(2 * n as i32);
            2.0 * a[n].hypot(b[n]) * q.powf(terms as f64) / (1.0 - q)
        })
        .sum()
}

pub fn annulus_dirichlet(
    field: &DiskField,
    radius: f64,
    trunc: Truncation,
) -> Result<AnnulusSeries> {
    ensure(radius > 0.0 && radius < 1.0, || {
        format!("inner radius R must lie in (0, 1), got {radius}")
    })?;
    let (terms, tail) = trunc.resolve_decaying(|j| annulus_tail(field, radius, j))?;
    Ok(AnnulusSeries {
        field: field.clone(),
        geometry: Geometry::Annulus { radius },
        radius,
        terms,
        tail,
    })
}

impl AnnulusSeries {
    pub fn value(&self, r: f64, theta: f64) -> f64 {
        let r2 = self.radius * self.radius;
        let mut scale = 1.0;
        let mut acc = 0.0;
        for _ in 0..self.terms {
            acc += self.field.value(r * scale, theta) - self.field.value(scale * r2 / r, theta);
            scale *= r2;
        }
        acc
    }

    pub fn l0(&self, r: f64, theta: f64) -> f64 {
        let r2 = self.radius * self.radius;
        let mut scale = 1.0;
        let mut acc = 0.0;
        for _ in 0..self.terms {
            acc += self.field.l0(r * scale, theta) + self.field.l0(scale * r2 / r, theta);
            scale *= r2;
        }
        acc
    }
}

impl LayeredSolution for AnnulusSeries {
    fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    fn eval_in(&self, region: Region, p: Point2) -> f64 {
        let q = p.to_polar();
        match region {
            Region::Layer1 => self.value(q.r, q.theta),
            _ => f64::NAN,
        }
    }

    fn flux_in(&self, region: Region, p: Point2) -> Option<f64> {
        let q = p.to_polar();
        (region == Region::Layer1).then(|| self.l0(q.r, q.theta))
    }

    fn tail_bound(&self) -> f64 {
        self.tail
    }

    fn terms(&self) -> usize {
        self.terms
    }
}
