//! Leading-order approximations of the layered solutions through the Robin
//! and Neumann link fields, for thin layers and extreme contrast.
//!
//! Each approximator can also be evaluated at a corrected order, where every
//! image ladder is summed with the Euler–Maclaurin expansion instead of its
//! leading integral.

use crate::asymptotics::euler_maclaurin::{ladder_radial_asym, ladder_ray_asym, log_step, EMOrder};
use crate::asymptotics::links::{
    neumann_link_disk, neumann_link_halfplane, robin_link_disk, robin_link_halfplane,
    PlanarRobinField,
};
use crate::asymptotics::profile::FnProfile;
use crate::asymptotics::variation::{total_variation, total_variation_ray};
use crate::error::{ensure, Error, Result};
use crate::geometry::Point2;
use crate::harmonic::{DiskField, HalfPlaneField};
use crate::transform::{Geometry, LayeredSolution, PlanarLayerConfig, RadialLayerConfig, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ApproxOrder {
    #[default]
    Leading,
    Corrected(EMOrder),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContrastBranch {
    /// `0 < k < 1`, `ρ > 0`
    SmallK,
    /// `k > 1`, `ρ < 0`
    LargeK,
}

fn branch_for(k: f64) -> Result<ContrastBranch> {
    if k > 0.0 && k < 1.0 {
        Ok(ContrastBranch::SmallK)
    } else if k > 1.0 {
        Ok(ContrastBranch::LargeK)
    } else {
        Err(Error::Validation(format!(
            "the asymptotic branches need k ≠ 1, got k = {k}"
        )))
    }
}

/// `Σ ρ^j f(s + 2lj)` evaluated at the requested order along the line `y`.
fn planar_ladder(
    field: &HalfPlaneField,
    s: f64,
    y: f64,
    l: f64,
    rho: f64,
    k: EMOrder,
) -> Result<f64> {
    match field.ray_profile(y) {
        Some(p) => ladder_ray_asym(&p, s, l, rho, k),
        None => ladder_ray_asym(&FnProfile::new(|t| field.value(t, y)), s, l, rho, k),
    }
}

fn radial_ladder(
    field: &DiskField,
    r: f64,
    theta: f64,
    radius: f64,
    rho: f64,
    k: EMOrder,
) -> Result<f64> {
    ladder_radial_asym(&field.ray_profile(theta), r, radius, rho, k)
}

/// Starting window for variation estimates along a planar ray.
fn ray_window(field: &HalfPlaneField, h: f64) -> f64 {
    let w = field
        .modes()
        .iter()
        .map(|m| m.frequency)
        .fold(h.abs(), f64::max);
    if w > 0.0 {
        4.0 / w
    } else {
        1.0
    }
}

/// Coupled half-plane approximated through `û₃`.
#[derive(Debug, Clone)]
pub struct CoupledHalfPlaneAsym {
    field: HalfPlaneField,
    u3: PlanarRobinField,
    cfg: PlanarLayerConfig,
    geometry: Geometry,
    branch: ContrastBranch,
    h: f64,
    order: ApproxOrder,
}

/// Small contrast: `u₂ ≈ (1−ρ)û₃/(2l)`, `u₁ ≈ (û₃(x) − ρ·û₃(2l−x))/(2l)`.
pub fn thm1_halfplane_small_k(
    field: &HalfPlaneField,
    cfg: PlanarLayerConfig,
) -> Result<CoupledHalfPlaneAsym> {
    ensure(branch_for(cfg.k())? == ContrastBranch::SmallK, || {
        format!("small-k branch needs 0 < k < 1, got k = {}", cfg.k())
    })?;
    CoupledHalfPlaneAsym::new(field, cfg)
}

/// Large contrast, `q = |ρ|`:
/// `u₂ ≈ ((1+q)/(4l))·(û₃(x) − q·û₃(x+2l))`,
/// `u₁ ≈ (1/(4l))·[û₃(x) − q·û₃(x+2l) + q·(û₃(2l−x) − q·û₃(4l−x))]`.
pub fn thm2_halfplane_large_k(
    field: &HalfPlaneField,
    cfg: PlanarLayerConfig,
) -> Result<CoupledHalfPlaneAsym> {
    ensure(branch_for(cfg.k())? == ContrastBranch::LargeK, || {
        format!("large-k branch needs k > 1, got k = {}", cfg.k())
    })?;
    CoupledHalfPlaneAsym::new(field, cfg)
}

impl CoupledHalfPlaneAsym {
    fn new(field: &HalfPlaneField, cfg: PlanarLayerConfig) -> Result<Self> {
        let branch = branch_for(cfg.k())?;
        let h = cfg.rho().abs().ln() / (2.0 * cfg.l());
        Ok(Self {
            field: field.clone(),
            u3: robin_link_halfplane(field, h)?,
            cfg,
            geometry: Geometry::HalfPlaneCoupled(cfg),
            branch,
            h,
            order: ApproxOrder::Leading,
        })
    }

    pub fn with_order(mut self, order: ApproxOrder) -> Self {
        self.order = order;
        self
    }

    pub fn branch(&self) -> ContrastBranch {
        self.branch
    }

    pub fn robin_h(&self) -> f64 {
        self.h
    }

    pub fn robin_field(&self) -> &PlanarRobinField {
        &self.u3
    }

    fn layer2_arg(&self, x: f64) -> f64 {
        self.cfg.stretch() * (x - self.cfg.l()) + self.cfg.l()
    }

    /// Leading approximation of `Σ ρ^j f(s + 2lj)` and its `s`-derivative.
    fn lead(&self, s: f64, y: f64, deriv: bool) -> f64 {
        let l = self.cfg.l();
        let g = |t: f64| {
            if deriv {
                self.u3.dx(t, y)
            } else {
                self.u3.value(t, y)
            }
        };
        match self.branch {
            ContrastBranch::SmallK => g(s) / (2.0 * l),
            ContrastBranch::LargeK => {
                let q = self.cfg.rho().abs();
                (g(s) - q * g(s + 2.0 * l)) / (4.0 * l)
            }
        }
    }

    fn ladder(&self, s: f64, y: f64) -> Result<f64> {
        match self.order {
            ApproxOrder::Leading => Ok(self.lead(s, y, false)),
            ApproxOrder::Corrected(k) => {
                planar_ladder(&self.field, s, y, self.cfg.l(), self.cfg.rho(), k)
            }
        }
    }

    pub fn u1(&self, x: f64, y: f64) -> Result<f64> {
        let l = self.cfg.l();
        Ok(self.ladder(x, y)? - self.cfg.rho() * self.ladder(2.0 * l - x, y)?)
    }

    pub fn u2(&self, x: f64, y: f64) -> Result<f64> {
        Ok((1.0 - self.cfg.rho()) * self.ladder(self.layer2_arg(x), y)?)
    }

    /// Variation bound on `|approx − exact|`, small-contrast branch only.
    pub fn bound_at(&self, region: Region, p: Point2) -> Result<f64> {
        ensure(self.branch == ContrastBranch::SmallK, || {
            "a variation bound is only available for the small-k branch".into()
        })?;
        let rho = self.cfg.rho();
        let v = |s: f64| -> Result<f64> {
            let h = self.h;
            let g = |e: f64| (h * e).exp() * self.field.value(s + e, p.y);
            Ok(total_variation_ray(g, ray_window(&self.field, h))?.value)
        };
        match region {
            Region::Layer1 => Ok(v(p.x)? + rho * v(2.0 * self.cfg.l() - p.x)?),
            Region::Layer2 => Ok((1.0 - rho) * v(self.layer2_arg(p.x))?),
            Region::Outside => Ok(0.0),
        }
    }
}

impl LayeredSolution for CoupledHalfPlaneAsym {
    fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    fn eval_in(&self, region: Region, p: Point2) -> f64 {
        match region {
            Region::Layer1 => self.u1(p.x, p.y).unwrap_or(f64::NAN),
            Region::Layer2 => self.u2(p.x, p.y).unwrap_or(f64::NAN),
            Region::Outside => f64::NAN,
        }
    }

    fn flux_in(&self, region: Region, p: Point2) -> Option<f64> {
        if self.order != ApproxOrder::Leading {
            return None;
        }
        let (l, rho) = (self.cfg.l(), self.cfg.rho());
        match region {
            Region::Layer1 => {
                Some(self.lead(p.x, p.y, true) + rho * self.lead(2.0 * l - p.x, p.y, true))
            }
            Region::Layer2 => {
                Some((1.0 - rho) * self.cfg.stretch() * self.lead(self.layer2_arg(p.x), p.y, true))
            }
            Region::Outside => None,
        }
    }
}

/// Dirichlet strip through the Neumann link: `u ≈ (û₂(2l−x) − û₂(x))/(2l)`
/// with `∂ₓû₂ = û`.
#[derive(Debug, Clone)]
pub struct StripAsym {
    field: HalfPlaneField,
    u2: HalfPlaneField,
    l: f64,
    geometry: Geometry,
    order: ApproxOrder,
}

pub fn thm3_strip(field: &HalfPlaneField, l: f64) -> Result<StripAsym> {
    ensure(l > 0.0 && l.is_finite(), || {
        format!("strip width must be positive, got {l}")
    })?;
    Ok(StripAsym {
        field: field.clone(),
        u2: neumann_link_halfplane(field)?,
        l,
        geometry: Geometry::Strip { l },
        order: ApproxOrder::Leading,
    })
}

impl StripAsym {
    pub fn with_order(mut self, order: ApproxOrder) -> Self {
        self.order = order;
        self
    }

    pub fn neumann_field(&self) -> &HalfPlaneField {
        &self.u2
    }

    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        let l = self.l;
        match self.order {
            ApproxOrder::Leading => {
                Ok((self.u2.value(2.0 * l - x, y) - self.u2.value(x, y)) / (2.0 * l))
            }
            ApproxOrder::Corrected(k) => Ok(planar_ladder(&self.field, x, y, l, 1.0, k)?
                - planar_ladder(&self.field, 2.0 * l - x, y, l, 1.0, k)?),
        }
    }
}

impl LayeredSolution for StripAsym {
    fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    fn eval_in(&self, region: Region, p: Point2) -> f64 {
        match region {
            Region::Layer1 => self.value(p.x, p.y).unwrap_or(f64::NAN),
            _ => f64::NAN,
        }
    }

    fn flux_in(&self, region: Region, p: Point2) -> Option<f64> {
        (region == Region::Layer1 && self.order == ApproxOrder::Leading)
            .then(|| -(self.u2.dx(2.0 * self.l - p.x, p.y) + self.u2.dx(p.x, p.y)) / (2.0 * self.l))
    }
}

/// Coupled disk approximated through `û₃`, with `s = ln(1/R²)`.
#[derive(Debug, Clone)]
pub struct CoupledDiskAsym {
    field: DiskField,
    u3: DiskField,
    cfg: RadialLayerConfig,
    geometry: Geometry,
    branch: ContrastBranch,
    h: f64,
    order: ApproxOrder,
}

/// Small contrast: `u₁ ≈ (û₃(r) − ρ·û₃(R²/r))/s`, `u₂ ≈ (1−ρ)·û₃/s`.
pub fn thm4_disk_small_k(field: &DiskField, cfg: RadialLayerConfig) -> Result<CoupledDiskAsym> {
    ensure(branch_for(cfg.k())? == ContrastBranch::SmallK, || {
        format!("small-k branch needs 0 < k < 1, got k = {}", cfg.k())
    })?;
    CoupledDiskAsym::new(field, cfg)
}

/// Large contrast, `q = (k−1)/(k+1) = R^{2h}`:
/// `u₂ ≈ ((1+q)/(2s))·(û₃(r) − q·û₃(R²r))`,
/// `u₁ ≈ (1/(2s))·[û₃(r) − q·û₃(R²r) + q·(û₃(R²/r) − q·û₃(R⁴/r))]`.
pub fn thm4_disk_large_k(field: &DiskField, cfg: RadialLayerConfig) -> Result<CoupledDiskAsym> {
    ensure(branch_for(cfg.k())? == ContrastBranch::LargeK, || {
        format!("large-k branch needs k > 1, got k = {}", cfg.k())
    })?;
    CoupledDiskAsym::new(field, cfg)
}

impl CoupledDiskAsym {
    fn new(field: &DiskField, cfg: RadialLayerConfig) -> Result<Self> {
        let branch = branch_for(cfg.k())?;
        let h = cfg.rho().abs().ln() / (2.0 * cfg.radius().ln());
        Ok(Self {
            field: field.clone(),
            u3: robin_link_disk(field, h)?,
            cfg,
            geometry: Geometry::DiskCoupled(cfg),
            branch,
            h,
            order: ApproxOrder::Leading,
        })
    }

    pub fn with_order(mut self, order: ApproxOrder) -> Self {
        self.order = order;
        self
    }

    pub fn branch(&self) -> ContrastBranch {
        self.branch
    }

    pub fn robin_h(&self) -> f64 {
        self.h
    }

    pub fn robin_field(&self) -> &DiskField {
        &self.u3
    }

    fn lead(&self, r: f64, theta: f64, flux: bool) -> f64 {
        let s = log_step(self.cfg.radius()).expect("radius validated by config");
        let r2 = self.cfg.radius().powi(2);
        let g = |t: f64| {
            if flux {
                self.u3.l0(t, theta)
            } else {
                self.u3.value(t, theta)
            }
        };
        match self.branch {
            ContrastBranch::SmallK => g(r) / s,
            ContrastBranch::LargeK => {
                let q = self.cfg.rho().abs();
                (g(r) - q * g(r2 * r)) / (2.0 * s)
            }
        }
    }

    fn ladder(&self, r: f64, theta: f64) -> Result<f64> {
        match self.order {
            ApproxOrder::Leading => Ok(self.lead(r, theta, false)),
            ApproxOrder::Corrected(k) => {
                radial_ladder(&self.field, r, theta, self.cfg.radius(), self.cfg.rho(), k)
            }
        }
    }

    pub fn u1(&self, r: f64, theta: f64) -> Result<f64> {
        let r2 = self.cfg.radius().powi(2);
        Ok(self.ladder(r, theta)? - self.cfg.rho() * self.ladder(r2 / r, theta)?)
    }

    pub fn u2(&self, r: f64, theta: f64) -> Result<f64> {
        Ok((1.0 - self.cfg.rho()) * self.ladder(r, theta)?)
    }

    /// Variation bound on `|approx − exact|`, small-contrast branch only.
    pub fn bound_at(&self, region: Region, p: Point2) -> Result<f64> {
        ensure(self.branch == ContrastBranch::SmallK, || {
            "a variation bound is only available for the small-k branch".into()
        })?;
        let q = p.to_polar();
        let rho = self.cfg.rho();
        let h = self.h;
        let v = |r: f64| -> Result<f64> {
            let g = |e: f64| e.powf(h) * self.field.value(r * e, q.theta);
            Ok(total_variation(g, 0.0, 1.0)?.value)
        };
        let r2 = self.cfg.radius().powi(2);
        match region {
            Region::Layer1 => Ok(v(q.r)? + rho * v(r2 / q.r)?),
            Region::Layer2 => Ok((1.0 - rho) * v(q.r)?),
            Region::Outside => Ok(0.0),
        }
    }
}

impl LayeredSolution for CoupledDiskAsym {
    fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    fn eval_in(&self, region: Region, p: Point2) -> f64 {
        let q = p.to_polar();
        match region {
            Region::Layer1 => self.u1(q.r, q.theta).unwrap_or(f64::NAN),
            Region::Layer2 => self.u2(q.r, q.theta).unwrap_or(f64::NAN),
            Region::Outside => f64::NAN,
        }
    }

    fn flux_in(&self, region: Region, p: Point2) -> Option<f64> {
        if self.order != ApproxOrder::Leading {
            return None;
        }
        let q = p.to_polar();
        let rho = self.cfg.rho();
        let r2 = self.cfg.radius().powi(2);
        match region {
            Region::Layer1 => {
                Some(self.lead(q.r, q.theta, true) + rho * self.lead(r2 / q.r, q.theta, true))
            }
            Region::Layer2 => Some((1.0 - rho) * self.lead(q.r, q.theta, true)),
            Region::Outside => None,
        }
    }
}

/// Dirichlet annulus through the Neumann link:
/// `u ≈ (û₂(r) − û₂(R²/r))/ln(1/R²)` with `L₀û₂ = û`.
#[derive(Debug, Clone)]
pub struct AnnulusAsym {
    field: DiskField,
    u2: DiskField,
    radius: f64,
    geometry: Geometry,
    order: ApproxOrder,
}

pub fn thm5_annulus(field: &DiskField, radius: f64) -> Result<AnnulusAsym> {
    log_step(radius)?;
    Ok(AnnulusAsym {
        field: field.clone(),
        u2: neumann_link_disk(field)?,
        radius,
        geometry: Geometry::Annulus { radius },
        order: ApproxOrder::Leading,
    })
}

impl AnnulusAsym {
    pub fn with_order(mut self, order: ApproxOrder) -> Self {
        self.order = order;
        self
    }

    pub fn neumann_field(&self) -> &DiskField {
        &self.u2
    }

    pub fn value(&self, r: f64, theta: f64) -> Result<f64> {
        let r2 = self.radius * self.radius;
        match self.order {
            ApproxOrder::Leading => {
                let s = log_step(self.radius)?;
                Ok((self.u2.value(r, theta) - self.u2.value(r2 / r, theta)) / s)
            }
            ApproxOrder::Corrected(k) => {
                Ok(radial_ladder(&self.field, r, theta, self.radius, 1.0, k)?
                    - radial_ladder(&self.field, r2 / r, theta, self.radius, 1.0, k)?)
            }
        }
    }
}

impl LayeredSolution for AnnulusAsym {
    fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    fn eval_in(&self, region: Region, p: Point2) -> f64 {
        let q = p.to_polar();
        match region {
            Region::Layer1 => self.value(q.r, q.theta).unwrap_or(f64::NAN),
            _ => f64::NAN,
        }
    }

    fn flux_in(&self, region: Region, p: Point2) -> Option<f64> {
        if region != Region::Layer1 || self.order != ApproxOrder::Leading {
            return None;
        }
        let q = p.to_polar();
        let r2 = self.radius * self.radius;
        let s = log_step(self.radius).ok()?;
        Some((self.u2.l0(q.r, q.theta) + self.u2.l0(r2 / q.r, q.theta)) / s)
    }
}
