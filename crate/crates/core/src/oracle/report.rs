//! Pointwise verification of a layered solution against the conditions of
//! its problem: harmonicity in each layer, the outer and inner boundary data,
//! and value/flux continuity across the interface.

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{ensure, Result};
use crate::geometry::{Point2, PolarPoint};
use crate::harmonic::{richardson_laplacian_residual, FnField};
use crate::transform::{Geometry, LayeredSolution, Region};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePlan {
    pub seed: u64,
    pub interior: usize,
    pub boundary: usize,
    pub interface: usize,
    /// Stencil spacing for the PDE residual and one-sided flux differences,
    /// capped at an eighth of the layer thickness.
    pub step: f64,
    /// Planar samples use `|y| ≤ half_width`.
    pub half_width: f64,
    /// Layer-2 samples of the half-plane use `l < x ≤ l + depth`.
    pub depth: f64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            seed: 0,
            interior: 100,
            boundary: 50,
            interface: 50,
            step: 5e-3,
            half_width: 3.0,
            depth: 2.0,
        }
    }
}

impl SamplePlan {
    fn validate(&self) -> Result<()> {
        ensure(self.interior > 0 && self.boundary > 0, || {
            "sample counts must be positive".into()
        })?;
        ensure(self.step > 0.0 && self.step.is_finite(), || {
            format!("stencil step must be positive, got {}", self.step)
        })?;
        ensure(self.half_width > 0.0 && self.depth > 0.0, || {
            "sampling window must be non-empty".into()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ErrorReport {
    pub pde_residual: f64,
    pub boundary_mismatch: f64,
    pub value_jump: Option<f64>,
    pub flux_jump: Option<f64>,
    pub lemma_bound: Option<f64>,
    pub interior_samples: usize,
    pub boundary_samples: usize,
    pub interface_samples: usize,
}

/// Fourth-order one-sided derivative at `t0` from samples `f(t0 + dir·j·h)`.
fn one_sided(f: impl Fn(f64) -> f64, t0: f64, h: f64, dir: f64) -> f64 {
    let v: Vec<f64> = (0..5).map(|j| f(t0 + dir * j as f64 * h)).collect();
    dir * (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h)
}

fn interval(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        rng.gen_range(lo..=hi)
    } else {
        0.5 * (lo + hi)
    }
}

fn polar(r: f64, theta: f64) -> Point2 {
    PolarPoint { r, theta }.to_cartesian()
}

/// A random point of `region`, at least `margin` away from its edges.
fn sample_interior(
    geometry: &Geometry,
    region: Region,
    rng: &mut StdRng,
    margin: f64,
    plan: &SamplePlan,
) -> Point2 {
    let hw = plan.half_width;
    let theta = rng.gen_range(0.0..2.0 * PI);
    match (*geometry, region) {
        (Geometry::HalfPlaneCoupled(c), Region::Layer2) => Point2 {
            x: interval(rng, c.l() + margin, c.l() + plan.depth),
            y: interval(rng, -hw, hw),
        },
        (Geometry::DiskCoupled(c), Region::Layer2) => {
            // area-uniform inside the inner disk
            let r = (c.radius() - margin) * rng.gen_range(0.0f64..1.0).sqrt();
            polar(r.max(margin), theta)
        }
        (Geometry::DiskCoupled(c), _) => {
            polar(interval(rng, c.radius() + margin, 1.0 - margin), theta)
        }
        (Geometry::Annulus { radius }, _) => {
            polar(interval(rng, radius + margin, 1.0 - margin), theta)
        }
        (g, _) => Point2 {
            x: interval(rng, margin, g.thickness() - margin),
            y: interval(rng, -hw, hw),
        },
    }
}

/// Residual report of `sol` against outer boundary data `g` (on `x = 0` or
/// `r = 1`). Interface fluxes use the solution's closed form when it has
/// one and one-sided differences otherwise.
pub fn residual_report<S: LayeredSolution + ?Sized>(
    sol: &S,
    g: impl Fn(Point2) -> f64,
    plan: &SamplePlan,
) -> Result<ErrorReport> {
    plan.validate()?;
    let geometry = *sol.geometry();
    let mut rng = StdRng::seed_from_u64(plan.seed);
    let thickness = geometry.thickness();
    let s = plan.step.min(thickness / 8.0);
    let margin = 2.0 * s;
    let hw = plan.half_width;

    let regions: &[Region] = match geometry {
        Geometry::HalfPlaneCoupled(_) | Geometry::DiskCoupled(_) => {
            &[Region::Layer1, Region::Layer2]
        }
        _ => &[Region::Layer1],
    };
    let mut report = ErrorReport::default();

    for (idx, &region) in regions.iter().enumerate() {
        let share =
            plan.interior / regions.len() + usize::from(idx < plan.interior % regions.len());
        let a = geometry.anisotropy(region);
        let field = FnField::everywhere(|p: Point2| sol.eval_in(region, p));
        for _ in 0..share {
            let p = sample_interior(&geometry, region, &mut rng, margin, plan);
            let r = richardson_laplacian_residual(&field, p, s, a)?;
            report.pde_residual = report.pde_residual.max(r.abs());
        }
        report.interior_samples += share;
    }

    for _ in 0..plan.boundary {
        let (outer, inner) = match geometry {
            Geometry::HalfPlaneCoupled(_) => (
                Point2 {
                    x: 0.0,
                    y: interval(&mut rng, -hw, hw),
                },
                None,
            ),
            Geometry::Strip { l } => {
                let y = interval(&mut rng, -hw, hw);
                (Point2 { x: 0.0, y }, Some(Point2 { x: l, y }))
            }
            Geometry::DiskCoupled(_) => (polar(1.0, rng.gen_range(0.0..2.0 * PI)), None),
            Geometry::Annulus { radius } => {
                let t = rng.gen_range(0.0..2.0 * PI);
                (polar(1.0, t), Some(polar(radius, t)))
            }
        };
        let m = (sol.eval_in(Region::Layer1, outer) - g(outer)).abs();
        report.boundary_mismatch = report.boundary_mismatch.max(m);
        if let Some(q) = inner {
            report.boundary_mismatch = report
                .boundary_mismatch
                .max(sol.eval_in(Region::Layer1, q).abs());
        }
    }
    report.boundary_samples = plan.boundary;

    if let Some(k) = geometry.coupling() {
        ensure(plan.interface > 0, || {
            "interface sample count must be positive".into()
        })?;
        let (mut vj, mut fj) = (0.0f64, 0.0f64);
        for _ in 0..plan.interface {
            let (p, flux1, flux2) = match geometry {
                Geometry::HalfPlaneCoupled(c) => {
                    let y = interval(&mut rng, -hw, hw);
                    let p = Point2 { x: c.l(), y };
                    let f = |region: Region, dir: f64| {
                        sol.flux_in(region, p).unwrap_or_else(|| {
                            one_sided(|x| sol.eval_in(region, Point2 { x, y }), c.l(), s, dir)
                        })
                    };
                    (p, f(Region::Layer1, -1.0), f(Region::Layer2, 1.0))
                }
                Geometry::DiskCoupled(c) => {
                    let t = rng.gen_range(0.0..2.0 * PI);
                    let p = polar(c.radius(), t);
                    let f = |region: Region, dir: f64| {
                        sol.flux_in(region, p).unwrap_or_else(|| {
                            let d =
                                one_sided(|r| sol.eval_in(region, polar(r, t)), c.radius(), s, dir);
                            c.radius() * d
                        })
                    };
                    (p, f(Region::Layer1, 1.0), f(Region::Layer2, -1.0))
                }
                _ => unreachable!(),
            };
            vj = vj.max((sol.eval_in(Region::Layer1, p) - sol.eval_in(Region::Layer2, p)).abs());
            fj = fj.max((k * flux1 - flux2).abs());
        }
        report.value_jump = Some(vj);
        report.flux_jump = Some(fj);
        report.interface_samples = plan.interface;
    }
    Ok(report)
}
