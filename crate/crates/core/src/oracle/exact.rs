//! Closed-form solutions of the four problems for a single mode.

use crate::error::{ensure, Result};
use crate::geometry::Point2;
use crate::harmonic::PlanarMode;
use crate::transform::{Geometry, LayeredSolution, Region};

/// Boundary mode: planar `A·e^{−ωx}cos(ωy+φ)` or disk `r^n(a·cos nθ + b·sin nθ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    Planar(PlanarMode),
    Disk { n: usize, cos: f64, sin: f64 },
}

#[derive(Debug, Clone, Copy)]
pub struct ModeExact {
    geometry: Geometry,
    mode: Mode,
}

pub fn mode_exact(geometry: Geometry, mode: Mode) -> Result<ModeExact> {
    match (geometry, mode) {
        (Geometry::Strip { .. } | Geometry::HalfPlaneCoupled(_), Mode::Planar(m)) => {
            ensure(m.frequency > 0.0, || {
                "mode frequency must be positive".into()
            })?;
        }
        (Geometry::Annulus { .. } | Geometry::DiskCoupled(_), Mode::Disk { n, .. }) => {
            ensure(n >= 1, || {
                "the constant disk mode has no closed form for these problems".into()
            })?;
        }
        _ => {
            return Err(crate::Error::Validation(
                "mode kind does not match the geometry".into(),
            ))
        }
    }
    Ok(ModeExact { geometry, mode })
}

impl ModeExact {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Value and normal flux (`∂ₓ` or `L₀`) of the given region's formula.
    fn eval_with_flux(&self, region: Region, p: Point2) -> (f64, f64) {
        match (self.geometry, self.mode) {
            (Geometry::Strip { l }, Mode::Planar(m)) => {
                let w = m.frequency;
                let c = m.amplitude * (w * p.y + m.phase).cos() / (l * w).sinh();
                (c * ((l - p.x) * w).sinh(), -c * w * ((l - p.x) * w).cosh())
            }
            (Geometry::HalfPlaneCoupled(cfg), Mode::Planar(m)) => {
                let (l, rho, k, w) = (cfg.l(), cfg.rho(), cfg.k(), m.frequency);
                let c =
                    m.amplitude * (w * p.y + m.phase).cos() / (1.0 - rho * (-2.0 * l * w).exp());
                match region {
                    Region::Layer1 => {
                        let (a, b) = ((-w * p.x).exp(), rho * (-w * (2.0 * l - p.x)).exp());
                        (c * (a - b), -c * w * (a + b))
                    }
                    _ => {
                        let s = cfg.a1() / cfg.a2();
                        let e = (-w * (s * (p.x - l) + l)).exp();
                        let g = 2.0 * k / (k + 1.0) * c;
                        (g * e, -g * w * s * e)
                    }
                }
            }
            (Geometry::Annulus { radius }, Mode::Disk { n, cos, sin }) => {
                let q = p.to_polar();
                let nf = n as f64;
                let t = cos * (nf * q.theta).cos() + sin * (nf * q.theta).sin();
                let (a, b) = (q.r.powf(nf), (radius * radius / q.r).powf(nf));
                let d = 1.0 - radius.powf(2.0 * nf);
                ((a - b) * t / d, nf * (a + b) * t / d)
            }
            (Geometry::DiskCoupled(cfg), Mode::Disk { n, cos, sin }) => {
                let q = p.to_polar();
                let nf = n as f64;
                let (r2, rho, k) = (cfg.radius().powi(2), cfg.rho(), cfg.k());
                let t = cos * (nf * q.theta).cos() + sin * (nf * q.theta).sin();
                let d = 1.0 - rho * r2.powf(nf);
                match region {
                    Region::Layer1 => {
                        let (a, b) = (q.r.powf(nf), rho * (r2 / q.r).powf(nf));
                        ((a - b) * t / d, nf * (a + b) * t / d)
                    }
                    _ => {
                        let g = 2.0 * k / (k + 1.0) * q.r.powf(nf) * t / d;
                        (g, nf * g)
                    }
                }
            }
            _ => (f64::NAN, f64::NAN),
        }
    }
}

impl LayeredSolution for ModeExact {
    fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    fn eval_in(&self, region: Region, p: Point2) -> f64 {
        if region == Region::Outside {
            return f64::NAN;
        }
        self.eval_with_flux(region, p).0
    }

    fn flux_in(&self, region: Region, p: Point2) -> Option<f64> {
        (region != Region::Outside).then(|| self.eval_with_flux(region, p).1)
    }
}
