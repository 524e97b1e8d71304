//! Direct summation of the image ladders, used as the arbiter for every
//! approximation. Images are formed geometrically (mirror shifts, Kelvin
//! inversion of Cartesian points) rather than through the series module.

use crate::error::{ensure, Error, Result};
use crate::geometry::{kelvin_argument, Point2, PolarPoint};
use crate::harmonic::{DiskField, HalfPlaneField};
use crate::transform::{Geometry, LayeredSolution, Region};

/// Largest tail the arbiter accepts.
pub const ARBITER_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteSum {
    pub value: f64,
    pub terms: usize,
    pub tail: f64,
}

/// `Σ_{j<J} ρ^j t(j)` with the geometric tail `M·|ρ|^J/(1−|ρ|)`, where `M`
/// bounds `|t(j)|`.
pub fn brute_series(
    term: impl Fn(usize) -> f64,
    rho: f64,
    sup: f64,
    terms: usize,
) -> Result<BruteSum> {
    ensure(rho.abs() < 1.0, || {
        format!("|ρ| must be below 1, got {rho}")
    })?;
    ensure(terms >= 1, || "at least one term is required".into())?;
    let a = rho.abs();
    let tail = if a == 0.0 || sup == 0.0 {
        0.0
    } else {
        sup * a.powf(terms as f64) / (1.0 - a)
    };
    if tail > ARBITER_TOL {
        return Err(Error::ArbiterInsufficient { cap: terms, tail });
    }
    let mut w = 1.0;
    let mut value = 0.0;
    for j in 0..terms {
        value += w * term(j);
        w *= rho;
        if w == 0.0 {
            break;
        }
    }
    Ok(BruteSum { value, terms, tail })
}

/// `Σ_{j<J} t(j)` for a ladder whose tail from `J` on is `tail(J)`.
pub fn brute_unweighted(term: impl Fn(usize) -> f64, tail: f64, terms: usize) -> Result<BruteSum> {
    if !(tail <= ARBITER_TOL) {
        return Err(Error::ArbiterInsufficient { cap: terms, tail });
    }
    Ok(BruteSum {
        value: (0..terms).map(term).sum(),
        terms,
        tail,
    })
}

#[derive(Debug, Clone)]
enum Source {
    Planar(HalfPlaneField),
    Disk(DiskField),
}

/// Brute-force evaluator of any of the four layered problems.
#[derive(Debug, Clone)]
pub struct BruteSeries {
    source: Source,
    geometry: Geometry,
    terms: usize,
    tail: f64,
}

/// First power of two (or `cap`) whose tail is below `target`.
fn smallest_terms(tail: impl Fn(usize) -> f64, target: f64, cap: usize) -> Result<usize> {
    let mut j = 1;
    while tail(j) > target {
        if j >= cap {
            return Err(Error::ArbiterInsufficient {
                cap,
                tail: tail(cap),
            });
        }
        j = (j * 2).min(cap);
    }
    Ok(j)
}

impl BruteSeries {
    pub const DEFAULT_CAP: usize = 1 << 16;

    pub fn halfplane(field: &HalfPlaneField, geometry: Geometry, cap: usize) -> Result<Self> {
        ensure(!geometry.is_polar(), || {
            "planar field on a polar geometry".into()
        })?;
        if field.has_sources() && matches!(geometry, Geometry::Strip { .. }) {
            // the source ladder of the strip only decays like 1/J
            return Err(Error::ArbiterInsufficient {
                cap,
                tail: f64::INFINITY,
            });
        }
        let tail: Box<dyn Fn(usize) -> f64> = match geometry {
            Geometry::HalfPlaneCoupled(c) => {
                let (a, m) = (
                    c.rho().abs(),
                    (1.0 + c.rho().abs()) * field.sup_bound(2.0 * c.l()),
                );
                Box::new(move |j| {
                    if a == 0.0 {
                        0.0
                    } else {
                        m * a.powf(j as f64) / (1.0 - a)
                    }
                })
            }
            Geometry::Strip { l } => {
                let modes = field.modes().to_vec();
                Box::new(move |j| {
                    modes
                        .iter()
                        .map(|md| {
                            let q = (-2.0 * l * md.frequency).exp();
                            2.0 * md.amplitude.abs() * q.powf(j as f64) / (1.0 - q)
                        })
                        .sum()
                })
            }
            _ => unreachable!(),
        };
        let terms = smallest_terms(&tail, ARBITER_TOL, cap)?;
        Ok(Self {
            source: Source::Planar(field.clone()),
            geometry,
            terms,
            tail: tail(terms),
        })
    }

    pub fn disk(field: &DiskField, geometry: Geometry, cap: usize) -> Result<Self> {
        ensure(geometry.is_polar(), || {
            "disk field on a planar geometry".into()
        })?;
        let tail: Box<dyn Fn(usize) -> f64> = match geometry {
            Geometry::DiskCoupled(c) => {
                let (a, m) = (c.rho().abs(), (1.0 + c.rho().abs()) * field.sup_bound());
                Box::new(move |j| {
                    if a == 0.0 {
                        0.0
                    } else {
                        m * a.powf(j as f64) / (1.0 - a)
                    }
                })
            }
            Geometry::Annulus { radius } => {
                let f = field.clone();
                Box::new(move |j| {
                    (1..f.cos_coeffs().len())
                        .map(|n| {
                            let q = radius.powi(2 * n as i32);
                            let c = f.cos_coeffs()[n].hypot(f.sin_coeffs()[n]);
                            2.0 * c * q.powf(j as f64) / (1.0 - q)
                        })
                        .sum()
                })
            }
            _ => unreachable!(),
        };
        let terms = smallest_terms(&tail, ARBITER_TOL, cap)?;
        Ok(Self {
            source: Source::Disk(field.clone()),
            geometry,
            terms,
            tail: tail(terms),
        })
    }

    fn planar(&self) -> &HalfPlaneField {
        match &self.source {
            Source::Planar(f) => f,
            Source::Disk(_) => unreachable!(),
        }
    }

    fn disk_field(&self) -> &DiskField {
        match &self.source {
            Source::Disk(f) => f,
            Source::Planar(_) => unreachable!(),
        }
    }

    fn planar_eval(&self, x: f64, y: f64) -> f64 {
        self.planar().value(x, y)
    }

    /// `û` at the Cartesian point obtained by scaling `p` by `scale`, or at
    /// its Kelvin image in the circle of radius² `rho2`.
    fn disk_eval(&self, p: PolarPoint, scale: f64, rho2: Option<f64>) -> f64 {
        let q = match rho2 {
            Some(r2) => kelvin_argument(p, r2).expect("r > 0 on the shell"),
            None => PolarPoint {
                r: p.r * scale,
                theta: p.theta,
            },
        };
        let c = q.to_cartesian();
        let polar = c.to_polar();
        self.disk_field().value(polar.r, polar.theta)
    }
}

impl LayeredSolution for BruteSeries {
    fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    fn eval_in(&self, region: Region, p: Point2) -> f64 {
        let j_max = self.terms;
        let sum = |rho: f64, t: &dyn Fn(usize) -> f64| -> f64 {
            let mut w = 1.0;
            let mut acc = 0.0;
            for j in 0..j_max {
                acc += w * t(j);
                w *= rho;
            }
            acc
        };
        match (self.geometry, region) {
            (_, Region::Outside) => f64::NAN,
            (Geometry::HalfPlaneCoupled(c), Region::Layer1) => {
                let (l, rho) = (c.l(), c.rho());
                sum(rho, &|j| {
                    let shift = 2.0 * l * j as f64;
                    let mirrored = 2.0 * l - p.x;
                    self.planar_eval(p.x + shift, p.y)
                        - rho * self.planar_eval(mirrored + shift, p.y)
                })
            }
            (Geometry::HalfPlaneCoupled(c), Region::Layer2) => {
                let (l, rho, k) = (c.l(), c.rho(), c.k());
                let x = c.a1() / c.a2() * (p.x - l) + l;
                2.0 * k / (k + 1.0) * sum(rho, &|j| self.planar_eval(x + 2.0 * l * j as f64, p.y))
            }
            (Geometry::Strip { l }, Region::Layer1) => sum(1.0, &|j| {
                let shift = 2.0 * l * j as f64;
                self.planar_eval(p.x + shift, p.y) - self.planar_eval(2.0 * l - p.x + shift, p.y)
            }),
            (Geometry::DiskCoupled(c), Region::Layer1) => {
                let (r2, rho) = (c.radius().powi(2), c.rho());
                let q = p.to_polar();
                sum(rho, &|j| {
                    let s = r2.powi(j as i32);
                    self.disk_eval(q, s, None) - rho * self.disk_eval(q, 1.0, Some(s * r2))
                })
            }
            (Geometry::DiskCoupled(c), Region::Layer2) => {
                let (r2, rho, k) = (c.radius().powi(2), c.rho(), c.k());
                let q = p.to_polar();
                2.0 * k / (k + 1.0) * sum(rho, &|j| self.disk_eval(q, r2.powi(j as i32), None))
            }
            (Geometry::Annulus { radius }, Region::Layer1) => {
                let r2 = radius * radius;
                let q = p.to_polar();
                sum(1.0, &|j| {
                    let s = r2.powi(j as i32);
                    self.disk_eval(q, s, None) - self.disk_eval(q, 1.0, Some(s * r2))
                })
            }
            _ => f64::NAN,
        }
    }

    fn tail_bound(&self) -> f64 {
        self.tail
    }

    fn terms(&self) -> usize {
        self.terms
    }
}
