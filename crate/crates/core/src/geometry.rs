//! Plane and polar points.

use std::f64::consts::TAU;

use crate::error::{ensure, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        ensure(x.is_finite() && y.is_finite(), || {
            format!("point coordinates must be finite, got ({x}, {y})")
        })?;
        Ok(Self { x, y })
    }

    pub fn radius(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn to_polar(&self) -> PolarPoint {
        PolarPoint {
            r: self.radius(),
            theta: normalize_angle(self.y.atan2(self.x)),
        }
    }
}

/// Polar point with `theta` kept in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

impl PolarPoint {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        ensure(r.is_finite() && r >= 0.0, || {
            format!("radius must be finite and non-negative, got {r}")
        })?;
        ensure(theta.is_finite(), || {
            format!("angle must be finite, got {theta}")
        })?;
        Ok(Self {
            r,
            theta: normalize_angle(theta),
        })
    }

    pub fn to_cartesian(&self) -> Point2 {
        Point2 {
            x: self.r * self.theta.cos(),
            y: self.r * self.theta.sin(),
        }
    }
}

pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Inversion across the circle of radius `sqrt(rho2)`: `r -> rho2 / r`, angle unchanged.
pub fn kelvin_argument(p: PolarPoint, rho2: f64) -> Result<PolarPoint> {
    ensure(rho2 > 0.0 && rho2.is_finite(), || {
        format!("inversion radius squared must be positive, got {rho2}")
    })?;
    if p.r == 0.0 {
        return Err(Error::Singularity(
            "inversion of the origin is undefined".into(),
        ));
    }
    Ok(PolarPoint {
        r: rho2 / p.r,
        theta: p.theta,
    })
}
