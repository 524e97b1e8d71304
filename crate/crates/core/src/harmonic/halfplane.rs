use std::f64::consts::PI;

use crate::asymptotics::ExpSum;
use crate::error::{ensure, Error, Result};
use crate::geometry::Point2;

/// `A·e^{−ωx}·cos(ωy + φ)`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarMode {
    pub amplitude: f64,
    pub frequency: f64,
    pub phase: f64,
}

/// Poisson kernel of the right half-plane centred at `(0, location)`:
/// `(q/π)·x / (x² + (y − t)²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonSource {
    pub location: f64,
    pub strength: f64,
}

/// Harmonic function on `x > 0`, bounded and decaying in `x`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HalfPlaneField {
    modes: Vec<PlanarMode>,
    sources: Vec<PoissonSource>,
}

impl HalfPlaneField {
    pub fn new(modes: Vec<PlanarMode>, sources: Vec<PoissonSource>) -> Result<Self> {
        for m in &modes {
            ensure(m.frequency.is_finite() && m.frequency > 0.0, || {
                format!("mode frequency must be positive, got {}", m.frequency)
            })?;
            ensure(m.amplitude.is_finite() && m.phase.is_finite(), || {
                "mode amplitude and phase must be finite".to_string()
            })?;
        }
        for s in &sources {
            ensure(s.location.is_finite() && s.strength.is_finite(), || {
                "source location and strength must be finite".to_string()
            })?;
        }
        Ok(Self { modes, sources })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single_mode(amplitude: f64, frequency: f64, phase: f64) -> Result<Self> {
        Self::new(
            vec![PlanarMode {
                amplitude,
                frequency,
                phase,
            }],
            Vec::new(),
        )
    }

    pub fn modes(&self) -> &[PlanarMode] {
        &self.modes
    }

    pub fn sources(&self) -> &[PoissonSource] {
        &self.sources
    }

    pub fn is_zero(&self) -> bool {
        self.modes.iter().all(|m| m.amplitude == 0.0)
            && self.sources.iter().all(|s| s.strength == 0.0)
    }

    pub fn has_sources(&self) -> bool {
        self.sources.iter().any(|s| s.strength != 0.0)
    }

    /// Unchecked evaluation. Sources vanish on `x = 0` away from their centre.
    pub fn value(&self, x: f64, y: f64) -> f64 {
        let mut u = 0.0;
        for m in &self.modes {
            u += m.amplitude * (-m.frequency * x).exp() * (m.frequency * y + m.phase).cos();
        }
        if x != 0.0 {
            for s in &self.sources {
                let d = y - s.location;
                u += s.strength / PI * x / (x * x + d * d);
            }
        }
        u
    }

    /// `∂û/∂x`, closed form.
    pub fn dx(&self, x: f64, y: f64) -> f64 {
        let mut u = 0.0;
        for m in &self.modes {
            u -= m.amplitude
                * m.frequency
                * (-m.frequency * x).exp()
                * (m.frequency * y + m.phase).cos();
        }
        for s in &self.sources {
            let d = y - s.location;
            let q = x * x + d * d;
            u += s.strength / PI * (d * d - x * x) / (q * q);
        }
        u
    }

    pub fn eval(&self, p: Point2) -> Result<f64> {
        if p.x < 0.0 {
            return Err(Error::Domain {
                what: "the right half-plane",
                x: p.x,
                y: p.y,
            });
        }
        if p.x == 0.0
            && self
                .sources
                .iter()
                .any(|s| s.strength != 0.0 && s.location == p.y)
        {
            return Err(Error::Singularity(format!(
                "Poisson source centred at (0, {})",
                p.y
            )));
        }
        Ok(self.value(p.x, p.y))
    }

    /// Upper bound of `|û|` on the half-plane `x ≥ x_min`.
    pub fn sup_bound(&self, x_min: f64) -> f64 {
        let modes: f64 = self
            .modes
            .iter()
            .map(|m| m.amplitude.abs() * (-m.frequency * x_min.max(0.0)).exp())
            .sum();
        let sources: f64 = self.sources.iter().map(|s| s.strength.abs()).sum();
        if sources == 0.0 {
            modes
        } else if x_min > 0.0 {
            // max over y of x/(x²+d²) is 1/x
            modes + sources / (PI * x_min)
        } else {
            f64::INFINITY
        }
    }

    /// The restriction `s ↦ û(s, y)` as a sum of complex exponentials, when
    /// the field is made of modes only.
    pub fn ray_profile(&self, y: f64) -> Option<ExpSum> {
        if self.has_sources() {
            return None;
        }
        Some(ExpSum::real(self.modes.iter().map(|m| {
            (m.amplitude * (m.frequency * y + m.phase).cos(), m.frequency)
        })))
    }

    /// Every mode coefficient scaled by `g(ω)`; sources are rejected.
    pub(crate) fn map_modes(&self, g: impl Fn(f64) -> f64) -> Self {
        debug_assert!(!self.has_sources());
        Self {
            modes: self
                .modes
                .iter()
                .map(|m| PlanarMode {
                    amplitude: m.amplitude * g(m.frequency),
                    ..*m
                })
                .collect(),
            sources: Vec::new(),
        }
    }
}
