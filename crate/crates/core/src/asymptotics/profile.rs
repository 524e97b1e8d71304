//! One-dimensional profiles along an image ladder.
//!
//! A ray profile is `s ↦ f(s)` on `[0, ∞)` sampled at `x + 2l·j`; a radial
//! profile is `s ↦ f(s)` on `[0, 1]` sampled at `r·R^{2j}`. The expansions
//! need a weighted integral and powers of a shifted derivative at the start of
//! the ladder. Closed forms exist for exponential and power sums; anything
//! else goes through quadrature and central differences.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub trait RayProfile {
    fn value(&self, s: f64) -> f64;

    /// `∫₀^∞ e^{hε} f(x + ε) dε`
    fn weighted_integral(&self, x: f64, h: f64) -> Result<f64>;

    /// `((h + d/ds)^m f)(x)`
    fn shifted_derivative(&self, x: f64, h: f64, m: usize) -> Result<f64>;
}

pub trait RadialProfile {
    fn value(&self, s: f64) -> f64;

    /// `∫₀¹ ε^{h−1} f(rε) dε`
    fn weighted_integral(&self, r: f64, h: f64) -> Result<f64>;

    /// `((h + s·d/ds)^m f)(r)`
    fn shifted_euler_derivative(&self, r: f64, h: f64, m: usize) -> Result<f64>;
}

/// `f(s) = Re Σ cᵢ·e^{−zᵢ s}`
#[derive(Debug, Clone, PartialEq)]
pub struct ExpSum {
    terms: Vec<(Complex64, Complex64)>,
}

impl ExpSum {
    pub fn new(terms: impl IntoIterator<Item = (Complex64, Complex64)>) -> Self {
        Self {
            terms: terms.into_iter().collect(),
        }
    }

    /// Real coefficients and real decay rates.
    pub fn real(terms: impl IntoIterator<Item = (f64, f64)>) -> Self {
        Self::new(
            terms
                .into_iter()
                .map(|(c, z)| (Complex64::new(c, 0.0), Complex64::new(z, 0.0))),
        )
    }

    /// `A·e^{−αs}·cos(βs)`
    pub fn damped_cosine(amplitude: f64, alpha: f64, beta: f64) -> Self {
        Self::new([(Complex64::new(amplitude, 0.0), Complex64::new(alpha, -beta))])
    }
}

impl RayProfile for ExpSum {
    fn value(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, z)| (c * (-z * s).exp()).re)
            .sum()
    }

    fn weighted_integral(&self, x: f64, h: f64) -> Result<f64> {
        let mut acc = 0.0;
        for (c, z) in &self.terms {
            if c.norm() == 0.0 {
                continue;
            }
            if z.re - h <= 0.0 {
                return Err(Error::DivergentLink(format!(
                    "∫ e^(hε) f dε with decay rate {} and h = {h}",
                    z.re
                )));
            }
            acc += (c * (-z * x).exp() / (z - h)).re;
        }
        Ok(acc)
    }

    fn shifted_derivative(&self, x: f64, h: f64, m: usize) -> Result<f64> {
        Ok(self
            .terms
            .iter()
            .map(|(c, z)| (c * (-z * x).exp() * (h - z).powu(m as u32)).re)
            .sum())
    }
}

/// `f(s) = Σ cᵢ·s^{pᵢ}` with `pᵢ ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSum {
    terms: Vec<(f64, f64)>,
}

impl PowerSum {
    pub fn new(terms: impl IntoIterator<Item = (f64, f64)>) -> Self {
        Self {
            terms: terms.into_iter().collect(),
        }
    }

    pub fn monomial(c: f64, p: f64) -> Self {
        Self::new([(c, p)])
    }
}

impl RadialProfile for PowerSum {
    fn value(&self, s: f64) -> f64 {
        self.terms.iter().map(|(c, p)| c * s.powf(*p)).sum()
    }

    fn weighted_integral(&self, r: f64, h: f64) -> Result<f64> {
        let mut acc = 0.0;
        for &(c, p) in &self.terms {
            if c == 0.0 {
                continue;
            }
            if p + h <= 0.0 {
                return Err(Error::DivergentLink(format!(
                    "∫₀¹ ε^(h−1)·ε^{p} dε with h = {h}"
                )));
            }
            acc += c * r.powf(p) / (p + h);
        }
        Ok(acc)
    }

    fn shifted_euler_derivative(&self, r: f64, h: f64, m: usize) -> Result<f64> {
        Ok(self
            .terms
            .iter()
            .map(|(c, p)| c * (h + p).powi(m as i32) * r.powf(*p))
            .sum())
    }
}

/// Closure profile evaluated by double-exponential quadrature and central
/// differences. Derivative orders above [`FnProfile::MAX_DERIVATIVE`] are
/// refused.
pub struct FnProfile<F> {
    f: F,
    step: f64,
    tol: f64,
}

impl<F: Fn(f64) -> f64> FnProfile<F> {
    pub const MAX_DERIVATIVE: usize = 3;

    pub fn new(f: F) -> Self {
        Self {
            f,
            step: 1e-3,
            tol: 1e-11,
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    /// `((h + d/dt)^m φ)(t0)` by central differences.
    fn shifted_fd(&self, phi: impl Fn(f64) -> f64, t0: f64, h: f64, m: usize) -> Result<f64> {
        if m > Self::MAX_DERIVATIVE {
            return Err(Error::Capability(format!(
                "derivative of order {m} by finite differences (max {})",
                Self::MAX_DERIVATIVE
            )));
        }
        let d = self.step;
        let derivs = [
            phi(t0),
            (phi(t0 + d) - phi(t0 - d)) / (2.0 * d),
            (phi(t0 + d) - 2.0 * phi(t0) + phi(t0 - d)) / (d * d),
            (phi(t0 + 2.0 * d) - 2.0 * phi(t0 + d) + 2.0 * phi(t0 - d) - phi(t0 - 2.0 * d))
                / (2.0 * d * d * d),
        ];
        // (h + D)^m = Σ C(m,i) h^{m−i} D^i
        let mut binom = 1.0;
        let mut acc = 0.0;
        for (i, di) in derivs.iter().enumerate().take(m + 1) {
            acc += binom * h.powi((m - i) as i32) * di;
            binom = binom * (m - i) as f64 / (i + 1) as f64;
        }
        Ok(acc)
    }
}

/// `∫₀^∞ g` through `ε = t/(1−t)`.
pub(crate) fn integrate_ray(g: impl Fn(f64) -> f64, tol: f64) -> f64 {
    let mapped = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let w = 1.0 - t;
        g(t / w) / (w * w)
    };
    quadrature::integrate(mapped, 0.0, 1.0, tol).integral
}

impl<F: Fn(f64) -> f64> RayProfile for FnProfile<F> {
    fn value(&self, s: f64) -> f64 {
        (self.f)(s)
    }

    fn weighted_integral(&self, x: f64, h: f64) -> Result<f64> {
        let v = integrate_ray(|e| (h * e).exp() * (self.f)(x + e), self.tol);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::DivergentLink(format!(
                "weighted ray integral at x = {x}"
            )))
        }
    }

    fn shifted_derivative(&self, x: f64, h: f64, m: usize) -> Result<f64> {
        self.shifted_fd(|s| (self.f)(s), x, h, m)
    }
}

impl<F: Fn(f64) -> f64> RadialProfile for FnProfile<F> {
    fn value(&self, s: f64) -> f64 {
        (self.f)(s)
    }

    fn weighted_integral(&self, r: f64, h: f64) -> Result<f64> {
        // ε = e^{−t}
        let v = integrate_ray(|t| (-h * t).exp() * (self.f)(r * (-t).exp()), self.tol);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::DivergentLink(format!(
                "weighted radial integral at r = {r}"
            )))
        }
    }

    fn shifted_euler_derivative(&self, r: f64, h: f64, m: usize) -> Result<f64> {
        // s·d/ds acts as d/dt on φ(t) = f(r·e^t)
        self.shifted_fd(|t| (self.f)(r * t.exp()), 0.0, h, m)
    }
}
