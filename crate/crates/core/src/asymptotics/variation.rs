//! Total variation estimates and the integral-versus-sum bounds built on them.

use crate::asymptotics::euler_maclaurin::log_step;
use crate::error::{ensure, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TVEstimate {
    pub value: f64,
    /// Number of grid intervals of the accepted estimate.
    pub intervals: usize,
    pub monotone_segments: usize,
}

const INITIAL_INTERVALS: usize = 64;
const MAX_INTERVALS: usize = 1 << 20;
const REL_TOL: f64 = 1e-3;

fn variation_on_grid(f: &impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> TVEstimate {
    let dx = (b - a) / n as f64;
    let mut prev = f(a);
    let mut total = 0.0;
    let mut segments = 0;
    let mut last_sign = 0.0;
    for i in 1..=n {
        let t = if i == n { b } else { a + i as f64 * dx };
        let v = f(t);
        let d = v - prev;
        total += d.abs();
        if d != 0.0 {
            let s = d.signum();
            if s != last_sign {
                segments += 1;
                last_sign = s;
            }
        }
        prev = v;
    }
    TVEstimate {
        value: total,
        intervals: n,
        monotone_segments: segments.max(1),
    }
}

/// `Σ|f(t_{i+1}) − f(t_i)|` on nested uniform grids of `[a, b]`, doubled
/// until the relative change is at most `1e−3`.
pub fn total_variation(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<TVEstimate> {
    ensure(a.is_finite() && b.is_finite() && b > a, || {
        format!("variation interval [{a}, {b}] is empty or unbounded")
    })?;
    let mut est = variation_on_grid(&f, a, b, INITIAL_INTERVALS);
    let mut change = f64::INFINITY;
    while est.intervals < MAX_INTERVALS {
        let next = variation_on_grid(&f, a, b, 2 * est.intervals);
        change = (next.value - est.value).abs();
        est = next;
        if change <= REL_TOL * est.value || est.value == 0.0 {
            return Ok(est);
        }
    }
    Err(Error::Estimation {
        last_change: change / est.value.max(f64::MIN_POSITIVE),
    })
}

/// Variation over `[0, ∞)`: the window `[0, T]` is doubled from `initial`
/// until neither the variation nor the endpoint value moves by more than
/// `1e−3` relative.
pub fn total_variation_ray(f: impl Fn(f64) -> f64, initial: f64) -> Result<TVEstimate> {
    ensure(initial > 0.0 && initial.is_finite(), || {
        format!("initial window must be positive, got {initial}")
    })?;
    let mut window = initial;
    let mut est = total_variation(&f, 0.0, window)?;
    for _ in 0..40 {
        let next = total_variation(&f, 0.0, 2.0 * window)?;
        window *= 2.0;
        let settled = (next.value - est.value).abs() <= REL_TOL * next.value
            && f(window).abs() <= REL_TOL * next.value.max(f64::MIN_POSITIVE);
        est = next;
        if settled || est.value == 0.0 {
            return Ok(est);
        }
    }
    Err(Error::Estimation {
        last_change: f(window).abs(),
    })
}

/// `2l·V₀^∞(f)`, which dominates `|∫₀^∞ f − 2l·Σ_j f(2lj)|`.
pub fn lemma2_bound(f: impl Fn(f64) -> f64, l: f64, window: f64) -> Result<f64> {
    ensure(l > 0.0, || {
        format!("layer thickness must be positive, got {l}")
    })?;
    Ok(2.0 * l * total_variation_ray(f, window)?.value)
}

/// `ln(1/R²)·V₀¹(f)`, which dominates `|∫₀¹ f(x)/x dx − ln(1/R²)·Σ_j f(R^{2j})|`.
pub fn lemma1_bound(f: impl Fn(f64) -> f64, radius: f64) -> Result<f64> {
    Ok(log_step(radius)? * total_variation(f, 0.0, 1.0)?.value)
}
