use crate::asymptotics::PowerSum;
use crate::error::{ensure, Error, Result};
use crate::geometry::PolarPoint;

/// Trigonometric-polynomial harmonic function on the unit disk,
/// `û(r,θ) = a₀/2 + Σₙ rⁿ (aₙ cos nθ + bₙ sin nθ)`.
///
/// `b[0]` is kept for indexing symmetry and is always zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskField {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl DiskField {
    /// `a` holds `a₀..a_N`; `b` holds `b₀..b_N` with `b₀` ignored. The shorter
    /// vector is zero-padded.
    pub fn new(mut a: Vec<f64>, mut b: Vec<f64>) -> Result<Self> {
        ensure(a.iter().chain(b.iter()).all(|c| c.is_finite()), || {
            "disk coefficients must be finite".to_string()
        })?;
        let n = a.len().max(b.len()).max(1);
        a.resize(n, 0.0);
        b.resize(n, 0.0);
        b[0] = 0.0;
        Ok(Self { a, b })
    }

    pub fn zero() -> Self {
        Self {
            a: vec![0.0],
            b: vec![0.0],
        }
    }

    /// `amp_cos·rⁿ cos nθ + amp_sin·rⁿ sin nθ`
    pub fn single_mode(n: usize, amp_cos: f64, amp_sin: f64) -> Result<Self> {
        let mut a = vec![0.0; n + 1];
        let mut b = vec![0.0; n + 1];
        a[n] = amp_cos;
        if n > 0 {
            b[n] = amp_sin;
        } else {
            ensure(amp_sin == 0.0, || "the n = 0 mode has no sine part".into())?;
        }
        Self::new(a, b)
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.a
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(self.b.iter()).all(|&c| c == 0.0)
    }

    /// Unchecked evaluation at any radius.
    pub fn value(&self, r: f64, theta: f64) -> f64 {
        let mut u = 0.5 * self.a[0];
        let mut rn = 1.0;
        for n in 1..self.a.len() {
            rn *= r;
            let (s, c) = (n as f64 * theta).sin_cos();
            u += rn * (self.a[n] * c + self.b[n] * s);
        }
        u
    }

    /// `L₀û = r ∂û/∂r`, closed form on modes.
    pub fn l0(&self, r: f64, theta: f64) -> f64 {
        let mut u = 0.0;
        let mut rn = 1.0;
        for n in 1..self.a.len() {
            rn *= r;
            let (s, c) = (n as f64 * theta).sin_cos();
            u += n as f64 * rn * (self.a[n] * c + self.b[n] * s);
        }
        u
    }

    pub fn eval(&self, p: PolarPoint) -> Result<f64> {
        check_in_disk(p)?;
        Ok(self.value(p.r, p.theta))
    }

    pub fn radial_derivative(&self, p: PolarPoint) -> Result<f64> {
        check_in_disk(p)?;
        Ok(self.l0(p.r, p.theta))
    }

    /// `Σ |coefficients|`, a bound for `|û|` on the closed disk.
    pub fn sup_bound(&self) -> f64 {
        0.5 * self.a[0].abs()
            + self.a[1..]
                .iter()
                .zip(&self.b[1..])
                .map(|(a, b)| a.hypot(*b))
                .sum::<f64>()
    }

    /// The restriction `s ↦ û(s, θ)` as a power sum.
    pub fn ray_profile(&self, theta: f64) -> PowerSum {
        let mut terms = vec![(0.5 * self.a[0], 0.0)];
        for n in 1..self.a.len() {
            let (s, c) = (n as f64 * theta).sin_cos();
            terms.push((self.a[n] * c + self.b[n] * s, n as f64));
        }
        PowerSum::new(terms)
    }

    /// Scales mode `n` by `g(n)`; the constant mode is scaled by `g(0)`.
    pub(crate) fn map_modes(&self, g: impl Fn(usize) -> f64) -> Self {
        let a = self.a.iter().enumerate().map(|(n, c)| c * g(n)).collect();
        let b = self.b.iter().enumerate().map(|(n, c)| c * g(n)).collect();
        Self { a, b }
    }
}

fn check_in_disk(p: PolarPoint) -> Result<()> {
    if p.r > 1.0 + 1e-12 {
        let c = p.to_cartesian();
        return Err(Error::Domain {
            what: "the closed unit disk",
            x: c.x,
            y: c.y,
        });
    }
    Ok(())
}
