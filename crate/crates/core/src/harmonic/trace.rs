use std::f64::consts::{PI, TAU};
use std::io::Read;
use std::path::Path;

use crate::error::{ensure, Error, Result};
use crate::geometry::Point2;
use crate::harmonic::{DiskField, HalfPlaneField, PoissonSource};

/// Sampled boundary values on a line (`x = 0`) or on the unit circle
/// (abscissa = angle).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTrace {
    abscissae: Vec<f64>,
    values: Vec<f64>,
}

impl BoundaryTrace {
    pub fn new(abscissae: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        ensure(abscissae.len() == values.len(), || {
            format!(
                "trace has {} abscissae but {} values",
                abscissae.len(),
                values.len()
            )
        })?;
        ensure(abscissae.len() >= 2, || {
            "trace needs at least two samples".into()
        })?;
        ensure(
            abscissae.iter().chain(values.iter()).all(|v| v.is_finite()),
            || "trace samples must be finite".into(),
        )?;
        ensure(abscissae.windows(2).all(|w| w[1] > w[0]), || {
            "trace abscissae must be strictly increasing".into()
        })?;
        Ok(Self { abscissae, values })
    }

    pub fn from_fn(abscissae: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = abscissae.iter().map(|&t| f(t)).collect();
        Self::new(abscissae, values)
    }

    /// `m` uniform samples of `f` on `[0, 2π)`.
    pub fn on_circle(m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let th = (0..m).map(|i| TAU * i as f64 / m as f64).collect();
        Self::from_fn(th, f)
    }

    /// Two numeric columns (abscissa, value); a non-numeric first row is
    /// treated as a header.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Io(e.to_string()))?;
            if rec.len() != 2 {
                return Err(Error::Validation(format!(
                    "trace row {} has {} columns, expected 2",
                    i + 1,
                    rec.len()
                )));
            }
            match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
                (Ok(x), Ok(v)) => {
                    xs.push(x);
                    vs.push(v);
                }
                _ if i == 0 => continue,
                _ => {
                    return Err(Error::Validation(format!(
                        "trace row {} is not numeric",
                        i + 1
                    )))
                }
            }
        }
        Self::new(xs, vs)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_csv_reader(file)
    }

    pub fn abscissae(&self) -> &[f64] {
        &self.abscissae
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Closed interval actually sampled.
    pub fn window(&self) -> (f64, f64) {
        (self.abscissae[0], *self.abscissae.last().unwrap())
    }

    /// Trapezoid weights on the (possibly non-uniform) abscissae.
    fn trapezoid_weights(&self) -> Vec<f64> {
        let t = &self.abscissae;
        let n = t.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { t[i] - t[i - 1] } else { 0.0 };
                let right = if i + 1 < n { t[i + 1] - t[i] } else { 0.0 };
                0.5 * (left + right)
            })
            .collect()
    }

    /// Rejects traces whose outer samples grow at least linearly, which
    /// breaks `∫ û(0,t)/(1+t²) dt < ∞`.
    fn check_integrable(&self) -> Result<()> {
        let (a, b) = self.window();
        for end in [b, a] {
            if end.abs() <= 2.0 {
                continue;
            }
            // envelope growth between [end/4, end/2] and [end/2, end]
            let outer = self.max_abs_between(0.5 * end, end);
            let inner = self.max_abs_between(0.25 * end, 0.5 * end);
            if outer == 0.0 || inner == 0.0 {
                continue;
            }
            let exponent = (outer / inner).ln() / 2f64.ln();
            if exponent >= 0.9 {
                return Err(Error::Validation(format!(
                    "trace grows like |t|^{exponent:.2} towards t = {end}; \
                     the boundary data must satisfy ∫ û(0,t)/(1+t²) dt < ∞"
                )));
            }
        }
        Ok(())
    }

    fn max_abs_between(&self, s: f64, t: f64) -> f64 {
        let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
        self.abscissae
            .iter()
            .zip(&self.values)
            .filter(|(x, _)| **x >= lo && **x <= hi)
            .fold(0.0f64, |m, (_, v)| m.max(v.abs()))
    }

    /// Largest `|value|` over the outer tenth of the window on each side.
    fn end_magnitudes(&self) -> (f64, f64) {
        let n = self.len();
        let k = (n / 10).max(1);
        let left = self.values[..k].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let right = self.values[n - k..]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        (left, right)
    }
}

impl HalfPlaneField {
    /// Harmonic extension of a boundary trace on `x = 0`: the trapezoid rule
    /// applied to the Poisson integral is a finite sum of Poisson sources.
    pub fn from_trace(trace: &BoundaryTrace) -> Result<Self> {
        trace.check_integrable()?;
        let sources = trace
            .abscissae
            .iter()
            .zip(trace.trapezoid_weights())
            .zip(&trace.values)
            .map(|((&t, w), &v)| PoissonSource {
                location: t,
                strength: w * v,
            })
            .collect();
        Self::new(Vec::new(), sources)
    }
}

/// Result of a windowed Poisson integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonValue {
    pub value: f64,
    /// Bound on the part of the integral outside the sampled window.
    pub tail_bound: f64,
}

/// `(1/π)∫ x/(x²+(y−t)²) f(t) dt` by the trapezoid rule over the trace.
pub fn halfplane_poisson_eval(trace: &BoundaryTrace, p: Point2, tol: f64) -> Result<PoissonValue> {
    ensure(p.x > 0.0, || {
        format!("Poisson extension needs an interior point, got x = {}", p.x)
    })?;
    let field = HalfPlaneField::from_trace(trace)?;
    let (a, b) = trace.window();
    let (fa, fb) = trace.end_magnitudes();
    let mass_left = 0.5 - ((p.y - a) / p.x).atan() / PI;
    let mass_right = 0.5 - ((b - p.y) / p.x).atan() / PI;
    let tail_bound = fa * mass_left + fb * mass_right;
    if tail_bound > tol {
        return Err(Error::WindowTooSmall {
            tail: tail_bound,
            tol,
        });
    }
    Ok(PoissonValue {
        value: field.value(p.x, p.y),
        tail_bound,
    })
}

/// Discrete Fourier projection of uniform circle samples onto modes `0..=N`.
pub fn disk_from_boundary(trace: &BoundaryTrace, n_modes: usize) -> Result<DiskField> {
    let m = trace.len();
    let needed = 2 * n_modes + 1;
    if m < needed {
        return Err(Error::Undersampling {
            samples: m,
            modes: n_modes,
            needed,
        });
    }
    let th = trace.abscissae();
    let dt = TAU / m as f64;
    ensure(
        th.windows(2).all(|w| ((w[1] - w[0]) - dt).abs() <= 1e-9) && th[0] >= -1e-12 && th[0] < dt,
        || format!("circle trace must be a uniform grid of {m} points covering [0, 2π)"),
    )?;
    let scale = 2.0 / m as f64;
    let mut a = vec![0.0; n_modes + 1];
    let mut b = vec![0.0; n_modes + 1];
    for (n, (an, bn)) in a.iter_mut().zip(b.iter_mut()).enumerate() {
        let (mut sc, mut ss) = (0.0, 0.0);
        for (&t, &v) in th.iter().zip(trace.values()) {
            let (s, c) = (n as f64 * t).sin_cos();
            sc += v * c;
            ss += v * s;
        }
        *an = scale * sc;
        *bn = scale * ss;
    }
    DiskField::new(a, b)
}
