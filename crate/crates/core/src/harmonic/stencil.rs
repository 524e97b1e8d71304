use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::harmonic::{DiskField, HalfPlaneField};

/// Anything that can be sampled pointwise on a known region.
pub trait ScalarField {
    fn value_at(&self, p: Point2) -> f64;

    fn contains(&self, _p: Point2) -> bool {
        true
    }
}

impl ScalarField for HalfPlaneField {
    fn value_at(&self, p: Point2) -> f64 {
        self.value(p.x, p.y)
    }

    fn contains(&self, p: Point2) -> bool {
        p.x >= 0.0
    }
}

impl ScalarField for DiskField {
    fn value_at(&self, p: Point2) -> f64 {
        let q = p.to_polar();
        self.value(q.r, q.theta)
    }

    fn contains(&self, p: Point2) -> bool {
        p.radius() <= 1.0
    }
}

/// Closure-backed field with an explicit region predicate.
pub struct FnField<F, D> {
    pub f: F,
    pub region: D,
}

impl<F: Fn(Point2) -> f64> FnField<F, fn(Point2) -> bool> {
    pub fn everywhere(f: F) -> Self {
        Self {
            f,
            region: |_| true,
        }
    }
}

impl<F, D> ScalarField for FnField<F, D>
where
    F: Fn(Point2) -> f64,
    D: Fn(Point2) -> bool,
{
    fn value_at(&self, p: Point2) -> f64 {
        (self.f)(p)
    }

    fn contains(&self, p: Point2) -> bool {
        (self.region)(p)
    }
}

/// Five-point Laplacian `(u(x±h,y) + u(x,y±h) − 4u) / h²`.
pub fn laplacian_residual<F: ScalarField + ?Sized>(field: &F, p: Point2, step: f64) -> Result<f64> {
    anisotropic_laplacian_residual(field, p, step, 1.0)
}

/// `a²·u_xx + u_yy` by central differences; `a = 1` is the plain Laplacian.
pub fn anisotropic_laplacian_residual<F: ScalarField + ?Sized>(
    field: &F,
    p: Point2,
    step: f64,
    a: f64,
) -> Result<f64> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Validation(format!(
            "stencil step must be positive, got {step}"
        )));
    }
    let nodes = [
        Point2 {
            x: p.x + step,
            y: p.y,
        },
        Point2 {
            x: p.x - step,
            y: p.y,
        },
        Point2 {
            x: p.x,
            y: p.y + step,
        },
        Point2 {
            x: p.x,
            y: p.y - step,
        },
    ];
    if !field.contains(p) || nodes.iter().any(|q| !field.contains(*q)) {
        return Err(Error::Stencil {
            x: p.x,
            y: p.y,
            step,
        });
    }
    let c = field.value_at(p);
    let v: Vec<f64> = nodes.iter().map(|q| field.value_at(*q)).collect();
    let uxx = (v[0] + v[1] - 2.0 * c) / (step * step);
    let uyy = (v[2] + v[3] - 2.0 * c) / (step * step);
    Ok(a * a * uxx + uyy)
}

/// Richardson combination `(4·L(h/2) − L(h)) / 3` of two five-point
/// evaluations, accurate to `O(h⁴)`.
pub fn richardson_laplacian_residual<F: ScalarField + ?Sized>(
    field: &F,
    p: Point2,
    step: f64,
    a: f64,
) -> Result<f64> {
    let coarse = anisotropic_laplacian_residual(field, p, step, a)?;
    let fine = anisotropic_laplacian_residual(field, p, 0.5 * step, a)?;
    Ok((4.0 * fine - coarse) / 3.0)
}
