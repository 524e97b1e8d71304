//! Finite-difference reference solvers.
//!
//! Each solver diagonalizes the second difference along the uniform
//! direction (sine transform across the strip window, discrete Fourier
//! transform in θ) and solves one tridiagonal system per mode along the
//! other. The result is the exact solution of the discrete 5-point system,
//! so the only error left is the `O(h²)` discretization error.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};
use crate::geometry::{Point2, PolarPoint};
use crate::transform::RadialLayerConfig;

/// Largest normalized row residual accepted from a solve.
pub const SOLVER_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridKind {
    /// axis 1 is `x ∈ [0, l]`, axis 2 is `y` over a window
    Strip,
    /// axis 1 is `r ∈ [R, 1]`, axis 2 is periodic `θ`
    Annulus,
    /// axis 1 is `r ∈ [0, 1]` with the interface at `interface`, axis 2 is `θ`
    DiskCoupled { interface: usize, k: f64 },
}

#[derive(Debug, Clone)]
pub struct GridSolution {
    kind: GridKind,
    axis1: Vec<f64>,
    axis2: Vec<f64>,
    values: Vec<f64>,
}

impl GridSolution {
    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.axis1.len(), self.axis2.len())
    }

    pub fn axis1(&self) -> &[f64] {
        &self.axis1
    }

    pub fn axis2(&self) -> &[f64] {
        &self.axis2
    }

    /// Spacing along axis 1 (`x` or `r`).
    pub fn step(&self) -> f64 {
        self.axis1[1] - self.axis1[0]
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.axis2.len() + j]
    }

    pub fn point(&self, i: usize, j: usize) -> Point2 {
        match self.kind {
            GridKind::Strip => Point2 {
                x: self.axis1[i],
                y: self.axis2[j],
            },
            _ => PolarPoint {
                r: self.axis1[i],
                theta: self.axis2[j],
            }
            .to_cartesian(),
        }
    }

    /// `max |u_ij − f(p_ij)|` over all nodes.
    pub fn max_deviation(&self, f: impl Fn(Point2) -> f64) -> f64 {
        let (n1, n2) = self.shape();
        let mut worst: f64 = 0.0;
        for i in 0..n1 {
            for j in 0..n2 {
                worst = worst.max((self.value(i, j) - f(self.point(i, j))).abs());
            }
        }
        worst
    }

    /// Row `i` of the discrete operator on the `j`-th line, as
    /// `(coefficient, (i', j'))` pairs.
    fn stencil(&self, i: usize, j: usize) -> Vec<(f64, (usize, usize))> {
        let n2 = self.axis2.len();
        let h1 = self.step();
        match self.kind {
            GridKind::Strip => {
                let h2 = self.axis2[1] - self.axis2[0];
                let (a, b) = (1.0 / (h1 * h1), 1.0 / (h2 * h2));
                vec![
                    (a, (i - 1, j)),
                    (a, (i + 1, j)),
                    (b, (i, j - 1)),
                    (b, (i, j + 1)),
                    (-2.0 * (a + b), (i, j)),
                ]
            }
            GridKind::Annulus => polar_row(&self.axis1, i, j, n2),
            GridKind::DiskCoupled { interface, k } => {
                if i == 0 {
                    let w = 4.0 / (h1 * h1 * n2 as f64);
                    let mut row: Vec<_> = (0..n2).map(|jj| (w, (1, jj))).collect();
                    row.push((-4.0 / (h1 * h1), (0, j)));
                    row
                } else if i == interface && k != 1.0 {
                    let s = 1.0 / (2.0 * h1);
                    vec![
                        (-3.0 * k * s - 3.0 * s, (i, j)),
                        (4.0 * k * s, (i + 1, j)),
                        (-k * s, (i + 2, j)),
                        (4.0 * s, (i - 1, j)),
                        (-s, (i - 2, j)),
                    ]
                } else {
                    polar_row(&self.axis1, i, j, n2)
                }
            }
        }
    }

    fn interior_rows(&self) -> (std::ops::Range<usize>, std::ops::Range<usize>) {
        let (n1, n2) = self.shape();
        match self.kind {
            GridKind::Strip => (1..n1 - 1, 1..n2 - 1),
            GridKind::Annulus => (1..n1 - 1, 0..n2),
            GridKind::DiskCoupled { .. } => (0..n1 - 1, 0..n2),
        }
    }

    /// Largest residual of the discrete equations, each row normalized by
    /// `Σ|coefficients| · max|u|`.
    pub fn discrete_residual(&self) -> f64 {
        let umax = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if umax == 0.0 {
            return 0.0;
        }
        let (ri, rj) = self.interior_rows();
        let mut worst: f64 = 0.0;
        for i in ri {
            for j in rj.clone() {
                let row = self.stencil(i, j);
                let res: f64 = row.iter().map(|(c, (a, b))| c * self.value(*a, *b)).sum();
                let norm: f64 = row.iter().map(|(c, _)| c.abs()).sum();
                worst = worst.max(res.abs() / (norm * umax));
            }
        }
        worst
    }

    fn checked(self) -> Result<Self> {
        let r = self.discrete_residual();
        if r > SOLVER_TOL {
            return Err(Error::Solver(format!(
                "discrete residual {r:e} above {SOLVER_TOL:e}"
            )));
        }
        Ok(self)
    }
}

/// Polar flux-form row at node `(i, j)` with periodic `θ`.
fn polar_row(r: &[f64], i: usize, j: usize, n2: usize) -> Vec<(f64, (usize, usize))> {
    let h = r[1] - r[0];
    let ht = 2.0 * PI / n2 as f64;
    let (lo, hi) = (r[i] - 0.5 * h, r[i] + 0.5 * h);
    let a = lo / (r[i] * h * h);
    let c = hi / (r[i] * h * h);
    let t = 1.0 / (r[i] * r[i] * ht * ht);
    vec![
        (a, (i - 1, j)),
        (c, (i + 1, j)),
        (t, (i, (j + n2 - 1) % n2)),
        (t, (i, (j + 1) % n2)),
        (-(a + c + 2.0 * t), (i, j)),
    ]
}

/// Thomas algorithm; `sub[0]` and `sup[n−1]` are ignored.
fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &mut [Complex64]) -> Result<()> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut beta = diag[0];
    for i in 0..n {
        if i > 0 {
            c[i - 1] = sup[i - 1] / beta;
            beta = diag[i] - sub[i] * c[i - 1];
            rhs[i] -= rhs[i - 1] * sub[i];
        }
        if beta.abs() < 1e-300 {
            return Err(Error::Solver("singular tridiagonal system".into()));
        }
        rhs[i] /= beta;
    }
    for i in (0..n - 1).rev() {
        let next = rhs[i + 1];
        rhs[i] -= next * c[i];
    }
    Ok(())
}

fn check_size(name: &str, n: usize, min: usize) -> Result<()> {
    ensure(n >= min, || {
        format!("{name} must be at least {min}, got {n}")
    })
}

/// Strip `0 ≤ x ≤ l`, `y0 ≤ y ≤ y1`: `u = g(y)` at `x = 0`, `u = 0` at
/// `x = l`, and caller-supplied `lateral(x, y)` on the window ends.
pub fn fd_strip(
    g: impl Fn(f64) -> f64,
    lateral: impl Fn(f64, f64) -> f64,
    l: f64,
    window: (f64, f64),
    nx: usize,
    ny: usize,
) -> Result<GridSolution> {
    ensure(l > 0.0 && l.is_finite(), || {
        format!("strip width must be positive, got {l}")
    })?;
    let (y0, y1) = window;
    ensure(y1 > y0, || format!("empty window [{y0}, {y1}]"))?;
    check_size("n_x", nx, 3)?;
    check_size("n_y", ny, 3)?;
    let hx = l / (nx - 1) as f64;
    let hy = (y1 - y0) / (ny - 1) as f64;
    let xs: Vec<f64> = (0..nx).map(|i| i as f64 * hx).collect();
    let ys: Vec<f64> = (0..ny).map(|j| y0 + j as f64 * hy).collect();

    let mut u = vec![0.0; nx * ny];
    for j in 0..ny {
        u[j] = g(ys[j]);
    }
    for i in 1..nx - 1 {
        u[i * ny] = lateral(xs[i], y0);
        u[i * ny + ny - 1] = lateral(xs[i], y1);
    }

    let (m, p) = (nx - 2, ny - 2);
    let (ax, ay) = (1.0 / (hx * hx), 1.0 / (hy * hy));
    // right-hand side from the known boundary neighbours
    let mut b = vec![0.0; m * p];
    for i in 1..=m {
        for j in 1..=p {
            let mut s = 0.0;
            if i == 1 {
                s += ax * u[j];
            }
            if j == 1 {
                s += ay * u[i * ny];
            }
            if j == p {
                s += ay * u[i * ny + ny - 1];
            }
            b[(i - 1) * p + (j - 1)] = -s;
        }
    }

    let big_n = (ny - 1) as f64;
    let sines: Vec<f64> = (1..=p)
        .flat_map(|mm| (1..=p).map(move |j| (PI * (mm * j) as f64 / big_n).sin()))
        .collect();
    let mut coef = vec![Complex64::new(0.0, 0.0); m * p];
    for mm in 0..p {
        let lambda = -4.0 * ay * (PI * (mm + 1) as f64 / (2.0 * big_n)).sin().powi(2);
        let mut rhs: Vec<Complex64> = (0..m)
            .map(|i| {
                let v: f64 = (0..p).map(|j| b[i * p + j] * sines[mm * p + j]).sum();
                Complex64::new(v, 0.0)
            })
            .collect();
        let diag = vec![-2.0 * ax + lambda; m];
        let off = vec![ax; m];
        solve_tridiagonal(&off, &diag, &off, &mut rhs)?;
        for i in 0..m {
            coef[i * p + mm] = rhs[i];
        }
    }
    for i in 0..m {
        for j in 0..p {
            let v: f64 = (0..p)
                .map(|mm| coef[i * p + mm].re * sines[mm * p + j])
                .sum();
            u[(i + 1) * ny + j + 1] = 2.0 / big_n * v;
        }
    }
    GridSolution {
        kind: GridKind::Strip,
        axis1: xs,
        axis2: ys,
        values: u,
    }
    .checked()
}

struct Dft {
    n: usize,
    /// `e^{−2πi·m·j/n}`
    twiddle: Vec<Complex64>,
}

impl Dft {
    fn new(n: usize) -> Self {
        let twiddle = (0..n * n)
            .map(|mj| {
                let a = -2.0 * PI * ((mj / n) * (mj % n) % n) as f64 / n as f64;
                Complex64::new(a.cos(), a.sin())
            })
            .collect();
        Self { n, twiddle }
    }

    fn forward(&self, f: &[f64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|m| {
                (0..self.n)
                    .map(|j| self.twiddle[m * self.n + j] * f[j])
                    .sum()
            })
            .collect()
    }

    fn inverse_re(&self, c: &[Complex64], out: &mut [f64]) {
        for (j, o) in out.iter_mut().enumerate() {
            let s: Complex64 = (0..self.n)
                .map(|m| c[m] * self.twiddle[m * self.n + j].conj())
                .sum();
            *o = s.re / self.n as f64;
        }
    }

    /// Eigenvalue of the periodic second difference for mode `m`.
    fn eigenvalue(&self, m: usize) -> f64 {
        let ht = 2.0 * PI / self.n as f64;
        -4.0 / (ht * ht) * (m as f64 * ht / 2.0).sin().powi(2)
    }
}

fn theta_grid(n: usize) -> Vec<f64> {
    (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect()
}

/// Annulus `R ≤ r ≤ 1`: `u = outer(θ)` at `r = 1`, `u = inner(θ)` at `r = R`.
pub fn fd_annulus(
    outer: impl Fn(f64) -> f64,
    inner: impl Fn(f64) -> f64,
    radius: f64,
    nr: usize,
    ntheta: usize,
) -> Result<GridSolution> {
    ensure(radius > 0.0 && radius < 1.0, || {
        format!("inner radius must lie in (0, 1), got {radius}")
    })?;
    check_size("n_r", nr, 3)?;
    check_size("n_θ", ntheta, 4)?;
    let h = (1.0 - radius) / (nr - 1) as f64;
    let rs: Vec<f64> = (0..nr).map(|i| radius + i as f64 * h).collect();
    let ts = theta_grid(ntheta);
    let dft = Dft::new(ntheta);
    let gi = dft.forward(&ts.iter().map(|&t| inner(t)).collect::<Vec<_>>());
    let go = dft.forward(&ts.iter().map(|&t| outer(t)).collect::<Vec<_>>());

    let m = nr - 2;
    let mut u = vec![0.0; nr * ntheta];
    let mut modes = vec![vec![Complex64::new(0.0, 0.0); ntheta]; nr];
    modes[0] = gi.clone();
    modes[nr - 1] = go.clone();
    for mm in 0..ntheta {
        let mu = dft.eigenvalue(mm);
        let (mut sub, mut diag, mut sup) = (vec![0.0; m], vec![0.0; m], vec![0.0; m]);
        let mut rhs = vec![Complex64::new(0.0, 0.0); m];
        for k in 0..m {
            let i = k + 1;
            let a = (rs[i] - 0.5 * h) / (rs[i] * h * h);
            let c = (rs[i] + 0.5 * h) / (rs[i] * h * h);
            sub[k] = a;
            sup[k] = c;
            diag[k] = -(a + c) + mu / (rs[i] * rs[i]);
            if i == 1 {
                rhs[k] -= gi[mm] * a;
            }
            if i == nr - 2 {
                rhs[k] -= go[mm] * c;
            }
        }
        solve_tridiagonal(&sub, &diag, &sup, &mut rhs)?;
        for k in 0..m {
            modes[k + 1][mm] = rhs[k];
        }
    }
    for i in 0..nr {
        dft.inverse_re(&modes[i], &mut u[i * ntheta..(i + 1) * ntheta]);
    }
    // boundary rows carry the imposed samples exactly
    for (j, &t) in ts.iter().enumerate() {
        u[j] = inner(t);
        u[(nr - 1) * ntheta + j] = outer(t);
    }
    GridSolution {
        kind: GridKind::Annulus,
        axis1: rs,
        axis2: ts,
        values: u,
    }
    .checked()
}

/// Coupled disk: `u = g(θ)` at `r = 1`, value continuity and
/// `k·∂ᵣu₁ = ∂ᵣu₂` at `r = R`, with one-sided second-order differences on
/// each side of the interface. `R` must fall on a grid line.
pub fn fd_disk_coupled(
    g: impl Fn(f64) -> f64,
    cfg: RadialLayerConfig,
    nr: usize,
    ntheta: usize,
) -> Result<GridSolution> {
    check_size("n_r", nr, 6)?;
    check_size("n_θ", ntheta, 4)?;
    let h = 1.0 / (nr - 1) as f64;
    let interface = (cfg.radius() / h).round() as usize;
    ensure((interface as f64 * h - cfg.radius()).abs() <= 1e-9, || {
        format!(
            "interface radius {} is not on the grid with step {h}",
            cfg.radius()
        )
    })?;
    ensure(interface >= 2 && interface + 2 < nr, || {
        format!("interface needs two grid lines on each side (n_r = {nr})")
    })?;
    solve_disk(g, cfg.k(), interface, nr, ntheta)
}

/// Single-region disk, the `k = 1` case with no interface row.
pub fn fd_disk(g: impl Fn(f64) -> f64, nr: usize, ntheta: usize) -> Result<GridSolution> {
    check_size("n_r", nr, 6)?;
    check_size("n_θ", ntheta, 4)?;
    solve_disk(g, 1.0, 2, nr, ntheta)
}

fn solve_disk(
    g: impl Fn(f64) -> f64,
    k: f64,
    interface: usize,
    nr: usize,
    ntheta: usize,
) -> Result<GridSolution> {
    let h = 1.0 / (nr - 1) as f64;
    let rs: Vec<f64> = (0..nr).map(|i| i as f64 * h).collect();
    let ts = theta_grid(ntheta);
    let dft = Dft::new(ntheta);
    let gb = dft.forward(&ts.iter().map(|&t| g(t)).collect::<Vec<_>>());
    let n = nr - 1; // unknown rows 0..n−1, row n is the boundary
    let zero = Complex64::new(0.0, 0.0);

    let mut modes = vec![vec![zero; ntheta]; nr];
    modes[n] = gb.clone();
    for mm in 0..ntheta {
        let mu = dft.eigenvalue(mm);
        // full rows: coefficients on i−2..=i+2 plus rhs
        let mut rows: Vec<([f64; 5], Complex64)> = vec![([0.0; 5], zero); n];
        for (i, row) in rows.iter_mut().enumerate() {
            if i == 0 {
                if mm == 0 {
                    row.0[2] = -1.0;
                    row.0[3] = 1.0;
                } else {
                    row.0[2] = 1.0;
                }
            } else if i == interface && k != 1.0 {
                let s = 1.0 / (2.0 * h);
                row.0 = [-s, 4.0 * s, -3.0 * (k + 1.0) * s, 4.0 * k * s, -k * s];
            } else {
                let a = (rs[i] - 0.5 * h) / (rs[i] * h * h);
                let c = (rs[i] + 0.5 * h) / (rs[i] * h * h);
                row.0[1] = a;
                row.0[2] = -(a + c) + mu / (rs[i] * rs[i]);
                row.0[3] = c;
            }
        }
        // move boundary values (column n) to the right-hand side
        for (i, row) in rows.iter_mut().enumerate() {
            for (d, coef) in row.0.iter_mut().enumerate() {
                if i + d == n + 2 && *coef != 0.0 {
                    row.1 -= gb[mm] * *coef;
                    *coef = 0.0;
                }
            }
        }
        if k != 1.0 {
            let i = interface;
            // eliminate u_{i+2} with row i+1 (tridiagonal: slots 1..=3)
            let (r1, d1) = rows[i + 1];
            let f = rows[i].0[4] / r1[3];
            if rows[i].0[4] != 0.0 {
                rows[i].0[2] -= f * r1[1];
                rows[i].0[3] -= f * r1[2];
                rows[i].1 -= d1 * f;
                rows[i].0[4] = 0.0;
            }
            // eliminate u_{i−2} with row i−1
            let (r0, d0) = rows[i - 1];
            let f = rows[i].0[0] / r0[1];
            rows[i].0[1] -= f * r0[2];
            rows[i].0[2] -= f * r0[3];
            rows[i].1 -= d0 * f;
            rows[i].0[0] = 0.0;
        }
        let sub: Vec<f64> = rows.iter().map(|r| r.0[1]).collect();
        let diag: Vec<f64> = rows.iter().map(|r| r.0[2]).collect();
        let sup: Vec<f64> = rows.iter().map(|r| r.0[3]).collect();
        let mut rhs: Vec<Complex64> = rows.iter().map(|r| r.1).collect();
        solve_tridiagonal(&sub, &diag, &sup, &mut rhs)?;
        for i in 0..n {
            modes[i][mm] = rhs[i];
        }
    }
    let mut u = vec![0.0; nr * ntheta];
    for i in 0..nr {
        dft.inverse_re(&modes[i], &mut u[i * ntheta..(i + 1) * ntheta]);
    }
    for (j, &t) in ts.iter().enumerate() {
        u[n * ntheta + j] = g(t);
    }
    // the centre is one node; the transform of a constant row returns it
    let c = u[0];
    u[..ntheta].iter_mut().for_each(|v| *v = c);
    GridSolution {
        kind: GridKind::DiskCoupled { interface, k },
        axis1: rs,
        axis2: ts,
        values: u,
    }
    .checked()
}
