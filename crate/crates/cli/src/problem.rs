//! A validated problem: geometry, boundary field, grid, and the methods that
//! can be run on it.

use std::f64::consts::PI;

use harmonic_layers::asymptotics::{
    thm1_halfplane_small_k, thm2_halfplane_large_k, thm3_strip, thm4_disk_large_k,
    thm4_disk_small_k, thm5_annulus, ApproxOrder, CoupledDiskAsym, CoupledHalfPlaneAsym, EMOrder,
};
use harmonic_layers::harmonic::{
    disk_from_boundary, BoundaryTrace, DiskField, HalfPlaneField, PlanarMode,
};
use harmonic_layers::oracle::{
    fd_annulus, fd_disk_coupled, fd_strip, mode_exact, BruteSeries, GridSolution, Mode,
};
use harmonic_layers::transform::{
    annulus_dirichlet, convergence_diagnostic, diagnose_terms, disk_coupled, halfplane_coupled,
    reflection_ratio, strip_dirichlet, DiagnosticOptions, Geometry, LayeredSolution,
    PlanarLayerConfig, RadialLayerConfig, Recommendation, RegimeReport, Region, Truncation,
    DEFAULT_THRESHOLD, DEFAULT_TOL,
};
use harmonic_layers::{Point2, PolarPoint};
use rayon::prelude::*;

use crate::config::{GridConfig, Hold, Method, ModeConfig, ProblemKind, RunConfig};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub enum Field {
    Planar(HalfPlaneField),
    Disk(DiskField),
}

impl Field {
    /// û at a Cartesian point.
    pub fn value(&self, p: Point2) -> f64 {
        match self {
            Field::Planar(f) => f.value(p.x, p.y),
            Field::Disk(f) => {
                let q = p.to_polar();
                f.value(q.r, q.theta)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub kind: ProblemKind,
    pub geometry: Geometry,
    pub field: Field,
    pub truncation: Truncation,
    pub order: ApproxOrder,
}

fn forbid(kind: ProblemKind, name: &str, v: Option<f64>) -> CliResult<()> {
    match v {
        Some(_) => Err(CliError::validation(format!(
            "geometry field {name} does not apply to {}",
            kind.as_str()
        ))),
        None => Ok(()),
    }
}

fn require(kind: ProblemKind, name: &str, v: Option<f64>) -> CliResult<f64> {
    v.ok_or_else(|| CliError::validation(format!("{} needs geometry field {name}", kind.as_str())))
}

fn check_radius(r: f64) -> CliResult<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(CliError::validation(format!(
            "inner radius R must lie in (0, 1), got {r}"
        )))
    }
}

fn build_geometry(cfg: &RunConfig) -> CliResult<Geometry> {
    let g = cfg.geometry;
    let kind = cfg.problem;
    Ok(match kind {
        ProblemKind::HalfplaneCoupled => {
            forbid(kind, "R", g.radius)?;
            let c = PlanarLayerConfig::new(require(kind, "l", g.l)?, require(kind, "k", g.k)?)?;
            let c = c.with_diffusivities(g.a1.unwrap_or(1.0), g.a2.unwrap_or(1.0))?;
            Geometry::HalfPlaneCoupled(c)
        }
        ProblemKind::Strip => {
            for (n, v) in [("k", g.k), ("a1", g.a1), ("a2", g.a2), ("R", g.radius)] {
                forbid(kind, n, v)?;
            }
            let l = require(kind, "l", g.l)?;
            if !(l > 0.0 && l.is_finite()) {
                return Err(CliError::validation(format!(
                    "strip width must be positive, got {l}"
                )));
            }
            Geometry::Strip { l }
        }
        ProblemKind::DiskCoupled => {
            for (n, v) in [("l", g.l), ("a1", g.a1), ("a2", g.a2)] {
                forbid(kind, n, v)?;
            }
            let r = require(kind, "R", g.radius)?;
            check_radius(r)?;
            Geometry::DiskCoupled(RadialLayerConfig::new(r, require(kind, "k", g.k)?)?)
        }
        ProblemKind::Annulus => {
            for (n, v) in [("l", g.l), ("k", g.k), ("a1", g.a1), ("a2", g.a2)] {
                forbid(kind, n, v)?;
            }
            let r = require(kind, "R", g.radius)?;
            check_radius(r)?;
            Geometry::Annulus { radius: r }
        }
    })
}

fn build_field(cfg: &RunConfig) -> CliResult<Field> {
    let b = &cfg.boundary;
    let polar = cfg.problem.is_polar();
    match (&b.modes, &b.samples) {
        (Some(modes), None) => {
            if b.sample_modes.is_some() {
                return Err(CliError::validation("sample_modes needs a sample file"));
            }
            if polar {
                let deg = modes
                    .iter()
                    .map(|m| match m {
                        ModeConfig::Disk(d) => Ok(d.n),
                        ModeConfig::Planar(_) => Err(CliError::validation(
                            "planar mode {omega, A, phi} given for a disk problem",
                        )),
                    })
                    .collect::<CliResult<Vec<_>>>()?
                    .into_iter()
                    .max()
                    .unwrap_or(0);
                let (mut a, mut bs) = (vec![0.0; deg + 1], vec![0.0; deg + 1]);
                for m in modes {
                    if let ModeConfig::Disk(d) = m {
                        a[d.n] += d.a;
                        bs[d.n] += d.b;
                    }
                }
                Ok(Field::Disk(DiskField::new(a, bs)?))
            } else {
                let planar = modes
                    .iter()
                    .map(|m| match m {
                        ModeConfig::Planar(p) => Ok(PlanarMode {
                            amplitude: p.amplitude,
                            frequency: p.omega,
                            phase: p.phi,
                        }),
                        ModeConfig::Disk(_) => Err(CliError::validation(
                            "disk mode {n, a, b} given for a planar problem",
                        )),
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(Field::Planar(HalfPlaneField::new(planar, Vec::new())?))
            }
        }
        (None, Some(path)) => {
            let trace = BoundaryTrace::from_csv_path(cfg.resolve(path))?;
            if polar {
                let n = b.sample_modes.unwrap_or((trace.len().max(1) - 1) / 2);
                Ok(Field::Disk(disk_from_boundary(&trace, n)?))
            } else {
                if b.sample_modes.is_some() {
                    return Err(CliError::validation(
                        "sample_modes applies to circle samples only",
                    ));
                }
                Ok(Field::Planar(HalfPlaneField::from_trace(&trace)?))
            }
        }
        _ => Err(CliError::validation(
            "boundary needs exactly one of modes or samples",
        )),
    }
}

fn build_truncation(cfg: &RunConfig) -> CliResult<Truncation> {
    let t = cfg.truncation;
    match (t.terms, t.tol) {
        (Some(_), Some(_)) => Err(CliError::validation("truncation takes J or tol, not both")),
        (Some(j), None) => {
            if t.sup_bound.is_some() {
                return Err(CliError::validation(
                    "sup_bound applies to tol truncation only",
                ));
            }
            Ok(Truncation::MaxTerms(j))
        }
        (None, tol) => Ok(Truncation::TailTol {
            tol: tol.unwrap_or(DEFAULT_TOL),
            sup_bound: t.sup_bound,
        }),
    }
}

impl Problem {
    pub fn from_config(cfg: &RunConfig) -> CliResult<Self> {
        let order = match cfg.em_order {
            Some(k) => ApproxOrder::Corrected(EMOrder::new(k)?),
            None => ApproxOrder::Leading,
        };
        Ok(Problem {
            kind: cfg.problem,
            geometry: build_geometry(cfg)?,
            field: build_field(cfg)?,
            truncation: build_truncation(cfg)?,
            order,
        })
    }

    /// The same problem with outer-layer thickness `t`, keeping either the
    /// coupling ratio or the Robin parameter.
    pub fn with_thickness(&self, t: f64, hold: Hold) -> CliResult<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::validation(format!(
                "thickness must be positive, got {t}"
            )));
        }
        let keep_h = |rho: f64, h: Option<f64>, log_step: f64| -> f64 {
            // ρ' = sign(ρ)·e^{h·log_step}
            match h {
                Some(h) if hold == Hold::Robin => rho.signum() * (h * log_step).exp(),
                _ => rho,
            }
        };
        let k_of = |rho: f64| (1.0 - rho) / (1.0 + rho);
        let geometry = match self.geometry {
            Geometry::HalfPlaneCoupled(c) => {
                let rho = keep_h(c.rho(), c.robin_h(), 2.0 * t);
                Geometry::HalfPlaneCoupled(c.with_l(t)?.with_k(k_of(rho))?)
            }
            Geometry::Strip { .. } => Geometry::Strip { l: t },
            Geometry::DiskCoupled(c) => {
                let r = 1.0 - t;
                check_radius(r)?;
                let rho = keep_h(c.rho(), c.robin_h(), 2.0 * r.ln());
                Geometry::DiskCoupled(RadialLayerConfig::new(r, k_of(rho))?)
            }
            Geometry::Annulus { .. } => {
                check_radius(1.0 - t)?;
                Geometry::Annulus { radius: 1.0 - t }
            }
        };
        Ok(Problem {
            geometry,
            ..self.clone()
        })
    }

    /// The boundary data as one closed-form mode, when it is one.
    pub fn single_mode(&self) -> Option<Mode> {
        match &self.field {
            Field::Planar(f) if !f.has_sources() && f.modes().len() == 1 => {
                Some(Mode::Planar(f.modes()[0]))
            }
            Field::Disk(f) => {
                let (a, b) = (f.cos_coeffs(), f.sin_coeffs());
                let live: Vec<usize> = (0..a.len())
                    .filter(|&n| a[n] != 0.0 || b[n] != 0.0)
                    .collect();
                match live[..] {
                    [n] if n >= 1 => Some(Mode::Disk {
                        n,
                        cos: a[n],
                        sin: b[n],
                    }),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    pub fn robin_h(&self) -> Option<f64> {
        match self.geometry {
            Geometry::HalfPlaneCoupled(c) => c.robin_h(),
            Geometry::DiskCoupled(c) => c.robin_h(),
            _ => None,
        }
    }

    fn sup_bound(&self) -> f64 {
        if let Truncation::TailTol {
            sup_bound: Some(m), ..
        } = self.truncation
        {
            return m;
        }
        match (&self.field, self.geometry) {
            (Field::Planar(f), Geometry::HalfPlaneCoupled(c)) => f.sup_bound(2.0 * c.l()),
            (Field::Disk(f), _) => f.sup_bound(),
            (Field::Planar(f), _) => f.sup_bound(0.0),
        }
    }

    /// Regime advice for the series at tolerance `tol`.
    pub fn regime(&self, tol: f64, threshold: usize) -> CliResult<Option<RegimeReport>> {
        match self.geometry {
            Geometry::HalfPlaneCoupled(_) | Geometry::DiskCoupled(_) => {
                let rho = self
                    .geometry
                    .coupling()
                    .map(reflection_ratio)
                    .unwrap_or(0.0);
                let m = (1.0 + rho.abs()) * self.sup_bound();
                if m == 0.0 {
                    return Ok(Some(RegimeReport {
                        rho,
                        h: self.robin_h(),
                        terms_needed: 1,
                        threshold,
                        recommendation: Recommendation::Series,
                    }));
                }
                let opts = DiagnosticOptions {
                    tol,
                    sup_bound: m,
                    threshold,
                };
                Ok(Some(convergence_diagnostic(&self.geometry, &opts)?))
            }
            _ => {
                let trunc = Truncation::TailTol {
                    tol,
                    sup_bound: None,
                };
                let terms = match (&self.field, self.geometry) {
                    (Field::Planar(f), Geometry::Strip { l }) => {
                        strip_dirichlet(f, l, trunc).map(|s| s.terms())
                    }
                    (Field::Disk(f), Geometry::Annulus { radius }) => {
                        annulus_dirichlet(f, radius, trunc).map(|s| s.terms())
                    }
                    _ => unreachable!("field kind is tied to the geometry"),
                };
                match terms {
                    Ok(j) => Ok(Some(diagnose_terms(j, threshold))),
                    Err(harmonic_layers::Error::Convergence { .. }) => Ok(None),
                    Err(e) => Err(e.into()),
                }
            }
        }
    }

    pub fn build(&self, method: Method, grid: &Grid) -> CliResult<Built> {
        match method {
            Method::Series => self.build_series(),
            Method::Asymptotic => self.build_asymptotic(),
            Method::Oracle => self.build_oracle(grid),
            Method::Raw => Ok(Built::Solution(Box::new(RawSolution {
                geometry: self.geometry,
                field: self.field.clone(),
            }))),
        }
    }

    fn build_series(&self) -> CliResult<Built> {
        let t = self.truncation;
        let sol: Box<dyn LayeredSolution> = match (&self.field, self.geometry) {
            (Field::Planar(f), Geometry::HalfPlaneCoupled(c)) => {
                Box::new(halfplane_coupled(f, c, t)?)
            }
            (Field::Planar(f), Geometry::Strip { l }) => Box::new(strip_dirichlet(f, l, t)?),
            (Field::Disk(f), Geometry::DiskCoupled(c)) => Box::new(disk_coupled(f, c, t)?),
            (Field::Disk(f), Geometry::Annulus { radius }) => {
                Box::new(annulus_dirichlet(f, radius, t)?)
            }
            _ => unreachable!("field kind is tied to the geometry"),
        };
        Ok(Built::Solution(sol))
    }

    fn build_asymptotic(&self) -> CliResult<Built> {
        let o = self.order;
        Ok(match (&self.field, self.geometry) {
            (Field::Planar(f), Geometry::HalfPlaneCoupled(c)) => {
                let a = if c.k() < 1.0 {
                    thm1_halfplane_small_k(f, c)?
                } else {
                    thm2_halfplane_large_k(f, c)?
                };
                Built::HalfPlaneAsym(a.with_order(o))
            }
            (Field::Planar(f), Geometry::Strip { l }) => {
                Built::Solution(Box::new(thm3_strip(f, l)?.with_order(o)))
            }
            (Field::Disk(f), Geometry::DiskCoupled(c)) => {
                let a = if c.k() < 1.0 {
                    thm4_disk_small_k(f, c)?
                } else {
                    thm4_disk_large_k(f, c)?
                };
                Built::DiskAsym(a.with_order(o))
            }
            (Field::Disk(f), Geometry::Annulus { radius }) => {
                Built::Solution(Box::new(thm5_annulus(f, radius)?.with_order(o)))
            }
            _ => unreachable!("field kind is tied to the geometry"),
        })
    }

    /// Closed form for a single mode, brute-force images otherwise.
    fn pointwise_reference(&self) -> CliResult<Box<dyn LayeredSolution>> {
        if let Some(m) = self.single_mode() {
            return Ok(Box::new(mode_exact(self.geometry, m)?));
        }
        let cap = BruteSeries::DEFAULT_CAP;
        Ok(Box::new(match &self.field {
            Field::Planar(f) => BruteSeries::halfplane(f, self.geometry, cap)?,
            Field::Disk(f) => BruteSeries::disk(f, self.geometry, cap)?,
        }))
    }

    /// Finite differences on the output grid for the bounded problems; the
    /// unbounded coupled half-plane uses the pointwise reference.
    fn build_oracle(&self, grid: &Grid) -> CliResult<Built> {
        let fd_grid = |name: &str, lo: f64, hi: f64| -> CliResult<()> {
            let a = &grid.axis1;
            let ok =
                a.len() >= 3 && (a[0] - lo).abs() <= 1e-12 && (a[a.len() - 1] - hi).abs() <= 1e-12;
            if ok {
                Ok(())
            } else {
                Err(CliError::validation(format!(
                    "the finite-difference oracle needs the grid {name} axis to run from {lo} to {hi}"
                )))
            }
        };
        let field = self.field.clone();
        let g_planar = |y: f64| field.value(Point2 { x: 0.0, y });
        let g_circle = |t: f64| field.value(PolarPoint { r: 1.0, theta: t }.to_cartesian());
        let sol = match self.geometry {
            Geometry::HalfPlaneCoupled(_) => {
                return Ok(Built::Solution(self.pointwise_reference()?))
            }
            Geometry::Strip { l } => {
                fd_grid("x", 0.0, l)?;
                let reference = self.pointwise_reference()?;
                let (y0, y1) = (grid.axis2[0], grid.axis2[grid.axis2.len() - 1]);
                fd_strip(
                    g_planar,
                    |x, y| reference.eval_in(Region::Layer1, Point2 { x, y }),
                    l,
                    (y0, y1),
                    grid.axis1.len(),
                    grid.axis2.len(),
                )?
            }
            Geometry::Annulus { radius } => {
                fd_grid("r", radius, 1.0)?;
                fd_annulus(
                    g_circle,
                    |_| 0.0,
                    radius,
                    grid.axis1.len(),
                    grid.axis2.len(),
                )?
            }
            Geometry::DiskCoupled(c) => {
                fd_grid("r", 0.0, 1.0)?;
                fd_disk_coupled(g_circle, c, grid.axis1.len(), grid.axis2.len())?
            }
        };
        Ok(Built::Grid(sol))
    }
}

/// û presented as a solution of the layered problem.
struct RawSolution {
    geometry: Geometry,
    field: Field,
}

impl LayeredSolution for RawSolution {
    fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    fn eval_in(&self, _region: Region, p: Point2) -> f64 {
        self.field.value(p)
    }
}

pub enum Built {
    Solution(Box<dyn LayeredSolution>),
    HalfPlaneAsym(CoupledHalfPlaneAsym),
    DiskAsym(CoupledDiskAsym),
    Grid(GridSolution),
}

impl Built {
    pub fn solution(&self) -> Option<&dyn LayeredSolution> {
        match self {
            Built::Solution(s) => Some(s.as_ref()),
            Built::HalfPlaneAsym(a) => Some(a),
            Built::DiskAsym(a) => Some(a),
            Built::Grid(_) => None,
        }
    }

    pub fn terms(&self) -> usize {
        self.solution().map_or(0, |s| s.terms())
    }

    pub fn tail_bound(&self) -> f64 {
        self.solution().map_or(0.0, |s| s.tail_bound())
    }

    /// Pointwise error bound reported by the method, if it has one.
    fn bound_at(&self, region: Region, p: Point2) -> Option<f64> {
        match self {
            Built::HalfPlaneAsym(a) => a.bound_at(region, p).ok(),
            Built::DiskAsym(a) => a.bound_at(region, p).ok(),
            Built::Solution(s) if s.terms() > 0 => Some(s.tail_bound()),
            _ => None,
        }
    }

    /// Values on every node of `grid`, in node order.
    pub fn values(&self, grid: &Grid) -> Vec<f64> {
        match self {
            Built::Grid(g) => (0..grid.axis1.len())
                .flat_map(|i| (0..grid.axis2.len()).map(move |j| (i, j)))
                .map(|(i, j)| g.value(i, j))
                .collect(),
            _ => {
                let s = self.solution().expect("pointwise method");
                grid.nodes
                    .par_iter()
                    .map(|n| s.eval_in(n.region, n.point))
                    .collect()
            }
        }
    }

    pub fn bounds(&self, grid: &Grid) -> Vec<Option<f64>> {
        grid.nodes
            .par_iter()
            .map(|n| self.bound_at(n.region, n.point))
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Node {
    pub coords: (f64, f64),
    pub point: Point2,
    pub region: Region,
}

/// Output grid, axis 1 (`x` or `r`) outermost.
#[derive(Debug, Clone)]
pub struct Grid {
    pub polar: bool,
    pub axis1: Vec<f64>,
    pub axis2: Vec<f64>,
    pub nodes: Vec<Node>,
}

impl Grid {
    pub fn new(cfg: Option<&GridConfig>, problem: &Problem) -> CliResult<Self> {
        let cfg = cfg.ok_or_else(|| CliError::validation("this command needs a grid"))?;
        let polar = problem.kind.is_polar();
        let (axis1, axis2) = match (polar, cfg.x, cfg.y, cfg.r, cfg.theta) {
            (false, Some(x), Some(y), None, None) => (x, y),
            (true, None, None, Some(r), Some(nt)) => {
                if nt == 0 {
                    return Err(CliError::validation("theta needs at least one angle"));
                }
                let ts = (0..nt).map(|j| 2.0 * PI * j as f64 / nt as f64).collect();
                return Self::from_axes(polar, r.nodes_checked()?, ts, problem);
            }
            (false, ..) => return Err(CliError::validation("planar grids take x and y axes only")),
            (true, ..) => return Err(CliError::validation("polar grids take r and theta only")),
        };
        Self::from_axes(
            polar,
            axis1.nodes_checked()?,
            axis2.nodes_checked()?,
            problem,
        )
    }

    fn from_axes(
        polar: bool,
        axis1: Vec<f64>,
        axis2: Vec<f64>,
        problem: &Problem,
    ) -> CliResult<Self> {
        let mut nodes = Vec::with_capacity(axis1.len() * axis2.len());
        for &a in &axis1 {
            for &b in &axis2 {
                let point = if polar {
                    if a < 0.0 {
                        return Err(CliError::validation(format!("negative radius {a} in grid")));
                    }
                    PolarPoint { r: a, theta: b }.to_cartesian()
                } else {
                    Point2 { x: a, y: b }
                };
                let region = problem.geometry.region(point);
                if region == Region::Outside {
                    return Err(CliError::validation(format!(
                        "grid node ({a}, {b}) lies outside the {} domain",
                        problem.kind.as_str()
                    )));
                }
                nodes.push(Node {
                    coords: (a, b),
                    point,
                    region,
                });
            }
        }
        Ok(Grid {
            polar,
            axis1,
            axis2,
            nodes,
        })
    }

    /// Same axes, revalidated against another problem.
    pub fn for_problem(&self, problem: &Problem) -> CliResult<Self> {
        Self::from_axes(self.polar, self.axis1.clone(), self.axis2.clone(), problem)
    }

    pub fn header(&self) -> [&'static str; 2] {
        if self.polar {
            ["r", "theta"]
        } else {
            ["x", "y"]
        }
    }
}

impl crate::config::Axis {
    fn nodes_checked(&self) -> CliResult<Vec<f64>> {
        if self.n == 0 || !self.from.is_finite() || !self.to.is_finite() || self.to < self.from {
            return Err(CliError::validation(format!(
                "grid axis needs from <= to and n >= 1, got {self:?}"
            )));
        }
        if self.n == 1 && self.from != self.to {
            return Err(CliError::validation("a single-node axis needs from == to"));
        }
        Ok(self.nodes())
    }
}

pub fn regime_settings(cfg: &RunConfig, problem: &Problem) -> (f64, usize) {
    let tol = cfg.regime.tol.unwrap_or(match problem.truncation {
        Truncation::TailTol { tol, .. } => tol,
        Truncation::MaxTerms(_) => DEFAULT_TOL,
    });
    (tol, cfg.regime.threshold.unwrap_or(DEFAULT_THRESHOLD))
}
