//! When is the image series worth summing?

use crate::error::{ensure, Result};
use crate::transform::layered::Geometry;
use crate::transform::truncation::geometric_tail_terms;

pub const DEFAULT_THRESHOLD: usize = 1_000;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recommendation {
    Series,
    Asymptotic,
}

impl Recommendation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Recommendation::Series => "series",
            Recommendation::Asymptotic => "asymptotic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticOptions {
    pub tol: f64,
    /// Bound on a single bracketed term of the ladder.
    pub sup_bound: f64,
    pub threshold: usize,
}

impl Default for DiagnosticOptions {
    fn default() -> Self {
        DiagnosticOptions {
            tol: DEFAULT_TOL,
            sup_bound: 1.0,
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub rho: f64,
    pub h: Option<f64>,
    pub terms_needed: usize,
    pub threshold: usize,
    pub recommendation: Recommendation,
}

impl RegimeReport {
    pub fn is_warning(&self) -> bool {
        self.recommendation == Recommendation::Asymptotic
    }
}

/// Terms needed for a `ρ`-weighted ladder, and the resulting advice.
pub fn diagnose_rho(rho: f64, h: Option<f64>, opts: &DiagnosticOptions) -> Result<RegimeReport> {
    ensure(opts.threshold >= 1, || {
        "regime threshold must be at least 1".into()
    })?;
    let terms_needed = geometric_tail_terms(rho, opts.tol, opts.sup_bound)?;
    let recommendation = if terms_needed > opts.threshold {
        Recommendation::Asymptotic
    } else {
        Recommendation::Series
    };
    Ok(RegimeReport {
        rho,
        h,
        terms_needed,
        threshold: opts.threshold,
        recommendation,
    })
}

/// Diagnostic for the coupled geometries. The unweighted strip and annulus
/// ladders have `ρ = 1` and no Robin parameter; their term count depends on
/// the data and is reported by the caller through [`diagnose_terms`].
pub fn convergence_diagnostic(
    geometry: &Geometry,
    opts: &DiagnosticOptions,
) -> Result<RegimeReport> {
    match geometry {
        Geometry::HalfPlaneCoupled(c) => diagnose_rho(c.rho(), c.robin_h(), opts),
        Geometry::DiskCoupled(c) => diagnose_rho(c.rho(), c.robin_h(), opts),
        Geometry::Strip { .. } | Geometry::Annulus { .. } => Err(crate::error::Error::Validation(
            "unweighted ladders need the boundary data; use diagnose_terms".into(),
        )),
    }
}

pub fn diagnose_terms(terms_needed: usize, threshold: usize) -> RegimeReport {
    RegimeReport {
        rho: 1.0,
        h: None,
        terms_needed,
        threshold,
        recommendation: if terms_needed > threshold {
            Recommendation::Asymptotic
        } else {
            Recommendation::Series
        },
    }
}
