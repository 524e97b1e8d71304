mod config;
mod layered;
mod regime;
mod series;
mod truncation;

pub use config::{reflection_ratio, PlanarLayerConfig, RadialLayerConfig};
pub use layered::{Geometry, LayeredSolution, Region};
pub use regime::{
    convergence_diagnostic, diagnose_rho, diagnose_terms, DiagnosticOptions, Recommendation,
    RegimeReport, DEFAULT_THRESHOLD, DEFAULT_TOL,
};
pub use series::{
    annulus_dirichlet, disk_coupled, halfplane_coupled, strip_dirichlet, AnnulusSeries,
    CoupledDiskSeries, CoupledHalfPlaneSeries, StripSeries,
};
pub use truncation::{geometric_tail, geometric_tail_terms, Truncation, TERM_CAP};
