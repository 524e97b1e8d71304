mod brute;
mod exact;
mod fd;
mod report;

pub use brute::{brute_series, brute_unweighted, BruteSeries, BruteSum, ARBITER_TOL};
pub use exact::{mode_exact, Mode, ModeExact};
pub use fd::{fd_annulus, fd_disk, fd_disk_coupled, fd_strip, GridKind, GridSolution, SOLVER_TOL};
pub use report::{residual_report, ErrorReport, SamplePlan};
