mod bernoulli;
mod euler_maclaurin;
mod links;
mod profile;
mod theorems;
mod variation;

pub use bernoulli::{bernoulli, bernoulli_f64, shared_table, BernoulliTable, SHARED_CAPACITY};
pub use euler_maclaurin::{
    em_log_sum, em_ray_sum, ladder_radial_asym, ladder_ray_asym, log_step, weighted_radial_asym,
    weighted_radial_asym_alt, weighted_ray_asym, weighted_ray_asym_alt, EMOrder,
};
pub use links::{
    neumann_link_disk, neumann_link_halfplane, robin_link_disk, robin_link_halfplane,
    PlanarRobinField, RobinGeometry, RobinParameter,
};
pub use profile::{ExpSum, FnProfile, PowerSum, RadialProfile, RayProfile};
pub use theorems::{
    thm1_halfplane_small_k, thm2_halfplane_large_k, thm3_strip, thm4_disk_large_k,
    thm4_disk_small_k, thm5_annulus, AnnulusAsym, ApproxOrder, ContrastBranch, CoupledDiskAsym,
    CoupledHalfPlaneAsym, StripAsym,
};
pub use variation::{lemma1_bound, lemma2_bound, total_variation, total_variation_ray, TVEstimate};
