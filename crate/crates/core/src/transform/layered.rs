use crate::geometry::Point2;
use crate::transform::config::{PlanarLayerConfig, RadialLayerConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Layer1,
    Layer2,
    Outside,
}

impl Region {
    pub fn tag(&self) -> &'static str {
        match self {
            Region::Layer1 => "1",
            Region::Layer2 => "2",
            Region::Outside => "outside",
        }
    }
}

/// The four problems: which regions exist and where their boundaries lie.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    HalfPlaneCoupled(PlanarLayerConfig),
    Strip { l: f64 },
    DiskCoupled(RadialLayerConfig),
    Annulus { radius: f64 },
}

const EDGE: f64 = 1e-12;

impl Geometry {
    pub fn is_polar(&self) -> bool {
        matches!(self, Geometry::DiskCoupled(_) | Geometry::Annulus { .. })
    }

    pub fn region(&self, p: Point2) -> Region {
        match *self {
            Geometry::HalfPlaneCoupled(c) => {
                if p.x < -EDGE {
                    Region::Outside
                } else if p.x <= c.l() {
                    Region::Layer1
                } else {
                    Region::Layer2
                }
            }
            Geometry::Strip { l } => {
                if p.x < -EDGE || p.x > l + EDGE {
                    Region::Outside
                } else {
                    Region::Layer1
                }
            }
            Geometry::DiskCoupled(c) => {
                let r = p.radius();
                if r > 1.0 + EDGE {
                    Region::Outside
                } else if r >= c.radius() {
                    Region::Layer1
                } else {
                    Region::Layer2
                }
            }
            Geometry::Annulus { radius } => {
                let r = p.radius();
                if r > 1.0 + EDGE || r < radius - EDGE {
                    Region::Outside
                } else {
                    Region::Layer1
                }
            }
        }
    }

    /// Coupling ratio across the interface, when there is one.
    pub fn coupling(&self) -> Option<f64> {
        match self {
            Geometry::HalfPlaneCoupled(c) => Some(c.k()),
            Geometry::DiskCoupled(c) => Some(c.k()),
            _ => None,
        }
    }

    /// Thickness of the outer layer: `l` or `1 − R`.
    pub fn thickness(&self) -> f64 {
        match self {
            Geometry::HalfPlaneCoupled(c) => c.l(),
            Geometry::Strip { l } => *l,
            Geometry::DiskCoupled(c) => 1.0 - c.radius(),
            Geometry::Annulus { radius } => 1.0 - radius,
        }
    }

    /// Coefficient `a` in `a²u_xx + u_yy` for the given region.
    pub fn anisotropy(&self, region: Region) -> f64 {
        match (self, region) {
            (Geometry::HalfPlaneCoupled(c), Region::Layer1) => c.a1(),
            (Geometry::HalfPlaneCoupled(c), Region::Layer2) => c.a2(),
            _ => 1.0,
        }
    }
}

/// A piecewise field `u = χ(layer 1)·u₁ + χ(layer 2)·u₂`.
///
/// `eval_in` evaluates a region's formula at any point where it is defined,
/// so stencils and one-sided differences may straddle the interface.
pub trait LayeredSolution: Send + Sync {
    fn geometry(&self) -> &Geometry;

    fn eval_in(&self, region: Region, p: Point2) -> f64;

    /// Normal flux (`∂/∂x` planar, `L₀ = r ∂/∂r` radial) in closed form.
    fn flux_in(&self, _region: Region, _p: Point2) -> Option<f64> {
        None
    }

    /// Bound on the series truncation error of a single evaluation.
    fn tail_bound(&self) -> f64 {
        0.0
    }

    /// Number of image terms summed, `0` when not a series.
    fn terms(&self) -> usize {
        0
    }

    fn region(&self, p: Point2) -> Region {
        self.geometry().region(p)
    }

    fn eval(&self, p: Point2) -> Option<f64> {
        match self.region(p) {
            Region::Outside => None,
            r => Some(self.eval_in(r, p)),
        }
    }
}
