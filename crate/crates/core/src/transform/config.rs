use crate::error::{ensure, Result};

/// Planar two-layer geometry: layer 1 is `0 < x < l`, layer 2 is `x > l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarLayerConfig {
    l: f64,
    k: f64,
    a1: f64,
    a2: f64,
    conductivities: Option<(f64, f64)>,
}

fn positive(name: &str, v: f64) -> Result<()> {
    ensure(v.is_finite() && v > 0.0, || {
        format!("{name} must be positive, got {v}")
    })
}

impl PlanarLayerConfig {
    pub fn new(l: f64, k: f64) -> Result<Self> {
        positive("layer thickness l", l)?;
        positive("coupling ratio k", k)?;
        Ok(Self {
            l,
            k,
            a1: 1.0,
            a2: 1.0,
            conductivities: None,
        })
    }

    pub fn with_diffusivities(mut self, a1: f64, a2: f64) -> Result<Self> {
        positive("a1", a1)?;
        positive("a2", a2)?;
        self.a1 = a1;
        self.a2 = a2;
        self.check_material_consistency()?;
        Ok(self)
    }

    pub fn with_conductivities(mut self, lambda1: f64, lambda2: f64) -> Result<Self> {
        positive("lambda1", lambda1)?;
        positive("lambda2", lambda2)?;
        self.conductivities = Some((lambda1, lambda2));
        self.check_material_consistency()?;
        Ok(self)
    }

    /// `k = (λ₁/λ₂)(a₂/a₁)`
    pub fn from_materials(l: f64, a1: f64, a2: f64, lambda1: f64, lambda2: f64) -> Result<Self> {
        positive("lambda1", lambda1)?;
        positive("lambda2", lambda2)?;
        positive("a1", a1)?;
        positive("a2", a2)?;
        let k = lambda1 / lambda2 * a2 / a1;
        Self::new(l, k)?
            .with_diffusivities(a1, a2)?
            .with_conductivities(lambda1, lambda2)
    }

    fn check_material_consistency(&self) -> Result<()> {
        if let Some((l1, l2)) = self.conductivities {
            let implied = l1 / l2 * self.a2 / self.a1;
            ensure((implied - self.k).abs() <= 1e-12 * self.k.max(1.0), || {
                format!("k = {} disagrees with (λ1/λ2)(a2/a1) = {implied}", self.k)
            })?;
        }
        Ok(())
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    pub fn conductivities(&self) -> Option<(f64, f64)> {
        self.conductivities
    }

    /// Argument stretch `a₁/a₂` applied in layer 2.
    pub fn stretch(&self) -> f64 {
        self.a1 / self.a2
    }

    /// `ρ = (1−k)/(1+k)`
    pub fn rho(&self) -> f64 {
        reflection_ratio(self.k)
    }

    /// `h = ln|ρ|/(2l)`, undefined for `k = 1`.
    pub fn robin_h(&self) -> Option<f64> {
        let r = self.rho();
        (r != 0.0).then(|| r.abs().ln() / (2.0 * self.l))
    }

    pub fn with_l(mut self, l: f64) -> Result<Self> {
        positive("layer thickness l", l)?;
        self.l = l;
        Ok(self)
    }

    pub fn with_k(mut self, k: f64) -> Result<Self> {
        positive("coupling ratio k", k)?;
        self.k = k;
        self.conductivities = None;
        Ok(self)
    }
}

/// Disk geometry: layer 1 is the shell `R < r < 1`, layer 2 is `r < R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialLayerConfig {
    radius: f64,
    k: f64,
}

impl RadialLayerConfig {
    pub fn new(radius: f64, k: f64) -> Result<Self> {
        ensure(radius > 0.0 && radius < 1.0, || {
            format!("inner radius R must lie in (0, 1), got {radius}")
        })?;
        positive("coupling ratio k", k)?;
        Ok(Self { radius, k })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn rho(&self) -> f64 {
        reflection_ratio(self.k)
    }

    /// `h = ln|ρ|/(2 ln R)`
    pub fn robin_h(&self) -> Option<f64> {
        let r = self.rho();
        (r != 0.0).then(|| r.abs().ln() / (2.0 * self.radius.ln()))
    }
}

pub fn reflection_ratio(k: f64) -> f64 {
    (1.0 - k) / (1.0 + k)
}
