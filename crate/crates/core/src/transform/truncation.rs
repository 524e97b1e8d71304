use crate::error::{ensure, Error, Result};

/// Hard cap on the number of image terms.
pub const TERM_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    MaxTerms(usize),
    /// Stop once the tail bound is below `tol`. `sup_bound` overrides the
    /// bound on `|û|` along the ladder derived from the field itself.
    TailTol {
        tol: f64,
        sup_bound: Option<f64>,
    },
}

impl Truncation {
    pub fn tail_tol(tol: f64) -> Self {
        Truncation::TailTol {
            tol,
            sup_bound: None,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match *self {
            Truncation::MaxTerms(j) => ensure(j >= 1, || "at least one term is required".into()),
            Truncation::TailTol { tol, sup_bound } => {
                ensure(tol > 0.0 && tol.is_finite(), || {
                    format!("tail tolerance must be positive, got {tol}")
                })?;
                if let Some(m) = sup_bound {
                    ensure(m > 0.0 && m.is_finite(), || {
                        format!("sup bound must be positive, got {m}")
                    })?;
                }
                Ok(())
            }
        }
    }

    /// Terms and tail bound for a `ρ`-weighted ladder whose bracketed terms are
    /// bounded by `term_bound`.
    pub(crate) fn resolve_geometric(&self, rho: f64, term_bound: f64) -> Result<(usize, f64)> {
        self.validate()?;
        let tail = |j: usize| geometric_tail(rho, term_bound, j);
        match *self {
            Truncation::MaxTerms(j) => Ok((j, tail(j))),
            Truncation::TailTol { tol, .. } => {
                if term_bound == 0.0 {
                    return Ok((1, 0.0));
                }
                if !term_bound.is_finite() {
                    return Err(Error::Convergence {
                        terms: 0,
                        achieved: f64::INFINITY,
                        tol,
                    });
                }
                let j = geometric_tail_terms(rho, tol, term_bound)?;
                if j > TERM_CAP {
                    return Err(Error::Convergence {
                        terms: TERM_CAP,
                        achieved: tail(TERM_CAP),
                        tol,
                    });
                }
                Ok((j, tail(j)))
            }
        }
    }

    /// Terms and tail bound for a ladder with a caller-supplied tail bound
    /// `bound(J)`, non-increasing in `J`.
    pub(crate) fn resolve_decaying(&self, bound: impl Fn(usize) -> f64) -> Result<(usize, f64)> {
        self.validate()?;
        match *self {
            Truncation::MaxTerms(j) => Ok((j, bound(j))),
            Truncation::TailTol { tol, .. } => {
                if bound(1) <= tol {
                    return Ok((1, bound(1)));
                }
                let mut hi = 2;
                while bound(hi) > tol {
                    if hi >= TERM_CAP {
                        return Err(Error::Convergence {
                            terms: TERM_CAP,
                            achieved: bound(TERM_CAP),
                            tol,
                        });
                    }
                    hi = (2 * hi).min(TERM_CAP);
                }
                let mut lo = hi / 2;
                while hi - lo > 1 {
                    let mid = (lo + hi) / 2;
                    if bound(mid) <= tol {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                Ok((hi, bound(hi)))
            }
        }
    }
}

/// `M·|ρ|^J/(1 − |ρ|)`
pub fn geometric_tail(rho: f64, m: f64, terms: usize) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    let a = rho.abs();
    if a == 0.0 {
        return 0.0;
    }
    m * a.powf(terms as f64) / (1.0 - a)
}

/// Smallest `J ≥ 1` with `M·|ρ|^J/(1 − |ρ|) ≤ tol`.
pub fn geometric_tail_terms(rho: f64, tol: f64, m: f64) -> Result<usize> {
    ensure(rho.abs() < 1.0, || {
        format!("|ρ| must be below 1, got ρ = {rho}")
    })?;
    ensure(tol > 0.0 && tol.is_finite(), || {
        format!("tolerance must be positive, got {tol}")
    })?;
    ensure(m > 0.0 && m.is_finite(), || {
        format!("sup bound must be positive, got {m}")
    })?;
    let a = rho.abs();
    if a == 0.0 {
        return Ok(1);
    }
    let estimate = ((tol * (1.0 - a) / m).ln() / a.ln()).ceil();
    let mut j = if estimate.is_finite() && estimate > 1.0 {
        estimate as usize
    } else {
        1
    };
    // guard the float ceil against off-by-one in either direction
    while geometric_tail(rho, m, j) > tol {
        j += 1;
    }
    while j > 1 && geometric_tail(rho, m, j - 1) <= tol {
        j -= 1;
    }
    Ok(j)
}
