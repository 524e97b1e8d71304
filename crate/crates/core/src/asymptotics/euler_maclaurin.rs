//! Euler–Maclaurin expansions of image-ladder sums.
//!
//! All expansions share the correction `B_{2k}·s^{2k−1}/(2k)!` where `s` is
//! the ladder step in the natural variable (`2l` on a ray, `ln(1/R²)` on the
//! logarithmic radial grid). The `(2k)!` denominator is the one implied by
//! `1/(1−e^{−z}) = 1/z + 1/2 + Σ B_{2k} z^{2k−1}/(2k)!`.

use crate::asymptotics::bernoulli::bernoulli_f64;
use crate::asymptotics::profile::{RadialProfile, RayProfile};
use crate::error::{ensure, Error, Result};

/// Number of Bernoulli correction terms kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EMOrder(usize);

impl EMOrder {
    pub const MAX: usize = 5;

    pub fn new(k: usize) -> Result<Self> {
        if k > Self::MAX {
            return Err(Error::Validation(format!(
                "Euler-Maclaurin order {k} exceeds the maximum {}",
                Self::MAX
            )));
        }
        Ok(Self(k))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl Default for EMOrder {
    fn default() -> Self {
        Self(2)
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `Σ_{k=1..K} w_k·B_{2k}·s^{2k−1}/(2k)!·D_{2k−1}` with `D_m` supplied by
/// `deriv` and an extra per-order weight `w_k`.
fn bernoulli_corrections(
    step: f64,
    order: EMOrder,
    weight: impl Fn(usize) -> f64,
    mut deriv: impl FnMut(usize) -> Result<f64>,
) -> Result<f64> {
    let mut acc = 0.0;
    for k in 1..=order.get() {
        let m = 2 * k - 1;
        let b = bernoulli_f64(2 * k)?;
        acc += weight(k) * b * step.powi(m as i32) / factorial(2 * k) * deriv(m)?;
    }
    Ok(acc)
}

fn check_step(step: f64) -> Result<()> {
    ensure(step > 0.0 && step.is_finite(), || {
        format!("ladder step must be positive, got {step}")
    })
}

/// `Σ_{j≥0} f(step·j) ≈ (1/step)∫₀^∞ f + f(0)/2 − Σ B_{2k} step^{2k−1}/(2k)! f^{(2k−1)}(0)`
pub fn em_ray_sum<P: RayProfile + ?Sized>(f: &P, step: f64, order: EMOrder) -> Result<f64> {
    weighted_ray_asym(f, 0.0, 0.5 * step, 0.0, order)
}

/// `Σ_{j≥0} f(R^{2j})` on the logarithmic grid, with `∫₀¹ f(x)/x dx` as the
/// leading term.
pub fn em_log_sum<P: RadialProfile + ?Sized>(f: &P, radius: f64, order: EMOrder) -> Result<f64> {
    weighted_radial_asym(f, 1.0, radius, 0.0, order)
}

/// `Σ_{j≥0} e^{2hlj} f(x + 2lj)` (positive ratio `ρ = e^{2hl}`), expanded with
/// the shifted operator `L_h = h + d/dx`.
pub fn weighted_ray_asym<P: RayProfile + ?Sized>(
    f: &P,
    x: f64,
    l: f64,
    h: f64,
    order: EMOrder,
) -> Result<f64> {
    let step = 2.0 * l;
    check_step(step)?;
    let lead = f.weighted_integral(x, h)? / step + 0.5 * f.value(x);
    let corr = bernoulli_corrections(step, order, |_| 1.0, |m| f.shifted_derivative(x, h, m))?;
    Ok(lead - corr)
}

/// `Σ_{j≥0} (−1)^j e^{2hlj} f(x + 2lj)` (negative ratio `ρ = −e^{2hl}`). The
/// integral term cancels between even and odd images.
pub fn weighted_ray_asym_alt<P: RayProfile + ?Sized>(
    f: &P,
    x: f64,
    l: f64,
    h: f64,
    order: EMOrder,
) -> Result<f64> {
    let step = 2.0 * l;
    check_step(step)?;
    let corr = bernoulli_corrections(
        step,
        order,
        |k| 4f64.powi(k as i32) - 1.0,
        |m| f.shifted_derivative(x, h, m),
    )?;
    Ok(0.5 * f.value(x) - corr)
}

/// `Σ_{j≥0} R^{2hj} f(r·R^{2j})` (positive ratio `ρ = R^{2h}`), expanded with
/// `h + r·d/dr`.
pub fn weighted_radial_asym<P: RadialProfile + ?Sized>(
    f: &P,
    r: f64,
    radius: f64,
    h: f64,
    order: EMOrder,
) -> Result<f64> {
    let step = log_step(radius)?;
    let lead = f.weighted_integral(r, h)? / step + 0.5 * f.value(r);
    let corr = bernoulli_corrections(
        step,
        order,
        |_| 1.0,
        |m| f.shifted_euler_derivative(r, h, m),
    )?;
    Ok(lead + corr)
}

/// `Σ_{j≥0} (−1)^j R^{2hj} f(r·R^{2j})` (negative ratio `ρ = −R^{2h}`).
pub fn weighted_radial_asym_alt<P: RadialProfile + ?Sized>(
    f: &P,
    r: f64,
    radius: f64,
    h: f64,
    order: EMOrder,
) -> Result<f64> {
    let step = log_step(radius)?;
    let corr = bernoulli_corrections(
        step,
        order,
        |k| 4f64.powi(k as i32) - 1.0,
        |m| f.shifted_euler_derivative(r, h, m),
    )?;
    Ok(0.5 * f.value(r) + corr)
}

/// `ln(1/R²)`
pub fn log_step(radius: f64) -> Result<f64> {
    ensure(radius > 0.0 && radius < 1.0, || {
        format!("inner radius must lie in (0, 1), got {radius}")
    })?;
    Ok(-2.0 * radius.ln())
}

/// `Σ_{j≥0} ρ^j f(x + 2lj)` for any `ρ ∈ (−1, 1]`, dispatching on the sign.
pub fn ladder_ray_asym<P: RayProfile + ?Sized>(
    f: &P,
    x: f64,
    l: f64,
    rho: f64,
    order: EMOrder,
) -> Result<f64> {
    ensure(rho > -1.0 && rho <= 1.0, || {
        format!("ratio {rho} outside (−1, 1]")
    })?;
    if rho == 0.0 {
        return Ok(f.value(x));
    }
    let h = rho.abs().ln() / (2.0 * l);
    if rho > 0.0 {
        weighted_ray_asym(f, x, l, h, order)
    } else {
        weighted_ray_asym_alt(f, x, l, h, order)
    }
}

/// `Σ_{j≥0} ρ^j f(r·R^{2j})` for any `ρ ∈ (−1, 1]`.
pub fn ladder_radial_asym<P: RadialProfile + ?Sized>(
    f: &P,
    r: f64,
    radius: f64,
    rho: f64,
    order: EMOrder,
) -> Result<f64> {
    ensure(rho > -1.0 && rho <= 1.0, || {
        format!("ratio {rho} outside (−1, 1]")
    })?;
    if rho == 0.0 {
        return Ok(f.value(r));
    }
    let h = rho.abs().ln() / (2.0 * radius.ln());
    if rho > 0.0 {
        weighted_radial_asym(f, r, radius, h, order)
    } else {
        weighted_radial_asym_alt(f, r, radius, h, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::profile::{ExpSum, FnProfile, PowerSum};

    fn k(n: usize) -> EMOrder {
        EMOrder::new(n).unwrap()
    }

    /// Σ_{j≥0} q^j, the geometric oracle for every exponential/power ladder.
    fn geometric(q: f64) -> f64 {
        1.0 / (1.0 - q)
    }

    #[test]
    fn ray_sum_pinned_values() {
        let f = ExpSum::real([(1.0, 1.0)]);
        let exact = geometric((-0.1f64).exp());
        assert!((exact - 10.508_331_94).abs() < 1e-8);
        let v0 = em_ray_sum(&f, 0.1, k(0)).unwrap();
        assert_eq!(v0, 10.5);
        assert!(((v0 - exact).abs() - 8.33e-3).abs() < 1e-5);
        let v1 = em_ray_sum(&f, 0.1, k(1)).unwrap();
        assert!((v1 - 10.508_333_333_333_333).abs() < 1e-12);
        assert!(((v1 - exact).abs() - 1.39e-6).abs() < 1e-8);
        let v2 = em_ray_sum(&f, 0.1, k(2)).unwrap();
        assert!((v2 - exact).abs() <= 1e-8);
        assert!((v2 - exact).abs() < 4e-10);
    }

    #[test]
    fn ray_sum_error_shrinks_with_order() {
        let f = ExpSum::real([(1.0, 1.0)]);
        for step in [0.05, 0.1, 0.2] {
            let exact = geometric((-step as f64).exp());
            let errs: Vec<f64> = (0..=3)
                .map(|n| (em_ray_sum(&f, step, k(n)).unwrap() - exact).abs())
                .collect();
            for n in 0..3 {
                assert!(errs[n + 1] < errs[n], "step {step}: {errs:?}");
                // first omitted term B_{2n+2} s^{2n+1}/(2n+2)!
                let omitted = (bernoulli_f64(2 * n + 2).unwrap() * step.powi(2 * n as i32 + 1)
                    / factorial(2 * n + 2))
                .abs();
                assert!(errs[n] <= 2.0 * omitted, "step {step} K={n}");
            }
        }
    }

    #[test]
    fn ray_sum_of_fn_profile_limited_order() {
        let f = FnProfile::new(|s: f64| (-s).exp());
        let exact = geometric((-0.1f64).exp());
        let v = em_ray_sum(&f, 0.1, k(2)).unwrap();
        assert!((v - exact).abs() < 1e-6);
        assert!(matches!(
            em_ray_sum(&f, 0.1, k(3)),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn log_sum_examples() {
        let exact1 = geometric(0.81);
        assert!((exact1 - 5.263_158).abs() < 1e-6);
        let v = em_log_sum(&PowerSum::monomial(1.0, 1.0), 0.9, k(2)).unwrap();
        assert!((v - exact1).abs() <= 1e-6, "{v}");
        let exact2 = geometric(0.81f64.powi(2));
        assert!((exact2 - 2.907_822).abs() < 1e-6);
        let v = em_log_sum(&PowerSum::monomial(1.0, 2.0), 0.9, k(2)).unwrap();
        assert!((v - exact2).abs() <= 1e-6, "{v}");
        assert_eq!(
            em_log_sum(&PowerSum::monomial(0.0, 1.0), 0.9, k(2)).unwrap(),
            0.0
        );
        assert!(em_log_sum(&PowerSum::monomial(1.0, 0.0), 0.9, k(2)).is_err());
    }

    #[test]
    fn weighted_ray_small_k_example() {
        // k = 0.5, ρ = 1/3, l = 0.1, f = e^{−x} at x = 0
        let rho: f64 = 1.0 / 3.0;
        let (l, h) = (0.1, rho.ln() / 0.2);
        assert!((h + 5.4931).abs() < 1e-4);
        let exact = geometric(rho * (-0.2f64).exp());
        assert!((exact - 1.375_346).abs() < 1e-6);
        let f = ExpSum::real([(1.0, 1.0)]);
        let v = weighted_ray_asym(&f, 0.0, l, h, k(2)).unwrap();
        assert!((v - exact).abs() <= 1e-3, "{v} vs {exact}");
        assert_eq!(
            weighted_ray_asym(&ExpSum::real([]), 0.0, l, h, k(2)).unwrap(),
            0.0
        );
    }

    #[test]
    fn weighted_ray_large_k_example() {
        // k = 3, ρ = −1/2, l = 0.1
        let (l, h) = (0.1, 0.5f64.ln() / 0.2);
        let exact = 1.0 / (1.0 + 0.5 * (-0.2f64).exp());
        assert!((exact - 0.709_539_2).abs() < 1e-6);
        let f = ExpSum::real([(1.0, 1.0)]);
        let errs: Vec<f64> = (0..=4)
            .map(|n| (weighted_ray_asym_alt(&f, 0.0, l, h, k(n)).unwrap() - exact).abs())
            .collect();
        // K = 2 misses by 1.096e-3, inside its first omitted term
        assert!((errs[2] - 1.0956e-3).abs() < 1e-6, "{errs:?}");
        let omitted = (weighted_ray_asym_alt(&f, 0.0, l, h, k(3)).unwrap()
            - weighted_ray_asym_alt(&f, 0.0, l, h, k(2)).unwrap())
        .abs();
        assert!(errs[2] <= omitted);
        assert!(errs[3] <= 1e-3 && errs[4] < errs[3]);
    }

    #[test]
    fn weighted_radial_examples() {
        // f(s) = s, r = 1, R = 0.9, k = 0.5
        let rho: f64 = 1.0 / 3.0;
        let h = rho.ln() / (2.0 * 0.9f64.ln());
        assert!((h - 5.2136).abs() < 1e-4);
        let exact = geometric(rho * 0.81);
        assert!((exact - 1.369_863).abs() < 1e-6);
        let f = PowerSum::monomial(1.0, 1.0);
        let lead = weighted_radial_asym(&f, 1.0, 0.9, h, k(0)).unwrap();
        assert!((lead - 1.263_747).abs() < 1e-6);
        let v = weighted_radial_asym(&f, 1.0, 0.9, h, k(2)).unwrap();
        assert!((v - exact).abs() <= 2e-2);
        assert!((v - exact).abs() <= 2e-4);

        // f(s) = s², R = 0.95, k = 0.3
        let rho: f64 = 0.7 / 1.3;
        let h = rho.ln() / (2.0 * 0.95f64.ln());
        let exact = geometric(rho * 0.95f64.powi(4));
        let f = PowerSum::monomial(1.0, 2.0);
        let v2 = weighted_radial_asym(&f, 1.0, 0.95, h, k(2)).unwrap();
        let v3 = weighted_radial_asym(&f, 1.0, 0.95, h, k(3)).unwrap();
        assert!((v2 - exact).abs() <= (v3 - v2).abs());

        assert_eq!(
            weighted_radial_asym(&PowerSum::new([]), 1.0, 0.9, h, k(2)).unwrap(),
            0.0
        );
    }

    #[test]
    fn weighted_radial_alt_matches_geometric() {
        // ρ = −R^{2h}: Σ (−q)^j r^n R^{2jn}
        let (radius, q, n) = (0.9f64, 0.6f64, 2.0);
        let h = q.ln() / (2.0 * radius.ln());
        let f = PowerSum::monomial(1.0, n);
        let r: f64 = 0.95;
        let exact = r.powf(n) / (1.0 + q * radius.powf(2.0 * n));
        let v = weighted_radial_asym_alt(&f, r, radius, h, k(3)).unwrap();
        let next = weighted_radial_asym_alt(&f, r, radius, h, k(4)).unwrap();
        assert!((v - exact).abs() <= (next - v).abs(), "{v} {exact}");
        assert!((v - exact).abs() < 2e-4);
    }

    #[test]
    fn ladder_dispatch() {
        let f = ExpSum::real([(1.0, 2.0)]);
        let l = 0.05;
        for rho in [-0.6, 0.0, 0.4, 1.0] {
            let exact = geometric(rho * (-4.0 * l as f64).exp());
            let v = ladder_ray_asym(&f, 0.0, l, rho, k(4)).unwrap();
            assert!((v - exact).abs() < 2e-6, "ρ={rho}: {v} {exact}");
        }
        assert!(ladder_ray_asym(&f, 0.0, l, -1.0, k(1)).is_err());
        let g = PowerSum::monomial(1.0, 1.0);
        for rho in [-0.5, 0.0, 0.5, 1.0] {
            let exact = geometric(rho * 0.81);
            let v = ladder_radial_asym(&g, 1.0, 0.9, rho, k(4)).unwrap();
            assert!((v - exact).abs() < 2e-5, "ρ={rho}: {v} {exact}");
        }
    }

    #[test]
    fn order_cap() {
        assert!(EMOrder::new(EMOrder::MAX).is_ok());
        assert!(EMOrder::new(EMOrder::MAX + 1).is_err());
    }
}
