//! Equations of state, line integration of `dS = dU/T + (P/T) dV`, and the
//! empirical-to-absolute temperature conversion.

use crate::error::{Error, Result};
use crate::numeric::adaptive_simpson;
use crate::scalar::Real;

/// Relative tolerance of every quadrature in this module.
pub const QUAD_REL_TOL: f64 = 1e-10;

/// Rectangle in `(Θ, V)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosDomain<F = f64> {
    pub theta: (F, F),
    pub volume: (F, F),
}

impl<F: Real> EosDomain<F> {
    pub fn contains(&self, theta: F, v: F) -> bool {
        theta >= self.theta.0 && theta <= self.theta.1 && v >= self.volume.0 && v <= self.volume.1
    }
}

/// Equilibrium equation of state in an empirical temperature `Θ` and
/// volume `V`.
pub trait EquilibriumEos<F: Real> {
    fn energy(&self, theta: F, v: F) -> F;
    fn pressure(&self, theta: F, v: F) -> F;
    fn domain(&self) -> EosDomain<F>;

    /// Known entropy, when available, for oracle comparisons.
    fn entropy(&self, _theta: F, _v: F) -> Option<F> {
        None
    }
}

/// Ideal gas `U = cRT`, `PV = RT` with empirical scale `Θ = T^p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealGas<F = f64> {
    pub c: F,
    pub r: F,
    /// Exponent `p` of the empirical scale; `1` means `Θ` is absolute.
    pub exponent: F,
    pub domain: EosDomain<F>,
}

impl<F: Real> IdealGas<F> {
    pub fn new(c: F, r: F, exponent: F, domain: EosDomain<F>) -> Result<Self> {
        if !(c > F::zero() && r > F::zero() && exponent > F::zero()) {
            return Err(Error::InvalidParameter("ideal gas needs c, R, p > 0".into()));
        }
        if !(domain.theta.0 > F::zero() && domain.volume.0 > F::zero())
            || domain.theta.1 <= domain.theta.0
            || domain.volume.1 <= domain.volume.0
        {
            return Err(Error::InvalidParameter(
                "ideal gas domain must be a positive rectangle".into(),
            ));
        }
        Ok(IdealGas { c, r, exponent, domain })
    }

    /// Absolute temperature of an empirical reading.
    pub fn absolute(&self, theta: F) -> F {
        theta.powf(F::one() / self.exponent)
    }
}

impl<F: Real> EquilibriumEos<F> for IdealGas<F> {
    fn energy(&self, theta: F, _v: F) -> F {
        self.c * self.r * self.absolute(theta)
    }

    fn pressure(&self, theta: F, v: F) -> F {
        self.r * self.absolute(theta) / v
    }

    fn domain(&self) -> EosDomain<F> {
        self.domain
    }

    fn entropy(&self, theta: F, v: F) -> Option<F> {
        Some(self.c * self.r * self.absolute(theta).ln() + self.r * v.ln())
    }
}

fn step<F: Real>(x: F) -> F {
    F::lit(1e-5) * x.abs().max(F::lit(1e-3))
}

fn d_theta<F: Real>(f: impl Fn(F, F) -> F, theta: F, v: F) -> F {
    let h = step(theta);
    (f(theta + h, v) - f(theta - h, v)) / (h + h)
}

fn d_volume<F: Real>(f: impl Fn(F, F) -> F, theta: F, v: F) -> F {
    let h = step(v);
    (f(theta, v + h) - f(theta, v - h)) / (h + h)
}

/// How empirical readings are turned into absolute temperatures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TemperatureScale<F = f64> {
    /// `Θ` already is `T`.
    Absolute,
    /// Convert with the integral formula calibrated at `T(Θ₀) = T₀`,
    /// evaluated along the isochore `V`.
    Empirical { theta0: F, t0: F, v: F },
}

/// `T(Θ) = T₀ exp ∫_{Θ₀}^{Θ} (∂P/∂Θ′)_V / (P + (∂U/∂V)_{Θ′}) dΘ′`,
/// with finite-difference partials and adaptive quadrature.
pub fn planck_absolute_temperature<F: Real, E: EquilibriumEos<F> + ?Sized>(
    eos: &E,
    theta0: F,
    t0: F,
    theta: F,
    v: F,
) -> Result<F> {
    if !(theta0 > F::zero()) || !(t0 > F::zero()) {
        return Err(Error::InvalidParameter("Θ₀ and T₀ must be positive".into()));
    }
    let dom = eos.domain();
    for th in [theta0, theta] {
        if !dom.contains(th, v) {
            return Err(Error::OutsideDomain(vec![th.to_f64_lossy(), v.to_f64_lossy()]));
        }
    }
    if theta == theta0 {
        return Ok(t0);
    }
    let denom = |th: F| eos.pressure(th, v) + d_volume(|a, b| eos.energy(a, b), th, v);
    // a sign change of the denominator makes the integrand singular
    let probes = 64;
    let mut sign = None;
    for i in 0..=probes {
        let th = theta0 + (theta - theta0) * F::from_usize(i).unwrap() / F::from_usize(probes).unwrap();
        let d = denom(th);
        if d == F::zero() || !d.is_finite() || sign.is_some_and(|s: bool| s != (d > F::zero())) {
            return Err(Error::SingularIntegrand(th.to_f64_lossy()));
        }
        sign = Some(d > F::zero());
    }
    let integrand = |th: F| {
        let d = denom(th);
        if d == F::zero() {
            return Err(Error::SingularIntegrand(th.to_f64_lossy()));
        }
        Ok(d_theta(|a, b| eos.pressure(a, b), th, v) / d)
    };
    let integral = adaptive_simpson(integrand, theta0, theta, F::lit(QUAD_REL_TOL))?;
    Ok(t0 * integral.exp())
}

/// Relative difference of the converted temperature between two isochores.
pub fn planck_v_residual<F: Real, E: EquilibriumEos<F> + ?Sized>(
    eos: &E,
    theta0: F,
    t0: F,
    theta: F,
    v_a: F,
    v_b: F,
) -> Result<F> {
    let a = planck_absolute_temperature(eos, theta0, t0, theta, v_a)?;
    let b = planck_absolute_temperature(eos, theta0, t0, theta, v_b)?;
    Ok((a - b).abs() / a.abs().max(b.abs()))
}

/// Entropy difference `S(target) − S(reference)` obtained by integrating
/// `dU/T + (P/T) dV` along the polyline `reference → waypoints → target`.
pub fn entropy_by_path_integration<F: Real, E: EquilibriumEos<F> + ?Sized>(
    eos: &E,
    scale: TemperatureScale<F>,
    reference: (F, F),
    target: (F, F),
    waypoints: &[(F, F)],
) -> Result<F> {
    let dom = eos.domain();
    let mut path = Vec::with_capacity(waypoints.len() + 2);
    path.push(reference);
    path.extend_from_slice(waypoints);
    path.push(target);
    // the rectangle is convex, so vertex containment covers the segments
    for &(th, v) in &path {
        if !dom.contains(th, v) {
            return Err(Error::OutsideDomain(vec![th.to_f64_lossy(), v.to_f64_lossy()]));
        }
    }
    let temperature = |th: F| -> Result<F> {
        let t = match scale {
            TemperatureScale::Absolute => th,
            TemperatureScale::Empirical { theta0, t0, v } => planck_absolute_temperature(eos, theta0, t0, th, v)?,
        };
        if !(t > F::zero()) {
            return Err(Error::NonPositiveTemperature(t.to_f64_lossy()));
        }
        Ok(t)
    };
    let mut total = F::zero();
    for seg in path.windows(2) {
        let ((a_th, a_v), (b_th, b_v)) = (seg[0], seg[1]);
        let (d_th, d_v) = (b_th - a_th, b_v - a_v);
        if d_th == F::zero() && d_v == F::zero() {
            continue;
        }
        let integrand = |s: F| -> Result<F> {
            let (th, v) = (a_th + s * d_th, a_v + s * d_v);
            let u_th = d_theta(|x, y| eos.energy(x, y), th, v);
            let u_v = d_volume(|x, y| eos.energy(x, y), th, v);
            let p = eos.pressure(th, v);
            Ok((u_th * d_th + (u_v + p) * d_v) / temperature(th)?)
        };
        total = total + adaptive_simpson(integrand, F::zero(), F::one(), F::lit(QUAD_REL_TOL))?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gas(p: f64) -> IdealGas {
        IdealGas::new(
            1.5,
            8.314,
            p,
            EosDomain {
                theta: (0.5, 1.0e4),
                volume: (0.1, 100.0),
            },
        )
        .unwrap()
    }

    #[test]
    fn zero_path_gives_zero() {
        let s = entropy_by_path_integration(&gas(1.0), TemperatureScale::Absolute, (300.0, 1.0), (300.0, 1.0), &[])
            .unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn ideal_gas_closed_form() {
        let g = gas(1.0);
        let ds = entropy_by_path_integration(&g, TemperatureScale::Absolute, (300.0, 1.0), (450.0, 3.0), &[]).unwrap();
        let exact = 1.5 * 8.314 * (450.0f64 / 300.0).ln() + 8.314 * 3f64.ln();
        assert!((ds - exact).abs() <= 1e-8 * exact.abs(), "{ds} vs {exact}");
    }

    #[test]
    fn identity_scale_is_identity() {
        let t = planck_absolute_temperature(&gas(1.0), 300.0, 300.0, 420.0, 2.0).unwrap();
        assert!((t - 420.0).abs() <= 1e-8 * 420.0);
        assert_eq!(
            planck_absolute_temperature(&gas(1.0), 300.0, 300.0, 300.0, 2.0).unwrap(),
            300.0
        );
    }

    #[test]
    fn rejects_paths_outside_domain() {
        let r = entropy_by_path_integration(
            &gas(1.0),
            TemperatureScale::Absolute,
            (300.0, 1.0),
            (300.0, 1000.0),
            &[],
        );
        assert!(matches!(r, Err(Error::OutsideDomain(_))));
    }

    struct Singular;
    impl EquilibriumEos<f64> for Singular {
        // P + ∂U/∂V = Θ − 2 changes sign at Θ = 2
        fn energy(&self, _t: f64, _v: f64) -> f64 {
            0.0
        }
        fn pressure(&self, t: f64, _v: f64) -> f64 {
            t - 2.0
        }
        fn domain(&self) -> EosDomain<f64> {
            EosDomain {
                theta: (0.1, 10.0),
                volume: (0.1, 10.0),
            }
        }
    }

    #[test]
    fn singular_denominator_is_reported() {
        let r = planck_absolute_temperature(&Singular, 1.0, 1.0, 3.0, 1.0);
        assert!(matches!(r, Err(Error::SingularIntegrand(_))));
    }
}
