use super::band::entropy_band;
use super::embedded::EmbeddedModel;
use crate::error::{Error, Result};
use crate::report::{CheckRecord, Report, Status};
use crate::scalar::Real;

/// Bounds on the maximum work extractable from `x` with a reservoir at
/// `t0` and final state `x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxWorkBounds<F = f64> {
    pub lower: F,
    pub upper: F,
    pub t0: F,
    pub u0: F,
    pub s0: F,
}

impl<F: Real> MaxWorkBounds<F> {
    pub fn contains(&self, phi: F, tol: F) -> bool {
        self.lower - tol <= phi && phi <= self.upper + tol
    }
}

fn positive<F: Real>(t0: F) -> Result<()> {
    if t0 > F::zero() && t0.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "reservoir temperature must be positive, got {t0}"
        )))
    }
}

fn environment<F: Real, M: EmbeddedModel<F> + ?Sized>(model: &M, x0: &M::State) -> Result<(F, F)> {
    if !model.is_equilibrium(x0) {
        return Err(Error::InvalidParameter(format!(
            "`{}` is not an equilibrium state",
            model.describe(x0)
        )));
    }
    let u0 = model.energy(x0).ok_or(Error::MissingCapability("energy map"))?;
    Ok((u0, model.entropy(x0)?))
}

pub fn max_work_bounds<F: Real, M: EmbeddedModel<F> + ?Sized>(
    model: &M,
    x: &M::State,
    x0: &M::State,
    t0: F,
) -> Result<MaxWorkBounds<F>> {
    positive(t0)?;
    let (u0, s0) = environment(model, x0)?;
    let u = model.energy(x).ok_or(Error::MissingCapability("energy map"))?;
    let band = entropy_band(model, x)?;
    Ok(MaxWorkBounds {
        lower: (u - u0) - t0 * (band.s_plus - s0),
        upper: (u - u0) - t0 * (band.s_minus - s0),
        t0,
        u0,
        s0,
    })
}

/// Entropy recovered from a measured maximum work `phi`.
pub fn gb_entropy<F: Real>(phi: F, u: F, u0: F, t0: F, s0: F) -> Result<F> {
    positive(t0)?;
    Ok(s0 + ((u - u0) - phi) / t0)
}

/// Sandwich `S₋ ≤ S_GB ≤ S₊` on every sample and monotonicity of `S_GB`
/// along every related pair of samples.
pub fn gb_checks<F: Real, M: EmbeddedModel<F> + ?Sized>(
    model: &M,
    phi_oracle: &dyn Fn(&M::State) -> Result<F>,
    x0: &M::State,
    t0: F,
    samples: &[M::State],
    tol: F,
) -> Result<Report> {
    positive(t0)?;
    let (u0, s0) = environment(model, x0)?;
    let mut values = Vec::with_capacity(samples.len());
    let (mut n_sand, mut w_sand) = (0, None);
    for x in samples {
        let u = model.energy(x).ok_or(Error::MissingCapability("energy map"))?;
        let s_gb = gb_entropy(phi_oracle(x)?, u, u0, t0, s0)?;
        let band = entropy_band(model, x)?;
        n_sand += 1;
        if w_sand.is_none() && !(band.s_minus - tol <= s_gb && s_gb <= band.s_plus + tol) {
            w_sand = Some(format!(
                "{}:{}<={}<={}",
                model.describe(x),
                band.s_minus,
                s_gb,
                band.s_plus
            ));
        }
        values.push(s_gb);
    }
    let (mut n_mono, mut w_mono) = (0, None);
    for (i, x) in samples.iter().enumerate() {
        for (j, y) in samples.iter().enumerate() {
            if i == j || !model.same_space(x, y) || !model.precedes(x, y)? {
                continue;
            }
            n_mono += 1;
            if w_mono.is_none() && values[i] > values[j] + tol {
                w_mono = Some(format!(
                    "{}->{}:{}>{}",
                    model.describe(x),
                    model.describe(y),
                    values[i],
                    values[j]
                ));
            }
        }
    }
    let mut r = Report::default();
    let sand = Status::from_bool(w_sand.is_none());
    r.push(CheckRecord::new("gb.sandwich", sand, n_sand, w_sand));
    let mono = if n_mono == 0 {
        Status::NotApplicable
    } else {
        Status::from_bool(w_mono.is_none())
    };
    r.push(CheckRecord::new("gb.monotone", mono, n_mono, w_mono));
    Ok(r)
}
