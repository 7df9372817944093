//! Equilibrium entropy: the canonical construction from the accessibility
//! relation, affine uniqueness, and the classical companion formulas.

mod canonical;
mod eos;

pub use canonical::{affine_uniqueness_check, EntropyEvaluator, ReferencePair, DEFAULT_TOL};
pub use eos::{
    entropy_by_path_integration, planck_absolute_temperature, planck_v_residual, EosDomain, EquilibriumEos, IdealGas,
    TemperatureScale, QUAD_REL_TOL,
};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Availability (exergy) `Φ = (U − U₀) − T₀(S − S₀)`.
pub fn availability<F: Real>(u: F, u0: F, t0: F, s: F, s0: F) -> Result<F> {
    if !(t0 > F::zero()) {
        return Err(Error::NonPositiveTemperature(t0.to_f64_lossy()));
    }
    Ok((u - u0) - t0 * (s - s0))
}
