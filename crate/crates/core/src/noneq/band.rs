use super::embedded::EmbeddedModel;
use crate::error::Result;
use crate::scalar::Real;

/// An optimum together with the equilibrium state attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct Bound<F, S> {
    pub value: F,
    pub witness: S,
}

/// `S₋`, `S₊` and the band width `ΔS = S₊ − S₋`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyBand<F, S> {
    pub s_minus: F,
    pub s_plus: F,
    pub delta_s: F,
    pub witness_minus: S,
    pub witness_plus: S,
}

pub fn s_minus<F: Real, M: EmbeddedModel<F> + ?Sized>(model: &M, x: &M::State) -> Result<Bound<F, M::State>> {
    model.s_minus(x)
}

pub fn s_plus<F: Real, M: EmbeddedModel<F> + ?Sized>(model: &M, x: &M::State) -> Result<Bound<F, M::State>> {
    model.s_plus(x)
}

pub fn entropy_band<F: Real, M: EmbeddedModel<F> + ?Sized>(
    model: &M,
    x: &M::State,
) -> Result<EntropyBand<F, M::State>> {
    let lo = model.s_minus(x)?;
    let hi = model.s_plus(x)?;
    Ok(EntropyBand {
        s_minus: lo.value,
        s_plus: hi.value,
        delta_s: hi.value - lo.value,
        witness_minus: lo.witness,
        witness_plus: hi.witness,
    })
}
