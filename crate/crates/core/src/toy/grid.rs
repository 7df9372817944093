use crate::error::{Error, Result};
use crate::noneq::GridEmbedded;
use crate::relation::{Generator, GridModel, GridSpec};
use crate::scalar::Real;
use crate::state::SpaceId;

/// Space identifier of block-pair states.
pub const TOY_SPACE: &str = "copper-pair";

fn cells<F: Real>(step: F, h: F, what: &str) -> Result<i64> {
    let n = step / h;
    let k = n.round();
    if !(step > F::zero()) || (n - k).abs() > F::lit(1e-9) * n.max(F::one()) || k < F::one() {
        return Err(Error::InvalidParameter(format!(
            "{what} {step} is not a positive multiple of h = {h}"
        )));
    }
    Ok(k.to_i64().unwrap())
}

/// Lattice version of the toy model on `[lo, hi]²` with spacing `h`.
///
/// Rubbing raises one block by `rub_step`. Conduction moves both
/// temperatures toward their mean by `fourier_step` each, or by the largest
/// whole number of cells that does not overshoot the mean, so total energy
/// is conserved exactly on the lattice.
pub fn toy_grid_model<F: Real>(bounds: (F, F), h: F, rub_step: F, fourier_step: F) -> Result<GridModel<F>> {
    let (lo, hi) = bounds;
    if !(lo > F::zero()) || !(hi > lo) {
        return Err(Error::InvalidParameter(format!(
            "bounds must satisfy 0 < lo < hi, got [{lo}, {hi}]"
        )));
    }
    let rub = cells(rub_step, h, "rub_step")?;
    let k = cells(fourier_step, h, "fourier_step")?;
    let spec = GridSpec::uniform(SpaceId::new(TOY_SPACE), 2, lo, hi, h);
    let r = F::from_i64(rub).unwrap() * h;
    let generators = vec![
        Generator::new("rub-1", move |x: &[F]| vec![vec![x[0] + r, x[1]]]),
        Generator::new("rub-2", move |x: &[F]| vec![vec![x[0], x[1] + r]]),
        Generator::new("fourier", move |x: &[F]| {
            let gap = ((x[1] - x[0]) / h).round().to_i64().unwrap_or(0);
            let shift = k.min(gap.abs() / 2);
            if shift == 0 {
                return Vec::new();
            }
            let d = F::from_i64(shift * gap.signum()).unwrap() * h;
            vec![vec![x[0] + d, x[1] - d]]
        }),
    ];
    let half = h / F::lit(2.0);
    Ok(GridModel::new(spec, generators)?.with_equilibrium(move |x: &[F]| (x[0] - x[1]).abs() < half))
}

/// [`toy_grid_model`] with `S = ln T` on the diagonal and `U = C(T₁+T₂)`.
pub fn toy_grid_embedded<F: Real>(bounds: (F, F), h: F, rub_step: F, fourier_step: F, c: F) -> Result<GridEmbedded<F>> {
    let g = toy_grid_model(bounds, h, rub_step, fourier_step)?;
    Ok(GridEmbedded::new(g, |x: &[F]| x[0].ln())?.with_energy(move |x: &[F]| c * (x[0] + x[1])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noneq::EmbeddedModel;
    use crate::state::StatePoint;

    fn pt(a: f64, b: f64) -> StatePoint {
        StatePoint::new(SpaceId::new(TOY_SPACE), vec![a, b], a == b).unwrap()
    }

    #[test]
    fn reaches_the_mean_and_not_below() {
        let g = toy_grid_embedded((1.0, 5.0), 0.05, 0.05, 0.05, 1.0).unwrap();
        let x = pt(1.0, 3.0);
        assert!(g.precedes(&x, &pt(2.0, 2.0)).unwrap());
        assert!(!g.precedes(&x, &pt(1.95, 1.95)).unwrap());
        let lo = g.s_minus(&x).unwrap();
        assert!(lo.value.abs() < 1e-12);
        let hi = g.s_plus(&x).unwrap();
        assert!((hi.value - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn commensurability_enforced() {
        assert!(toy_grid_model((1.0, 5.0), 0.05, 0.07, 0.05).is_err());
        assert!(toy_grid_model((1.0, 5.0), 0.05, 0.05, 0.0).is_err());
        assert!(toy_grid_model((0.0, 5.0), 0.05, 0.05, 0.05).is_err());
    }
}
