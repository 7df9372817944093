//! Two identical copper blocks in thermal contact.
//!
//! States are temperature pairs `(T₁, T₂)`; equilibrium states lie on the
//! diagonal. Allowed operations are rubbing either block and Fourier
//! conduction between them.

mod dynamics;
mod grid;

pub use dynamics::{
    carnot_gap_experiment, cattaneo_simulate, CarnotCouplingParams, CarnotGapResult, CattaneoParams, Trajectory,
    TrajectoryRow,
};
pub use grid::{toy_grid_embedded, toy_grid_model, TOY_SPACE};

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::noneq::{Bound, EmbeddedModel};
use crate::relation::{Accessibility, Capabilities};
use crate::scalar::{coord_tol, Real};
use crate::state::{CompoundState, SpaceId, StatePoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockPairState<F = f64> {
    pub t1: F,
    pub t2: F,
    /// Heat capacity of each block.
    pub c: F,
}

impl<F: Real> BlockPairState<F> {
    pub fn new(t1: F, t2: F, c: F) -> Result<Self> {
        for v in [t1, t2] {
            if !(v > F::zero()) || !v.is_finite() {
                return Err(Error::NonPositiveTemperature(v.to_f64_lossy()));
            }
        }
        if !(c > F::zero()) || !c.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "heat capacity must be positive, got {c}"
            )));
        }
        Ok(BlockPairState { t1, t2, c })
    }

    /// Unit heat capacity.
    pub fn unit(t1: F, t2: F) -> Result<Self> {
        Self::new(t1, t2, F::one())
    }

    pub fn mean(&self) -> F {
        (self.t1 + self.t2) / F::lit(2.0)
    }

    pub fn is_equilibrium(&self) -> bool {
        (self.t1 - self.t2).abs() <= coord_tol::<F>() * self.t1.max(self.t2)
    }

    /// `U = C(T₁ + T₂)`.
    pub fn energy(&self) -> F {
        self.c * (self.t1 + self.t2)
    }

    pub fn to_point(&self) -> StatePoint<F> {
        StatePoint {
            space_id: SpaceId::new(TOY_SPACE),
            coords: vec![self.t1, self.t2],
            is_equilibrium: self.is_equilibrium(),
            label: None,
        }
    }

    pub fn from_point(p: &StatePoint<F>, c: F) -> Result<Self> {
        if p.space_id.as_str() != TOY_SPACE {
            return Err(Error::UnknownSpace(p.space_id.0.clone()));
        }
        if p.coords.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: p.coords.len(),
            });
        }
        Self::new(p.coords[0], p.coords[1], c)
    }
}

impl<F: Real> fmt::Display for BlockPairState<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t1, self.t2)
    }
}

/// `x ≺ y`: some point on the segment from `x` to its mean lies
/// componentwise below `y`.
pub fn toy_precedes<F: Real>(x: &BlockPairState<F>, y: &BlockPairState<F>) -> bool {
    if (x.c - y.c).abs() > coord_tol::<F>() * x.c.max(y.c) {
        return false;
    }
    let m = x.mean();
    let slack = coord_tol::<F>() * x.t1.max(x.t2).max(y.t1).max(y.t2);
    // s·d ≤ r for each block, s ∈ [0, 1]
    let (mut lo, mut hi) = (F::zero(), F::one());
    for (xi, yi) in [(x.t1, y.t1), (x.t2, y.t2)] {
        let d = m - xi;
        let r = yi - xi + slack;
        if d > F::zero() {
            hi = hi.min(r / d);
        } else if d < F::zero() {
            lo = lo.max(r / d);
        } else if r < F::zero() {
            return false;
        }
    }
    lo <= hi
}

/// `min(ln T₁, ln T₂)`.
pub fn toy_s_minus<F: Real>(x: &BlockPairState<F>) -> F {
    x.t1.min(x.t2).ln()
}

/// `ln((T₁ + T₂)/2)`.
pub fn toy_s_plus<F: Real>(x: &BlockPairState<F>) -> F {
    x.mean().ln()
}

/// `½(ln T₁ + ln T₂)`, the entropy the blocks keep under reversible
/// equilibration through a Carnot engine.
pub fn toy_extended_entropy<F: Real>(x: &BlockPairState<F>) -> F {
    (x.t1.ln() + x.t2.ln()) / F::lit(2.0)
}

/// Boundary of the forward sector of `x`, clipped to `[.., tmax]²` and
/// listed counterclockwise from the top of the vertical edge.
pub fn sector_polygon<F: Real>(x: &BlockPairState<F>, tmax: F) -> Result<Vec<(F, F)>> {
    if tmax < x.t1.max(x.t2) {
        return Err(Error::InvalidParameter(format!(
            "clip bound {tmax} lies below the state {x}"
        )));
    }
    let m = x.mean();
    let mut pts = if x.t1 <= x.t2 {
        vec![(x.t1, tmax), (x.t1, x.t2), (m, m), (tmax, m), (tmax, tmax)]
    } else {
        vec![(m, tmax), (m, m), (x.t1, x.t2), (tmax, x.t2), (tmax, tmax)]
    };
    pts.dedup();
    Ok(pts)
}

/// Continuum toy model with closed-form `S₋`, `S₊`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToyModel<F = f64> {
    pub c: F,
}

impl<F: Real> ToyModel<F> {
    pub fn new(c: F) -> Result<Self> {
        BlockPairState::new(F::one(), F::one(), c)?;
        Ok(ToyModel { c })
    }

    pub fn state(&self, t1: F, t2: F) -> Result<BlockPairState<F>> {
        BlockPairState::new(t1, t2, self.c)
    }

    fn equilibrium(&self, t: F) -> BlockPairState<F> {
        BlockPairState {
            t1: t,
            t2: t,
            c: self.c,
        }
    }
}

impl<F: Real> Accessibility<F> for ToyModel<F> {
    /// Single states of equal scale; anything else is not materialized.
    fn precedes(&self, a: &CompoundState<F>, b: &CompoundState<F>) -> Result<bool> {
        let single = |s: &CompoundState<F>| match s.parts() {
            [p] => Ok((p.scale, BlockPairState::from_point(&p.state, self.c)?)),
            _ => Err(Error::NotMaterialized(s.to_string())),
        };
        let (la, x) = single(a)?;
        let (lb, y) = single(b)?;
        if (la - lb).abs() > coord_tol::<F>() * la.max(lb) {
            return Err(Error::NotMaterialized(format!("{a} vs {b}")));
        }
        Ok(toy_precedes(&x, &y))
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities::default()
    }
}

impl<F: Real> EmbeddedModel<F> for ToyModel<F> {
    type State = BlockPairState<F>;

    fn precedes(&self, a: &Self::State, b: &Self::State) -> Result<bool> {
        Ok(toy_precedes(a, b))
    }

    fn is_equilibrium(&self, x: &Self::State) -> bool {
        x.is_equilibrium()
    }

    /// The diagonal is a continuum; the optima below are closed form.
    fn equilibrium_candidates(&self, _x: &Self::State) -> Vec<Self::State> {
        Vec::new()
    }

    /// `ln T` on the diagonal.
    fn entropy(&self, x: &Self::State) -> Result<F> {
        if !x.is_equilibrium() {
            return Err(Error::InvalidParameter(format!("{x} is off the diagonal")));
        }
        Ok(x.t1.ln())
    }

    fn energy(&self, x: &Self::State) -> Option<F> {
        Some(x.energy())
    }

    fn describe(&self, x: &Self::State) -> String {
        x.to_string()
    }

    fn s_minus(&self, x: &Self::State) -> Result<Bound<F, Self::State>> {
        Ok(Bound {
            value: toy_s_minus(x),
            witness: self.equilibrium(x.t1.min(x.t2)),
        })
    }

    fn s_plus(&self, x: &Self::State) -> Result<Bound<F, Self::State>> {
        Ok(Bound {
            value: toy_s_plus(x),
            witness: self.equilibrium(x.mean()),
        })
    }
}

/// `n` pairs `x ≺ y` with `x` uniform on `range²`: `y` conducts a random
/// fraction of the way to the mean, then rubs each block by up to half the
/// range width.
pub fn sample_related_pairs<F: Real, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    range: (F, F),
    c: F,
) -> Result<Vec<(BlockPairState<F>, BlockPairState<F>)>> {
    let (lo, hi) = (range.0.to_f64_lossy(), range.1.to_f64_lossy());
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidParameter(format!("bad temperature range [{lo}, {hi}]")));
    }
    let rub = (hi - lo) / 2.0;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (a, b) = (rng.gen_range(lo..hi), rng.gen_range(lo..hi));
        let s: f64 = rng.gen_range(0.0..=1.0);
        let m = (a + b) / 2.0;
        let ya = a + s * (m - a) + rng.gen_range(0.0..rub);
        let yb = b + s * (m - b) + rng.gen_range(0.0..rub);
        out.push((
            BlockPairState::new(F::lit(a), F::lit(b), c)?,
            BlockPairState::new(F::lit(ya), F::lit(yb), c)?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(a: f64, b: f64) -> BlockPairState {
        BlockPairState::unit(a, b).unwrap()
    }

    #[test]
    fn sector_membership() {
        let x = st(1.0, 3.0);
        assert!(toy_precedes(&x, &st(2.0, 2.0)));
        assert!(toy_precedes(&x, &st(1.0, 5.0)));
        assert!(toy_precedes(&x, &st(5.0, 2.0)));
        assert!(!toy_precedes(&x, &st(1.5, 1.6)));
        assert!(!toy_precedes(&x, &st(0.9, 3.0)));
        assert!(!toy_precedes(&x, &st(2.5, 1.9)));
    }

    #[test]
    fn diagonal_sector_is_quadrant() {
        let x = st(2.0, 2.0);
        assert!(toy_precedes(&x, &st(2.0, 2.0)));
        assert!(toy_precedes(&x, &st(2.5, 3.0)));
        assert!(!toy_precedes(&x, &st(1.99, 3.0)));
        assert!(!toy_precedes(&x, &st(3.0, 1.99)));
    }

    #[test]
    fn closed_forms() {
        let x = st(1.0, 3.0);
        assert_eq!(toy_s_minus(&x), 0.0);
        assert!((toy_s_plus(&x) - 2f64.ln()).abs() < 1e-15);
        assert!((toy_extended_entropy(&x) - 0.5 * 3f64.ln()).abs() < 1e-15);
        let d = st(1.7, 1.7);
        assert_eq!(toy_s_minus(&d), toy_s_plus(&d));
        assert!((toy_extended_entropy(&d) - 1.7f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn polygon_vertices() {
        let p = sector_polygon(&st(1.0, 3.0), 5.0).unwrap();
        assert_eq!(p, vec![(1.0, 5.0), (1.0, 3.0), (2.0, 2.0), (5.0, 2.0), (5.0, 5.0)]);
        let q = sector_polygon(&st(2.0, 2.0), 5.0).unwrap();
        assert_eq!(q, vec![(2.0, 5.0), (2.0, 2.0), (5.0, 2.0), (5.0, 5.0)]);
        assert!(sector_polygon(&st(1.0, 3.0), 2.0).is_err());
    }

    #[test]
    fn rejects_bad_states() {
        assert!(BlockPairState::unit(0.0, 1.0).is_err());
        assert!(BlockPairState::new(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn band_through_trait() {
        let m = ToyModel::new(1.0).unwrap();
        let x = st(1.0, 3.0);
        let lo = EmbeddedModel::s_minus(&m, &x).unwrap();
        assert_eq!(lo.witness, st(1.0, 1.0));
        let hi = EmbeddedModel::s_plus(&m, &x).unwrap();
        assert_eq!(hi.witness, st(2.0, 2.0));
    }
}
