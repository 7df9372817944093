use super::{Accessibility, Capabilities};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::state::{CompoundState, StatePoint};

/// Scaled-product model whose relation is generated by a known additive,
/// extensive entropy on a finite base set:
/// `a ≺ b ⇔ Σ λᵢ S*(Xᵢ) ≤ Σ μⱼ S*(Yⱼ)` for compounds of equal matter content.
///
/// Scaled copies and compositions are evaluated on demand, so any
/// `((1-λ)X₀, λX₁)` query can be answered.
#[derive(Debug, Clone)]
pub struct AdditiveEntropyModel<F: Real = f64> {
    table: Vec<(StatePoint<F>, F)>,
    tie_tol: F,
}

impl<F: Real> AdditiveEntropyModel<F> {
    pub fn new(table: Vec<(StatePoint<F>, F)>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::EmptySamples);
        }
        if table.iter().any(|(_, s)| !s.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(AdditiveEntropyModel {
            table,
            tie_tol: F::lit(1e-13),
        })
    }

    pub fn states(&self) -> impl Iterator<Item = &StatePoint<F>> {
        self.table.iter().map(|(s, _)| s)
    }

    pub fn table(&self) -> &[(StatePoint<F>, F)] {
        &self.table
    }

    /// The generating entropy of a base state.
    pub fn entropy_of(&self, x: &StatePoint<F>) -> Result<F> {
        self.table
            .iter()
            .find(|(s, _)| s.same_point(x))
            .map(|(_, v)| *v)
            .ok_or_else(|| match self.table.iter().any(|(s, _)| s.space_id == x.space_id) {
                true => Error::UnknownNode(x.to_string()),
                false => Error::UnknownSpace(x.space_id.0.clone()),
            })
    }

    /// Additive, extensive entropy of a compound.
    pub fn compound_entropy(&self, c: &CompoundState<F>) -> Result<F> {
        c.parts()
            .iter()
            .try_fold(F::zero(), |acc, p| Ok(acc + p.scale * self.entropy_of(&p.state)?))
    }
}

impl<F: Real> Accessibility<F> for AdditiveEntropyModel<F> {
    fn precedes(&self, a: &CompoundState<F>, b: &CompoundState<F>) -> Result<bool> {
        let (sa, sb) = (self.compound_entropy(a)?, self.compound_entropy(b)?);
        if !a.same_matter(b) {
            return Ok(false);
        }
        let scale = F::one() + sa.abs().max(sb.abs());
        Ok(sa <= sb + self.tie_tol * scale)
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            scaling: true,
            composition: true,
        }
    }

    fn enumerate_states(&self) -> Option<Vec<CompoundState<F>>> {
        Some(
            self.table
                .iter()
                .map(|(s, _)| CompoundState::single(s.clone()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{compose, scale, SpaceId};

    fn model() -> (AdditiveEntropyModel, Vec<StatePoint>) {
        let pts: Vec<StatePoint> = (0..3)
            .map(|i| StatePoint::new(SpaceId::new("g"), vec![i as f64], true).unwrap())
            .collect();
        let m = AdditiveEntropyModel::new(pts.iter().cloned().zip([0.0, 1.0, 3.0]).collect()).unwrap();
        (m, pts)
    }

    #[test]
    fn compound_queries_use_additivity() {
        let (m, p) = model();
        // (½X0, ½X2) has entropy 1.5 > S(X1) = 1
        let mix = CompoundState::combination(&[(0.5, &p[0]), (0.5, &p[2])]).unwrap();
        assert!(m.precedes(&p[1].clone().into(), &mix).unwrap());
        assert!(!m.precedes(&mix, &p[1].clone().into()).unwrap());
        // different matter content is never related
        let two = scale(2.0, &p[2].clone().into()).unwrap();
        assert!(!m.precedes(&p[0].clone().into(), &two).unwrap());
        let pair = compose(&[p[0].clone().into(), p[1].clone().into()]).unwrap();
        assert_eq!(m.compound_entropy(&pair).unwrap(), 1.0);
    }

    #[test]
    fn unknown_state_is_an_error() {
        let (m, _) = model();
        let x = StatePoint::new(SpaceId::new("g"), vec![9.0], true).unwrap();
        assert!(matches!(m.entropy_of(&x), Err(Error::UnknownNode(_))));
        let y = StatePoint::new(SpaceId::new("h"), vec![0.0], true).unwrap();
        assert!(matches!(m.entropy_of(&y), Err(Error::UnknownSpace(_))));
    }
}
