//! States, scaled copies and compositions.
//!
//! A [`CompoundState`] is kept in canonical form: a flat, non-empty list of
//! scaled parts. Nested compositions are flattened on construction and
//! scaling distributes over the parts, so `λ·(μX, Y) = (λμX, λY)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{coord_tol, Real};

/// Identifier of a state space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceId(pub String);

impl SpaceId {
    pub fn new(id: impl Into<String>) -> Self {
        SpaceId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A point of a (simple) state space.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePoint<F = f64> {
    pub space_id: SpaceId,
    pub coords: Vec<F>,
    pub is_equilibrium: bool,
    /// Node name for states of explicit finite models.
    pub label: Option<String>,
}

impl<F: Real> StatePoint<F> {
    pub fn new(space_id: SpaceId, coords: Vec<F>, is_equilibrium: bool) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(StatePoint {
            space_id,
            coords,
            is_equilibrium,
            label: None,
        })
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Same point up to the coordinate tie tolerance. Labels, when both
    /// present, decide on their own.
    pub fn same_point(&self, other: &Self) -> bool {
        if self.space_id != other.space_id {
            return false;
        }
        if let (Some(a), Some(b)) = (&self.label, &other.label) {
            return a == b;
        }
        self.coords.len() == other.coords.len()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| (*a - *b).abs() <= coord_tol())
    }
}

impl<F: Real> fmt::Display for StatePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            return f.write_str(l);
        }
        write!(f, "{}(", self.space_id)?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `λX` for `λ > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledState<F = f64> {
    pub scale: F,
    pub state: StatePoint<F>,
}

impl<F: Real> ScaledState<F> {
    pub fn new(scale: F, state: StatePoint<F>) -> Result<Self> {
        if !(scale > F::zero()) || !scale.is_finite() {
            return Err(Error::NonPositiveScale(scale.to_f64_lossy()));
        }
        Ok(ScaledState { scale, state })
    }
}

/// Composition of scaled states in canonical (flattened) form.
#[derive(Debug, Clone, PartialEq)]
pub struct CompoundState<F = f64> {
    parts: Vec<ScaledState<F>>,
}

impl<F: Real> From<StatePoint<F>> for CompoundState<F> {
    fn from(state: StatePoint<F>) -> Self {
        CompoundState {
            parts: vec![ScaledState { scale: F::one(), state }],
        }
    }
}

impl<F: Real> CompoundState<F> {
    pub fn single(state: StatePoint<F>) -> Self {
        state.into()
    }

    pub fn from_parts(parts: Vec<ScaledState<F>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter("compound state needs at least one part".into()));
        }
        for p in &parts {
            if !(p.scale > F::zero()) {
                return Err(Error::NonPositiveScale(p.scale.to_f64_lossy()));
            }
        }
        Ok(CompoundState { parts })
    }

    /// `(a₁X₁, a₂X₂, …)` where parts with zero weight are dropped.
    pub fn combination(terms: &[(F, &StatePoint<F>)]) -> Result<Self> {
        let mut parts = Vec::with_capacity(terms.len());
        for (w, s) in terms {
            if *w == F::zero() {
                continue;
            }
            parts.push(ScaledState::new(*w, (*s).clone())?);
        }
        Self::from_parts(parts)
    }

    pub fn parts(&self) -> &[ScaledState<F>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The underlying point if this is an unscaled single state.
    pub fn as_single(&self) -> Option<&StatePoint<F>> {
        match self.parts.as_slice() {
            [p] if (p.scale - F::one()).abs() <= coord_tol() => Some(&p.state),
            _ => None,
        }
    }

    /// Total scale per space, sorted by space id.
    pub fn matter_content(&self) -> Vec<(SpaceId, F)> {
        let mut out: Vec<(SpaceId, F)> = Vec::new();
        for p in &self.parts {
            match out.iter_mut().find(|(id, _)| *id == p.state.space_id) {
                Some((_, s)) => *s = *s + p.scale,
                None => out.push((p.state.space_id.clone(), p.scale)),
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Whether two compounds contain the same amount of every space.
    pub fn same_matter(&self, other: &Self) -> bool {
        let a = self.matter_content();
        let b = other.matter_content();
        let tol = F::lit(1e-9);
        a.len() == b.len()
            && a.iter()
                .zip(&b)
                .all(|((ia, sa), (ib, sb))| ia == ib && (*sa - *sb).abs() <= tol * (F::one() + sa.abs()))
    }
}

/// Composes compound states into one flat compound.
pub fn compose<F: Real>(parts: &[CompoundState<F>]) -> Result<CompoundState<F>> {
    let flat: Vec<ScaledState<F>> = parts.iter().flat_map(|c| c.parts.iter().cloned()).collect();
    CompoundState::from_parts(flat)
}

/// `λ·s`, distributing the factor over every part.
pub fn scale<F: Real>(lambda: F, s: &CompoundState<F>) -> Result<CompoundState<F>> {
    if !(lambda > F::zero()) || !lambda.is_finite() {
        return Err(Error::NonPositiveScale(lambda.to_f64_lossy()));
    }
    let parts = s
        .parts
        .iter()
        .map(|p| ScaledState {
            scale: p.scale * lambda,
            state: p.state.clone(),
        })
        .collect();
    Ok(CompoundState { parts })
}

impl<F: Real> fmt::Display for CompoundState<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.as_single() {
            return write!(f, "{s}");
        }
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if (p.scale - F::one()).abs() > coord_tol() {
                write!(f, "{}*", p.scale)?;
            }
            write!(f, "{}", p.state)?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64) -> StatePoint {
        StatePoint::new(SpaceId::new("g"), vec![x], true).unwrap()
    }

    #[test]
    fn unit_scale_is_identity() {
        let s = CompoundState::single(pt(1.0));
        assert_eq!(scale(1.0, &s).unwrap(), s);
    }

    #[test]
    fn scaling_associates() {
        let s = compose(&[pt(1.0).into(), pt(2.0).into()]).unwrap();
        let lhs = scale(2.0, &scale(3.0, &s).unwrap()).unwrap();
        assert_eq!(lhs, scale(6.0, &s).unwrap());
    }

    #[test]
    fn composition_flattens() {
        let (x, y, z): (CompoundState, CompoundState, CompoundState) = (pt(1.0).into(), pt(2.0).into(), pt(3.0).into());
        let left = compose(&[compose(&[x.clone(), y.clone()]).unwrap(), z.clone()]).unwrap();
        let right = compose(&[x, compose(&[y, z]).unwrap()]).unwrap();
        assert_eq!(left.len(), 3);
        assert_eq!(left, right);
    }

    #[test]
    fn rejects_bad_scale_and_coords() {
        let s = CompoundState::single(pt(1.0));
        assert!(matches!(scale(0.0, &s), Err(Error::NonPositiveScale(_))));
        assert!(matches!(scale(-1.0, &s), Err(Error::NonPositiveScale(_))));
        assert_eq!(
            StatePoint::new(SpaceId::new("g"), vec![f64::NAN], true),
            Err(Error::NonFinite)
        );
        assert!(compose::<f64>(&[]).is_err());
    }

    #[test]
    fn matter_content_sums_scales() {
        let c = CompoundState::combination(&[(0.25, &pt(1.0)), (0.75, &pt(2.0)), (0.0, &pt(3.0))]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.matter_content(), vec![(SpaceId::new("g"), 1.0)]);
        assert!(c.same_matter(&pt(5.0).into()));
    }
}
