//! Adiabatic accessibility relations.
//!
//! Every model answers the single question "is `b` adiabatically accessible
//! from `a`?" through [`Accessibility::precedes`]. Strict precedence,
//! equivalence and comparability are derived from it.

mod additive;
mod finite;
mod grid;

pub use additive::AdditiveEntropyModel;
pub use finite::{transitive_reflexive_closure, BitMatrix, FiniteRelation, NodeId};
pub use grid::{Generator, GridModel, GridSpec};

use crate::error::Result;
use crate::scalar::Real;
use crate::state::CompoundState;

/// Which algebraic operations a model can evaluate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Capabilities {
    /// Scaled copies `λX` can be queried.
    pub scaling: bool,
    /// Compositions `(X, Y)` can be queried.
    pub composition: bool,
}

pub trait Accessibility<F: Real> {
    /// `a ≺ b`.
    fn precedes(&self, a: &CompoundState<F>, b: &CompoundState<F>) -> Result<bool>;

    fn capabilities(&self) -> Capabilities {
        Capabilities::default()
    }

    /// Every state of the model, when there are finitely many.
    fn enumerate_states(&self) -> Option<Vec<CompoundState<F>>> {
        None
    }

    /// `a ≺≺ b`.
    fn strictly_precedes(&self, a: &CompoundState<F>, b: &CompoundState<F>) -> Result<bool> {
        Ok(self.precedes(a, b)? && !self.precedes(b, a)?)
    }

    /// `a ∼ b`.
    fn adiabatically_equivalent(&self, a: &CompoundState<F>, b: &CompoundState<F>) -> Result<bool> {
        Ok(self.precedes(a, b)? && self.precedes(b, a)?)
    }

    fn comparable(&self, a: &CompoundState<F>, b: &CompoundState<F>) -> Result<bool> {
        Ok(self.precedes(a, b)? || self.precedes(b, a)?)
    }
}

impl<F: Real, M: Accessibility<F> + ?Sized> Accessibility<F> for &M {
    fn precedes(&self, a: &CompoundState<F>, b: &CompoundState<F>) -> Result<bool> {
        (**self).precedes(a, b)
    }
    fn capabilities(&self) -> Capabilities {
        (**self).capabilities()
    }
    fn enumerate_states(&self) -> Option<Vec<CompoundState<F>>> {
        (**self).enumerate_states()
    }
}

/// The two decidable relation representations.
#[derive(Debug, Clone)]
pub enum RelationModel<F: Real = f64> {
    FiniteExplicit(FiniteRelation<F>),
    GeneratorInduced(GridModel<F>),
}

impl<F: Real> Accessibility<F> for RelationModel<F> {
    fn precedes(&self, a: &CompoundState<F>, b: &CompoundState<F>) -> Result<bool> {
        match self {
            RelationModel::FiniteExplicit(m) => m.precedes(a, b),
            RelationModel::GeneratorInduced(m) => m.precedes(a, b),
        }
    }

    fn capabilities(&self) -> Capabilities {
        match self {
            RelationModel::FiniteExplicit(m) => m.capabilities(),
            RelationModel::GeneratorInduced(m) => m.capabilities(),
        }
    }

    fn enumerate_states(&self) -> Option<Vec<CompoundState<F>>> {
        match self {
            RelationModel::FiniteExplicit(m) => m.enumerate_states(),
            RelationModel::GeneratorInduced(m) => m.enumerate_states(),
        }
    }
}
