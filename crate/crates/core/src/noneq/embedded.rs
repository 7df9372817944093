use std::fmt;
use std::sync::Arc;

use super::band::Bound;
use crate::error::{Error, Result};
use crate::relation::{Accessibility, FiniteRelation, GridModel, NodeId};
use crate::scalar::Real;
use crate::state::{CompoundState, StatePoint};

/// A relation on `Γ̂` together with its equilibrium subset `Γ` and the
/// equilibrium entropy on `Γ`.
pub trait EmbeddedModel<F: Real> {
    type State: Clone;

    fn precedes(&self, a: &Self::State, b: &Self::State) -> Result<bool>;

    fn is_equilibrium(&self, x: &Self::State) -> bool;

    /// Equilibrium states over which the sup/inf for `x` is taken.
    fn equilibrium_candidates(&self, x: &Self::State) -> Vec<Self::State>;

    /// Equilibrium entropy; errors off `Γ`.
    fn entropy(&self, x: &Self::State) -> Result<F>;

    /// Internal energy, when the model declares an energy map.
    fn energy(&self, _x: &Self::State) -> Option<F> {
        None
    }

    /// The pair `(a, b)`, when composition is available.
    fn compose(&self, _a: &Self::State, _b: &Self::State) -> Option<Self::State> {
        None
    }

    fn supports_composition(&self) -> bool {
        false
    }

    /// All states, for finite models.
    fn states(&self) -> Option<Vec<Self::State>> {
        None
    }

    /// Whether `a` and `b` belong to the same state space.
    fn same_space(&self, _a: &Self::State, _b: &Self::State) -> bool {
        true
    }

    /// Discretization error of the sup/inf (zero for exact models).
    fn accuracy_bound(&self) -> F {
        F::zero()
    }

    fn describe(&self, x: &Self::State) -> String;

    /// `S₋(x) = sup{S(x′) : x′ ∈ Γ, x′ ≺ x}` with its attaining state.
    fn s_minus(&self, x: &Self::State) -> Result<Bound<F, Self::State>> {
        let mut best: Option<Bound<F, Self::State>> = None;
        for c in self.equilibrium_candidates(x) {
            if self.precedes(&c, x)? {
                let s = self.entropy(&c)?;
                if best.as_ref().is_none_or(|b| s > b.value) {
                    best = Some(Bound { value: s, witness: c });
                }
            }
        }
        best.ok_or(Error::N2Violated("predecessor"))
    }

    /// `S₊(x) = inf{S(x″) : x″ ∈ Γ, x ≺ x″}` with its attaining state.
    fn s_plus(&self, x: &Self::State) -> Result<Bound<F, Self::State>> {
        let mut best: Option<Bound<F, Self::State>> = None;
        for c in self.equilibrium_candidates(x) {
            if self.precedes(x, &c)? {
                let s = self.entropy(&c)?;
                if best.as_ref().is_none_or(|b| s < b.value) {
                    best = Some(Bound { value: s, witness: c });
                }
            }
        }
        best.ok_or(Error::N2Violated("successor"))
    }
}

/// Where a finite model's equilibrium entropy comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum EntropySource<F = f64> {
    /// First coordinate of each equilibrium node.
    Coord0,
    /// Rank of the node's equivalence class in the order on `Γ`.
    Rank,
    /// Explicit value per simple equilibrium node.
    Explicit(Vec<(NodeId, F)>),
}

/// Finite explicit model. Product nodes `(a, b)` of equilibrium nodes get
/// the additive entropy `S(a) + S(b)`.
#[derive(Debug, Clone)]
pub struct FiniteEmbedded<F: Real = f64> {
    rel: FiniteRelation<F>,
    entropy: Vec<Option<F>>,
    energy_coord: Option<usize>,
}

impl<F: Real> FiniteEmbedded<F> {
    pub fn new(rel: FiniteRelation<F>, source: EntropySource<F>) -> Result<Self> {
        let n = rel.len();
        let mut entropy = vec![None; n];
        match source {
            EntropySource::Coord0 => {
                for id in rel.ids() {
                    if rel.is_equilibrium(id) && rel.parts(id).is_none() {
                        let c = rel.coords(id);
                        let v = c.first().copied().ok_or_else(|| {
                            Error::InvalidParameter(format!("equilibrium node `{}` has no coordinate", rel.name(id)))
                        })?;
                        entropy[id.0] = Some(v);
                    }
                }
            }
            EntropySource::Rank => {
                let eq: Vec<NodeId> = rel
                    .ids()
                    .filter(|&i| rel.is_equilibrium(i) && rel.parts(i).is_none())
                    .collect();
                for &a in &eq {
                    // number of classes strictly below a
                    let mut below: Vec<NodeId> = Vec::new();
                    for &b in &eq {
                        if rel.related(b, a)
                            && !rel.related(a, b)
                            && !below.iter().any(|&c| rel.related(c, b) && rel.related(b, c))
                        {
                            below.push(b);
                        }
                    }
                    entropy[a.0] = Some(F::from_usize(below.len()).unwrap());
                }
            }
            EntropySource::Explicit(values) => {
                for (id, v) in values {
                    if id.0 >= n || !rel.is_equilibrium(id) {
                        return Err(Error::InvalidParameter(
                            "entropy given for a non-equilibrium node".into(),
                        ));
                    }
                    entropy[id.0] = Some(v);
                }
            }
        }
        for id in rel.ids() {
            if let Some((a, b)) = rel.parts(id) {
                if let (Some(sa), Some(sb)) = (entropy[a.0], entropy[b.0]) {
                    entropy[id.0] = Some(sa + sb);
                }
            }
        }
        if let Some(id) = rel.ids().find(|&i| rel.is_equilibrium(i) && entropy[i.0].is_none()) {
            return Err(Error::InvalidParameter(format!("no entropy for `{}`", rel.name(id))));
        }
        Ok(FiniteEmbedded {
            rel,
            entropy,
            energy_coord: None,
        })
    }

    /// Declares which coordinate of the simple nodes is the internal
    /// energy; products add up.
    pub fn with_energy_coord(mut self, k: usize) -> Self {
        self.energy_coord = Some(k);
        self
    }

    pub fn relation(&self) -> &FiniteRelation<F> {
        &self.rel
    }

    pub fn into_relation(self) -> FiniteRelation<F> {
        self.rel
    }

    pub fn entropy_of(&self, id: NodeId) -> Option<F> {
        self.entropy[id.0]
    }

    /// Removes one pair from the relation, keeping everything else.
    pub fn without_edge(&self, from: NodeId, to: NodeId) -> Self {
        let mut out = self.clone();
        out.rel.remove_edge(from, to);
        out
    }

    /// Checks that the relation restricted to each equilibrium space is
    /// characterized by the entropy, and that every node has equilibrium
    /// states below and above it.
    pub fn validate(&self) -> Result<()> {
        let tol = F::lit(1e-12);
        let eq: Vec<NodeId> = self.rel.ids().filter(|&i| self.rel.is_equilibrium(i)).collect();
        for &a in &eq {
            for &b in &eq {
                if !self.rel.same_space(a, b) {
                    continue;
                }
                let (sa, sb) = (self.entropy[a.0].unwrap(), self.entropy[b.0].unwrap());
                if self.rel.related(a, b) != (sa <= sb + tol) {
                    return Err(Error::Premise(format!(
                        "equilibrium order of `{}` and `{}` disagrees with the entropy",
                        self.rel.name(a),
                        self.rel.name(b)
                    )));
                }
            }
        }
        for id in self.rel.ids() {
            self.s_minus(&id)?;
            self.s_plus(&id)?;
        }
        Ok(())
    }
}

impl<F: Real> EmbeddedModel<F> for FiniteEmbedded<F> {
    type State = NodeId;

    fn precedes(&self, a: &NodeId, b: &NodeId) -> Result<bool> {
        Ok(self.rel.related(*a, *b))
    }

    fn is_equilibrium(&self, x: &NodeId) -> bool {
        self.rel.is_equilibrium(*x)
    }

    fn equilibrium_candidates(&self, x: &NodeId) -> Vec<NodeId> {
        self.rel
            .ids()
            .filter(|&i| self.rel.is_equilibrium(i) && self.rel.same_space(i, *x))
            .collect()
    }

    fn entropy(&self, x: &NodeId) -> Result<F> {
        self.entropy[x.0]
            .ok_or_else(|| Error::InvalidParameter(format!("`{}` is not an equilibrium node", self.rel.name(*x))))
    }

    fn energy(&self, x: &NodeId) -> Option<F> {
        let k = self.energy_coord?;
        match self.rel.parts(*x) {
            Some((a, b)) => Some(*self.rel.coords(a).get(k)? + *self.rel.coords(b).get(k)?),
            None => self.rel.coords(*x).get(k).copied(),
        }
    }

    fn compose(&self, a: &NodeId, b: &NodeId) -> Option<NodeId> {
        self.rel.product(*a, *b)
    }

    fn supports_composition(&self) -> bool {
        self.rel.has_products()
    }

    fn states(&self) -> Option<Vec<NodeId>> {
        Some(self.rel.ids().collect())
    }

    fn same_space(&self, a: &NodeId, b: &NodeId) -> bool {
        self.rel.same_space(*a, *b)
    }

    fn describe(&self, x: &NodeId) -> String {
        self.rel.name(*x).to_string()
    }
}

type CoordFn<F> = Arc<dyn Fn(&[F]) -> F + Send + Sync>;

/// Lattice model: relation from a [`GridModel`], `Γ` from its equilibrium
/// predicate, entropy and energy as coordinate functions.
#[derive(Clone)]
pub struct GridEmbedded<F: Real = f64> {
    grid: GridModel<F>,
    entropy: CoordFn<F>,
    energy: Option<CoordFn<F>>,
    eq_points: Vec<StatePoint<F>>,
}

impl<F: Real> fmt::Debug for GridEmbedded<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridEmbedded").field("grid", &self.grid).finish()
    }
}

impl<F: Real> GridEmbedded<F> {
    pub fn new(grid: GridModel<F>, entropy: impl Fn(&[F]) -> F + Send + Sync + 'static) -> Result<Self> {
        let eq_points: Vec<StatePoint<F>> = grid.equilibrium_cells().into_iter().map(|c| grid.point(c)).collect();
        if eq_points.is_empty() {
            return Err(Error::InvalidParameter("grid has no equilibrium cells".into()));
        }
        Ok(GridEmbedded {
            grid,
            entropy: Arc::new(entropy),
            energy: None,
            eq_points,
        })
    }

    pub fn with_energy(mut self, energy: impl Fn(&[F]) -> F + Send + Sync + 'static) -> Self {
        self.energy = Some(Arc::new(energy));
        self
    }

    pub fn grid(&self) -> &GridModel<F> {
        &self.grid
    }

    /// Snaps an arbitrary state to the lattice.
    pub fn snap(&self, x: &StatePoint<F>) -> Result<StatePoint<F>> {
        self.grid.snap(x)
    }
}

impl<F: Real> EmbeddedModel<F> for GridEmbedded<F> {
    type State = StatePoint<F>;

    fn precedes(&self, a: &StatePoint<F>, b: &StatePoint<F>) -> Result<bool> {
        self.grid
            .precedes(&CompoundState::single(a.clone()), &CompoundState::single(b.clone()))
    }

    fn is_equilibrium(&self, x: &StatePoint<F>) -> bool {
        self.grid.snap(x).map(|p| p.is_equilibrium).unwrap_or(false)
    }

    fn equilibrium_candidates(&self, _x: &StatePoint<F>) -> Vec<StatePoint<F>> {
        self.eq_points.clone()
    }

    fn entropy(&self, x: &StatePoint<F>) -> Result<F> {
        Ok((self.entropy)(&x.coords))
    }

    fn energy(&self, x: &StatePoint<F>) -> Option<F> {
        self.energy.as_ref().map(|u| u(&x.coords))
    }

    /// `max |∇S|·h` over the equilibrium lattice points.
    fn accuracy_bound(&self) -> F {
        let spec = self.grid.spec();
        let mut worst = F::zero();
        for p in &self.eq_points {
            let mut g2 = F::zero();
            for k in 0..p.coords.len() {
                let h = spec.h[k];
                let (mut a, mut b) = (p.coords.clone(), p.coords.clone());
                a[k] = a[k] + h / F::lit(2.0);
                b[k] = b[k] - h / F::lit(2.0);
                let d = ((self.entropy)(&a) - (self.entropy)(&b)) / h;
                g2 = g2 + d * d;
            }
            let hmax = spec.h.iter().copied().fold(F::zero(), F::max);
            worst = worst.max(g2.sqrt() * hmax);
        }
        worst
    }

    fn describe(&self, x: &StatePoint<F>) -> String {
        x.to_string()
    }
}
