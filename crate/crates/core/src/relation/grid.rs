use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, RwLock};

use super::Accessibility;
use crate::error::{Error, Result};
use crate::scalar::{coord_tol, Real};
use crate::state::{CompoundState, SpaceId, StatePoint};

type StepFn<F> = Arc<dyn Fn(&[F]) -> Vec<Vec<F>> + Send + Sync>;
type Predicate<F> = Arc<dyn Fn(&[F]) -> bool + Send + Sync>;

/// Uniform rectangular lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec<F: Real = f64> {
    pub space: SpaceId,
    pub lo: Vec<F>,
    pub hi: Vec<F>,
    pub h: Vec<F>,
}

impl<F: Real> GridSpec<F> {
    pub fn uniform(space: SpaceId, dim: usize, lo: F, hi: F, h: F) -> Self {
        GridSpec {
            space,
            lo: vec![lo; dim],
            hi: vec![hi; dim],
            h: vec![h; dim],
        }
    }

    fn validate(&self) -> Result<()> {
        let d = self.lo.len();
        if d == 0 || self.hi.len() != d || self.h.len() != d {
            return Err(Error::InvalidParameter("grid axes must agree in length".into()));
        }
        for k in 0..d {
            if !(self.h[k] > F::zero()) || !(self.hi[k] >= self.lo[k]) {
                return Err(Error::InvalidParameter(format!("bad grid axis {k}")));
            }
            let n = (self.hi[k] - self.lo[k]) / self.h[k];
            if (n - n.round()).abs() > F::lit(1e-6) {
                return Err(Error::InvalidParameter(format!(
                    "axis {k}: extent is not a multiple of the spacing"
                )));
            }
        }
        Ok(())
    }
}

/// A named move that maps a state to finitely many successors.
#[derive(Clone)]
pub struct Generator<F: Real = f64> {
    pub name: String,
    step: StepFn<F>,
}

impl<F: Real> Generator<F> {
    pub fn new(name: impl Into<String>, step: impl Fn(&[F]) -> Vec<Vec<F>> + Send + Sync + 'static) -> Self {
        Generator {
            name: name.into(),
            step: Arc::new(step),
        }
    }

    pub fn apply(&self, x: &[F]) -> Vec<Vec<F>> {
        (self.step)(x)
    }
}

impl<F: Real> fmt::Debug for Generator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generator({})", self.name)
    }
}

type Reach = Arc<Vec<u64>>;

/// Relation induced by closing a set of generator moves on a lattice.
///
/// States snap to the nearest lattice node. Successors falling outside the
/// bounds are discarded. Reachable sets are memoized per start cell.
pub struct GridModel<F: Real = f64> {
    spec: GridSpec<F>,
    counts: Vec<usize>,
    generators: Vec<Generator<F>>,
    equilibrium: Option<Predicate<F>>,
    cache: RwLock<HashMap<usize, Reach>>,
}

impl<F: Real> Clone for GridModel<F> {
    fn clone(&self) -> Self {
        GridModel {
            spec: self.spec.clone(),
            counts: self.counts.clone(),
            generators: self.generators.clone(),
            equilibrium: self.equilibrium.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl<F: Real> fmt::Debug for GridModel<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridModel")
            .field("spec", &self.spec)
            .field("generators", &self.generators)
            .finish()
    }
}

impl<F: Real> GridModel<F> {
    pub fn new(spec: GridSpec<F>, generators: Vec<Generator<F>>) -> Result<Self> {
        spec.validate()?;
        let counts = (0..spec.lo.len())
            .map(|k| ((spec.hi[k] - spec.lo[k]) / spec.h[k]).round().to_usize().unwrap_or(0) + 1)
            .collect();
        Ok(GridModel {
            spec,
            counts,
            generators,
            equilibrium: None,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Declares which lattice points are equilibrium states.
    pub fn with_equilibrium(mut self, pred: impl Fn(&[F]) -> bool + Send + Sync + 'static) -> Self {
        self.equilibrium = Some(Arc::new(pred));
        self
    }

    pub fn spec(&self) -> &GridSpec<F> {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn cell_count(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn generators(&self) -> &[Generator<F>] {
        &self.generators
    }

    /// Linear index of the nearest lattice node, or `None` when outside.
    fn try_cell(&self, x: &[F]) -> Option<usize> {
        if x.len() != self.dim() {
            return None;
        }
        let mut idx = 0;
        for k in (0..self.dim()).rev() {
            let (lo, hi, h) = (self.spec.lo[k], self.spec.hi[k], self.spec.h[k]);
            if !x[k].is_finite() || x[k] < lo - coord_tol() || x[k] > hi + coord_tol() {
                return None;
            }
            let i = ((x[k] - lo) / h).round().to_usize()?.min(self.counts[k] - 1);
            idx = idx * self.counts[k] + i;
        }
        Some(idx)
    }

    pub fn cell_of(&self, x: &[F]) -> Result<usize> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        self.try_cell(x)
            .ok_or_else(|| Error::OutOfBounds(x.iter().map(|v| v.to_f64_lossy()).collect()))
    }

    pub fn coords_of(&self, mut cell: usize) -> Vec<F> {
        let mut out = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            let i = cell % self.counts[k];
            cell /= self.counts[k];
            out.push(self.spec.lo[k] + self.spec.h[k] * F::from_usize(i).unwrap());
        }
        out
    }

    pub fn is_equilibrium_coords(&self, x: &[F]) -> bool {
        self.equilibrium.as_ref().is_some_and(|p| p(x))
    }

    pub fn point(&self, cell: usize) -> StatePoint<F> {
        let coords = self.coords_of(cell);
        let eq = self.is_equilibrium_coords(&coords);
        StatePoint {
            space_id: self.spec.space.clone(),
            coords,
            is_equilibrium: eq,
            label: None,
        }
    }

    /// Snaps a state to its lattice node.
    pub fn snap(&self, x: &StatePoint<F>) -> Result<StatePoint<F>> {
        Ok(self.point(self.locate(x)?))
    }

    fn locate(&self, x: &StatePoint<F>) -> Result<usize> {
        if x.space_id != self.spec.space {
            return Err(Error::UnknownSpace(x.space_id.0.clone()));
        }
        self.cell_of(&x.coords)
    }

    /// Lattice points of the equilibrium subset.
    pub fn equilibrium_cells(&self) -> Vec<usize> {
        (0..self.cell_count())
            .filter(|c| self.is_equilibrium_coords(&self.coords_of(*c)))
            .collect()
    }

    fn reach_from(&self, start: usize) -> Reach {
        if let Some(r) = self.cache.read().expect("cache lock").get(&start) {
            return r.clone();
        }
        let n = self.cell_count();
        let mut seen = vec![0u64; n.div_ceil(64)];
        let mut queue = VecDeque::from([start]);
        seen[start / 64] |= 1 << (start % 64);
        while let Some(c) = queue.pop_front() {
            let x = self.coords_of(c);
            for g in &self.generators {
                for y in g.apply(&x) {
                    if let Some(d) = self.try_cell(&y) {
                        if seen[d / 64] >> (d % 64) & 1 == 0 {
                            seen[d / 64] |= 1 << (d % 64);
                            queue.push_back(d);
                        }
                    }
                }
            }
        }
        let r = Arc::new(seen);
        self.cache.write().expect("cache lock").insert(start, r.clone());
        r
    }

    /// Forward sector of `x` on the lattice: the fixed point of generator
    /// application starting from the cell of `x`.
    pub fn reachable_set(&self, x: &StatePoint<F>) -> Result<ReachableSet> {
        let start = self.locate(x)?;
        Ok(ReachableSet {
            bits: self.reach_from(start),
        })
    }

    fn single<'a>(&self, c: &'a CompoundState<F>) -> Result<&'a StatePoint<F>> {
        c.as_single().ok_or_else(|| Error::NotMaterialized(c.to_string()))
    }
}

/// Set of lattice cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachableSet {
    bits: Reach,
}

impl ReachableSet {
    pub fn contains_cell(&self, c: usize) -> bool {
        self.bits.get(c / 64).is_some_and(|w| w >> (c % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cells(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .flat_map(|(w, bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }

    pub fn is_subset(&self, other: &ReachableSet) -> bool {
        self.bits.iter().zip(other.bits.iter()).all(|(a, b)| a & !b == 0)
    }
}

impl<F: Real> Accessibility<F> for GridModel<F> {
    fn precedes(&self, a: &CompoundState<F>, b: &CompoundState<F>) -> Result<bool> {
        let (pa, pb) = (self.single(a)?, self.single(b)?);
        let cb = self.locate(pb)?;
        Ok(self.reachable_set(pa)?.contains_cell(cb))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: f64) -> GridSpec {
        GridSpec::uniform(SpaceId::new("g"), 2, 0.0, n, 1.0)
    }

    fn pt(x: f64, y: f64) -> StatePoint {
        StatePoint::new(SpaceId::new("g"), vec![x, y], false).unwrap()
    }

    #[test]
    fn no_generators_reach_only_self() {
        let m = GridModel::new(spec(4.0), vec![]).unwrap();
        let r = m.reachable_set(&pt(1.0, 2.0)).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r.contains_cell(m.cell_of(&[1.0, 2.0]).unwrap()));
    }

    #[test]
    fn rubbing_reaches_upper_right_quadrant() {
        let rub = Generator::new("rub", |x: &[f64]| vec![vec![x[0] + 1.0, x[1]], vec![x[0], x[1] + 1.0]]);
        let m = GridModel::new(spec(4.0), vec![rub]).unwrap();
        let r = m.reachable_set(&pt(1.0, 2.0)).unwrap();
        // brute force over the 5x5 lattice
        let mut expected = 0;
        for c in 0..m.cell_count() {
            let p = m.coords_of(c);
            let inside = p[0] >= 1.0 && p[1] >= 2.0;
            expected += inside as usize;
            assert_eq!(r.contains_cell(c), inside, "{p:?}");
        }
        assert_eq!(r.len(), expected);
    }

    #[test]
    fn bounds_and_dimension_errors() {
        let m = GridModel::new(spec(4.0), vec![]).unwrap();
        assert!(matches!(m.reachable_set(&pt(5.0, 0.0)), Err(Error::OutOfBounds(_))));
        let p1 = StatePoint::new(SpaceId::new("g"), vec![1.0], false).unwrap();
        assert!(matches!(m.reachable_set(&p1), Err(Error::DimensionMismatch { .. })));
        let bad = GridSpec::uniform(SpaceId::new("g"), 2, 0.0, 1.0, 0.3);
        assert!(GridModel::new(bad, vec![]).is_err());
    }

    #[test]
    fn snapping_picks_nearest_node() {
        let m = GridModel::new(spec(4.0), vec![]).unwrap();
        assert_eq!(m.snap(&pt(1.4, 2.6)).unwrap().coords, vec![1.0, 3.0]);
    }
}
