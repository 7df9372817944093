use crate::error::{Error, Result};
use crate::numeric::{affine_fit, bisect_threshold, AffineFit};
use crate::relation::Accessibility;
use crate::scalar::Real;
use crate::state::{CompoundState, StatePoint};

/// Default bisection tolerance in `λ` units.
pub const DEFAULT_TOL: f64 = 1e-6;

const MAX_DOUBLINGS: u32 = 64;

/// Two equilibrium states with `x0 ≺≺ x1`, normalizing `S(x0) = 0` and
/// `S(x1) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePair<F: Real = f64> {
    x0: StatePoint<F>,
    x1: StatePoint<F>,
}

impl<F: Real> ReferencePair<F> {
    pub fn new<M: Accessibility<F> + ?Sized>(model: &M, x0: StatePoint<F>, x1: StatePoint<F>) -> Result<Self> {
        if x0.space_id != x1.space_id {
            return Err(Error::InvalidParameter("reference states must share a space".into()));
        }
        if !model.strictly_precedes(&x0.clone().into(), &x1.clone().into())? {
            return Err(Error::ReferenceNotStrict);
        }
        Ok(ReferencePair { x0, x1 })
    }

    pub fn x0(&self) -> &StatePoint<F> {
        &self.x0
    }

    pub fn x1(&self) -> &StatePoint<F> {
        &self.x1
    }
}

/// Entropy from the relation alone:
/// `S(X) = sup{λ : ((1−λ)X₀, λX₁) ≺ X} = inf{λ : X ≺ ((1−λ)X₀, λX₁)}`.
///
/// For `λ > 1` the reference compound is read as `λX₁ ≺ ((λ−1)X₀, X)`, for
/// `λ < 0` as `(1−λ)X₀ ≺ (X, −λX₁)`; brackets outside `[0, 1]` are found by
/// geometric doubling.
#[derive(Debug, Clone)]
pub struct EntropyEvaluator<'m, F: Real, M: ?Sized> {
    model: &'m M,
    refs: ReferencePair<F>,
    tol: F,
}

impl<'m, F: Real, M: Accessibility<F> + ?Sized> EntropyEvaluator<'m, F, M> {
    pub fn new(model: &'m M, refs: ReferencePair<F>, tol: F) -> Result<Self> {
        if !(tol > F::zero()) {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        Ok(EntropyEvaluator { model, refs, tol })
    }

    pub fn tol(&self) -> F {
        self.tol
    }

    pub fn refs(&self) -> &ReferencePair<F> {
        &self.refs
    }

    /// The two sides `(reference side, state side)` of the λ-comparison.
    fn sides(&self, lambda: F, x: &StatePoint<F>) -> Result<(CompoundState<F>, CompoundState<F>)> {
        let (x0, x1) = (&self.refs.x0, &self.refs.x1);
        let one = F::one();
        if lambda > one {
            Ok((
                CompoundState::combination(&[(lambda, x1)])?,
                CompoundState::combination(&[(lambda - one, x0), (one, x)])?,
            ))
        } else if lambda < F::zero() {
            Ok((
                CompoundState::combination(&[(one - lambda, x0)])?,
                CompoundState::combination(&[(one, x), (-lambda, x1)])?,
            ))
        } else {
            Ok((
                CompoundState::combination(&[(one - lambda, x0), (lambda, x1)])?,
                CompoundState::single(x.clone()),
            ))
        }
    }

    /// `((1−λ)X₀, λX₁) ≺ X`, true for `λ ≤ λ*`.
    pub fn reference_precedes(&self, lambda: F, x: &StatePoint<F>) -> Result<bool> {
        let (r, s) = self.sides(lambda, x)?;
        self.model.precedes(&r, &s)
    }

    /// `X ≺ ((1−λ)X₀, λX₁)`, true for `λ ≥ λ*`.
    pub fn precedes_reference(&self, lambda: F, x: &StatePoint<F>) -> Result<bool> {
        let (r, s) = self.sides(lambda, x)?;
        self.model.precedes(&s, &r)
    }

    /// Finds `[lo, hi]` with `pred(lo)` and `!pred(hi)`.
    fn bracket(&self, pred: &mut impl FnMut(F) -> Result<bool>) -> Result<(F, F)> {
        let (zero, one, two) = (F::zero(), F::one(), F::lit(2.0));
        let (p0, p1) = (pred(zero)?, pred(one)?);
        match (p0, p1) {
            (true, false) => Ok((zero, one)),
            (false, true) => Err(Error::NonMonotone(0.0)),
            (true, true) => {
                let (mut lo, mut hi) = (one, two);
                for _ in 0..MAX_DOUBLINGS {
                    if !pred(hi)? {
                        return Ok((lo, hi));
                    }
                    lo = hi;
                    hi = hi * two;
                }
                Err(Error::BracketNotFound)
            }
            (false, false) => {
                let (mut lo, mut hi) = (-one, zero);
                for _ in 0..MAX_DOUBLINGS {
                    if pred(lo)? {
                        return Ok((lo, hi));
                    }
                    hi = lo;
                    lo = lo * two;
                }
                Err(Error::BracketNotFound)
            }
        }
    }

    /// Supremum form. Each bisection step also evaluates the reverse
    /// comparison; a λ at which neither direction holds is reported as
    /// [`Error::Incomparable`].
    pub fn canonical_entropy(&self, x: &StatePoint<F>) -> Result<F> {
        let mut lower = |l: F| self.reference_precedes(l, x);
        let (lo, hi) = self.bracket(&mut lower)?;
        let mut guarded = |l: F| {
            let below = self.reference_precedes(l, x)?;
            if !below && !self.precedes_reference(l, x)? {
                return Err(Error::Incomparable(l.to_f64_lossy()));
            }
            Ok(below)
        };
        let (lo, hi) = bisect_threshold(&mut guarded, lo, hi, self.tol)?;
        // monotone predicate keeps the bracket ends on opposite sides
        if !self.reference_precedes(lo, x)? || self.reference_precedes(hi, x)? {
            return Err(Error::NonMonotone(lo.to_f64_lossy()));
        }
        Ok(lo + (hi - lo) / F::lit(2.0))
    }

    /// Infimum form, using only `X ≺ ((1−λ)X₀, λX₁)`.
    pub fn canonical_entropy_inf(&self, x: &StatePoint<F>) -> Result<F> {
        let mut below = |l: F| Ok(!self.precedes_reference(l, x)?);
        let (lo, hi) = self.bracket(&mut below)?;
        let (lo, hi) = bisect_threshold(&mut below, lo, hi, self.tol)?;
        if self.precedes_reference(lo, x)? || !self.precedes_reference(hi, x)? {
            return Err(Error::NonMonotone(lo.to_f64_lossy()));
        }
        Ok(lo + (hi - lo) / F::lit(2.0))
    }
}

/// Fits `s_b ≈ α·s_a + β` over the samples, requiring `α > 0`.
pub fn affine_uniqueness_check<F: Real>(pairs: &[(F, F)]) -> Result<AffineFit<F>> {
    let fit = affine_fit(pairs)?;
    if !(fit.alpha > F::zero()) {
        return Err(Error::NegativeScale(fit.alpha.to_f64_lossy()));
    }
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{AdditiveEntropyModel, FiniteRelation};
    use crate::state::SpaceId;

    fn model(values: &[f64]) -> (AdditiveEntropyModel, Vec<StatePoint>) {
        let pts: Vec<StatePoint> = (0..values.len())
            .map(|i| StatePoint::new(SpaceId::new("g"), vec![i as f64], true).unwrap())
            .collect();
        let m = AdditiveEntropyModel::new(pts.iter().cloned().zip(values.iter().copied()).collect()).unwrap();
        (m, pts)
    }

    #[test]
    fn references_normalize_to_zero_and_one() {
        let (m, p) = model(&[2.0, 5.0, 3.0]);
        let refs = ReferencePair::new(&m, p[0].clone(), p[1].clone()).unwrap();
        let ev = EntropyEvaluator::new(&m, refs, 1e-6).unwrap();
        assert!(ev.canonical_entropy(&p[0]).unwrap().abs() <= 1e-6);
        assert!((ev.canonical_entropy(&p[1]).unwrap() - 1.0).abs() <= 1e-6);
        assert!((ev.canonical_entropy(&p[2]).unwrap() - 1.0 / 3.0).abs() <= 1e-6);
    }

    #[test]
    fn extension_beyond_unit_interval() {
        // reference pair in the middle forces λ > 1 and λ < 0
        let (m, p) = model(&[0.0, 1.0, 2.0, 10.0]);
        let refs = ReferencePair::new(&m, p[1].clone(), p[2].clone()).unwrap();
        let ev = EntropyEvaluator::new(&m, refs, 1e-7).unwrap();
        assert!((ev.canonical_entropy(&p[3]).unwrap() - 9.0).abs() <= 1e-7);
        assert!((ev.canonical_entropy(&p[0]).unwrap() + 1.0).abs() <= 1e-7);
        assert!((ev.canonical_entropy_inf(&p[3]).unwrap() - 9.0).abs() <= 1e-7);
        assert!((ev.canonical_entropy_inf(&p[0]).unwrap() + 1.0).abs() <= 1e-7);
    }

    #[test]
    fn reference_pair_must_be_strict() {
        let (m, p) = model(&[1.0, 1.0]);
        assert_eq!(
            ReferencePair::new(&m, p[0].clone(), p[1].clone()),
            Err(Error::ReferenceNotStrict)
        );
        assert!(EntropyEvaluator::new(
            &m,
            ReferencePair {
                x0: p[0].clone(),
                x1: p[1].clone()
            },
            0.0
        )
        .is_err());
    }

    #[test]
    fn finite_model_without_scaled_copies_is_not_materialized() {
        let r: FiniteRelation = FiniteRelation::parse("node a eq\nnode b eq\nnode c eq\na b\nb c\na c\n").unwrap();
        let r = crate::relation::transitive_reflexive_closure(&r);
        let pt = |n: &str| r.point(r.id(n).unwrap()).unwrap().clone();
        let refs = ReferencePair::new(&r, pt("a"), pt("c")).unwrap();
        let ev = EntropyEvaluator::new(&r, refs, 1e-6).unwrap();
        assert!(matches!(ev.canonical_entropy(&pt("b")), Err(Error::NotMaterialized(_))));
    }

    #[test]
    fn affine_check() {
        let same: Vec<(f64, f64)> = (0..4).map(|i| (i as f64, i as f64)).collect();
        let f = affine_uniqueness_check(&same).unwrap();
        assert_eq!((f.alpha, f.beta, f.max_residual), (1.0, 0.0, 0.0));
        let lin: Vec<(f64, f64)> = (0..4).map(|i| (i as f64, 2.0 * i as f64 + 3.0)).collect();
        let f = affine_uniqueness_check(&lin).unwrap();
        assert!((f.alpha - 2.0).abs() < 1e-14 && (f.beta - 3.0).abs() < 1e-14);
        let rev: Vec<(f64, f64)> = (0..4).map(|i| (i as f64, -(i as f64))).collect();
        assert!(matches!(affine_uniqueness_check(&rev), Err(Error::NegativeScale(_))));
        assert_eq!(
            affine_uniqueness_check(&[(1.0, 1.0), (1.0, 2.0)]),
            Err(Error::DegenerateFit)
        );
    }
}
