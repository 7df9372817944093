//! Checks of the accessibility axioms A1–A6 and the comparison property.
//!
//! Finite models are checked exhaustively for reflexivity and transitivity;
//! everything else is checked on the supplied samples. Every failure carries
//! a [`Violation`] that can be re-evaluated against the model.

use std::fmt;

use crate::error::{Error, Result};
use crate::relation::Accessibility;
use crate::report::Status;
use crate::scalar::Real;
use crate::state::{compose, scale, CompoundState, StatePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Reflexivity,
    Transitivity,
    Consistency,
    ScalingInvariance,
    SplittingRecombination,
    Stability,
    Comparison,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Reflexivity,
        Axiom::Transitivity,
        Axiom::Consistency,
        Axiom::ScalingInvariance,
        Axiom::SplittingRecombination,
        Axiom::Stability,
        Axiom::Comparison,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Axiom::Reflexivity => "A1",
            Axiom::Transitivity => "A2",
            Axiom::Consistency => "A3",
            Axiom::ScalingInvariance => "A4",
            Axiom::SplittingRecombination => "A5",
            Axiom::Stability => "A6",
            Axiom::Comparison => "CP",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Transitivity => "transitivity",
            Axiom::Consistency => "consistency",
            Axiom::ScalingInvariance => "scaling-invariance",
            Axiom::SplittingRecombination => "splitting-recombination",
            Axiom::Stability => "stability",
            Axiom::Comparison => "comparison",
        }
    }
}

/// A concrete counterexample.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation<F: Real = f64> {
    /// `x ⊀ x`
    Reflexivity { x: CompoundState<F> },
    /// `x ≺ y`, `y ≺ z`, `x ⊀ z`
    Transitivity {
        x: CompoundState<F>,
        y: CompoundState<F>,
        z: CompoundState<F>,
    },
    /// `x ≺ x'`, `y ≺ y'`, `(x, y) ⊀ (x', y')`
    Consistency {
        x: CompoundState<F>,
        x2: CompoundState<F>,
        y: CompoundState<F>,
        y2: CompoundState<F>,
    },
    /// `x ≺ y`, `λx ⊀ λy`
    Scaling {
        lambda: F,
        x: CompoundState<F>,
        y: CompoundState<F>,
    },
    /// `x ≁ ((1-λ)x, λx)`
    Splitting { lambda: F, x: StatePoint<F> },
    /// `(x, εz₀) ≺ (y, εz₁)` for every supplied `ε`, yet `x ⊀ y`
    Stability {
        x: CompoundState<F>,
        y: CompoundState<F>,
        z0: StatePoint<F>,
        z1: StatePoint<F>,
        epsilons: Vec<F>,
    },
    /// Neither `a ≺ b` nor `b ≺ a`.
    Incomparable {
        lambda: Option<F>,
        a: CompoundState<F>,
        b: CompoundState<F>,
    },
}

fn single<F: Real>(p: &StatePoint<F>) -> CompoundState<F> {
    CompoundState::single(p.clone())
}

fn pair<F: Real>(a: &CompoundState<F>, b: &CompoundState<F>) -> Result<CompoundState<F>> {
    compose(&[a.clone(), b.clone()])
}

fn split<F: Real>(lambda: F, x: &StatePoint<F>) -> Result<CompoundState<F>> {
    CompoundState::combination(&[(F::one() - lambda, x), (lambda, x)])
}

fn catalysed<F: Real>(x: &CompoundState<F>, eps: F, z: &StatePoint<F>) -> Result<CompoundState<F>> {
    pair(x, &scale(eps, &single(z))?)
}

impl<F: Real> Violation<F> {
    pub fn axiom(&self) -> Axiom {
        match self {
            Violation::Reflexivity { .. } => Axiom::Reflexivity,
            Violation::Transitivity { .. } => Axiom::Transitivity,
            Violation::Consistency { .. } => Axiom::Consistency,
            Violation::Scaling { .. } => Axiom::ScalingInvariance,
            Violation::Splitting { .. } => Axiom::SplittingRecombination,
            Violation::Stability { .. } => Axiom::Stability,
            Violation::Incomparable { .. } => Axiom::Comparison,
        }
    }

    /// Re-evaluates the counterexample; `true` iff it still violates.
    pub fn reproduces<M: Accessibility<F> + ?Sized>(&self, m: &M) -> Result<bool> {
        Ok(match self {
            Violation::Reflexivity { x } => !m.precedes(x, x)?,
            Violation::Transitivity { x, y, z } => m.precedes(x, y)? && m.precedes(y, z)? && !m.precedes(x, z)?,
            Violation::Consistency { x, x2, y, y2 } => {
                m.precedes(x, x2)? && m.precedes(y, y2)? && !m.precedes(&pair(x, y)?, &pair(x2, y2)?)?
            }
            Violation::Scaling { lambda, x, y } => {
                m.precedes(x, y)? && !m.precedes(&scale(*lambda, x)?, &scale(*lambda, y)?)?
            }
            Violation::Splitting { lambda, x } => !m.adiabatically_equivalent(&single(x), &split(*lambda, x)?)?,
            Violation::Stability { x, y, z0, z1, epsilons } => {
                let mut premise = !epsilons.is_empty();
                for &e in epsilons {
                    premise &= m.precedes(&catalysed(x, e, z0)?, &catalysed(y, e, z1)?)?;
                }
                premise && !m.precedes(x, y)?
            }
            Violation::Incomparable { a, b, .. } => !m.comparable(a, b)?,
        })
    }
}

impl<F: Real> fmt::Display for Violation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Reflexivity { x } => write!(f, "x={x}"),
            Violation::Transitivity { x, y, z } => write!(f, "x={x} y={y} z={z}"),
            Violation::Consistency { x, x2, y, y2 } => write!(f, "x={x} x'={x2} y={y} y'={y2}"),
            Violation::Scaling { lambda, x, y } => write!(f, "lambda={lambda} x={x} y={y}"),
            Violation::Splitting { lambda, x } => write!(f, "lambda={lambda} x={x}"),
            Violation::Stability { x, y, z0, z1, .. } => write!(f, "x={x} y={y} z0={z0} z1={z1}"),
            Violation::Incomparable { lambda, a, b } => match lambda {
                Some(l) => write!(f, "lambda={l} a={a} b={b}"),
                None => write!(f, "a={a} b={b}"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomEntry<F: Real = f64> {
    pub axiom: Axiom,
    pub status: Status,
    /// Number of instances evaluated.
    pub checked: usize,
    pub witnesses: Vec<Violation<F>>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport<F: Real = f64> {
    pub entries: Vec<AxiomEntry<F>>,
}

impl<F: Real> AxiomReport<F> {
    pub fn get(&self, axiom: Axiom) -> &AxiomEntry<F> {
        self.entries
            .iter()
            .find(|e| e.axiom == axiom)
            .expect("every axiom has an entry")
    }

    pub fn status(&self, axiom: Axiom) -> Status {
        self.get(axiom).status
    }

    pub fn any_fail(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }
}

/// Sampling parameters for [`check_axioms`].
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomCheckConfig<F = f64> {
    /// Interior `λ` values for CP on scaled products and for A5.
    pub lambdas: Vec<F>,
    /// Factors used for A4.
    pub scale_factors: Vec<F>,
    /// Cap on instances per axiom for the combinatorial checks.
    pub max_instances: usize,
    /// Witnesses kept per axiom.
    pub max_witnesses: usize,
}

impl<F: Real> Default for AxiomCheckConfig<F> {
    fn default() -> Self {
        AxiomCheckConfig {
            lambdas: vec![F::lit(0.25), F::lit(0.5), F::lit(0.75)],
            scale_factors: vec![F::lit(0.5), F::lit(2.0)],
            max_instances: 20_000,
            max_witnesses: 5,
        }
    }
}

struct Collector<F: Real> {
    axiom: Axiom,
    checked: usize,
    skipped: usize,
    witnesses: Vec<Violation<F>>,
    failures: usize,
    max_witnesses: usize,
}

impl<F: Real> Collector<F> {
    fn new(axiom: Axiom, max_witnesses: usize) -> Self {
        Collector {
            axiom,
            checked: 0,
            skipped: 0,
            witnesses: Vec::new(),
            failures: 0,
            max_witnesses,
        }
    }

    /// Records one instance; `NotMaterialized` queries count as skipped.
    fn record(&mut self, outcome: Result<Option<Violation<F>>>) -> Result<()> {
        match outcome {
            Ok(None) => self.checked += 1,
            Ok(Some(v)) => {
                self.checked += 1;
                self.failures += 1;
                if self.witnesses.len() < self.max_witnesses {
                    self.witnesses.push(v);
                }
            }
            Err(Error::NotMaterialized(_)) => self.skipped += 1,
            Err(e) => return Err(e),
        }
        Ok(())
    }

    fn finish(self, note: impl Into<String>) -> AxiomEntry<F> {
        let status = if self.failures > 0 {
            Status::Fail
        } else if self.checked == 0 {
            Status::NotApplicable
        } else {
            Status::Pass
        };
        let mut note = note.into();
        if self.skipped > 0 {
            note = format!("{note}; {} instances not materialized", self.skipped);
        }
        AxiomEntry {
            axiom: self.axiom,
            status,
            checked: self.checked,
            witnesses: self.witnesses,
            note,
        }
    }

    fn not_applicable(axiom: Axiom, note: &str) -> AxiomEntry<F> {
        AxiomEntry {
            axiom,
            status: Status::NotApplicable,
            checked: 0,
            witnesses: Vec::new(),
            note: note.to_string(),
        }
    }
}

/// Evaluates A1–A6 and CP. See the module docs for what is exhaustive and
/// what is sampled.
pub fn check_axioms<F: Real, M: Accessibility<F> + ?Sized>(
    model: &M,
    samples: &[CompoundState<F>],
    epsilons: &[F],
    catalysts: &[(StatePoint<F>, StatePoint<F>)],
    cfg: &AxiomCheckConfig<F>,
) -> Result<AxiomReport<F>> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if epsilons.iter().any(|e| !(*e > F::zero())) || epsilons.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::BadEpsilonSequence);
    }
    let caps = model.capabilities();
    let kw = cfg.max_witnesses.max(1);
    let mut entries = Vec::with_capacity(7);

    // A1/A2 exhaustive on finite models
    let (order_states, exhaustive) = match model.enumerate_states() {
        Some(all) => (all, true),
        None => (samples.to_vec(), false),
    };
    let scope = if exhaustive { "exhaustive" } else { "sampled" };
    let n = order_states.len();
    let mut rel = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            rel[i * n + j] = model.precedes(&order_states[i], &order_states[j])?;
        }
    }
    let mut a1 = Collector::new(Axiom::Reflexivity, kw);
    for (i, x) in order_states.iter().enumerate() {
        a1.record(Ok((!rel[i * n + i]).then(|| Violation::Reflexivity { x: x.clone() })))?;
    }
    entries.push(a1.finish(scope));
    let mut a2 = Collector::new(Axiom::Transitivity, kw);
    for i in 0..n {
        for j in 0..n {
            if !rel[i * n + j] {
                continue;
            }
            for k in 0..n {
                if rel[j * n + k] {
                    a2.record(Ok((!rel[i * n + k]).then(|| Violation::Transitivity {
                        x: order_states[i].clone(),
                        y: order_states[j].clone(),
                        z: order_states[k].clone(),
                    })))?;
                }
            }
        }
    }
    entries.push(a2.finish(scope));

    // related sample pairs drive A3/A4
    let m = samples.len();
    let mut related = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if model.precedes(&samples[i], &samples[j])? {
                related.push((i, j));
            }
        }
    }

    if caps.composition {
        let mut a3 = Collector::new(Axiom::Consistency, kw);
        'outer: for &(i, i2) in &related {
            for &(j, j2) in &related {
                if a3.checked + a3.skipped >= cfg.max_instances {
                    break 'outer;
                }
                let (x, x2, y, y2) = (&samples[i], &samples[i2], &samples[j], &samples[j2]);
                let outcome = pair(x, y).and_then(|a| {
                    let b = pair(x2, y2)?;
                    Ok((!model.precedes(&a, &b)?).then(|| Violation::Consistency {
                        x: x.clone(),
                        x2: x2.clone(),
                        y: y.clone(),
                        y2: y2.clone(),
                    }))
                });
                a3.record(outcome)?;
            }
        }
        entries.push(a3.finish("sampled related pairs"));
    } else {
        entries.push(Collector::not_applicable(
            Axiom::Consistency,
            "model has no composition",
        ));
    }

    if caps.scaling {
        let mut a4 = Collector::new(Axiom::ScalingInvariance, kw);
        for &(i, j) in related.iter().take(cfg.max_instances) {
            for &l in &cfg.scale_factors {
                let (x, y) = (&samples[i], &samples[j]);
                let outcome = scale(l, x).and_then(|a| {
                    let b = scale(l, y)?;
                    Ok((!model.precedes(&a, &b)?).then(|| Violation::Scaling {
                        lambda: l,
                        x: x.clone(),
                        y: y.clone(),
                    }))
                });
                a4.record(outcome)?;
            }
        }
        entries.push(a4.finish("sampled related pairs"));
    } else {
        entries.push(Collector::not_applicable(
            Axiom::ScalingInvariance,
            "model has no scaling",
        ));
    }

    let singles: Vec<&StatePoint<F>> = samples.iter().filter_map(|s| s.as_single()).collect();
    if caps.scaling && caps.composition {
        let mut a5 = Collector::new(Axiom::SplittingRecombination, kw);
        for x in &singles {
            for &l in &cfg.lambdas {
                let outcome = split(l, x).and_then(|c| {
                    Ok(
                        (!model.adiabatically_equivalent(&single(x), &c)?).then(|| Violation::Splitting {
                            lambda: l,
                            x: (*x).clone(),
                        }),
                    )
                });
                a5.record(outcome)?;
            }
        }
        entries.push(a5.finish("sampled states"));
    } else {
        entries.push(Collector::not_applicable(
            Axiom::SplittingRecombination,
            "model has no scaling/composition",
        ));
    }

    if caps.scaling && caps.composition && !epsilons.is_empty() && !catalysts.is_empty() {
        let mut a6 = Collector::new(Axiom::Stability, kw);
        'stab: for x in samples {
            for y in samples {
                for (z0, z1) in catalysts {
                    if a6.checked + a6.skipped >= cfg.max_instances {
                        break 'stab;
                    }
                    let outcome = (|| {
                        for &e in epsilons {
                            if !model.precedes(&catalysed(x, e, z0)?, &catalysed(y, e, z1)?)? {
                                return Ok(None);
                            }
                        }
                        Ok((!model.precedes(x, y)?).then(|| Violation::Stability {
                            x: x.clone(),
                            y: y.clone(),
                            z0: z0.clone(),
                            z1: z1.clone(),
                            epsilons: epsilons.to_vec(),
                        }))
                    })();
                    a6.record(outcome)?;
                }
            }
        }
        entries.push(a6.finish("finite epsilon values only"));
    } else {
        entries.push(Collector::not_applicable(
            Axiom::Stability,
            "needs scaling, composition, epsilons and catalysts",
        ));
    }

    let mut cp = Collector::new(Axiom::Comparison, kw);
    for i in 0..m {
        for j in (i + 1)..m {
            let (a, b) = (&samples[i], &samples[j]);
            if !a.same_matter(b) {
                continue;
            }
            cp.record(Ok((!model.comparable(a, b)?).then(|| Violation::Incomparable {
                lambda: None,
                a: a.clone(),
                b: b.clone(),
            })))?;
        }
    }
    if caps.scaling && caps.composition {
        let k = singles.len();
        'cp: for &l in &cfg.lambdas {
            for p in 0..k * k {
                for q in (p + 1)..k * k {
                    if cp.checked + cp.skipped >= cfg.max_instances {
                        break 'cp;
                    }
                    let (a1, a2) = (singles[p / k], singles[p % k]);
                    let (b1, b2) = (singles[q / k], singles[q % k]);
                    if a1.space_id != b1.space_id || a2.space_id != b2.space_id {
                        continue;
                    }
                    let outcome = (|| {
                        let a = CompoundState::combination(&[(F::one() - l, a1), (l, a2)])?;
                        let b = CompoundState::combination(&[(F::one() - l, b1), (l, b2)])?;
                        Ok((!model.comparable(&a, &b)?).then_some(Violation::Incomparable { lambda: Some(l), a, b }))
                    })();
                    cp.record(outcome)?;
                }
            }
        }
    }
    entries.push(cp.finish(if caps.scaling && caps.composition {
        "sampled pairs and scaled products"
    } else {
        "sampled pairs"
    }));

    Ok(AxiomReport { entries })
}
