//! Axiom checks on models that satisfy and that break them.

mod common;

use adiabat::toy::TOY_SPACE;
use adiabat::*;
use common::*;

fn singles(m: &FiniteRelation) -> Vec<CompoundState> {
    m.ids().map(|i| m.node_state(i)).collect()
}

#[test]
fn closed_relation_passes() {
    let mut rel = FiniteRelation::parse(THREE_NODE).unwrap();
    rel.close();
    let samples = singles(&rel);
    let r = check_axioms(&rel, &samples, &[], &[], &AxiomCheckConfig::default()).unwrap();
    assert_eq!(r.status(Axiom::Reflexivity), Status::Pass);
    assert_eq!(r.status(Axiom::Transitivity), Status::Pass);
    assert_eq!(r.status(Axiom::ScalingInvariance), Status::NotApplicable);
    // every pair is related in some direction, x included
    assert_eq!(r.status(Axiom::Comparison), Status::Pass);
}

#[test]
fn open_relation_fails_with_reproducible_witnesses() {
    let rel = FiniteRelation::<f64>::parse("node a eq 0\nnode b eq 1\nnode c eq 2\na b\nb c\n").unwrap();
    let samples = singles(&rel);
    let r = check_axioms(&rel, &samples, &[], &[], &AxiomCheckConfig::default()).unwrap();
    for ax in [Axiom::Reflexivity, Axiom::Transitivity] {
        let e = r.get(ax);
        assert_eq!(e.status, Status::Fail);
        assert!(!e.witnesses.is_empty());
        for w in &e.witnesses {
            assert!(w.reproduces(&rel).unwrap());
        }
    }
    let mut closed = rel.clone();
    closed.close();
    for w in &r.get(Axiom::Transitivity).witnesses {
        assert!(!w.reproduces(&closed).unwrap());
    }
}

#[test]
fn incomparable_states_fail_comparison() {
    let mut rel = FiniteRelation::<f64>::parse("node cold eq 0\nnode x noneq\nnode y noneq\ncold x\ncold y\n").unwrap();
    rel.close();
    let r = check_axioms(&rel, &singles(&rel), &[], &[], &AxiomCheckConfig::default()).unwrap();
    let e = r.get(Axiom::Comparison);
    assert_eq!(e.status, Status::Fail);
    assert!(e.witnesses.iter().all(|w| w.reproduces(&rel).unwrap()));
}

#[test]
fn toy_comparison_holds_on_diagonal_only() {
    let m = ToyModel64::new(1.0).unwrap();
    let pt =
        |a: f64, b: f64| CompoundState::single(StatePoint::new(SpaceId::new(TOY_SPACE), vec![a, b], a == b).unwrap());
    let diag: Vec<_> = [1.0, 1.5, 2.0, 3.5].iter().map(|&t| pt(t, t)).collect();
    let r = check_axioms(&m, &diag, &[], &[], &AxiomCheckConfig::default()).unwrap();
    assert_eq!(r.status(Axiom::Comparison), Status::Pass);
    let mut all = diag.clone();
    all.push(pt(1.0, 3.0));
    all.push(pt(3.0, 1.0));
    let r = check_axioms(&m, &all, &[], &[], &AxiomCheckConfig::default()).unwrap();
    assert_eq!(r.status(Axiom::Comparison), Status::Fail);
    assert_eq!(r.status(Axiom::Transitivity), Status::Pass);
}

#[test]
fn additive_model_satisfies_everything() {
    let (m, pts) = additive(&[0.0, 1.0, 0.5, 2.0]);
    let samples: Vec<_> = pts.iter().cloned().map(CompoundState::single).collect();
    let catalysts = vec![(pts[0].clone(), pts[3].clone())];
    let r = check_axioms(
        &m,
        &samples,
        &[0.5, 0.1, 0.01],
        &catalysts,
        &AxiomCheckConfig::default(),
    )
    .unwrap();
    for e in &r.entries {
        assert_eq!(e.status, Status::Pass, "{:?}: {}", e.axiom, e.note);
    }
}

#[test]
fn empty_samples_and_bad_epsilons_are_errors() {
    let (m, pts) = additive(&[0.0, 1.0]);
    let cfg = AxiomCheckConfig::default();
    assert!(matches!(
        check_axioms(&m, &[], &[], &[], &cfg),
        Err(Error::EmptySamples)
    ));
    let s = vec![CompoundState::single(pts[0].clone())];
    assert!(matches!(
        check_axioms(&m, &s, &[0.1, 0.2], &[], &cfg),
        Err(Error::BadEpsilonSequence)
    ));
}
