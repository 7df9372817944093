#![allow(dead_code)]

use adiabat::noneq::{EntropySource, FiniteEmbedded};
use adiabat::{AdditiveEntropyModel, FiniteRelation, SpaceId, StatePoint};

/// Equilibrium a, b, c with entropies 0, 1, 2 and x with a, b ≺ x ≺ c.
pub const THREE_NODE: &str = "\
node a eq 0
node b eq 1
node c eq 2
node x noneq
a b
b c
a x
b x
x c
";

pub fn finite(text: &str) -> FiniteEmbedded {
    let mut rel = FiniteRelation::parse(text).unwrap();
    rel.close();
    FiniteEmbedded::new(rel, EntropySource::Coord0).unwrap()
}

/// The three-node model plus an equilibrium state inside x's band.
pub fn three_node_with_midpoint() -> FiniteEmbedded {
    finite(&format!("{THREE_NODE}node z eq 1.5\nb z\nz c\n"))
}

pub fn additive(values: &[f64]) -> (AdditiveEntropyModel, Vec<StatePoint>) {
    let space = SpaceId::new("gas");
    let pts: Vec<StatePoint> = values
        .iter()
        .enumerate()
        .map(|(i, _)| {
            StatePoint::new(space.clone(), vec![i as f64], true)
                .unwrap()
                .labeled(format!("s{i}"))
        })
        .collect();
    let table = pts.iter().cloned().zip(values.iter().copied()).collect();
    (AdditiveEntropyModel::new(table).unwrap(), pts)
}
