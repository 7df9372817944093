//! Seeded generator of finite embedded models for randomized harnesses.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::noneq::{EmbeddedModel, EntropySource, FiniteEmbedded};
use crate::relation::{FiniteRelation, NodeId};
use crate::scalar::Real;
use crate::state::SpaceId;

/// The generator every seeded harness uses.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomModelParams {
    /// Upper bound on simple nodes, before any gap filling.
    pub max_states: usize,
    /// Chance of proposing each extra edge touching a non-equilibrium node.
    pub edge_prob: f64,
    /// Chance that every non-equilibrium node is made equivalent to an
    /// equilibrium node.
    pub all_equivalent_prob: f64,
    /// Chance for each remaining non-equilibrium node.
    pub node_equivalent_prob: f64,
    /// Materialize all pairs of simple nodes.
    pub products: bool,
    /// Insert equilibrium nodes so every nonzero band contains an
    /// equilibrium entropy strictly inside it.
    pub fill_gaps: bool,
}

impl Default for RandomModelParams {
    fn default() -> Self {
        RandomModelParams {
            max_states: 12,
            edge_prob: 0.15,
            all_equivalent_prob: 0.3,
            node_equivalent_prob: 0.3,
            products: false,
            fill_gaps: false,
        }
    }
}

fn eq_consistent<F: Real>(rel: &FiniteRelation<F>, s: &[Option<f64>]) -> bool {
    for a in rel.ids() {
        for b in rel.ids() {
            if let (Some(sa), Some(sb)) = (s[a.0], s[b.0]) {
                if rel.related(a, b) && sa > sb {
                    return false;
                }
            }
        }
    }
    true
}

fn add_equilibrium<F: Real>(rel: &mut FiniteRelation<F>, s: &mut Vec<Option<f64>>, name: &str, value: f64) -> NodeId {
    let id = rel.add_node(name, true, vec![F::lit(value)]).expect("fresh name");
    s.push(Some(value));
    for other in rel.ids().collect::<Vec<_>>() {
        if let Some(v) = s[other.0] {
            if v <= value {
                rel.add_edge(other, id);
            }
            if value <= v {
                rel.add_edge(id, other);
            }
        }
    }
    id
}

/// Closed finite model with `N2` built in; the relation on the equilibrium
/// nodes is the order of their entropies, stored as coordinate 0.
pub fn random_finite_model<F: Real, R: Rng + ?Sized>(
    rng: &mut R,
    params: &RandomModelParams,
) -> Result<FiniteEmbedded<F>> {
    let max = params.max_states.max(3);
    let n_eq = rng.gen_range(2..=(max - 1).min(6));
    let n_ne = rng.gen_range(1..=(max - n_eq));
    let mut rel = FiniteRelation::<F>::new(SpaceId::new("random"));
    let mut s: Vec<Option<f64>> = Vec::new();

    let mut eq = Vec::with_capacity(n_eq);
    for i in 0..n_eq {
        // distinct with probability one; rounding keeps reports readable
        let v = (rng.gen_range(0.0..10.0f64) * 1e6).round() / 1e6;
        eq.push(add_equilibrium(&mut rel, &mut s, &format!("e{i}"), v));
    }
    let all_equiv = rng.gen_bool(params.all_equivalent_prob);
    let mut ne = Vec::with_capacity(n_ne);
    for i in 0..n_ne {
        let x = rel.add_node(&format!("x{i}"), false, Vec::new())?;
        s.push(None);
        ne.push(x);
        if all_equiv || rng.gen_bool(params.node_equivalent_prob) {
            let z = *eq.choose(rng).expect("nonempty");
            rel.add_edge(x, z);
            rel.add_edge(z, x);
        } else {
            let p = *eq.choose(rng).expect("nonempty");
            let above: Vec<NodeId> = eq.iter().copied().filter(|e| s[e.0] >= s[p.0]).collect();
            let q = *above.choose(rng).expect("p itself qualifies");
            rel.add_edge(p, x);
            rel.add_edge(x, q);
        }
    }
    rel.close();

    let all: Vec<NodeId> = rel.ids().collect();
    for &u in &all {
        for &v in &all {
            if u == v || (s[u.0].is_some() && s[v.0].is_some()) || rel.related(u, v) {
                continue;
            }
            if rng.gen_bool(params.edge_prob) {
                let mut trial = rel.clone();
                trial.add_edge(u, v);
                trial.close();
                if eq_consistent(&trial, &s) {
                    rel = trial;
                }
            }
        }
    }

    if params.fill_gaps {
        let mut k = 0;
        loop {
            let model = FiniteEmbedded::new(rel.clone(), EntropySource::Coord0)?;
            let mut gap = None;
            for &x in &ne {
                let (lo, hi) = (model.s_minus(&x)?.value, model.s_plus(&x)?.value);
                let (lo, hi) = (lo.to_f64_lossy(), hi.to_f64_lossy());
                if lo < hi && !s.iter().flatten().any(|&v| v > lo && v < hi) {
                    gap = Some((lo + hi) / 2.0);
                    break;
                }
            }
            let Some(mid) = gap else { break };
            add_equilibrium(&mut rel, &mut s, &format!("g{k}"), mid);
            rel.close();
            k += 1;
        }
    }

    if params.products {
        let simple: Vec<NodeId> = rel.ids().collect();
        let mut pairs = Vec::new();
        for &a in &simple {
            for &b in &simple {
                pairs.push((rel.add_product(None, a, b)?, a, b));
            }
        }
        for &(p, a, b) in &pairs {
            for &(q, c, d) in &pairs {
                let componentwise = rel.related(a, c) && rel.related(b, d);
                let by_entropy = match (s[a.0], s[b.0], s[c.0], s[d.0]) {
                    (Some(sa), Some(sb), Some(sc), Some(sd)) => sa + sb <= sc + sd + 1e-12,
                    _ => false,
                };
                if componentwise || by_entropy {
                    rel.add_edge(p, q);
                }
            }
        }
        rel.close();
    }

    FiniteEmbedded::new(rel, EntropySource::Coord0)
}

/// Breaks transitivity: for a non-equilibrium `y` whose `S₋` is attained
/// only at `w`, and an intermediate node `x` (`w ≺ x ≺ y`), deletes the pair
/// `w → y`. `y` must keep another equilibrium predecessor, so `S₋(y)` drops
/// strictly below `S₋(x)`. Returns the corrupted model and the expected
/// failing pair `(x, y)`.
pub fn break_transitivity<F: Real>(model: &FiniteEmbedded<F>) -> Option<(FiniteEmbedded<F>, NodeId, NodeId)> {
    let rel = model.relation();
    let tol = F::lit(1e-9);
    for y in rel.ids() {
        if rel.is_equilibrium(y) {
            continue;
        }
        let Ok(best) = model.s_minus(&y) else { continue };
        let preds: Vec<NodeId> = rel
            .ids()
            .filter(|&e| rel.is_equilibrium(e) && rel.related(e, y) && model.entropy_of(e).is_some())
            .collect();
        let top: Vec<NodeId> = preds
            .iter()
            .copied()
            .filter(|&e| model.entropy_of(e).is_some_and(|s| s >= best.value - tol))
            .collect();
        if top.len() != 1 || preds.len() < 2 {
            continue;
        }
        let w = top[0];
        for x in rel.ids() {
            if x != w && x != y && rel.related(w, x) && rel.related(x, y) && !rel.related(y, w) {
                return Some((model.without_edge(w, y), x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_models_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m: FiniteEmbedded = random_finite_model(&mut rng, &RandomModelParams::default()).unwrap();
            m.validate().unwrap();
            assert!(m.relation().is_closed());
            assert!(m.relation().len() <= 12);
        }
    }

    #[test]
    fn same_seed_same_model() {
        let p = RandomModelParams {
            products: true,
            ..Default::default()
        };
        let a: FiniteEmbedded = random_finite_model(&mut ChaCha8Rng::seed_from_u64(3), &p).unwrap();
        let b: FiniteEmbedded = random_finite_model(&mut ChaCha8Rng::seed_from_u64(3), &p).unwrap();
        assert_eq!(a.relation().to_edge_list(), b.relation().to_edge_list());
    }
}
