use adiabat::noneq::{EmbeddedModel, FiniteEmbedded, GridEmbedded, Prop1Options};
use adiabat::random::{break_transitivity, random_finite_model, seeded, RandomModelParams};
use adiabat::toy::{sample_related_pairs, toy_grid_embedded, TOY_SPACE};
use adiabat::{
    availability, entropy_band, gb_checks, max_work_bounds, toy_extended_entropy, toy_s_minus, toy_s_plus,
    verify_prop1, verify_theorem4, BlockPairState, NodeId, SpaceId, StatePoint, Status, ToyModel,
};

use super::{finite_relation, pair_label, toy_states, Aggregate};
use crate::config::{config_error, Config, ModelConfig};
use crate::output::{num, Artifacts, Table};

/// Built-in example: equilibrium a, b, c, z with entropies 0, 1, 2, 1.5
/// and x with a, b ≺ x ≺ c.
pub const THREE_NODE_EXAMPLE: &str = "\
node a eq 0
node b eq 1
node c eq 2
node z eq 1.5
node x noneq
a b
b z
z c
a x
b x
x c
";

fn toy(cfg: &Config) -> anyhow::Result<Option<ToyModel>> {
    match &cfg.model {
        None => Ok(Some(ToyModel::new(1.0)?)),
        Some(ModelConfig::Toy { c }) => Ok(Some(ToyModel::new(*c).map_err(|e| config_error(e.to_string()))?)),
        _ => Ok(None),
    }
}

fn toy_points(m: &ToyModel, pts: &[[f64; 2]]) -> anyhow::Result<Vec<BlockPairState>> {
    pts.iter()
        .map(|p| {
            m.state(p[0], p[1])
                .map_err(|e| config_error(format!("state {p:?}: {e}")))
        })
        .collect()
}

fn finite_nodes(cfg: &Config, m: &FiniteEmbedded) -> anyhow::Result<Vec<NodeId>> {
    match &cfg.states.nodes {
        None => Ok(m.states().unwrap_or_default()),
        Some(names) => names
            .iter()
            .map(|n| m.relation().id(n).map_err(|e| config_error(e.to_string())))
            .collect(),
    }
}

fn band_rows<M: EmbeddedModel<f64>>(m: &M, states: &[M::State], tol: f64, out: &mut Artifacts) -> Vec<(f64, f64)> {
    let mut table = Table::new(
        "band.csv",
        &["state", "s_minus", "s_plus", "delta_s", "witness_minus", "witness_plus"],
    );
    let mut witness = None;
    let mut found = Vec::new();
    for x in states {
        let label = m.describe(x);
        match entropy_band(m, x) {
            Ok(b) => {
                if b.s_minus > b.s_plus + tol && witness.is_none() {
                    witness = Some(format!("{label}:s-={},s+={}", b.s_minus, b.s_plus));
                }
                out.value(format!("band.{label}.s_minus"), b.s_minus);
                out.value(format!("band.{label}.s_plus"), b.s_plus);
                out.value(format!("band.{label}.delta_s"), b.delta_s);
                table.push(vec![
                    label,
                    num(b.s_minus),
                    num(b.s_plus),
                    num(b.delta_s),
                    m.describe(&b.witness_minus),
                    m.describe(&b.witness_plus),
                ]);
                found.push((b.s_minus, b.s_plus));
            }
            Err(e) => {
                if witness.is_none() {
                    witness = Some(format!("{label}:{e}"));
                }
                found.push((f64::NAN, f64::NAN));
            }
        }
    }
    out.check("band.ordered", witness.is_none(), states.len(), witness);
    out.tables.push(table);
    found
}

/// `S₋`, `S₊` and `ΔS` over a list of states.
pub fn band(cfg: &Config) -> anyhow::Result<Artifacts> {
    let tol = cfg.tolerances.compare;
    let mut out = Artifacts::default();
    if let Some(m) = toy(cfg)? {
        let states = toy_points(&m, &toy_states(cfg, &[[1.0, 3.0]]))?;
        band_rows(&m, &states, tol, &mut out);
        return Ok(out);
    }
    match &cfg.model {
        Some(ModelConfig::ToyGrid {
            c,
            lo,
            hi,
            h,
            rub_step,
            fourier_step,
        }) => {
            let g: GridEmbedded =
                toy_grid_embedded((*lo, *hi), *h, rub_step.unwrap_or(*h), fourier_step.unwrap_or(*h), *c)
                    .map_err(|e| config_error(e.to_string()))?;
            let pts = toy_states(cfg, &[[1.0, 3.0]]);
            let mut states = Vec::with_capacity(pts.len());
            for p in &pts {
                let sp = StatePoint::new(SpaceId::new(TOY_SPACE), p.to_vec(), false)?;
                states.push(g.snap(&sp).map_err(|e| config_error(format!("state {p:?}: {e}")))?);
            }
            let found = band_rows(&g, &states, tol, &mut out);
            // closed forms on the snapped states, with a two-cell allowance
            let mut witness = None;
            for (x, (lo_s, hi_s)) in states.iter().zip(found) {
                let b = BlockPairState::new(x.coords[0], x.coords[1], *c)?;
                let allowance = 2.0 * h / b.t1.min(b.t2);
                let ok = (lo_s - toy_s_minus(&b)).abs() <= allowance && (hi_s - toy_s_plus(&b)).abs() <= allowance;
                if !ok && witness.is_none() {
                    witness = Some(format!("{b}:s-={lo_s},s+={hi_s}"));
                }
            }
            out.value("grid.accuracy_bound", g.accuracy_bound());
            out.check("band.closed-form", witness.is_none(), states.len(), witness);
        }
        Some(ModelConfig::Finite { .. }) => {
            let (_, m) = finite_relation(cfg)?;
            let nodes = finite_nodes(cfg, &m)?;
            band_rows(&m, &nodes, tol, &mut out);
        }
        _ => return Err(config_error("band supports toy, toy-grid and finite models")),
    }
    Ok(out)
}

/// Structural properties of `S₋`/`S₊` on a toy, finite or random model.
pub fn prop1(cfg: &Config) -> anyhow::Result<Artifacts> {
    let tol = cfg.tolerances.compare;
    let mut out = Artifacts::default();
    if let Some(m) = toy(cfg)? {
        let default = [
            [1.0, 3.0],
            [2.0, 2.0],
            [1.5, 4.0],
            [3.0, 1.2],
            [2.5, 2.5],
            [4.0, 4.5],
            [0.5, 6.0],
        ];
        let samples = toy_points(&m, &toy_states(cfg, &default))?;
        let cand = |x: &BlockPairState| Ok(toy_extended_entropy(x));
        let opts = Prop1Options {
            candidate: Some(&cand),
            composition: false,
            tol,
        };
        out.report.extend(verify_prop1(&m, &samples, &opts)?);
        return Ok(out);
    }
    match &cfg.model {
        Some(ModelConfig::Finite { .. }) => {
            let (_, m) = finite_relation(cfg)?;
            let samples = finite_nodes(cfg, &m)?;
            let opts = Prop1Options {
                candidate: None,
                composition: m.supports_composition(),
                tol,
            };
            out.report.extend(verify_prop1(&m, &samples, &opts)?);
        }
        Some(ModelConfig::Random) => {
            let seed = cfg.require_seed()?;
            let rc = &cfg.random;
            let params = RandomModelParams {
                max_states: rc.max_states,
                edge_prob: rc.edge_prob,
                products: rc.products,
                ..Default::default()
            };
            let mut rng = seeded(seed);
            let mut agg = Aggregate::default();
            let (mut controls, mut detected, mut missed) = (0, 0, None);
            for i in 0..rc.count {
                let m: FiniteEmbedded = random_finite_model(&mut rng, &params)?;
                let samples = m.states().unwrap_or_default();
                let opts = Prop1Options {
                    candidate: None,
                    composition: rc.products,
                    tol,
                };
                agg.add(i, &verify_prop1(&m, &samples, &opts)?);
                if rc.negative_controls {
                    if let Some((bad, x, y)) = break_transitivity(&m) {
                        controls += 1;
                        let r = verify_prop1(&bad, &samples, &opts)?;
                        let rec = r.get("prop1.d.monotone");
                        if rec.is_some_and(|r| r.status == Status::Fail && r.witness.is_some()) {
                            detected += 1;
                        } else if missed.is_none() {
                            let rel = bad.relation();
                            missed = Some(format!("model{i}:{}->{}", rel.name(x), rel.name(y)));
                        }
                    }
                }
            }
            agg.into_report(&mut out);
            out.value("models", rc.count as f64);
            if rc.negative_controls {
                out.value("negative_controls.built", controls as f64);
                out.value("negative_controls.detected", detected as f64);
                if controls == 0 {
                    out.report.push(adiabat::CheckRecord::new(
                        "prop1.negative-control",
                        Status::NotApplicable,
                        0,
                        None,
                    ));
                } else {
                    out.check("prop1.negative-control", detected == controls, controls, missed);
                }
            }
        }
        _ => return Err(config_error("prop1 supports toy, finite and random models")),
    }
    Ok(out)
}

/// Comparability conditions on a finite model, or agreement counts over
/// random models.
pub fn thm4(cfg: &Config) -> anyhow::Result<Artifacts> {
    let tol = cfg.tolerances.compare;
    let mut out = Artifacts::default();
    match &cfg.model {
        None | Some(ModelConfig::Finite { .. }) => {
            let m = if cfg.model.is_none() {
                let mut rel = adiabat::FiniteRelation::parse(THREE_NODE_EXAMPLE)?;
                rel.close();
                FiniteEmbedded::new(rel, adiabat::EntropySource::Coord0)?
            } else {
                finite_relation(cfg)?.1
            };
            let r = verify_theorem4(&m, tol)?;
            out.value("conditions.all_true", f64::from(u8::from(r.all_hold())));
            out.report.extend(r.to_report());
        }
        Some(ModelConfig::Random) => {
            let seed = cfg.require_seed()?;
            let params = RandomModelParams {
                max_states: cfg.random.max_states,
                edge_prob: cfg.random.edge_prob,
                fill_gaps: true,
                ..Default::default()
            };
            let mut rng = seeded(seed);
            let (mut all_true, mut all_false, mut witness) = (0, 0, None);
            for i in 0..cfg.random.count {
                let m: FiniteEmbedded = random_finite_model(&mut rng, &params)?;
                let r = verify_theorem4(&m, tol)?;
                if !r.consistent() {
                    if witness.is_none() {
                        let codes: Vec<String> =
                            r.conditions.iter().map(|c| format!("{}={}", c.code, c.holds)).collect();
                        witness = Some(format!("model{i}:{}", codes.join(",")));
                    }
                } else if r.all_hold() {
                    all_true += 1;
                } else {
                    all_false += 1;
                }
            }
            out.value("models", cfg.random.count as f64);
            out.value("models.all_true", all_true as f64);
            out.value("models.all_false", all_false as f64);
            out.check("thm4.consistent", witness.is_none(), cfg.random.count, witness);
        }
        _ => return Err(config_error("thm4 supports finite and random models")),
    }
    Ok(out)
}

/// Maximum-work bounds, and for the toy model the GB entropy built from
/// the Carnot extension.
pub fn workbounds(cfg: &Config) -> anyhow::Result<Artifacts> {
    let w = &cfg.workbounds;
    let tol = cfg.tolerances.compare;
    let mut out = Artifacts::default();
    if let Some(m) = toy(cfg)? {
        let x0p = w.x0.unwrap_or([2.0, 2.0]);
        let x0 = m.state(x0p[0], x0p[1]).map_err(|e| config_error(e.to_string()))?;
        if !x0.is_equilibrium() {
            return Err(config_error("workbounds.x0 must lie on the diagonal"));
        }
        let mut states = toy_points(&m, &toy_states(cfg, &[[1.0, 3.0]]))?;
        let (u0, s0, t0) = (x0.energy(), x0.t1.ln(), w.t0);
        let phi = |x: &BlockPairState| availability(x.energy(), u0, t0, toy_extended_entropy(x), s0);
        let mut table = Table::new("workbounds.csv", &["state", "lower", "upper", "phi", "s_gb"]);
        let (mut n, mut witness, mut disorder) = (0, None, None);
        for x in &states {
            let b = max_work_bounds(&m, x, &x0, t0).map_err(|e| config_error(e.to_string()))?;
            let label = pair_label([x.t1, x.t2]);
            if b.lower > b.upper + tol && disorder.is_none() {
                disorder = Some(format!("{label}:{}>{}", b.lower, b.upper));
            }
            out.value(format!("work.{label}.lower"), b.lower);
            out.value(format!("work.{label}.upper"), b.upper);
            let mut row = vec![label.clone(), num(b.lower), num(b.upper)];
            if w.carnot_candidate {
                let p = phi(x)?;
                let s_gb = adiabat::gb_entropy(p, x.energy(), u0, t0, s0)?;
                out.value(format!("work.{label}.phi"), p);
                out.value(format!("work.{label}.s_gb"), s_gb);
                n += 1;
                if !b.contains(p, tol) && witness.is_none() {
                    witness = Some(format!("{label}:{}<={p}<={}", b.lower, b.upper));
                }
                row.extend([num(p), num(s_gb)]);
            } else {
                row.extend([String::new(), String::new()]);
            }
            table.push(row);
        }
        out.check("work.ordered", disorder.is_none(), states.len(), disorder);
        out.tables.push(table);
        if w.carnot_candidate {
            out.check("work.bounds-contain-phi", witness.is_none(), n, witness);
            if w.random_pairs > 0 {
                let mut rng = seeded(cfg.require_seed()?);
                for (x, y) in sample_related_pairs(&mut rng, w.random_pairs, (0.5, 5.0), m.c)? {
                    states.push(x);
                    states.push(y);
                }
            }
            let oracle = |x: &BlockPairState| phi(x);
            out.report.extend(gb_checks(&m, &oracle, &x0, t0, &states, tol)?);
        }
        return Ok(out);
    }
    let Some(ModelConfig::Finite { .. }) = &cfg.model else {
        return Err(config_error("workbounds supports toy and finite models"));
    };
    let (_, m) = finite_relation(cfg)?;
    let x0_name = w
        .x0_node
        .as_ref()
        .ok_or_else(|| config_error("workbounds.x0_node is required for finite models"))?;
    let x0 = m.relation().id(x0_name).map_err(|e| config_error(e.to_string()))?;
    let nodes = finite_nodes(cfg, &m)?;
    let mut table = Table::new("workbounds.csv", &["state", "lower", "upper"]);
    let mut witness = None;
    for x in &nodes {
        let b = max_work_bounds(&m, x, &x0, w.t0).map_err(|e| config_error(e.to_string()))?;
        let label = m.describe(x);
        if b.lower > b.upper + tol && witness.is_none() {
            witness = Some(format!("{label}:{}>{}", b.lower, b.upper));
        }
        out.value(format!("work.{label}.lower"), b.lower);
        out.value(format!("work.{label}.upper"), b.upper);
        table.push(vec![label, num(b.lower), num(b.upper)]);
    }
    out.check("work.ordered", witness.is_none(), nodes.len(), witness);
    out.tables.push(table);
    Ok(out)
}
