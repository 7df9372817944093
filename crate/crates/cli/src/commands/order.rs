use adiabat::toy::TOY_SPACE;
use adiabat::{check_axioms, AxiomCheckConfig, AxiomReport, CompoundState, SpaceId, StatePoint, ToyModel};

use super::{finite_relation, toy_states};
use crate::commands::equilibrium::additive_model;
use crate::config::{config_error, Config, ModelConfig};
use crate::output::Artifacts;

fn push_axioms(out: &mut Artifacts, r: &AxiomReport) {
    for e in &r.entries {
        let witness = e.witnesses.first().map(|w| w.to_string());
        out.report.push(adiabat::CheckRecord::new(
            format!("axioms.{}", e.axiom.code()),
            e.status,
            e.checked,
            witness,
        ));
    }
}

/// Checks A1–A6 and the comparison property. Finite relations are checked
/// as written, without closing them first.
pub fn axioms(cfg: &Config) -> anyhow::Result<Artifacts> {
    let mut out = Artifacts::default();
    let acfg = AxiomCheckConfig::default();
    let report = match &cfg.model {
        Some(ModelConfig::Finite { .. }) => {
            let (raw, _) = finite_relation(cfg)?;
            let samples: Vec<CompoundState> = raw.ids().map(|i| raw.node_state(i)).collect();
            out.info("model.closed", raw.len(), Some(format!("{}", raw.is_closed())));
            check_axioms(&raw, &samples, &[], &[], &acfg)?
        }
        Some(ModelConfig::Toy { c }) => {
            let m = ToyModel::new(*c).map_err(|e| config_error(e.to_string()))?;
            let samples: Vec<CompoundState> = toy_states(cfg, &[[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]])
                .into_iter()
                .map(|p| StatePoint::new(SpaceId::new(TOY_SPACE), p.to_vec(), p[0] == p[1]).map(CompoundState::single))
                .collect::<Result<_, _>>()
                .map_err(|e| config_error(e.to_string()))?;
            check_axioms(&m, &samples, &[], &[], &acfg)?
        }
        None | Some(ModelConfig::IdealGas { .. }) | Some(ModelConfig::Additive { .. }) => {
            let (m, pts, _) = additive_model(cfg)?;
            let samples: Vec<CompoundState> = pts.iter().cloned().map(CompoundState::single).collect();
            let catalysts = match pts.as_slice() {
                [a, b, ..] => vec![(a.clone(), b.clone())],
                _ => Vec::new(),
            };
            check_axioms(&m, &samples, &[0.5, 0.1, 0.01], &catalysts, &acfg)?
        }
        Some(_) => {
            return Err(config_error(
                "axioms supports finite, toy, ideal-gas and additive models",
            ))
        }
    };
    push_axioms(&mut out, &report);
    Ok(out)
}
