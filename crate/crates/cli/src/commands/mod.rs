//! One function per subcommand; each turns a config into artifacts.

mod equilibrium;
mod nonequilibrium;
mod order;
mod toy;

use std::collections::BTreeMap;

use adiabat::construction::EosDomain;
use adiabat::noneq::{EntropySource, FiniteEmbedded};
use adiabat::{CheckRecord, FiniteRelation, IdealGas, Report, Status};

use crate::config::{config_error, Config, FiniteEntropy, ModelConfig};
use crate::output::Artifacts;

pub use equilibrium::{entropy, planck};
pub use nonequilibrium::{band, prop1, thm4, workbounds};
pub use order::axioms;
pub use toy::{carnot_gap, cattaneo, toy_sector};

/// Loads a finite model. Returns the relation as written and its closure.
fn finite_relation(cfg: &Config) -> anyhow::Result<(FiniteRelation, FiniteEmbedded)> {
    let Some(ModelConfig::Finite {
        file,
        entropy,
        energy_coord,
    }) = &cfg.model
    else {
        return Err(config_error("this scenario needs `model.kind = \"finite\"`"));
    };
    let path = cfg.resolve(file);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| config_error(format!("cannot read model {}: {e}", path.display())))?;
    let raw = FiniteRelation::parse(&text).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
    let mut closed = raw.clone();
    closed.close();
    let source = match entropy {
        FiniteEntropy::Coord0 => EntropySource::Coord0,
        FiniteEntropy::Rank => EntropySource::Rank,
    };
    let mut model = FiniteEmbedded::new(closed, source).map_err(|e| config_error(e.to_string()))?;
    if let Some(k) = energy_coord {
        model = model.with_energy_coord(*k);
    }
    Ok((raw, model))
}

fn ideal_gas(cfg: &Config, default_exponent: f64) -> anyhow::Result<IdealGas> {
    let (cv, r, p, th, vol) = match &cfg.model {
        Some(ModelConfig::IdealGas {
            cv,
            r,
            exponent,
            theta,
            volume,
        }) => (*cv, *r, *exponent, *theta, *volume),
        None => (1.5, 1.0, default_exponent, [0.1, 100.0], [0.1, 10.0]),
        Some(_) => return Err(config_error("this scenario needs `model.kind = \"ideal-gas\"`")),
    };
    IdealGas::new(
        cv,
        r,
        p,
        EosDomain {
            theta: (th[0], th[1]),
            volume: (vol[0], vol[1]),
        },
    )
    .map_err(|e| config_error(e.to_string()))
}

fn toy_states(cfg: &Config, default: &[[f64; 2]]) -> Vec<[f64; 2]> {
    cfg.states.toy.clone().unwrap_or_else(|| default.to_vec())
}

fn pair_label(p: [f64; 2]) -> String {
    format!("({},{})", p[0], p[1])
}

/// Merges per-model reports: a check fails if it failed on any model, and
/// keeps the first witness tagged with its model index.
#[derive(Default)]
struct Aggregate {
    order: Vec<String>,
    merged: BTreeMap<String, CheckRecord>,
}

impl Aggregate {
    fn add(&mut self, model: usize, report: &Report) {
        for r in &report.records {
            let entry = self.merged.entry(r.name.clone()).or_insert_with(|| {
                self.order.push(r.name.clone());
                CheckRecord::new(r.name.clone(), Status::NotApplicable, 0, None)
            });
            entry.checked += r.checked;
            match r.status {
                Status::Fail => {
                    if entry.status != Status::Fail {
                        entry.witness = r.witness.as_ref().map(|w| format!("model{model}:{w}"));
                    }
                    entry.status = Status::Fail;
                }
                Status::Pass if entry.status != Status::Fail => entry.status = Status::Pass,
                Status::Info if entry.status == Status::NotApplicable => entry.status = Status::Info,
                _ => {}
            }
        }
    }

    fn into_report(mut self, out: &mut Artifacts) {
        for name in &self.order {
            if let Some(r) = self.merged.remove(name) {
                out.report.push(r);
            }
        }
    }
}
