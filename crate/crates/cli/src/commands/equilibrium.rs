use adiabat::construction::{planck_v_residual, TemperatureScale};
use adiabat::{
    affine_uniqueness_check, entropy_by_path_integration, planck_absolute_temperature, AdditiveEntropyModel,
    EntropyEvaluator, ReferencePair, SpaceId, StatePoint,
};

use super::ideal_gas;
use crate::config::{config_error, Config, ModelConfig};
use crate::output::{num, Artifacts, Table};

const DEFAULT_EOS_STATES: [[f64; 2]; 8] = [
    [1.0, 1.0],
    [4.0, 2.0],
    [2.0, 0.5],
    [9.0, 1.0],
    [16.0, 4.0],
    [3.0, 8.0],
    [25.0, 0.3],
    [6.0, 6.0],
];

/// Model whose relation is generated by a known entropy table: path
/// integrals over an ideal gas, or an explicit list. Returns the model,
/// its states and their labels.
pub(crate) fn additive_model(cfg: &Config) -> anyhow::Result<(AdditiveEntropyModel, Vec<StatePoint>, Vec<String>)> {
    let (coords, values): (Vec<Vec<f64>>, Vec<f64>) = match &cfg.model {
        Some(ModelConfig::Additive { entropies }) => {
            if entropies.len() < 2 {
                return Err(config_error("additive model needs at least two entropies"));
            }
            (
                entropies.iter().enumerate().map(|(i, _)| vec![i as f64]).collect(),
                entropies.clone(),
            )
        }
        None | Some(ModelConfig::IdealGas { .. }) => {
            let gas = ideal_gas(cfg, 1.0)?;
            let pts = cfg.states.eos.clone().unwrap_or_else(|| DEFAULT_EOS_STATES.to_vec());
            if pts.len() < 2 {
                return Err(config_error("need at least two EOS states"));
            }
            let scale = if gas.exponent == 1.0 {
                TemperatureScale::Absolute
            } else {
                TemperatureScale::Empirical {
                    theta0: cfg.planck.theta0,
                    t0: cfg.planck.t0,
                    v: pts[0][1],
                }
            };
            let base = (pts[0][0], pts[0][1]);
            let mut s = Vec::with_capacity(pts.len());
            for p in &pts {
                let v = entropy_by_path_integration(&gas, scale, base, (p[0], p[1]), &[])
                    .map_err(|e| config_error(format!("state {p:?}: {e}")))?;
                s.push(v);
            }
            (pts.iter().map(|p| p.to_vec()).collect(), s)
        }
        Some(_) => return Err(config_error("this scenario needs an ideal-gas or additive model")),
    };
    let space = SpaceId::new("eq");
    let mut points = Vec::with_capacity(coords.len());
    let mut labels = Vec::with_capacity(coords.len());
    for (i, c) in coords.into_iter().enumerate() {
        let label = format!("s{i}");
        points.push(StatePoint::new(space.clone(), c, true)?.labeled(label.clone()));
        labels.push(label);
    }
    let table = points.iter().cloned().zip(values).collect();
    Ok((AdditiveEntropyModel::new(table)?, points, labels))
}

/// Builds the entropy from the relation alone and compares it with the
/// generating table up to an affine change of scale.
pub fn entropy(cfg: &Config) -> anyhow::Result<Artifacts> {
    let tol = cfg.tolerances.bisection;
    let (model, points, labels) = additive_model(cfg)?;
    let pick = |r: [usize; 2]| -> anyhow::Result<ReferencePair> {
        let (Some(a), Some(b)) = (points.get(r[0]), points.get(r[1])) else {
            return Err(config_error(format!("reference indices {r:?} out of range")));
        };
        ReferencePair::new(&model, a.clone(), b.clone()).map_err(|e| config_error(e.to_string()))
    };
    let ev = EntropyEvaluator::new(&model, pick(cfg.entropy.refs)?, tol).map_err(|e| config_error(e.to_string()))?;

    let mut out = Artifacts::default();
    let mut table = Table::new(
        "entropy.csv",
        &["state", "coords", "s_table", "s_canonical", "s_canonical_inf"],
    );
    let mut pairs = Vec::with_capacity(points.len());
    let mut canon = Vec::with_capacity(points.len());
    let (mut worst_gap, mut gap_witness) = (0.0f64, None);
    for (p, label) in points.iter().zip(&labels) {
        let s_table = model.entropy_of(p)?;
        let sup = ev.canonical_entropy(p)?;
        let inf = ev.canonical_entropy_inf(p)?;
        if (sup - inf).abs() > 2.0 * tol && gap_witness.is_none() {
            gap_witness = Some(format!("{label}:{sup}!={inf}"));
        }
        worst_gap = worst_gap.max((sup - inf).abs());
        table.push(vec![
            label.clone(),
            p.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
            num(s_table),
            num(sup),
            num(inf),
        ]);
        out.value(format!("entropy.{label}"), sup);
        pairs.push((sup, s_table));
        canon.push(sup);
    }
    let fit = affine_uniqueness_check(&pairs)?;
    out.value("fit.alpha", fit.alpha);
    out.value("fit.beta", fit.beta);
    out.value("fit.max_residual", fit.max_residual);
    out.value("sup_inf.max_gap", worst_gap);
    let limit = cfg.tolerances.residual_factor * tol;
    out.check(
        "entropy.affine-reconstruction",
        fit.max_residual <= limit,
        pairs.len(),
        (fit.max_residual > limit).then(|| format!("residual={}", fit.max_residual)),
    );
    out.check(
        "entropy.sup-inf-agree",
        gap_witness.is_none(),
        points.len(),
        gap_witness,
    );

    if let Some(r2) = cfg.entropy.second_refs {
        let ev2 = EntropyEvaluator::new(&model, pick(r2)?, tol).map_err(|e| config_error(e.to_string()))?;
        let mut both = Vec::with_capacity(points.len());
        for (p, s1) in points.iter().zip(&canon) {
            both.push((*s1, ev2.canonical_entropy(p)?));
        }
        let fit2 = affine_uniqueness_check(&both)?;
        out.value("second_fit.alpha", fit2.alpha);
        out.value("second_fit.max_residual", fit2.max_residual);
        out.check(
            "entropy.reference-independence",
            fit2.max_residual <= limit,
            both.len(),
            (fit2.max_residual > limit).then(|| format!("residual={}", fit2.max_residual)),
        );
    }
    out.tables.push(table);
    Ok(out)
}

/// Converts empirical readings to absolute temperature on two isochores.
pub fn planck(cfg: &Config) -> anyhow::Result<Artifacts> {
    let gas = ideal_gas(cfg, 2.0)?;
    let p = &cfg.planck;
    if !(p.theta0 > 0.0 && p.t0 > 0.0) {
        return Err(config_error("planck.theta0 and planck.t0 must be positive"));
    }
    let tol = cfg.tolerances.planck;
    let [va, vb] = p.volumes;
    let mut out = Artifacts::default();
    let mut table = Table::new(
        "planck.csv",
        &["theta", "t_va", "t_vb", "t_closed", "rel_err", "v_residual"],
    );
    let (mut worst_closed, mut worst_v) = (0.0f64, 0.0f64);
    let (mut w_closed, mut w_v) = (None, None);
    for &theta in &p.thetas {
        let ta = planck_absolute_temperature(&gas, p.theta0, p.t0, theta, va)?;
        let tb = planck_absolute_temperature(&gas, p.theta0, p.t0, theta, vb)?;
        let closed = p.t0 * (theta / p.theta0).powf(1.0 / gas.exponent);
        let err = ((ta - closed) / closed).abs();
        let res = planck_v_residual(&gas, p.theta0, p.t0, theta, va, vb)?;
        if err > tol && w_closed.is_none() {
            w_closed = Some(format!("theta={theta}:T={ta},closed={closed}"));
        }
        if res > tol && w_v.is_none() {
            w_v = Some(format!("theta={theta}:residual={res}"));
        }
        worst_closed = worst_closed.max(err);
        worst_v = worst_v.max(res);
        table.push(vec![num(theta), num(ta), num(tb), num(closed), num(err), num(res)]);
    }
    let n = p.thetas.len();
    out.value("closed_form.max_rel_err", worst_closed);
    out.value("v_independence.max_residual", worst_v);
    out.check("planck.closed-form", w_closed.is_none(), n, w_closed);
    out.check("planck.v-independence", w_v.is_none(), n, w_v);
    let t_cal = planck_absolute_temperature(&gas, p.theta0, p.t0, p.theta0, va)?;
    out.check(
        "planck.calibration",
        t_cal == p.t0,
        1,
        (t_cal != p.t0).then(|| format!("T(theta0)={t_cal}")),
    );
    out.tables.push(table);
    Ok(out)
}
