use adiabat::toy::sector_polygon;
use adiabat::{
    carnot_gap_experiment, cattaneo_simulate, toy_extended_entropy, toy_precedes, toy_s_minus, toy_s_plus,
    BlockPairState, CarnotCouplingParams, CattaneoParams,
};

use crate::config::{config_error, Config};
use crate::output::{num, Artifacts, Table};

fn block_pair(p: [f64; 2], c: f64) -> anyhow::Result<BlockPairState> {
    BlockPairState::new(p[0], p[1], c).map_err(|e| config_error(format!("state {p:?}: {e}")))
}

/// Forward sector of one toy state, with its entropy bounds.
pub fn toy_sector(cfg: &Config) -> anyhow::Result<Artifacts> {
    let s = &cfg.toy_sector;
    let x = block_pair(s.state, s.c)?;
    let poly = sector_polygon(&x, s.tmax).map_err(|e| config_error(e.to_string()))?;
    let mut out = Artifacts::default();
    let (lo, hi, hat) = (toy_s_minus(&x), toy_s_plus(&x), toy_extended_entropy(&x));
    out.value("s_minus", lo);
    out.value("s_plus", hi);
    out.value("s_hat", hat);
    out.value("delta_s", hi - lo);
    let tol = cfg.tolerances.compare;
    let ordered = lo <= hat + tol && hat <= hi + tol;
    out.check(
        "sector.ordering",
        ordered,
        1,
        (!ordered).then(|| format!("s-={lo},s^={hat},s+={hi}")),
    );
    let mut table = Table::new("sector.csv", &["vertex", "t1", "t2"]);
    let mut witness = None;
    for (i, &(a, b)) in poly.iter().enumerate() {
        let v = BlockPairState::new(a, b, s.c)?;
        if !toy_precedes(&x, &v) && witness.is_none() {
            witness = Some(format!("{v}"));
        }
        table.push(vec![i.to_string(), num(a), num(b)]);
    }
    out.check("sector.vertices-in-sector", witness.is_none(), poly.len(), witness);
    out.tables.push(table);
    Ok(out)
}

/// Two blocks coupled by Fourier (`τ = 0`) or Cattaneo heat flow.
pub fn cattaneo(cfg: &Config) -> anyhow::Result<Artifacts> {
    let s = &cfg.cattaneo;
    let params = CattaneoParams {
        tau: s.tau,
        k: s.k,
        c: s.c,
        dt: s.dt,
        t_end: s.t_end,
    };
    params.validate().map_err(|e| config_error(e.to_string()))?;
    let x0 = block_pair(s.x0, s.c)?;
    let traj = cattaneo_simulate(&params, &x0, s.q0)?;
    let mut out = Artifacts::default();
    let mut table = Table::new("cattaneo.csv", &["time", "t1", "t2", "q", "S_classical", "dS_dt"]);
    for r in &traj.rows {
        table.push(vec![
            num(r.time),
            num(r.t1),
            num(r.t2),
            num(r.q),
            num(r.s_classical),
            num(r.ds_dt),
        ]);
    }
    out.tables.push(table);
    let drift = traj.energy_drift();
    let min_rate = traj.min_ds_dt();
    let flips = traj.q_sign_changes();
    out.value("energy_drift", drift);
    out.value("min_ds_dt", min_rate);
    out.value("q_sign_changes", flips as f64);
    if let Some(last) = traj.rows.last() {
        out.value("final.t1", last.t1);
        out.value("final.t2", last.t2);
    }
    let n = traj.rows.len();
    let ok = drift <= cfg.tolerances.energy_drift;
    out.check("cattaneo.energy-drift", ok, n, (!ok).then(|| format!("drift={drift}")));
    if s.tau == 0.0 {
        let ok = min_rate >= -1e-9;
        out.check(
            "cattaneo.fourier-monotone",
            ok,
            n,
            (!ok).then(|| format!("min dS/dt={min_rate}")),
        );
    } else {
        out.info("cattaneo.q-sign-changes", n, Some(flips.to_string()));
        out.info("cattaneo.min-ds-dt", n, Some(num(min_rate)));
    }
    Ok(out)
}

/// Work extracted by a finite-rate engine between the blocks, and the
/// entropy it leaves behind.
pub fn carnot_gap(cfg: &Config) -> anyhow::Result<Artifacts> {
    let s = &cfg.carnot;
    let x0 = block_pair(s.x0, s.c)?;
    let mut kappas = vec![s.kappa];
    if let Some(sweep) = &s.kappa_sweep {
        kappas = sweep.clone();
    }
    let mut out = Artifacts::default();
    let mut table = Table::new(
        "carnot.csv",
        &[
            "kappa",
            "work_extracted",
            "entropy_produced",
            "production_integral",
            "time",
            "final_t",
        ],
    );
    let mut results = Vec::new();
    for &kappa in &kappas {
        let params = CarnotCouplingParams {
            kappa,
            k_leak: s.k_leak,
            c: s.c,
            dt: s.dt,
            t_end: s.t_end,
            engine_rate: s.engine_rate,
        };
        params.validate().map_err(|e| config_error(e.to_string()))?;
        let r = carnot_gap_experiment(&params, &x0)?;
        let key = format!("kappa={}", num(kappa));
        out.value(format!("{key}.work_extracted"), r.work_extracted);
        out.value(format!("{key}.entropy_produced"), r.entropy_produced);
        table.push(vec![
            num(kappa),
            num(r.work_extracted),
            num(r.entropy_produced),
            num(r.production_integral),
            num(r.time),
            num(r.final_state.mean()),
        ]);
        results.push((kappa, r));
    }
    out.tables.push(table);
    // reversible ceiling: equilibrate at the geometric mean
    let tf = (x0.t1 * x0.t2).sqrt();
    out.value("work_reversible", s.c * (x0.t1 + x0.t2 - 2.0 * tf));
    let tol = cfg.tolerances.compare;
    let bad = results.iter().find(|(_, r)| r.entropy_produced < -tol);
    out.check(
        "carnot.production-nonnegative",
        bad.is_none(),
        results.len(),
        bad.map(|(k, r)| format!("kappa={k}:{}", r.entropy_produced)),
    );
    if s.kappa_sweep.is_some() && s.k_leak == 0.0 && results.len() > 1 {
        let mut sorted: Vec<_> = results.iter().collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let bad = sorted
            .windows(2)
            .find(|w| w[1].1.entropy_produced >= w[0].1.entropy_produced);
        out.check(
            "carnot.sweep-decreasing",
            bad.is_none(),
            sorted.len(),
            bad.map(|w| {
                format!(
                    "kappa {}->{}: {}->{}",
                    w[0].0, w[1].0, w[0].1.entropy_produced, w[1].1.entropy_produced
                )
            }),
        );
    }
    Ok(out)
}
