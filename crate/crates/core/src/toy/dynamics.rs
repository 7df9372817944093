//! Lumped heat-conduction experiments on the block pair.

use std::cell::RefCell;

use super::BlockPairState;
use crate::error::{Error, Result};
use crate::numeric::rk4_step;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CattaneoParams<F = f64> {
    /// Flux relaxation time; zero gives Fourier conduction.
    pub tau: F,
    /// Conductance between the blocks.
    pub k: F,
    pub c: F,
    pub dt: F,
    pub t_end: F,
}

impl<F: Real> CattaneoParams<F> {
    /// Largest admissible step: `min(τ, C/k)/50`, or `(C/k)/50` when `τ = 0`.
    pub fn step_limit(&self) -> F {
        let relax = self.c / self.k;
        let scale = if self.tau > F::zero() {
            self.tau.min(relax)
        } else {
            relax
        };
        scale / F::lit(50.0)
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |v: F, name: &str| {
            if v > F::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")))
            }
        };
        pos(self.k, "k")?;
        pos(self.c, "c")?;
        pos(self.dt, "dt")?;
        pos(self.t_end, "t_end")?;
        if !(self.tau >= F::zero()) || !self.tau.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "tau must be non-negative, got {}",
                self.tau
            )));
        }
        let limit = self.step_limit();
        if self.dt > limit {
            return Err(Error::StepTooLarge {
                dt: self.dt.to_f64_lossy(),
                limit: limit.to_f64_lossy(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow<F = f64> {
    pub time: F,
    pub t1: F,
    pub t2: F,
    pub q: F,
    pub s_classical: F,
    /// Backward difference of `s_classical`; the first row holds the
    /// instantaneous rate.
    pub ds_dt: F,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<F = f64> {
    pub c: F,
    pub rows: Vec<TrajectoryRow<F>>,
}

impl<F: Real> Trajectory<F> {
    /// Largest relative deviation of `C(T₁+T₂)` from its initial value.
    pub fn energy_drift(&self) -> F {
        let Some(first) = self.rows.first() else {
            return F::zero();
        };
        let e0 = first.t1 + first.t2;
        self.rows
            .iter()
            .map(|r| ((r.t1 + r.t2 - e0) / e0).abs())
            .fold(F::zero(), F::max)
    }

    pub fn min_ds_dt(&self) -> F {
        self.rows.iter().map(|r| r.ds_dt).fold(F::infinity(), F::min)
    }

    /// Number of strict sign changes of the flux.
    pub fn q_sign_changes(&self) -> usize {
        let mut last = 0i8;
        let mut n = 0;
        for r in &self.rows {
            let s = if r.q > F::zero() {
                1
            } else if r.q < F::zero() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    n += 1;
                }
                last = s;
            }
        }
        n
    }
}

/// Integrates `C dT₁/dt = −q`, `C dT₂/dt = q` with flux law
/// `τ dq/dt = k(T₁ − T₂) − q` (or `q = k(T₁ − T₂)` when `τ = 0`) by
/// fixed-step RK4.
pub fn cattaneo_simulate<F: Real>(params: &CattaneoParams<F>, x0: &BlockPairState<F>, q0: F) -> Result<Trajectory<F>> {
    params.validate()?;
    let CattaneoParams { tau, k, c, dt, t_end } = *params;
    let fourier = tau == F::zero();
    let flux = |y: &[F; 3]| if fourier { k * (y[0] - y[1]) } else { y[2] };
    let rhs = |_t: F, y: &[F; 3]| {
        let q = flux(y);
        let dq = if fourier {
            F::zero()
        } else {
            (k * (y[0] - y[1]) - q) / tau
        };
        [-q / c, q / c, dq]
    };
    let entropy = |y: &[F; 3]| c * (y[0].ln() + y[1].ln());

    let mut y = [x0.t1, x0.t2, if fourier { k * (x0.t1 - x0.t2) } else { q0 }];
    let mut t = F::zero();
    let mut s = entropy(&y);
    let q = flux(&y);
    let mut rows = vec![TrajectoryRow {
        time: t,
        t1: y[0],
        t2: y[1],
        q,
        s_classical: s,
        ds_dt: q * (y[0] - y[1]) / (y[0] * y[1]),
    }];
    let n = (t_end / dt).ceil().to_usize().unwrap_or(0);
    for i in 0..n {
        let h = if i + 1 == n { t_end - t } else { dt };
        if h <= F::zero() {
            break;
        }
        y = rk4_step(&rhs, t, &y, h);
        t = t + h;
        if !(y[0] > F::zero() && y[1] > F::zero()) {
            return Err(Error::TemperatureCollapse(t.to_f64_lossy()));
        }
        if fourier {
            y[2] = k * (y[0] - y[1]);
        }
        let s_new = entropy(&y);
        rows.push(TrajectoryRow {
            time: t,
            t1: y[0],
            t2: y[1],
            q: y[2],
            s_classical: s_new,
            ds_dt: (s_new - s) / h,
        });
        s = s_new;
    }
    Ok(Trajectory { c, rows })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarnotCouplingParams<F = f64> {
    /// Conductance between each block and the engine.
    pub kappa: F,
    /// Direct conductance between the blocks.
    pub k_leak: F,
    pub c: F,
    pub dt: F,
    pub t_end: F,
    /// Engine intake `Q_h = g(T_hot − T_cold)`.
    pub engine_rate: F,
}

impl<F: Real> CarnotCouplingParams<F> {
    pub fn step_limit(&self) -> F {
        self.c / ((self.engine_rate + self.k_leak) * F::lit(50.0))
    }

    pub fn validate(&self) -> Result<()> {
        for (v, name) in [
            (self.kappa, "kappa"),
            (self.c, "c"),
            (self.dt, "dt"),
            (self.t_end, "t_end"),
            (self.engine_rate, "engine_rate"),
        ] {
            if !(v > F::zero()) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.k_leak >= F::zero()) || !self.k_leak.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "k_leak must be non-negative, got {}",
                self.k_leak
            )));
        }
        let limit = self.step_limit();
        if self.dt > limit {
            return Err(Error::StepTooLarge {
                dt: self.dt.to_f64_lossy(),
                limit: limit.to_f64_lossy(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarnotGapResult<F = f64> {
    pub work_extracted: F,
    /// `C(ln T₁ + ln T₂)` at the end minus at the start.
    pub entropy_produced: F,
    /// Time integral of the local production rates; agrees with
    /// `entropy_produced` up to integration error.
    pub production_integral: F,
    pub final_state: BlockPairState<F>,
    pub time: F,
}

/// Contact temperatures and heat flows of the endoreversible engine:
/// `(Q_h, Q_c, T_hc, T_cc)`.
fn engine<F: Real>(th: F, tc: F, p: &CarnotCouplingParams<F>) -> Result<(F, F, F, F)> {
    let qh = p.engine_rate * (th - tc);
    let thc = th - qh / p.kappa;
    let denom = p.kappa - qh / thc;
    if !(thc > F::zero()) || !(denom > F::zero()) {
        return Err(Error::Infeasible(format!(
            "engine intake {qh} exceeds what conductance {} can carry",
            p.kappa
        )));
    }
    let tcc = p.kappa * tc / denom;
    if !(thc > tcc) {
        return Err(Error::Infeasible(format!(
            "contact temperatures inverted: {thc} <= {tcc}"
        )));
    }
    Ok((qh, qh * tcc / thc, thc, tcc))
}

/// Equilibrates the blocks through a reversible engine attached by finite
/// conductance `κ`, with an optional direct leak, until `|T₁ − T₂| < 1e-6`.
pub fn carnot_gap_experiment<F: Real>(
    params: &CarnotCouplingParams<F>,
    x0: &BlockPairState<F>,
) -> Result<CarnotGapResult<F>> {
    params.validate()?;
    let c = params.c;
    let stop = F::lit(1e-6);
    let entropy = |a: F, b: F| c * (a.ln() + b.ln());
    let rhs = |y: &[F; 4]| -> Result<[F; 4]> {
        let (t1, t2) = (y[0], y[1]);
        let leak = params.k_leak * (t1 - t2);
        let mut d = [-leak / c, leak / c, F::zero(), leak * (F::one() / t2 - F::one() / t1)];
        if t1 != t2 {
            let hot_first = t1 > t2;
            let (th, tc) = if hot_first { (t1, t2) } else { (t2, t1) };
            let (qh, qc, thc, tcc) = engine(th, tc, params)?;
            let (ih, ic) = if hot_first { (0, 1) } else { (1, 0) };
            d[ih] = d[ih] - qh / c;
            d[ic] = d[ic] + qc / c;
            d[2] = qh - qc;
            d[3] = d[3] + qh * (F::one() / thc - F::one() / th) + qc * (F::one() / tc - F::one() / tcc);
        }
        Ok(d)
    };

    let failure = RefCell::new(None);
    let f = |_t: F, y: &[F; 4]| {
        rhs(y).unwrap_or_else(|e| {
            failure.borrow_mut().get_or_insert(e);
            [F::zero(); 4]
        })
    };
    let mut y = [x0.t1, x0.t2, F::zero(), F::zero()];
    let mut t = F::zero();
    while (y[0] - y[1]).abs() >= stop {
        if t >= params.t_end {
            return Err(Error::NoConvergence(params.t_end.to_f64_lossy()));
        }
        y = rk4_step(&f, t, &y, params.dt);
        t = t + params.dt;
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        if !(y[0] > F::zero() && y[1] > F::zero()) {
            return Err(Error::TemperatureCollapse(t.to_f64_lossy()));
        }
    }
    Ok(CarnotGapResult {
        work_extracted: y[2],
        entropy_produced: entropy(y[0], y[1]) - entropy(x0.t1, x0.t2),
        production_integral: y[3],
        final_state: BlockPairState::new(y[0], y[1], c)?,
        time: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fourier(tau: f64) -> CattaneoParams {
        CattaneoParams {
            tau,
            k: 1.0,
            c: 1.0,
            dt: 0.01,
            t_end: 20.0,
        }
    }

    #[test]
    fn fourier_equilibrates_monotonically() {
        let tr = cattaneo_simulate(&fourier(0.0), &BlockPairState::unit(1.0, 3.0).unwrap(), 0.0).unwrap();
        let last = tr.rows.last().unwrap();
        assert!((last.t1 - 2.0).abs() < 1e-6 && (last.t2 - 2.0).abs() < 1e-6);
        assert!(tr.min_ds_dt() >= -1e-9);
        assert!(tr.energy_drift() <= 1e-12);
        assert!((last.time - 20.0).abs() < 1e-12);
    }

    #[test]
    fn step_cap() {
        let mut p = fourier(1.0);
        p.dt = 0.05;
        assert!(matches!(p.validate(), Err(Error::StepTooLarge { .. })));
    }

    #[test]
    fn diagonal_is_stationary() {
        let tr = cattaneo_simulate(&fourier(1.0), &BlockPairState::unit(2.0, 2.0).unwrap(), 0.0).unwrap();
        assert!(tr.rows.iter().all(|r| r.t1 == 2.0 && r.t2 == 2.0 && r.ds_dt == 0.0));
    }

    fn carnot(kappa: f64, k_leak: f64) -> CarnotCouplingParams {
        CarnotCouplingParams {
            kappa,
            k_leak,
            c: 1.0,
            dt: 0.02,
            t_end: 1000.0,
            engine_rate: 0.1,
        }
    }

    #[test]
    fn reversible_limit_keeps_entropy() {
        let r = carnot_gap_experiment(&carnot(1e4, 0.0), &BlockPairState::unit(1.0, 3.0).unwrap()).unwrap();
        assert!(r.entropy_produced >= 0.0 && r.entropy_produced < 1e-4);
        let tf = 3f64.sqrt();
        assert!((r.final_state.t1 - tf).abs() < 1e-3);
        assert!((r.work_extracted - (4.0 - 2.0 * tf)).abs() < 1e-3);
    }

    #[test]
    fn diagonal_start_does_nothing() {
        let r = carnot_gap_experiment(&carnot(1.0, 0.5), &BlockPairState::unit(2.0, 2.0).unwrap()).unwrap();
        assert_eq!(r.work_extracted, 0.0);
        assert_eq!(r.entropy_produced, 0.0);
    }

    #[test]
    fn production_integral_matches_state_change() {
        let r = carnot_gap_experiment(&carnot(1.0, 0.2), &BlockPairState::unit(1.0, 3.0).unwrap()).unwrap();
        assert!(r.entropy_produced > 0.0);
        assert!((r.entropy_produced - r.production_integral).abs() < 1e-6);
    }
}
