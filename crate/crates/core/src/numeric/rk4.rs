use crate::scalar::Real;

/// One classical fourth-order Runge–Kutta step of `y' = f(t, y)`.
pub fn rk4_step<F: Real, const N: usize>(f: &impl Fn(F, &[F; N]) -> [F; N], t: F, y: &[F; N], dt: F) -> [F; N] {
    let half = dt / F::lit(2.0);
    let axpy = |y: &[F; N], k: &[F; N], h: F| {
        let mut out = *y;
        for i in 0..N {
            out[i] = y[i] + h * k[i];
        }
        out
    };
    let k1 = f(t, y);
    let k2 = f(t + half, &axpy(y, &k1, half));
    let k3 = f(t + half, &axpy(y, &k2, half));
    let k4 = f(t + dt, &axpy(y, &k3, dt));
    let sixth = dt / F::lit(6.0);
    let mut out = *y;
    for i in 0..N {
        out[i] = y[i] + sixth * (k1[i] + F::lit(2.0) * (k2[i] + k3[i]) + k4[i]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_is_fourth_order() {
        let f = |_t: f64, y: &[f64; 1]| [-y[0]];
        let err = |dt: f64| {
            let n = (1.0 / dt).round() as usize;
            let mut y = [1.0];
            for i in 0..n {
                y = rk4_step(&f, i as f64 * dt, &y, dt);
            }
            (y[0] - (-1f64).exp()).abs()
        };
        let ratio = err(0.1) / err(0.05);
        assert!(ratio > 14.0 && ratio < 18.0, "{ratio}");
    }

    #[test]
    fn preserves_linear_invariant() {
        let f = |_t: f64, y: &[f64; 2]| [y[1] - y[0], y[0] - y[1]];
        let mut y = [1.0, 3.0];
        for i in 0..1000 {
            y = rk4_step(&f, i as f64 * 0.01, &y, 0.01);
        }
        assert!((y[0] + y[1] - 4.0).abs() < 1e-12);
    }
}
