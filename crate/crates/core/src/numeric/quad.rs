use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_DEPTH: u32 = 48;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to relative tolerance
/// `rel_tol` (relative to the magnitude of the integral).
pub fn adaptive_simpson<F: Real>(mut f: impl FnMut(F) -> Result<F>, a: F, b: F, rel_tol: F) -> Result<F> {
    if a == b {
        return Ok(F::zero());
    }
    let two = F::lit(2.0);
    // coarse composite estimate sets the absolute scale
    let panels = 8;
    let width = (b - a) / F::from_usize(panels).unwrap();
    let mut coarse = Vec::with_capacity(panels);
    let mut scale = F::zero();
    for i in 0..panels {
        let lo = a + width * F::from_usize(i).unwrap();
        let hi = if i + 1 == panels { b } else { lo + width };
        let mid = lo + (hi - lo) / two;
        let (fl, fm, fh) = (f(lo)?, f(mid)?, f(hi)?);
        let s = simpson(lo, hi, fl, fm, fh);
        scale = scale + s.abs();
        coarse.push((lo, hi, fl, fm, fh, s));
    }
    let tiny = F::min_positive_value().sqrt();
    let eps = rel_tol * scale.max(tiny) / F::from_usize(panels).unwrap();
    let mut total = F::zero();
    for (lo, hi, fl, fm, fh, s) in coarse {
        total = total + recurse(&mut f, lo, hi, fl, fm, fh, s, eps, MAX_DEPTH)?;
    }
    if !total.is_finite() {
        return Err(Error::QuadratureFailed(a.to_f64_lossy(), b.to_f64_lossy()));
    }
    Ok(total)
}

fn simpson<F: Real>(a: F, b: F, fa: F, fm: F, fb: F) -> F {
    (b - a) / F::lit(6.0) * (fa + F::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Real>(
    f: &mut impl FnMut(F) -> Result<F>,
    a: F,
    b: F,
    fa: F,
    fm: F,
    fb: F,
    whole: F,
    eps: F,
    depth: u32,
) -> Result<F> {
    let two = F::lit(2.0);
    let m = a + (b - a) / two;
    let (lm, rm) = (a + (m - a) / two, m + (b - m) / two);
    let (flm, frm) = (f(lm)?, f(rm)?);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return Err(Error::QuadratureFailed(a.to_f64_lossy(), b.to_f64_lossy()));
    }
    if depth == 0 || delta.abs() <= F::lit(15.0) * eps {
        return Ok(left + right + delta / F::lit(15.0));
    }
    Ok(recurse(f, a, m, fa, flm, fm, left, eps / two, depth - 1)?
        + recurse(f, m, b, fm, frm, fb, right, eps / two, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_reciprocal_to_log() {
        let v = adaptive_simpson(|x: f64| Ok(1.0 / x), 1.0, 10.0, 1e-12).unwrap();
        assert!((v - 10f64.ln()).abs() < 1e-11);
    }

    #[test]
    fn empty_and_reversed_intervals() {
        assert_eq!(adaptive_simpson(|x: f64| Ok(x), 2.0, 2.0, 1e-10).unwrap(), 0.0);
        let v = adaptive_simpson(|x: f64| Ok(x * x), 1.0, 0.0, 1e-12).unwrap();
        assert!((v + 1.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn oscillating_integrand() {
        let v = adaptive_simpson(|x: f64| Ok(x.sin()), 0.0, 10.0, 1e-12).unwrap();
        assert!((v - (1.0 - 10f64.cos())).abs() < 1e-10);
    }
}
