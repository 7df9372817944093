use crate::error::{Error, Result};
use crate::scalar::Real;

/// Shrinks `[lo, hi]` around the threshold of a predicate that is true
/// below it and false above it. Requires `pred(lo)` and `!pred(hi)`;
/// returns the final bracket with `hi - lo <= tol`.
pub fn bisect_threshold<F: Real>(
    mut pred: impl FnMut(F) -> Result<bool>,
    mut lo: F,
    mut hi: F,
    tol: F,
) -> Result<(F, F)> {
    if !(tol > F::zero()) || !(lo < hi) {
        return Err(Error::InvalidParameter("bisection needs lo < hi and tol > 0".into()));
    }
    let two = F::lit(2.0);
    // 200 halvings exhaust any f64 bracket
    for _ in 0..200 {
        if hi - lo <= tol {
            return Ok((lo, hi));
        }
        let mid = lo + (hi - lo) / two;
        if mid <= lo || mid >= hi {
            return Ok((lo, hi));
        }
        if pred(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let (lo, hi) = bisect_threshold(|x: f64| Ok(x * x <= 2.0), 0.0, 2.0, 1e-12).unwrap();
        assert!(hi - lo <= 1e-12);
        assert!((lo - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn works_in_single_precision() {
        let (lo, _) = bisect_threshold(|x: f32| Ok(x <= 0.3), 0.0, 1.0, 1e-5).unwrap();
        assert!((lo - 0.3).abs() < 1e-5);
    }

    #[test]
    fn propagates_predicate_errors() {
        let r = bisect_threshold(|_: f64| Err(Error::BracketNotFound), 0.0, 1.0, 1e-3);
        assert_eq!(r, Err(Error::BracketNotFound));
    }
}
