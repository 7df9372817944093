use crate::error::{Error, Result};
use crate::scalar::Real;

/// Result of `y ≈ alpha·x + beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineFit<F = f64> {
    pub alpha: F,
    pub beta: F,
    pub max_residual: F,
}

/// Ordinary least squares line through `(x, y)` pairs.
pub fn affine_fit<F: Real>(pairs: &[(F, F)]) -> Result<AffineFit<F>> {
    if pairs.len() < 2 {
        return Err(Error::DegenerateFit);
    }
    let n = F::from_usize(pairs.len()).unwrap();
    let mx = pairs.iter().fold(F::zero(), |a, p| a + p.0) / n;
    let my = pairs.iter().fold(F::zero(), |a, p| a + p.1) / n;
    let (mut sxx, mut sxy) = (F::zero(), F::zero());
    for &(x, y) in pairs {
        sxx = sxx + (x - mx) * (x - mx);
        sxy = sxy + (x - mx) * (y - my);
    }
    if sxx == F::zero() {
        return Err(Error::DegenerateFit);
    }
    let alpha = sxy / sxx;
    let beta = my - alpha * mx;
    let max_residual = pairs
        .iter()
        .map(|&(x, y)| (y - (alpha * x + beta)).abs())
        .fold(F::zero(), F::max);
    Ok(AffineFit {
        alpha,
        beta,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 2.0 * i as f64 + 3.0)).collect();
        let f = affine_fit(&pts).unwrap();
        assert!((f.alpha - 2.0).abs() < 1e-14 && (f.beta - 3.0).abs() < 1e-14);
        assert!(f.max_residual < 1e-14);
    }

    #[test]
    fn degenerate_abscissae() {
        assert_eq!(affine_fit(&[(1.0, 0.0), (1.0, 2.0)]), Err(Error::DegenerateFit));
        assert_eq!(affine_fit(&[(1.0, 0.0)]), Err(Error::DegenerateFit));
    }
}
