//! Truncated weighted shifts `T = Σ λ_j e_j⊗e_{j+1}` and their C-normality
//! criterion under the flip conjugation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{zeros, CMatrix};
use crate::tolerance::Tolerance;
use crate::Complex64;

/// The `n×n` shift with `λ_j` in position `(j, j+1)`, `n = len + 1`.
///
/// Uses `(e_j⊗e_{j+1})x = ⟨x, e_{j+1}⟩e_j`, so `T e_{j+1} = λ_j e_j`.
pub fn weighted_shift(lambdas: &[Complex64]) -> Result<CMatrix> {
    if lambdas.is_empty() {
        return Err(Error::Domain("weighted shift needs at least one weight".into()));
    }
    let n = lambdas.len() + 1;
    let mut t = zeros(n, n);
    for (j, &l) in lambdas.iter().enumerate() {
        t[(j, j + 1)] = l;
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftCriterion {
    pub verdict: bool,
    /// `max_j ||λ_j| − |λ_{n−j}||`.
    pub max_gap: f64,
    /// `‖(|λ_j| − |λ_{n−j}|)_j‖₂`.
    pub residual: f64,
    pub threshold: f64,
}

/// Compares the magnitude sequence with its reversal.
///
/// The two sequences are compared under the same Frobenius-relative policy
/// as every matrix identity, which makes the verdict coincide with
/// `C|T|C ≈ |T*|` for the flip conjugation (both sides are diagonal with
/// exactly these entries).
pub fn shift_criterion(lambdas: &[Complex64], tol: &Tolerance) -> ShiftCriterion {
    let mags: Vec<f64> = lambdas.iter().map(|l| l.norm()).collect();
    let gaps: Vec<f64> = mags.iter().zip(mags.iter().rev()).map(|(a, b)| a - b).collect();
    let residual = gaps.iter().map(|g| g * g).sum::<f64>().sqrt();
    let max_gap = gaps.iter().fold(0.0_f64, |m, g| m.max(g.abs()));
    let scale = mags.iter().map(|m| m * m).sum::<f64>().sqrt();
    let threshold = tol.bound(scale);
    ShiftCriterion { verdict: residual <= threshold, max_gap, residual, threshold }
}

/// `|λ_j| = |λ_{n−j}|` for every `j`.
pub fn shift_cnormal_criterion(lambdas: &[Complex64], tol: &Tolerance) -> bool {
    shift_criterion(lambdas, tol).verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antilinear::Conjugation;
    use crate::cnormal::battery::is_c_normal_battery;
    use crate::matrix::{c, from_real, I};
    use crate::random::{mirrored_weights, random_weights, seeded};
    use rand::Rng;

    #[test]
    fn shift_examples() {
        assert_eq!(weighted_shift(&[c(1.0, 0.0)]).unwrap(), from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]));
        let t = weighted_shift(&[c(1.0, 0.0), I]).unwrap();
        assert_eq!(t.shape(), (3, 3));
        assert_eq!(t[(0, 1)], c(1.0, 0.0));
        assert_eq!(t[(1, 2)], I);
        assert_eq!(t.iter().filter(|z| z.norm() > 0.0).count(), 2);
        let t = weighted_shift(&[c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert_eq!((t[(0, 1)], t[(1, 2)]), (c(2.0, 0.0), c(3.0, 0.0)));
        assert!(matches!(weighted_shift(&[]), Err(Error::Domain(_))));
    }

    #[test]
    fn criterion_examples() {
        let t = Tolerance::default();
        assert!(shift_cnormal_criterion(&[c(1.0, 0.0), I], &t));
        assert!(!shift_cnormal_criterion(&[c(1.0, 0.0), c(2.0, 0.0)], &t));
        assert!(shift_cnormal_criterion(&[Complex64::from_polar(0.7, 1.3)], &t));
    }

    #[test]
    fn criterion_matches_battery() {
        let t = Tolerance::default();
        let mut rng = seeded(51);
        for trial in 0..200 {
            let len = rng.random_range(1..12);
            let w = if trial % 2 == 0 { random_weights(len, &mut rng) } else { mirrored_weights(len, &mut rng) };
            let m = weighted_shift(&w).unwrap();
            let r = is_c_normal_battery(&m, &Conjugation::flip(len + 1), &t).unwrap();
            assert_eq!(shift_cnormal_criterion(&w, &t), r.verdict, "{w:?}");
            assert!(r.coherent());
        }
    }
}
