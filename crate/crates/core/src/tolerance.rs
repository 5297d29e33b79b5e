use serde::{Deserialize, Serialize};

use crate::matrix::CMatrix;

/// Numerical equality policy shared by every predicate in the crate.
///
/// Two matrices are equal when `‖X−Y‖_F ≤ eps_abs + eps_rel·max(‖X‖_F, ‖Y‖_F)`;
/// a singular value counts as nonzero when `σ > eps_abs + eps_rel·σ_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_rel: f64,
    pub eps_abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { eps_rel: 1e-9, eps_abs: 1e-12 }
    }
}

impl Tolerance {
    pub fn new(eps_rel: f64, eps_abs: f64) -> Self {
        assert!(eps_rel >= 0.0 && eps_abs >= 0.0, "tolerances must be nonnegative");
        Self { eps_rel, eps_abs }
    }

    /// Absolute threshold for a quantity of magnitude `scale`.
    pub fn bound(&self, scale: f64) -> f64 {
        self.eps_abs + self.eps_rel * scale
    }

    pub fn close_scalar(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.bound(a.abs().max(b.abs()))
    }

    pub fn close(&self, x: &CMatrix, y: &CMatrix) -> bool {
        x.shape() == y.shape() && (x - y).norm() <= self.bound(x.norm().max(y.norm()))
    }

    /// Threshold below which a singular value is treated as zero.
    pub fn rank_cutoff(&self, sigma_max: f64) -> f64 {
        self.bound(sigma_max)
    }

    pub fn is_zero(&self, x: &CMatrix, scale: f64) -> bool {
        x.norm() <= self.bound(scale)
    }
}

/// Outcome of one `X ≈ Y` comparison, keeping the residual for reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub residual: f64,
    pub threshold: f64,
    /// Magnitude the threshold was derived from.
    pub scale: f64,
}

impl Comparison {
    pub fn of(x: &CMatrix, y: &CMatrix, tol: &Tolerance) -> Self {
        Self::with_scale(x, y, x.norm().max(y.norm()), tol)
    }

    pub fn with_scale(x: &CMatrix, y: &CMatrix, scale: f64, tol: &Tolerance) -> Self {
        Self { residual: (x - y).norm(), threshold: tol.bound(scale), scale }
    }

    /// Scalar `value ≤ limit` with slack measured against `scale`.
    pub fn at_most(value: f64, limit: f64, scale: f64, tol: &Tolerance) -> Self {
        Self { residual: (value - limit).max(0.0), threshold: tol.bound(scale), scale }
    }

    /// `residual / max(scale, 1)`.
    pub fn relative(&self) -> f64 {
        self.residual / self.scale.max(1.0)
    }

    pub fn holds(&self) -> bool {
        self.residual <= self.threshold
    }

    /// Worst of two comparisons, judged by residual-to-threshold ratio.
    pub fn worst(self, other: Self) -> Self {
        let r = |c: &Self| if c.threshold > 0.0 { c.residual / c.threshold } else if c.residual > 0.0 { f64::INFINITY } else { 0.0 };
        if r(&other) > r(&self) { other } else { self }
    }
}

/// A named comparison as it appears in JSON reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub scale: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, cmp: Comparison) -> Self {
        Self {
            name: name.into(),
            residual: cmp.residual,
            threshold: cmp.threshold,
            scale: cmp.scale,
            passed: cmp.holds(),
        }
    }

    /// `residual / max(scale, 1)`.
    pub fn relative(&self) -> f64 {
        self.residual / self.scale.max(1.0)
    }
}
