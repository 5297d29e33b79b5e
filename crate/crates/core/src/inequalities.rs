//! Singular-value and norm inequalities for C-normal operators, evaluated
//! per instance.
//!
//! A violated inequality is a finding, not an error: reports carry the
//! per-index slack and a `passed` flag. Only a failed precondition (the
//! operator is not C-normal) raises.

use serde::{Deserialize, Serialize};

use crate::antilinear::Conjugation;
use crate::cnormal::battery::{check_pair, cnormal_condition};
use crate::cnormal::cartesian::{cartesian_decompose, CartesianPair};
use crate::error::{Error, Result};
use crate::matrix::{commutator, direct_sum, CMatrix};
use crate::numeric::{modulus, op_norm, singular_values, sqrt_psd};
use crate::tolerance::{Check, Comparison, Tolerance};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `rhs − lhs` per index.
    pub slack: Vec<f64>,
    pub passed: bool,
}

impl InequalityReport {
    /// `lhs_j ≤ rhs_j` for every `j`, up to `tol.bound(max rhs)`.
    pub fn new(name: impl Into<String>, lhs: Vec<f64>, rhs: Vec<f64>, tol: &Tolerance) -> Self {
        assert_eq!(lhs.len(), rhs.len(), "inequality sides must have equal length");
        let slack: Vec<f64> = rhs.iter().zip(&lhs).map(|(r, l)| r - l).collect();
        let scale = rhs.iter().chain(&lhs).fold(0.0_f64, |m, v| m.max(v.abs()));
        let passed = slack.iter().all(|&s| s >= -tol.bound(scale));
        Self { name: name.into(), lhs, rhs, slack, passed }
    }

    pub fn min_slack(&self) -> f64 {
        self.slack.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Both sides of `(1/√2)·s_j(|A|+|B|) ≤ s_j(T) ≤ s_j(|A|+|B|)` together
/// with the identities the bounds rest on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub lower: InequalityReport,
    pub upper: InequalityReport,
    /// `|T| ≈ (|A|² + |B|²)^{1/2}`.
    pub modulus_chain: Check,
    /// `|A|·|B| ≈ |B|·|A|`.
    pub moduli_commute: Check,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.lower.passed && self.upper.passed && self.moduli_commute.passed && self.modulus_chain.passed
    }

    /// `min_j s_j(T) / s_j(|A|+|B|)` over indices with a nonzero denominator;
    /// the lower bound says this is at least `1/√2`.
    pub fn lower_ratio(&self) -> Option<f64> {
        let cutoff = self.upper.rhs.first().copied().unwrap_or(0.0) * 1e-12;
        self.upper
            .lhs
            .iter()
            .zip(&self.upper.rhs)
            .filter(|(_, &d)| d > cutoff)
            .map(|(s, d)| s / d)
            .reduce(f64::min)
    }
}

fn require_cnormal(t: &CMatrix, c: &Conjugation, tol: &Tolerance) -> Result<CartesianPair> {
    check_pair(t, c)?;
    if !cnormal_condition(t, c, tol).holds() {
        return Err(Error::NotCNormal("C·T*T ≠ TT*·C".into()));
    }
    cartesian_decompose(t, c)
}

pub fn singular_value_sandwich(t: &CMatrix, c: &Conjugation, tol: &Tolerance) -> Result<SandwichReport> {
    let pair = require_cnormal(t, c, tol)?;
    let (abs_a, abs_b) = (modulus(&pair.a)?, modulus(&pair.b)?);
    let sum = &abs_a + &abs_b;
    let s_t = singular_values(t)?;
    let s_sum = singular_values(&sum)?;
    let scaled: Vec<f64> = s_sum.iter().map(|s| s / std::f64::consts::SQRT_2).collect();

    let gram = &abs_a * &abs_a + &abs_b * &abs_b;
    let root = sqrt_psd(&((&gram + gram.adjoint()).scale(0.5)), tol)?;
    let chain = Comparison::with_scale(&modulus(t)?, &root, t.norm(), tol);
    let comm_scale = abs_a.norm() * abs_b.norm();
    let comm = Comparison::with_scale(&commutator(&abs_a, &abs_b), &CMatrix::zeros(t.nrows(), t.nrows()), comm_scale, tol);

    Ok(SandwichReport {
        lower: InequalityReport::new("sandwich_lower", scaled, s_t.clone(), tol),
        upper: InequalityReport::new("sandwich_upper", s_t, s_sum, tol),
        modulus_chain: Check::new("modulus_chain", chain),
        moduli_commute: Check::new("moduli_commute", comm),
    })
}

/// `2·s_j(AB*) ≤ s_j((T*T) ⊕ (TT*))` for `j = 1..2n`, the left side padded
/// with zeros. The report also fails if `s(BA*)` and `s(AB*)` differ.
pub fn product_singular_bound(t: &CMatrix, c: &Conjugation, tol: &Tolerance) -> Result<InequalityReport> {
    let pair = require_cnormal(t, c, tol)?;
    let (a, b) = (&pair.a, &pair.b);
    let s_ab = singular_values(&(a * b.adjoint()))?;
    let s_ba = singular_values(&(b * a.adjoint()))?;
    let scale = s_ab.first().copied().unwrap_or(0.0);
    let same = s_ab.iter().zip(&s_ba).all(|(x, y)| (x - y).abs() <= tol.bound(scale));

    let n = t.nrows();
    let mut lhs: Vec<f64> = s_ab.iter().map(|s| 2.0 * s).collect();
    lhs.resize(2 * n, 0.0);
    let rhs = singular_values(&direct_sum(&(t.adjoint() * t), &(t * t.adjoint())))?;
    let mut report = InequalityReport::new("product_singular_bound", lhs, rhs, tol);
    report.passed &= same;
    Ok(report)
}

/// `‖T*T − TT*‖ ≤ 2‖A‖·min(‖A−A*‖, ‖A+A*‖) + 2‖B‖·min(‖B−B*‖, ‖B+B*‖)`,
/// operator norms throughout.
pub fn self_commutator_bound(t: &CMatrix, c: &Conjugation, tol: &Tolerance) -> Result<InequalityReport> {
    let pair = require_cnormal(t, c, tol)?;
    let term = |x: &CMatrix| -> Result<f64> {
        let minus = op_norm(&(x - x.adjoint()))?;
        let plus = op_norm(&(x + x.adjoint()))?;
        Ok(2.0 * op_norm(x)? * minus.min(plus))
    };
    let lhs = op_norm(&(t.adjoint() * t - t * t.adjoint()))?;
    let rhs = term(&pair.a)? + term(&pair.b)?;
    Ok(InequalityReport::new("self_commutator_bound", vec![lhs], vec![rhs], tol))
}
