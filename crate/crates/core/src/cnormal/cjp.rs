//! Every C-normal operator is `C∘J∘P` with `P ⪰ 0` and `J` anti-unitary
//! commuting with `P`, and every such product is C-normal.

use crate::antilinear::{AntiLinearMap, Compose, Conjugation};
use crate::douglas::{anti_unitarity_residual, cnormal_polar};
use crate::error::{Error, Result};
use crate::matrix::{ensure_square, CMatrix};
use crate::numeric::eig_hermitian;
use crate::tolerance::Tolerance;

use super::battery::is_c_normal_battery;

/// `T = C∘J∘P`, checked C-normal by the full battery.
pub fn cjp_synthesize(c: &Conjugation, j: &AntiLinearMap, p: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    let n = ensure_square(p, "P")?;
    if c.dim() != n || j.dim() != n {
        return Err(Error::Domain("cjp_synthesize: dimension mismatch".into()));
    }
    let root_n = (n as f64).sqrt();
    if anti_unitarity_residual(j) > tol.bound(root_n) {
        return Err(Error::Domain("J is not anti-unitary".into()));
    }
    let (vals, _) = eig_hermitian(p, tol)?;
    if vals.last().is_some_and(|&v| v < -tol.bound(vals[0].abs())) {
        return Err(Error::Domain("P is not positive semidefinite".into()));
    }
    let jp = j.compose(p)?;
    let pj = p.compose(j)?;
    if !tol.close(jp.matrix(), pj.matrix()) {
        return Err(Error::Domain("J does not commute with P".into()));
    }
    let t = c.as_map().compose(j)? * p;
    let report = is_c_normal_battery(&t, c, tol)?;
    if !report.verdict {
        return Err(Error::NotCNormal(format!("synthesized operator fails conditions {:?}", report.disagreements())));
    }
    Ok(t)
}

/// `(J, P)` with `P = |T|` and `J` the extended anti-unitary of the
/// C-normal polar decomposition.
pub fn cjp_factor(t: &CMatrix, c: &Conjugation, tol: &Tolerance) -> Result<(AntiLinearMap, CMatrix)> {
    let polar = cnormal_polar(t, c, tol, true)?;
    Ok((polar.j, polar.modulus))
}
