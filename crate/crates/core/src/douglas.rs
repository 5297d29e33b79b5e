//! Range inclusion, the Douglas factorization `A = B·C`, and the polar
//! decompositions derived from it for anti-linear and C-normal operators.
//!
//! Kernels and ranges are always compared as orthogonal projectors.

use crate::antilinear::{AntiLinearMap, Compose, Conjugation, PartialAntiIsometry};
use crate::cnormal::battery::cnormal_condition;
use crate::error::{Error, Result};
use crate::json::{Bundle, MapKind, MatrixJson};
use crate::matrix::{ensure_square, eye, CMatrix};
use crate::numeric::{
    eig_hermitian, kernel_basis, kernel_projector, modulus, op_norm, pinv, range_basis, range_projector,
    spectral_apply,
};
use crate::tolerance::{Comparison, Tolerance};

/// `ran(A) ⊆ ran(B)`, tested as `Π_B·A ≈ A`.
pub fn range_included(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<bool> {
    if a.nrows() != b.nrows() {
        return Err(Error::dims("range_included", a.shape(), b.shape()));
    }
    let proj = range_projector(b, tol)?;
    Ok(Comparison::with_scale(&(proj * a), a, a.norm(), tol).holds())
}

/// The minimal-norm solution of `A = B·C`.
#[derive(Debug, Clone)]
pub struct DouglasSolution {
    pub factor: CMatrix,
    /// `‖C‖₂²`.
    pub norm_sq: f64,
    /// `inf{λ : AA* ⪯ λ·BB*}`, from the generalized Rayleigh quotient on `ran B`.
    pub k_min: f64,
}

/// Residuals of the three Douglas postconditions for a computed factor.
#[derive(Debug, Clone, Copy)]
pub struct DouglasResiduals {
    /// `‖A − B·C‖_F`.
    pub reconstruction: f64,
    /// `‖P_ker C − P_ker A‖_F`.
    pub kernel: f64,
    /// `‖Π_{B*}·C − C‖_F`.
    pub range: f64,
    /// `|‖C‖² − k_min| / max(k_min, 1)`.
    pub norm: f64,
}

impl DouglasSolution {
    pub fn residuals(&self, a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<DouglasResiduals> {
        let c = &self.factor;
        let reconstruction = (a - b * c).norm();
        let kernel = (kernel_projector(c, tol)? - kernel_projector(a, tol)?).norm();
        let range = (range_projector(&b.adjoint(), tol)? * c - c).norm();
        let norm = (self.norm_sq - self.k_min).abs() / self.k_min.max(1.0);
        Ok(DouglasResiduals { reconstruction, kernel, range, norm })
    }
}

/// Solves `A = B·C` with `C = B⁺·A`, which is the unique solution whose range
/// lies in `ran(B*)`.
pub fn douglas_solve(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<DouglasSolution> {
    if !range_included(a, b, tol)? {
        return Err(Error::Range("ran(A) is not contained in ran(B)".into()));
    }
    let factor = pinv(b, tol)? * a;
    let norm_sq = op_norm(&factor)?.powi(2);
    let k_min = majorization_constant(a, b, tol)?;
    Ok(DouglasSolution { factor, norm_sq, k_min })
}

/// Smallest `λ` with `AA* ⪯ λ·BB*`, assuming `ran A ⊆ ran B`.
///
/// Restricts both Gram matrices to an orthonormal basis `Q` of `ran B`, where
/// `G_B = Q*BB*Q` is positive definite, and takes the largest eigenvalue of
/// `G_B^{-1/2}·G_A·G_B^{-1/2}`.
pub fn majorization_constant(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<f64> {
    let q = range_basis(b, tol)?;
    if q.ncols() == 0 {
        return Ok(0.0);
    }
    let qb = q.adjoint() * b;
    let qa = q.adjoint() * a;
    let gb = &qb * qb.adjoint();
    let ga = &qa * qa.adjoint();
    let (vals, vecs) = eig_hermitian(&((&gb + gb.adjoint()).scale(0.5)), tol)?;
    let inv_sqrt: Vec<f64> = vals.iter().map(|v| 1.0 / v.sqrt()).collect();
    let w = spectral_apply(&vecs, &inv_sqrt);
    let pencil = &w * ga * &w;
    let (top, _) = eig_hermitian(&((&pencil + pencil.adjoint()).scale(0.5)), tol)?;
    Ok(top.first().copied().unwrap_or(0.0).max(0.0))
}

/// Linear `R` with `T = S∘R` for anti-linear `T`, `S` with `ran T ⊆ ran S`.
///
/// Solves the linear problem `T∘C = (S∘C)·D` and returns `R = C∘D∘C`. Then
/// `ker R = ker T` and `ran R ⊆ (ker S)^⊥`.
pub fn antilinear_douglas(
    t: &AntiLinearMap,
    s: &AntiLinearMap,
    c: &Conjugation,
    tol: &Tolerance,
) -> Result<CMatrix> {
    if t.dim() != s.dim() || t.dim() != c.dim() {
        return Err(Error::Domain("antilinear_douglas: dimension mismatch".into()));
    }
    let tc = t.compose(c.as_map())?;
    let sc = s.compose(c.as_map())?;
    let d = douglas_solve(&tc, &sc, tol)?;
    Ok(c.sandwich(&d.factor))
}

/// Linear partial isometry `D` with `S = D∘T`, given `S♯S = T♯T`.
///
/// Initial space `ran T`, final space `ran S`.
pub fn antilinear_equal_modulus_factor(s: &AntiLinearMap, t: &AntiLinearMap, tol: &Tolerance) -> Result<CMatrix> {
    if s.dim() != t.dim() {
        return Err(Error::dims("antilinear_equal_modulus_factor", s.matrix().shape(), t.matrix().shape()));
    }
    let gs = s.sharp_adjoint().compose(s)?;
    let gt = t.sharp_adjoint().compose(t)?;
    if !tol.close(&gs, &gt) {
        return Err(Error::ModulusMismatch("S♯S and T♯T differ".into()));
    }
    Ok(s.matrix() * pinv(t.matrix(), tol)?)
}

/// `A = J∘|A|` for an anti-linear `A`.
#[derive(Debug, Clone)]
pub struct PolarDecomposition {
    pub isometry_part: PartialAntiIsometry,
    pub modulus: CMatrix,
}

impl PolarDecomposition {
    pub fn reconstruct(&self) -> AntiLinearMap {
        self.isometry_part.map.compose(&self.modulus).expect("square factors")
    }

    pub fn to_bundle(&self, a: &AntiLinearMap, tol: &Tolerance) -> Result<Bundle> {
        let rec = (self.reconstruct().matrix() - a.matrix()).norm();
        let ker = Comparison::of(&self.isometry_part.map.kernel_projector(tol)?, &a.kernel_projector(tol)?, tol);
        let iso = self.isometry_part.isometry_residual(tol);
        let scale = a.matrix().norm();
        Ok(Bundle::new(
            vec![
                self.isometry_part.map.to_json().named("J"),
                MatrixJson::from_matrix(&self.modulus).with_kind(MapKind::Linear).named("modulus"),
            ],
            [("reconstruction", rec), ("kernel", ker.residual), ("isometry", iso.residual)],
            rec <= tol.bound(scale) && ker.holds() && iso.holds(),
        ))
    }
}

/// Polar decomposition of an anti-linear map using the canonical
/// conjugation for `|A| = |C∘A|`.
///
/// The modulus is recomputed through a second conjugation (the flip) and
/// the two must agree; a disagreement signals a numerical failure.
pub fn antilinear_polar(a: &AntiLinearMap, tol: &Tolerance) -> Result<PolarDecomposition> {
    let n = a.dim();
    let first = antilinear_polar_with(a, &Conjugation::canonical(n), tol)?;
    let second = modulus(&Conjugation::flip(n).as_map().compose(a)?)?;
    if !tol.close(&first.modulus, &second) {
        return Err(Error::NumericalFailure("|C∘A| depends on the conjugation".into()));
    }
    Ok(first)
}

/// Polar decomposition with `|A|` computed as `|C∘A|` for the given `C`.
pub fn antilinear_polar_with(a: &AntiLinearMap, c: &Conjugation, tol: &Tolerance) -> Result<PolarDecomposition> {
    if a.dim() != c.dim() {
        return Err(Error::dims("antilinear_polar", a.matrix().shape(), c.matrix().shape()));
    }
    let linear = c.as_map().compose(a)?;
    let abs = modulus(&linear)?;
    let j = a.compose(&pinv(&abs, tol)?)?;
    Ok(PolarDecomposition { isometry_part: PartialAntiIsometry::from_map(j, tol)?, modulus: abs })
}

/// `T = C∘J∘|T|` for a C-normal `T`.
#[derive(Debug, Clone)]
pub struct CNormalPolar {
    /// Partial anti-unitary on `ran|T|`, or a full anti-unitary when extended.
    pub j: AntiLinearMap,
    pub modulus: CMatrix,
    pub extended: bool,
}

impl CNormalPolar {
    /// `‖C∘J∘|T| − T‖_F`.
    pub fn reconstruction_residual(&self, t: &CMatrix, c: &Conjugation) -> f64 {
        let cj = c.as_map().compose(&self.j).expect("dims checked");
        (cj * &self.modulus - t).norm()
    }

    /// `‖J∘|T| − |T|∘J‖_F`.
    pub fn commutation_residual(&self) -> f64 {
        let left = self.j.compose(&self.modulus).expect("dims checked");
        let right = self.modulus.compose(&self.j).expect("dims checked");
        (left.matrix() - right.matrix()).norm()
    }

    pub fn to_bundle(&self, t: &CMatrix, c: &Conjugation, tol: &Tolerance) -> Bundle {
        let rec = self.reconstruction_residual(t, c);
        let com = self.commutation_residual();
        let scale = t.norm();
        Bundle::new(
            vec![
                self.j.to_json().named("J"),
                MatrixJson::from_matrix(&self.modulus).with_kind(MapKind::Linear).named("P"),
            ],
            [("reconstruction", rec), ("commutation", com)],
            rec <= tol.bound(scale) && com <= tol.bound(scale),
        )
    }
}

/// C-normal polar decomposition `T = C∘J∘|T|` with `J∘|T| = |T|∘J`.
///
/// `J = (C∘T)∘|T|⁺` on `ran|T|`. With `extend`, `J` is completed on
/// `ker|T|` by the canonical conjugation of an orthonormal kernel basis `Q`
/// (matrix `Q·Qᵀ`), giving a full anti-unitary.
pub fn cnormal_polar(t: &CMatrix, c: &Conjugation, tol: &Tolerance, extend: bool) -> Result<CNormalPolar> {
    let n = ensure_square(t, "cnormal_polar input")?;
    if c.dim() != n {
        return Err(Error::dims("cnormal_polar", t.shape(), c.matrix().shape()));
    }
    if !cnormal_condition(t, c, tol).holds() {
        return Err(Error::NotCNormal("C·T*T ≠ TT*·C".into()));
    }
    let abs = modulus(t)?;
    let ct = c.after(t);
    let mut jm = ct.compose(&pinv(&abs, tol)?)?.into_matrix();
    if extend {
        let q = kernel_basis(t, tol)?;
        jm += &q * q.transpose();
    }
    Ok(CNormalPolar { j: AntiLinearMap::new(jm)?, modulus: abs, extended: extend })
}

/// `‖M·M* − I‖_F` for the matrix of an anti-linear map; zero iff anti-unitary.
pub fn anti_unitarity_residual(j: &AntiLinearMap) -> f64 {
    let m = j.matrix();
    (m * m.adjoint() - eye(m.nrows())).norm()
}

/// Projector onto `(ker S)^⊥` for an anti-linear `S`.
pub fn cokernel_projector(s: &AntiLinearMap, tol: &Tolerance) -> Result<CMatrix> {
    Ok(eye(s.dim()) - s.kernel_projector(tol)?)
}
