//! Dense linear-algebra substrate: SVD, Hermitian eigendecomposition,
//! Moore–Penrose pseudoinverse, PSD square roots and range projectors.
//!
//! Every rank decision goes through [`Tolerance::rank_cutoff`].

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{c, ensure_finite, ensure_square, eye, zeros, CMatrix};
use crate::tolerance::Tolerance;

/// Thin singular value decomposition `A = U·diag(sigma)·V*`.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

impl SvdResult {
    pub fn reconstruct(&self) -> CMatrix {
        let mut us = self.u.clone();
        for (j, &s) in self.sigma.iter().enumerate() {
            us.column_mut(j).scale_mut(s);
        }
        us * self.v.adjoint()
    }

    /// Number of singular values above the rank cutoff.
    pub fn rank(&self, tol: &Tolerance) -> usize {
        let cutoff = tol.rank_cutoff(self.sigma.first().copied().unwrap_or(0.0));
        self.sigma.iter().take_while(|&&s| s > cutoff).count()
    }
}

fn to_faer(a: &CMatrix) -> Mat<Complex64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

fn from_faer(m: faer::MatRef<'_, Complex64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Thin SVD, singular values descending.
pub fn svd(a: &CMatrix) -> Result<SvdResult> {
    ensure_finite(a, "svd input")?;
    let k = a.nrows().min(a.ncols());
    if k == 0 {
        return Ok(SvdResult { u: zeros(a.nrows(), 0), sigma: Vec::new(), v: zeros(a.ncols(), 0) });
    }
    let dec = to_faer(a)
        .thin_svd()
        .map_err(|e| Error::NumericalFailure(format!("SVD did not converge: {e:?}")))?;
    let sigma = dec.S().column_vector().iter().map(|s| s.re).collect();
    Ok(SvdResult { u: from_faer(dec.U()), sigma, v: from_faer(dec.V()) })
}

/// Singular values in descending order.
pub fn singular_values(a: &CMatrix) -> Result<Vec<f64>> {
    ensure_finite(a, "svd input")?;
    if a.is_empty() {
        return Ok(Vec::new());
    }
    let s = to_faer(a)
        .singular_values()
        .map_err(|e| Error::NumericalFailure(format!("SVD did not converge: {e:?}")))?;
    Ok(s)
}

/// Operator (spectral) norm, `σ_max`.
pub fn op_norm(a: &CMatrix) -> Result<f64> {
    Ok(singular_values(a)?.first().copied().unwrap_or(0.0))
}

pub fn is_hermitian(h: &CMatrix, tol: &Tolerance) -> bool {
    h.is_square() && tol.close(h, &h.adjoint())
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
///
/// The input is symmetrized before factoring, so `H ≈ V·diag(λ)·V*` holds
/// up to the Hermitian defect already admitted by `tol`.
pub fn eig_hermitian(h: &CMatrix, tol: &Tolerance) -> Result<(Vec<f64>, CMatrix)> {
    ensure_square(h, "eig_hermitian input")?;
    ensure_finite(h, "eig_hermitian input")?;
    if !is_hermitian(h, tol) {
        return Err(Error::Domain("eig_hermitian: matrix is not Hermitian".into()));
    }
    let sym = (h + h.adjoint()).scale(0.5);
    hermitian_eigen_unchecked(&sym)
}

/// Eigenpairs of an exactly Hermitian matrix, eigenvalues descending.
fn hermitian_eigen_unchecked(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = h.nrows();
    if n == 0 {
        return Ok((Vec::new(), zeros(0, 0)));
    }
    let dec = to_faer(h)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::NumericalFailure(format!("Hermitian eigensolver did not converge: {e:?}")))?;
    // faer returns ascending order
    let values = dec.S().column_vector().iter().rev().map(|s| s.re).collect();
    let u = dec.U();
    let vectors = CMatrix::from_fn(n, n, |r, k| u[(r, n - 1 - k)]);
    Ok((values, vectors))
}

/// Moore–Penrose pseudoinverse with the crate-wide rank cutoff.
pub fn pinv(a: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    let dec = svd(a)?;
    let r = dec.rank(tol);
    let mut out = zeros(a.ncols(), a.nrows());
    for j in 0..r {
        let vj = dec.v.column(j);
        let uj = dec.u.column(j);
        out += (vj * uj.adjoint()).scale(1.0 / dec.sigma[j]);
    }
    Ok(out)
}

/// Square root of a Hermitian PSD matrix.
///
/// Eigenvalues within the rank cutoff of zero (either sign) are set to zero,
/// so roundoff in a kernel is not amplified by the root; anything more
/// negative is a `DomainError`.
pub fn sqrt_psd(h: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    let (vals, vecs) = eig_hermitian(h, tol)?;
    let top = vals.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let cutoff = tol.rank_cutoff(top);
    let mut roots = Vec::with_capacity(vals.len());
    for &v in &vals {
        if v < -cutoff {
            return Err(Error::Domain(format!("sqrt_psd: eigenvalue {v:e} is negative")));
        }
        roots.push(if v <= cutoff { 0.0 } else { v.sqrt() });
    }
    Ok(spectral_apply(&vecs, &roots))
}

/// `V·diag(d)·V*`.
pub fn spectral_apply(v: &CMatrix, d: &[f64]) -> CMatrix {
    let mut vd = v.clone();
    for (j, &x) in d.iter().enumerate() {
        vd.column_mut(j).scale_mut(x);
    }
    vd * v.adjoint()
}

/// The modulus `|T| = (T*T)^{1/2}`, computed from the SVD of `T` as `V·Σ·V*`.
///
/// Numerically preferable to `sqrt_psd(T*T)` when `T` is rank deficient:
/// roundoff in a zero eigenvalue of `T*T` would otherwise be amplified by
/// the square root.
pub fn modulus(t: &CMatrix) -> Result<CMatrix> {
    let dec = svd(t)?;
    let n = t.ncols();
    let k = dec.sigma.len();
    // thin SVD of a wide matrix leaves V with k < n columns; the missing
    // directions are in the kernel and contribute nothing.
    debug_assert_eq!(dec.v.nrows(), n);
    Ok(spectral_apply(&dec.v.columns(0, k).into_owned(), &dec.sigma))
}

/// Orthogonal projector onto `ran(A)`.
pub fn range_projector(a: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    let basis = range_basis(a, tol)?;
    Ok(&basis * basis.adjoint())
}

/// Orthonormal basis of `ran(A)` as columns; zero columns when `A ≈ 0`.
pub fn range_basis(a: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    let dec = svd(a)?;
    let r = dec.rank(tol);
    Ok(dec.u.columns(0, r).into_owned())
}

/// Orthonormal basis of `ker(A)`.
pub fn kernel_basis(a: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    let n = a.ncols();
    // full V needed: pad A with zero rows so the SVD is square or tall.
    let padded = if a.nrows() < n {
        let mut p = zeros(n, n);
        p.view_mut((0, 0), a.shape()).copy_from(a);
        p
    } else {
        a.clone()
    };
    let dec = svd(&padded)?;
    let r = dec.rank(tol);
    Ok(dec.v.columns(r, n - r).into_owned())
}

/// Orthogonal projector onto `ker(A)`, as `I − range_projector(A*)`.
pub fn kernel_projector(a: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    Ok(eye(a.ncols()) - range_projector(&a.adjoint(), tol)?)
}

pub fn rank(a: &CMatrix, tol: &Tolerance) -> Result<usize> {
    Ok(svd(a)?.rank(tol))
}

/// Loewner order test `A ⪯ B` for Hermitian `A`, `B`.
pub fn psd_leq(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<bool> {
    if a.shape() != b.shape() {
        return Err(Error::dims("psd_leq", a.shape(), b.shape()));
    }
    if !is_hermitian(a, tol) || !is_hermitian(b, tol) {
        return Err(Error::Domain("psd_leq: arguments must be Hermitian".into()));
    }
    let diff = b - a;
    let (vals, _) = eig_hermitian(&diff, tol)?;
    let min = vals.last().copied().unwrap_or(0.0);
    Ok(min >= -tol.bound(diff.norm()))
}

/// One group of numerically equal eigenvalues of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenCluster {
    pub value: f64,
    /// Orthonormal eigenbasis of the cluster (columns).
    pub basis: CMatrix,
}

impl EigenCluster {
    pub fn multiplicity(&self) -> usize {
        self.basis.ncols()
    }

    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }
}

/// Groups the spectrum of a Hermitian matrix into clusters.
///
/// Adjacent eigenvalues (in descending order) merge when their gap is within
/// `tol.bound(scale)`, where `scale` is the largest eigenvalue magnitude.
pub fn eigen_clusters(h: &CMatrix, tol: &Tolerance) -> Result<Vec<EigenCluster>> {
    let (vals, vecs) = eig_hermitian(h, tol)?;
    let scale = vals.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let gap = tol.bound(scale);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in vals.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if (vals[*g.last().unwrap()] - v).abs() <= gap => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    Ok(groups
        .into_iter()
        .map(|g| {
            let value = g.iter().map(|&i| vals[i]).sum::<f64>() / g.len() as f64;
            EigenCluster { value, basis: vecs.select_columns(&g) }
        })
        .collect())
}

pub fn is_normal(t: &CMatrix, tol: &Tolerance) -> bool {
    t.is_square() && tol.close(&(t * t.adjoint()), &(t.adjoint() * t))
}

/// Mixing weights for the Hermitian pencil in [`normal_eigen`]; tried in
/// turn until the eigenbasis diagonalizes `T`.
const PENCIL_WEIGHTS: [f64; 4] = [0.618_033_988_749_894_8, 1.324_717_957_244_746, -0.414_213_562_373_095, 2.718_281_828_459_045];

/// Eigenpairs of a normal matrix, with an orthonormal eigenbasis.
///
/// `H = (T+T*)/2` and `K = (T−T*)/(2i)` commute for normal `T`, so an
/// eigenbasis of the Hermitian `H + α·K` diagonalizes `T` unless two distinct
/// eigenvalues collide under `λ ↦ Re λ + α·Im λ`. Each candidate basis is
/// checked and the next `α` tried on failure.
pub fn normal_eigen(t: &CMatrix, tol: &Tolerance) -> Result<(Vec<Complex64>, CMatrix)> {
    let n = ensure_square(t, "normal_eigen input")?;
    ensure_finite(t, "normal_eigen input")?;
    if !is_normal(t, tol) {
        return Err(Error::Domain("matrix is not normal".into()));
    }
    let h = hermitian_part(t);
    let k = (t - t.adjoint()) * c(0.0, -0.5);
    let k = (&k + k.adjoint()).scale(0.5);
    for alpha in PENCIL_WEIGHTS {
        let (_, q) = hermitian_eigen_unchecked(&(&h + k.scale(alpha)))?;
        let mut d = q.adjoint() * t * &q;
        let values: Vec<Complex64> = (0..n).map(|i| d[(i, i)]).collect();
        d.set_diagonal(&nalgebra::DVector::zeros(n));
        if d.norm() <= tol.bound(t.norm()) {
            return Ok((values, q));
        }
    }
    Err(Error::NumericalFailure("could not separate the eigenvalues of a normal matrix".into()))
}

/// Hermitian part `(X + X*)/2`.
pub fn hermitian_part(x: &CMatrix) -> CMatrix {
    (x + x.adjoint()).scale(0.5)
}
