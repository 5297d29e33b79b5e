//! Anti-linear maps and conjugations.
//!
//! An anti-linear map is stored as the matrix `M` of `x ↦ M·conj(x)`. Under
//! this encoding the anti-linear adjoint `X♯` (defined by
//! `⟨Xx, y⟩ = ⟨X♯y, x⟩`) is the plain transpose `Mᵀ`, and compositions reduce
//! to products:
//!
//! | left ∘ right          | result      | matrix           |
//! |-----------------------|-------------|------------------|
//! | linear A ∘ linear B   | linear      | `A·B`            |
//! | linear A ∘ anti M     | anti-linear | `A·M`            |
//! | anti M ∘ linear A     | anti-linear | `M·conj(A)`      |
//! | anti M₁ ∘ anti M₂     | linear      | `M₁·conj(M₂)`    |
//!
//! Linear maps are plain [`CMatrix`] values; the [`Compose`] trait picks the
//! right rule from the operand types.

use rand::Rng;

use crate::error::{Error, Result};
use crate::json::{MapKind, MatrixJson};
use crate::matrix::{conj, ensure_finite, ensure_square, exchange, eye, CMatrix};
use crate::numeric::{kernel_projector, range_projector};
use crate::random;
use crate::tolerance::{Comparison, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct AntiLinearMap {
    mat: CMatrix,
}

impl AntiLinearMap {
    pub fn new(mat: CMatrix) -> Result<Self> {
        ensure_square(&mat, "anti-linear map")?;
        ensure_finite(&mat, "anti-linear map")?;
        Ok(Self { mat })
    }

    pub(crate) fn from_matrix(mat: CMatrix) -> Self {
        debug_assert!(mat.is_square());
        Self { mat }
    }

    pub fn zero(n: usize) -> Self {
        Self { mat: CMatrix::zeros(n, n) }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// `x ↦ M·conj(x)`; `x` may hold several column vectors.
    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.nrows() != self.dim() {
            return Err(Error::dims("apply", self.mat.shape(), x.shape()));
        }
        Ok(&self.mat * conj(x))
    }

    /// The anti-linear adjoint `X♯`, i.e. the transpose of the encoding.
    pub fn sharp_adjoint(&self) -> Self {
        Self { mat: self.mat.transpose() }
    }

    /// `X♯∘X ≈ X∘X♯`.
    pub fn is_antilinear_normal(&self, tol: &Tolerance) -> bool {
        self.normality_residual(tol).holds()
    }

    pub(crate) fn normality_residual(&self, tol: &Tolerance) -> Comparison {
        let adj = self.sharp_adjoint();
        let left = compose_anti(&adj, self);
        let right = compose_anti(self, &adj);
        Comparison::of(&left, &right, tol)
    }

    /// Projector onto `ker X = conj(ker M)`.
    pub fn kernel_projector(&self, tol: &Tolerance) -> Result<CMatrix> {
        Ok(conj(&kernel_projector(&self.mat, tol)?))
    }

    /// Projector onto `ran X = ran M`.
    pub fn range_projector(&self, tol: &Tolerance) -> Result<CMatrix> {
        range_projector(&self.mat, tol)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson::from_matrix(&self.mat).with_kind(MapKind::Antilinear)
    }
}

/// Composition `left ∘ right` with the result type fixed by linearity.
pub trait Compose<Rhs> {
    type Output;
    fn compose(&self, right: &Rhs) -> Result<Self::Output>;
}

fn check_dims(left: &CMatrix, right: &CMatrix) -> Result<()> {
    if left.ncols() != right.nrows() {
        return Err(Error::dims("compose", left.shape(), right.shape()));
    }
    Ok(())
}

impl Compose<CMatrix> for CMatrix {
    type Output = CMatrix;
    fn compose(&self, right: &CMatrix) -> Result<CMatrix> {
        check_dims(self, right)?;
        Ok(self * right)
    }
}

impl Compose<AntiLinearMap> for CMatrix {
    type Output = AntiLinearMap;
    fn compose(&self, right: &AntiLinearMap) -> Result<AntiLinearMap> {
        check_dims(self, &right.mat)?;
        if !self.is_square() {
            return Err(Error::Domain("compose: linear factor must be square".into()));
        }
        Ok(AntiLinearMap { mat: self * &right.mat })
    }
}

impl Compose<CMatrix> for AntiLinearMap {
    type Output = AntiLinearMap;
    fn compose(&self, right: &CMatrix) -> Result<AntiLinearMap> {
        check_dims(&self.mat, right)?;
        if !right.is_square() {
            return Err(Error::Domain("compose: linear factor must be square".into()));
        }
        Ok(AntiLinearMap { mat: &self.mat * conj(right) })
    }
}

impl Compose<AntiLinearMap> for AntiLinearMap {
    type Output = CMatrix;
    fn compose(&self, right: &AntiLinearMap) -> Result<CMatrix> {
        check_dims(&self.mat, &right.mat)?;
        Ok(compose_anti(self, right))
    }
}

fn compose_anti(left: &AntiLinearMap, right: &AntiLinearMap) -> CMatrix {
    &left.mat * conj(&right.mat)
}

/// An anti-linear isometric involution, encoded by a symmetric unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Conjugation {
    map: AntiLinearMap,
}

impl std::ops::Deref for Conjugation {
    type Target = AntiLinearMap;
    fn deref(&self) -> &AntiLinearMap {
        &self.map
    }
}

impl Conjugation {
    /// Validates that `s` is unitary and symmetric within `tol`.
    pub fn new(s: CMatrix, tol: &Tolerance) -> Result<Self> {
        let n = ensure_square(&s, "conjugation").map_err(|e| Error::InvalidConjugation(e.to_string()))?;
        ensure_finite(&s, "conjugation").map_err(|e| Error::InvalidConjugation(e.to_string()))?;
        if !tol.close(&(&s * s.adjoint()), &eye(n)) {
            return Err(Error::InvalidConjugation("matrix is not unitary".into()));
        }
        if !tol.close(&s, &s.transpose()) {
            return Err(Error::InvalidConjugation("matrix is not symmetric".into()));
        }
        Ok(Self { map: AntiLinearMap { mat: s } })
    }

    /// Componentwise complex conjugation, `S = I`.
    pub fn canonical(n: usize) -> Self {
        Self { map: AntiLinearMap { mat: eye(n) } }
    }

    /// `(z₁,…,zₙ) ↦ (z̄ₙ,…,z̄₁)`, `S` the exchange matrix.
    pub fn flip(n: usize) -> Self {
        Self { map: AntiLinearMap { mat: exchange(n) } }
    }

    /// `S = U·Uᵀ` with `U` Haar-distributed.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        assert!(n >= 1, "conjugation dimension must be positive");
        let u = random::haar_unitary(n, rng);
        let s = &u * u.transpose();
        // exact symmetry; unitarity holds to roundoff
        let s = (&s + s.transpose()).scale(0.5);
        Self { map: AntiLinearMap { mat: s } }
    }

    pub(crate) fn from_matrix_unchecked(s: CMatrix) -> Self {
        Self { map: AntiLinearMap { mat: s } }
    }

    pub fn as_map(&self) -> &AntiLinearMap {
        &self.map
    }

    /// Linear `C∘T∘C`, matrix `S·conj(T)·conj(S)`.
    pub fn sandwich(&self, t: &CMatrix) -> CMatrix {
        let s = &self.map.mat;
        s * conj(t) * conj(s)
    }

    /// Anti-linear `C∘T` (C applied after T), matrix `S·conj(T)`.
    pub fn after(&self, t: &CMatrix) -> AntiLinearMap {
        AntiLinearMap { mat: &self.map.mat * conj(t) }
    }

    /// Anti-linear `T∘C` (C applied before T), matrix `T·S`.
    pub fn before(&self, t: &CMatrix) -> AntiLinearMap {
        AntiLinearMap { mat: t * &self.map.mat }
    }

    /// Compression to the subspace spanned by the orthonormal columns of `q`:
    /// `q*·S·conj(q)`. It is a conjugation when `C` leaves `ran q` invariant.
    pub fn compress(&self, q: &CMatrix) -> CMatrix {
        q.adjoint() * &self.map.mat * conj(q)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson::from_matrix(&self.map.mat).with_kind(MapKind::Conjugation)
    }
}

/// Anti-linear partial isometry together with its initial and final spaces.
#[derive(Debug, Clone)]
pub struct PartialAntiIsometry {
    pub map: AntiLinearMap,
    /// Projector onto `(ker J)^⊥`.
    pub initial_projector: CMatrix,
    /// Projector onto `ran J`.
    pub final_projector: CMatrix,
}

impl PartialAntiIsometry {
    pub fn from_map(map: AntiLinearMap, tol: &Tolerance) -> Result<Self> {
        let n = map.dim();
        let initial_projector = eye(n) - map.kernel_projector(tol)?;
        let final_projector = map.range_projector(tol)?;
        Ok(Self { map, initial_projector, final_projector })
    }

    /// `J` is isometric on its initial space iff its matrix is a linear
    /// partial isometry, `M·M*·M ≈ M`.
    pub fn isometry_residual(&self, tol: &Tolerance) -> Comparison {
        let m = self.map.matrix();
        Comparison::of(&(m * m.adjoint() * m), m, tol)
    }

    pub fn is_partial_isometry(&self, tol: &Tolerance) -> bool {
        self.isometry_residual(tol).holds()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, from_real, from_rows, inner, zeros, I};
    use crate::random::{complex_gaussian, seeded};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn col(v: &[num_complex::Complex64]) -> CMatrix {
        from_rows(v.len(), 1, v)
    }

    #[test]
    fn apply_examples() {
        let k = Conjugation::canonical(2);
        assert_eq!(k.apply(&col(&[c(1.0, 0.0), I])).unwrap(), col(&[c(1.0, 0.0), -I]));
        let f = Conjugation::flip(2);
        let x = col(&[c(1.0, 0.0), c(0.0, 2.0)]);
        assert_eq!(f.apply(&x).unwrap(), col(&[c(0.0, -2.0), c(1.0, 0.0)]));
        assert_eq!(AntiLinearMap::zero(2).apply(&x).unwrap(), zeros(2, 1));
        assert!(matches!(k.apply(&zeros(3, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn apply_is_antilinear() {
        let mut rng = seeded(3);
        let m = AntiLinearMap::new(complex_gaussian(3, 3, &mut rng)).unwrap();
        let x = complex_gaussian(3, 1, &mut rng);
        let y = complex_gaussian(3, 1, &mut rng);
        let alpha = c(0.3, -1.7);
        let lhs = m.apply(&(x.scale(1.0) * alpha + &y)).unwrap();
        let rhs = m.apply(&x).unwrap() * alpha.conj() + m.apply(&y).unwrap();
        assert!(tol().close(&lhs, &rhs));
    }

    #[test]
    fn sharp_adjoint_examples() {
        assert_eq!(AntiLinearMap::new(eye(2)).unwrap().sharp_adjoint().matrix(), &eye(2));
        let n2 = AntiLinearMap::new(from_real(2, 2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        let adj = n2.sharp_adjoint();
        assert_eq!(adj.matrix(), &from_real(2, 2, &[0.0, 0.0, 1.0, 0.0]));
        // ⟨Xx, y⟩ = ⟨X♯y, x⟩ on the standard basis
        for i in 0..2 {
            for j in 0..2 {
                let mut x = zeros(2, 1);
                x[(i, 0)] = c(1.0, 0.0);
                let mut y = zeros(2, 1);
                y[(j, 0)] = c(1.0, 0.0);
                let l = inner(&n2.apply(&x).unwrap(), &y);
                let r = inner(&adj.apply(&y).unwrap(), &x);
                assert_eq!(l, r);
            }
        }
        let mut rng = seeded(11);
        let s = Conjugation::random(4, &mut rng);
        assert!(tol().close(s.sharp_adjoint().matrix(), s.matrix()));
    }

    #[test]
    fn compose_examples() {
        let mut rng = seeded(5);
        let s = Conjugation::random(3, &mut rng);
        let cc = s.as_map().compose(s.as_map()).unwrap();
        assert!(tol().close(&cc, &eye(3)));

        let f = Conjugation::flip(2);
        let n2 = from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let fn2 = f.as_map().compose(&n2).unwrap();
        assert_eq!(fn2.matrix(), &from_real(2, 2, &[0.0, 0.0, 0.0, 1.0]));

        let ic = eye(3).compose(s.as_map()).unwrap();
        assert_eq!(ic.matrix(), s.matrix());

        assert!(eye(2).compose(s.as_map()).is_err());
        assert!(eye(2).compose(&eye(3)).is_err());
    }

    #[test]
    fn make_conjugation_examples() {
        assert!(Conjugation::new(eye(3), &tol()).is_ok());
        let f = Conjugation::new(exchange(4), &tol()).unwrap();
        assert_eq!(f, Conjugation::flip(4));
        let n2 = from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(Conjugation::new(n2, &tol()), Err(Error::InvalidConjugation(_))));
        // unitary but not symmetric
        let rot = from_real(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        assert!(matches!(Conjugation::new(rot, &tol()), Err(Error::InvalidConjugation(_))));
        assert!(Conjugation::new(zeros(2, 3), &tol()).is_err());
    }

    #[test]
    fn random_conjugation_contract() {
        let one = Conjugation::random(1, &mut seeded(9));
        assert!((one.matrix()[(0, 0)].norm() - 1.0).abs() < 1e-14);
        for n in 1..8 {
            let s = Conjugation::random(n, &mut seeded(n as u64));
            assert!(Conjugation::new(s.matrix().clone(), &tol()).is_ok());
        }
        let a = Conjugation::random(5, &mut seeded(42));
        let b = Conjugation::random(5, &mut seeded(42));
        assert_eq!(a, b);
    }

    #[test]
    fn antilinear_normal_examples() {
        let mut rng = seeded(1);
        assert!(Conjugation::random(4, &mut rng).is_antilinear_normal(&tol()));
        let m = AntiLinearMap::new(from_real(2, 2, &[0.0, 2.0, 0.0, 0.0])).unwrap();
        assert!(!m.is_antilinear_normal(&tol()));
        let d = AntiLinearMap::new(from_real(2, 2, &[1.0, 0.0, 0.0, 2.0])).unwrap();
        assert!(d.is_antilinear_normal(&tol()));
    }

    #[test]
    fn conjugation_is_isometric_involution() {
        let mut rng = seeded(21);
        for n in 1..6 {
            let s = Conjugation::random(n, &mut rng);
            let x = complex_gaussian(n, 1, &mut rng);
            let y = complex_gaussian(n, 1, &mut rng);
            let l = inner(&s.apply(&x).unwrap(), &s.apply(&y).unwrap());
            let r = inner(&y, &x);
            assert!((l - r).norm() < 1e-12 * (1.0 + r.norm()));
            assert!(tol().close(&s.apply(&s.apply(&x).unwrap()).unwrap(), &x));
        }
    }

    #[test]
    fn partial_anti_isometry_spaces() {
        let j = AntiLinearMap::new(from_real(2, 2, &[0.0, 0.0, 0.0, 1.0])).unwrap();
        let p = PartialAntiIsometry::from_map(j, &tol()).unwrap();
        assert!(p.is_partial_isometry(&tol()));
        assert!(tol().close(&p.initial_projector, &from_real(2, 2, &[0.0, 0.0, 0.0, 1.0])));
        let not = AntiLinearMap::new(from_real(2, 2, &[2.0, 0.0, 0.0, 1.0])).unwrap();
        assert!(!PartialAntiIsometry::from_map(not, &tol()).unwrap().is_partial_isometry(&tol()));
    }
}
