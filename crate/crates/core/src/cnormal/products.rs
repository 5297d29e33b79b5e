use crate::antilinear::Conjugation;
use crate::matrix::CMatrix;
use crate::numeric::is_normal;
use crate::tolerance::Tolerance;

#[derive(Debug, Clone)]
pub struct LeftRightProducts {
    /// `C∘T∘C∘T`.
    pub left: CMatrix,
    /// `T∘C∘T∘C`.
    pub right: CMatrix,
    pub both_normal: bool,
}

/// `T_L = (CTC)·T` and `T_R = T·(CTC)`; both are normal when `T` is C-normal.
pub fn left_right_products(t: &CMatrix, c: &Conjugation, tol: &Tolerance) -> LeftRightProducts {
    let ctc = c.sandwich(t);
    let left = &ctc * t;
    let right = t * &ctc;
    let both_normal = is_normal(&left, tol) && is_normal(&right, tol);
    LeftRightProducts { left, right, both_normal }
}

/// `(T*T − TT*, T*T + TT*)`.
pub fn symmetrizations(t: &CMatrix) -> (CMatrix, CMatrix) {
    let a = t.adjoint() * t;
    let b = t * t.adjoint();
    (&a - &b, a + b)
}
