//! C-symmetry predicates and the ten-condition C-normality battery.

use serde::{Deserialize, Serialize};

use crate::antilinear::{AntiLinearMap, Compose, Conjugation};
use crate::error::{Error, Result};
use crate::matrix::{conj, ensure_square, eye, CMatrix};
use crate::numeric::modulus;
use crate::random::{complex_gaussian, seeded};
use crate::tolerance::{Comparison, Tolerance};

/// Number of random unit vectors used by the pointwise norm identities.
const PROBE_VECTORS: usize = 8;
const PROBE_SEED: u64 = 0x00C0_FFEE;

pub(crate) fn check_pair(t: &CMatrix, c: &Conjugation) -> Result<usize> {
    let n = ensure_square(t, "operator")?;
    if c.dim() != n {
        return Err(Error::dims("operator/conjugation", t.shape(), c.matrix().shape()));
    }
    Ok(n)
}

/// `T* = C∘T∘C`.
pub fn is_c_symmetric(t: &CMatrix, c: &Conjugation, tol: &Tolerance) -> Result<bool> {
    check_pair(t, c)?;
    Ok(tol.close(&t.adjoint(), &c.sandwich(t)))
}

/// `C∘T*∘C = −T`.
pub fn is_c_skew(t: &CMatrix, c: &Conjugation, tol: &Tolerance) -> Result<bool> {
    check_pair(t, c)?;
    Ok(tol.close(&c.sandwich(&t.adjoint()), &(-t)))
}

/// `C∘T*T = TT*∘C` as anti-linear maps, i.e. `S·conj(T*T) ≈ TT*·S`.
///
/// This is the cheapest of the equivalent forms and is what the
/// factorization routines use as their C-normality precondition.
pub fn cnormal_condition(t: &CMatrix, c: &Conjugation, tol: &Tolerance) -> Comparison {
    let s = c.matrix();
    let left = s * conj(&(t.adjoint() * t));
    let right = t * t.adjoint() * s;
    Comparison::of(&left, &right, tol)
}

pub fn is_c_normal(t: &CMatrix, c: &Conjugation, tol: &Tolerance) -> Result<bool> {
    check_pair(t, c)?;
    Ok(cnormal_condition(t, c, tol).holds())
}

/// `C|X|C ≈ |X*|`.
fn modulus_condition(x: &CMatrix, c: &Conjugation, tol: &Tolerance) -> Result<Comparison> {
    let left = c.sandwich(&modulus(x)?);
    let right = modulus(&x.adjoint())?;
    Ok(Comparison::of(&left, &right, tol))
}

/// Outcome of the ten equivalent C-normality conditions.
///
/// Residuals are Frobenius norms of the defining differences (for the
/// pointwise norm identities, of the equivalent Gram-matrix identity).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CNormalReport {
    pub conditions: [bool; 10],
    pub residuals: [f64; 10],
    pub verdict: bool,
}

impl CNormalReport {
    /// All ten conditions agree.
    pub fn coherent(&self) -> bool {
        self.conditions.iter().all(|&b| b == self.conditions[0])
    }

    /// Indices (1-based) of conditions that disagree with the verdict.
    pub fn disagreements(&self) -> Vec<usize> {
        (0..10).filter(|&i| self.conditions[i] != self.verdict).map(|i| i + 1).collect()
    }
}

/// `‖T·C·x‖² = ‖T*·x‖²` pointwise on `probes`, certified by the Gram form
/// `conj(S*·T*T·S) ≈ TT*`. Returns the Gram comparison and whether every
/// probe passed.
fn norm_identity(
    left_op: &CMatrix,
    right_op: &CMatrix,
    c: &Conjugation,
    probes: &CMatrix,
    tol: &Tolerance,
) -> (Comparison, bool) {
    // ‖left_op·C·x‖ vs ‖right_op·x‖
    let s = c.matrix();
    let lc = left_op * s;
    let scale = left_op.norm().powi(2).max(right_op.norm().powi(2));
    let pointwise = (0..probes.ncols()).all(|k| {
        let x = probes.columns(k, 1).into_owned();
        let a = (&lc * conj(&x)).norm_squared();
        let b = (right_op * &x).norm_squared();
        (a - b).abs() <= tol.bound(scale)
    });
    let gram_left = conj(&(lc.adjoint() * &lc));
    let gram_right = right_op.adjoint() * right_op;
    (Comparison::of(&gram_left, &gram_right, tol), pointwise)
}

fn probe_vectors(n: usize) -> CMatrix {
    let mut rng = seeded(PROBE_SEED ^ n as u64);
    let mut probes = CMatrix::zeros(n, n + PROBE_VECTORS);
    probes.view_mut((0, 0), (n, n)).copy_from(&eye(n));
    for k in 0..PROBE_VECTORS {
        let mut v = complex_gaussian(n, 1, &mut rng);
        let norm = v.norm();
        v /= num_complex::Complex64::new(norm.max(f64::MIN_POSITIVE), 0.0);
        probes.set_column(n + k, &v.column(0));
    }
    probes
}

/// Evaluates every condition of the C-normality characterization:
///
/// 1. `C|T|C = |T*|`
/// 2. `T*` is C-normal
/// 3. `C∘T∘C` is C-normal
/// 4. `C∘T*∘C` is C-normal
/// 5. `C∘T*T = TT*∘C`
/// 6. `C∘T` is anti-linearly normal
/// 7. `‖TCx‖ = ‖T*x‖` for all `x`
/// 8. `‖T*Cx‖ = ‖Tx‖` for all `x`
/// 9. `½(CT + T*C)` and `½(CT − T*C)` commute
/// 10. `½(TC + CT*)` and `½(TC − CT*)` commute
///
/// Conditions 2–4 are evaluated through form 1 on the transformed operator.
pub fn is_c_normal_battery(t: &CMatrix, c: &Conjugation, tol: &Tolerance) -> Result<CNormalReport> {
    let n = check_pair(t, c)?;
    let tstar = t.adjoint();
    let mut cmp = Vec::with_capacity(10);

    cmp.push(modulus_condition(t, c, tol)?);
    cmp.push(modulus_condition(&tstar, c, tol)?);
    cmp.push(modulus_condition(&c.sandwich(t), c, tol)?);
    cmp.push(modulus_condition(&c.sandwich(&tstar), c, tol)?);
    cmp.push(cnormal_condition(t, c, tol));
    cmp.push(c.after(t).normality_residual(tol));

    let probes = probe_vectors(n);
    let (c7, p7) = norm_identity(t, &tstar, c, &probes, tol);
    let (c8, p8) = norm_identity(&tstar, t, c, &probes, tol);
    cmp.push(c7);
    cmp.push(c8);

    let ct = c.after(t);
    let tsc = c.before(&tstar);
    let plus = anti_half_sum(ct.matrix(), tsc.matrix(), 1.0);
    let minus = anti_half_sum(ct.matrix(), tsc.matrix(), -1.0);
    cmp.push(anti_commutator(&plus, &minus, tol)?);

    let tc = c.before(t);
    let cts = c.after(&tstar);
    let plus = anti_half_sum(tc.matrix(), cts.matrix(), 1.0);
    let minus = anti_half_sum(tc.matrix(), cts.matrix(), -1.0);
    cmp.push(anti_commutator(&plus, &minus, tol)?);

    let mut conditions = [false; 10];
    let mut residuals = [0.0; 10];
    for (i, c) in cmp.iter().enumerate() {
        conditions[i] = c.holds();
        residuals[i] = c.residual;
    }
    conditions[6] &= p7;
    conditions[7] &= p8;
    Ok(CNormalReport { conditions, residuals, verdict: conditions[0] })
}

fn anti_half_sum(x: &CMatrix, y: &CMatrix, sign: f64) -> AntiLinearMap {
    AntiLinearMap::from_matrix((x + y * num_complex::Complex64::new(sign, 0.0)).scale(0.5))
}

fn anti_commutator(
    x: &AntiLinearMap,
    y: &AntiLinearMap,
    tol: &Tolerance,
) -> Result<Comparison> {
    Ok(Comparison::of(&x.compose(y)?, &y.compose(x)?, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, diag, from_real, I};
    use crate::random::{cjp_instance, CjpOptions};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn n2() -> CMatrix {
        from_real(2, 2, &[0.0, 1.0, 0.0, 0.0])
    }

    #[test]
    fn c_symmetric_examples() {
        let t = tol();
        let m = crate::matrix::from_rows(2, 2, &[c(1.0, 2.0), c(3.0, -1.0), c(3.0, -1.0), c(0.5, 0.0)]);
        assert!(is_c_symmetric(&m, &Conjugation::canonical(2), &t).unwrap());
        assert!(is_c_symmetric(&n2(), &Conjugation::flip(2), &t).unwrap());
        assert!(!is_c_symmetric(&n2(), &Conjugation::canonical(2), &t).unwrap());
        assert!(is_c_symmetric(&n2(), &Conjugation::flip(3), &t).is_err());
    }

    #[test]
    fn self_commutator_of_cnormal_is_c_skew() {
        let t = tol();
        let mut rng = seeded(3);
        for _ in 0..10 {
            let inst = cjp_instance(4, CjpOptions::default(), &mut rng);
            let s1 = inst.t.adjoint() * &inst.t - &inst.t * inst.t.adjoint();
            assert!(is_c_skew(&s1, &inst.conj, &t).unwrap());
            let s2 = inst.t.adjoint() * &inst.t + &inst.t * inst.t.adjoint();
            assert!(is_c_symmetric(&s2, &inst.conj, &t).unwrap());
        }
    }

    #[test]
    fn battery_examples() {
        let t = tol();
        let d = diag(&[c(1.0, 0.0), I]);
        let r = is_c_normal_battery(&d, &Conjugation::canonical(2), &t).unwrap();
        assert!(r.verdict && r.coherent());

        let r = is_c_normal_battery(&n2(), &Conjugation::canonical(2), &t).unwrap();
        assert!(!r.verdict && r.coherent(), "{r:?}");

        let r = is_c_normal_battery(&n2(), &Conjugation::flip(2), &t).unwrap();
        assert!(r.verdict && r.coherent(), "{r:?}");
        assert!(r.disagreements().is_empty());
    }

    #[test]
    fn battery_coherent_on_square_zero() {
        let t = tol();
        let mut rng = seeded(4);
        let n = 4;
        // rank-2 T with T² = 0: T = X·Y* with Y* X = 0
        let u = crate::random::haar_unitary(n, &mut rng);
        let x = u.columns(0, 2).into_owned();
        let y = u.columns(2, 2).into_owned();
        let tm = &x * complex_gaussian(2, 2, &mut rng) * y.adjoint();
        assert!((&tm * &tm).norm() < 1e-12);
        let r = is_c_normal_battery(&tm, &Conjugation::random(n, &mut rng), &t).unwrap();
        assert!(r.coherent());
    }

    #[test]
    fn battery_coherent_on_random_instances() {
        let t = tol();
        let mut rng = seeded(99);
        for trial in 0..60 {
            let n = 2 + trial % 6;
            let inst = cjp_instance(n, CjpOptions::default(), &mut rng);
            let r = is_c_normal_battery(&inst.t, &inst.conj, &t).unwrap();
            assert!(r.verdict && r.coherent(), "{r:?}");
            let g = complex_gaussian(n, n, &mut rng);
            let r = is_c_normal_battery(&g, &inst.conj, &t).unwrap();
            assert!(!r.verdict && r.coherent(), "{r:?}");
        }
    }

    #[test]
    fn report_json_shape() {
        let r = is_c_normal_battery(&n2(), &Conjugation::flip(2), &tol()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["conditions"].as_array().unwrap().len(), 10);
        assert_eq!(v["residuals"].as_array().unwrap().len(), 10);
        assert_eq!(v["verdict"], serde_json::json!(true));
    }
}
