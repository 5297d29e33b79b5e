//! The C-Cartesian decomposition `T = A + iB` with `A` C-symmetric and `B`
//! C-skew-symmetric.

use serde::{Deserialize, Serialize};

use crate::antilinear::Conjugation;
use crate::error::Result;
use crate::matrix::{c, commutator, CMatrix};
use crate::numeric::op_norm;
use crate::tolerance::{Check, Comparison, Tolerance};

use super::battery::{check_pair, cnormal_condition};

#[derive(Debug, Clone, PartialEq)]
pub struct CartesianPair {
    /// C-symmetric part.
    pub a: CMatrix,
    /// C-skew-symmetric part.
    pub b: CMatrix,
}

impl CartesianPair {
    /// `A + iB`.
    pub fn recombine(&self) -> CMatrix {
        &self.a + &self.b * c(0.0, 1.0)
    }
}

/// `A = (T + CT*C)/2`, `B = (T − CT*C)/(2i)`.
pub fn cartesian_decompose(t: &CMatrix, conj: &Conjugation) -> Result<CartesianPair> {
    check_pair(t, conj)?;
    let ctc = conj.sandwich(&t.adjoint());
    let a = (t + &ctc).scale(0.5);
    let b = (t - &ctc) * c(0.0, -0.5);
    Ok(CartesianPair { a, b })
}

/// The four equivalent conditions on the Cartesian pair, plus the
/// consequences that hold when they do.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CartesianReport {
    pub c_normal: bool,
    /// `‖Tx‖² = ‖Ax‖² + ‖Bx‖²`, i.e. `T*T = A*A + B*B`.
    pub norm_identity: bool,
    /// `A*B = B*A`.
    pub adj_commute_1: bool,
    /// `AB* = BA*`.
    pub adj_commute_2: bool,
    /// Every condition and consequence with its residual.
    pub checks: Vec<Check>,
}

impl CartesianReport {
    /// The four equivalent conditions agree.
    pub fn coherent(&self) -> bool {
        let v = [self.c_normal, self.norm_identity, self.adj_commute_1, self.adj_commute_2];
        v.iter().all(|&b| b == v[0])
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// All checks, conditions and consequences alike, pass.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn cartesian_equivalences(t: &CMatrix, conj: &Conjugation, tol: &Tolerance) -> Result<CartesianReport> {
    let pair = cartesian_decompose(t, conj)?;
    let (a, b) = (&pair.a, &pair.b);
    let (aa, bb) = (a.adjoint() * a, b.adjoint() * b);

    let c_normal = cnormal_condition(t, conj, tol);
    let norm_identity = Comparison::of(&(t.adjoint() * t), &(&aa + &bb), tol);
    let adj1 = Comparison::of(&(a.adjoint() * b), &(b.adjoint() * a), tol);
    let adj2 = Comparison::of(&(a * b.adjoint()), &(b * a.adjoint()), tol);

    let co_gram = Comparison::of(&(t * t.adjoint()), &(a * a.adjoint() + b * b.adjoint()), tol);
    let gram_scale = aa.norm() * bb.norm();
    let gram_commute = Comparison::with_scale(&commutator(&aa, &bb), &CMatrix::zeros(aa.nrows(), aa.ncols()), gram_scale, tol);

    let (na, nb, nt) = (op_norm(a)?.powi(2), op_norm(b)?.powi(2), op_norm(t)?.powi(2));
    let lower = Comparison::at_most(na.max(nb), nt, nt, tol);
    let upper = Comparison::at_most(nt, na + nb, nt, tol);

    let checks = vec![
        Check::new("c_normal", c_normal),
        Check::new("norm_identity", norm_identity),
        Check::new("adj_commute_1", adj1),
        Check::new("adj_commute_2", adj2),
        Check::new("co_gram", co_gram),
        Check::new("gram_commute", gram_commute),
        Check::new("norm_lower", lower),
        Check::new("norm_upper", upper),
    ];
    Ok(CartesianReport {
        c_normal: c_normal.holds(),
        norm_identity: norm_identity.holds(),
        adj_commute_1: adj1.holds(),
        adj_commute_2: adj2.holds(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnormal::battery::{is_c_skew, is_c_symmetric};
    use crate::matrix::{from_real, zeros};
    use crate::random::{cjp_instance, complex_gaussian, seeded, CjpOptions};

    fn n2() -> CMatrix {
        from_real(2, 2, &[0.0, 1.0, 0.0, 0.0])
    }

    #[test]
    fn decomposition_examples() {
        let t = Tolerance::default();
        let p = cartesian_decompose(&n2(), &Conjugation::flip(2)).unwrap();
        assert!(t.close(&p.a, &n2()));
        assert!(t.is_zero(&p.b, 1.0));

        let h = from_real(2, 2, &[2.0, -1.0, -1.0, 3.0]);
        let p = cartesian_decompose(&h, &Conjugation::canonical(2)).unwrap();
        assert!(t.close(&p.a, &h));
        assert!(t.is_zero(&p.b, 1.0));

        // i·M with M real skew-symmetric is C-skew for the canonical C
        let m = from_real(2, 2, &[0.0, 4.0, -4.0, 0.0]);
        let p = cartesian_decompose(&(&m * c(0.0, 1.0)), &Conjugation::canonical(2)).unwrap();
        assert!(t.is_zero(&p.a, 1.0));
        assert!(t.close(&p.b, &m));

        // i·M with M real symmetric is complex symmetric, hence C-symmetric
        let m = from_real(2, 2, &[1.0, 4.0, 4.0, -2.0]);
        let im = &m * c(0.0, 1.0);
        let p = cartesian_decompose(&im, &Conjugation::canonical(2)).unwrap();
        assert!(t.close(&p.a, &im));
        assert!(t.is_zero(&p.b, 1.0));
    }

    #[test]
    fn parts_have_their_symmetry() {
        let t = Tolerance::default();
        let mut rng = seeded(31);
        for n in 1..7 {
            let x = complex_gaussian(n, n, &mut rng);
            let conj = Conjugation::random(n, &mut rng);
            let p = cartesian_decompose(&x, &conj).unwrap();
            assert!(t.close(&p.recombine(), &x));
            assert!(is_c_symmetric(&p.a, &conj, &t).unwrap());
            assert!(is_c_skew(&p.b, &conj, &t).unwrap());
        }
    }

    #[test]
    fn equivalence_examples() {
        let t = Tolerance::default();
        let r = cartesian_equivalences(&n2(), &Conjugation::canonical(2), &t).unwrap();
        assert!(!r.c_normal && r.coherent(), "{r:?}");

        let r = cartesian_equivalences(&n2(), &Conjugation::flip(2), &t).unwrap();
        assert!(r.c_normal && r.coherent() && r.all_passed());

        let r = cartesian_equivalences(&zeros(3, 3), &Conjugation::canonical(3), &t).unwrap();
        assert!(r.all_passed());
    }

    #[test]
    fn cnormal_instances_satisfy_consequences() {
        let t = Tolerance::default();
        let mut rng = seeded(32);
        for trial in 0..50 {
            let inst = cjp_instance(2 + trial % 7, CjpOptions::default(), &mut rng);
            let r = cartesian_equivalences(&inst.t, &inst.conj, &t).unwrap();
            assert!(r.all_passed(), "{r:?}");
            let g = complex_gaussian(inst.t.nrows(), inst.t.nrows(), &mut rng);
            let r = cartesian_equivalences(&g, &inst.conj, &t).unwrap();
            assert!(!r.c_normal && r.coherent(), "{r:?}");
        }
    }
}
