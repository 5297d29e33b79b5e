//! Spectral structure of C-skew normal operators, the commutation of `C`
//! and `C∘T` with spectral projectors, and the block form of a conjugation
//! commuting with a positive operator.

use serde::{Deserialize, Serialize};

use crate::antilinear::Conjugation;
use crate::error::{Error, Result};
use crate::matrix::{block_diag, c, conj, ensure_square, CMatrix};
use crate::numeric::{eigen_clusters, is_normal, normal_eigen, op_norm};
use crate::tolerance::{Check, Comparison, Tolerance};
use crate::Complex64;

use super::battery::{check_pair, cnormal_condition};

/// `W*·T·W ≈ T₁ ⊕ (−T₁*) ⊕ (i·T₃)` for a normal `T` with `C∘T∘C = −T`.
#[derive(Debug, Clone)]
pub struct SkewStructure {
    pub unitary: CMatrix,
    pub block_plus: CMatrix,
    /// `W₂*·T·W₂`, which equals `−T₁*`.
    pub block_minus: CMatrix,
    /// Hermitian.
    pub block_imag: CMatrix,
    pub partition: SkewPartition,
    /// `‖W*TW − (T₁ ⊕ (−T₁*) ⊕ iT₃)‖_F`.
    pub reconstruction: Check,
    /// `‖Π₋·C·W₁ − C·W₁‖_F`: `C` carries the `Re λ > 0` eigenspace into the
    /// `Re λ < 0` one.
    pub swap: Check,
    /// `‖T₃ − T₃*‖_F`.
    pub hermitian: Check,
}

/// Eigenvalues split by the sign of their real part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkewPartition {
    pub positive: Vec<Complex64>,
    pub negative: Vec<Complex64>,
    /// `|Re λ| ≤ τ`.
    pub imaginary: Vec<Complex64>,
    pub cutoff: f64,
}

impl SkewStructure {
    pub fn passed(&self) -> bool {
        self.reconstruction.passed && self.swap.passed && self.hermitian.passed
    }
}

pub fn skew_structure(t: &CMatrix, conj_map: &Conjugation, tol: &Tolerance) -> Result<SkewStructure> {
    let n = check_pair(t, conj_map)?;
    if !is_normal(t, tol) {
        return Err(Error::Domain("skew_structure: T is not normal".into()));
    }
    if !tol.close(&conj_map.sandwich(t), &-t) {
        return Err(Error::Domain("skew_structure: C∘T∘C ≠ −T".into()));
    }
    let (values, q) = normal_eigen(t, tol)?;
    let tau = tol.bound(op_norm(t)?);
    let pick = |f: &dyn Fn(f64) -> bool| -> Vec<usize> { (0..n).filter(|&i| f(values[i].re)).collect() };
    let pos = pick(&|re| re > tau);
    let neg = pick(&|re| re < -tau);
    let mid = pick(&|re| re.abs() <= tau);
    if pos.len() != neg.len() {
        return Err(Error::Domain(format!(
            "skew_structure: {} eigenvalues with Re λ > 0 but {} with Re λ < 0",
            pos.len(),
            neg.len()
        )));
    }
    pair_spectrum(&pos, &neg, &values, tau)?;

    let w1 = q.select_columns(&pos);
    let w2 = conj_map.matrix() * conj(&w1);
    let w3 = q.select_columns(&mid);
    let q_neg = q.select_columns(&neg);
    let swap = Comparison::with_scale(&(&q_neg * (q_neg.adjoint() * &w2)), &w2, w2.norm(), tol);

    let mut w = CMatrix::zeros(n, n);
    w.columns_mut(0, pos.len()).copy_from(&w1);
    w.columns_mut(pos.len(), neg.len()).copy_from(&w2);
    w.columns_mut(2 * pos.len(), mid.len()).copy_from(&w3);

    let block_plus = w1.adjoint() * t * &w1;
    let block_minus = w2.adjoint() * t * &w2;
    let block_imag = (w3.adjoint() * t * &w3) * c(0.0, -1.0);
    let hermitian = Comparison::of(&block_imag, &block_imag.adjoint(), tol);

    let model = block_diag(&[&block_plus, &-block_plus.adjoint(), &(&block_imag * c(0.0, 1.0))]);
    let reconstruction = Comparison::with_scale(&(w.adjoint() * t * &w), &model, t.norm(), tol);

    let partition = SkewPartition {
        positive: pos.iter().map(|&i| values[i]).collect(),
        negative: neg.iter().map(|&i| values[i]).collect(),
        imaginary: mid.iter().map(|&i| values[i]).collect(),
        cutoff: tau,
    };
    Ok(SkewStructure {
        unitary: w,
        block_plus,
        block_minus,
        block_imag,
        partition,
        reconstruction: Check::new("reconstruction", reconstruction),
        swap: Check::new("swap", swap),
        hermitian: Check::new("hermitian", hermitian),
    })
}

/// Greedy matching `λ ↔ −conj(λ)` between the two half-plane spectra.
fn pair_spectrum(pos: &[usize], neg: &[usize], values: &[Complex64], tau: f64) -> Result<()> {
    let mut used = vec![false; neg.len()];
    for &i in pos {
        let target = -values[i].conj();
        let best = neg
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, &j)| (k, (values[j] - target).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((k, d)) if d <= tau => used[k] = true,
            _ => {
                return Err(Error::Domain(format!("skew_structure: no partner for eigenvalue {}", values[i])));
            }
        }
    }
    Ok(())
}

/// Commutation of `C` and of `C∘T` with the spectral projectors of `T*T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCommutation {
    pub conj_commutes: bool,
    pub ct_commutes: bool,
    /// Worst projector, `C∘Π ≈ Π∘C`.
    pub conj_check: Check,
    /// Worst projector, `(C∘T)∘Π ≈ Π∘(C∘T)`.
    pub ct_check: Check,
    pub clusters: usize,
}

/// `conj_commutes` is only guaranteed for normal `T`; it is reported
/// regardless.
pub fn spectral_commutation_check(t: &CMatrix, conj_map: &Conjugation, tol: &Tolerance) -> Result<SpectralCommutation> {
    check_pair(t, conj_map)?;
    if !cnormal_condition(t, conj_map, tol).holds() {
        return Err(Error::NotCNormal("C·T*T ≠ TT*·C".into()));
    }
    let s = conj_map.matrix();
    let m = s * conj(t);
    let clusters = eigen_clusters(&(t.adjoint() * t), tol)?;
    let mut conj_cmp: Option<Comparison> = None;
    let mut ct_cmp: Option<Comparison> = None;
    for cl in &clusters {
        let p = cl.projector();
        let a = Comparison::with_scale(&(s * conj(&p)), &(&p * s), p.norm(), tol);
        let b = Comparison::with_scale(&(&m * conj(&p)), &(&p * &m), p.norm() * op_norm(t)?, tol);
        conj_cmp = Some(conj_cmp.map_or(a, |c| c.worst(a)));
        ct_cmp = Some(ct_cmp.map_or(b, |c| c.worst(b)));
    }
    let zero = Comparison::of(t, t, tol);
    let conj_cmp = conj_cmp.unwrap_or(zero);
    let ct_cmp = ct_cmp.unwrap_or(zero);
    Ok(SpectralCommutation {
        conj_commutes: conj_cmp.holds(),
        ct_commutes: ct_cmp.holds(),
        conj_check: Check::new("conj_commutes", conj_cmp),
        ct_check: Check::new("ct_commutes", ct_cmp),
        clusters: clusters.len(),
    })
}

/// One eigenvalue cluster of `P` with the compressed conjugation on it.
#[derive(Debug, Clone)]
pub struct ConjugationBlock {
    pub value: f64,
    pub multiplicity: usize,
    /// Orthonormal eigenbasis `V_k`.
    pub basis: CMatrix,
    /// `S_k = V_k*·S·conj(V_k)`, symmetric unitary.
    pub block: CMatrix,
}

impl ConjugationBlock {
    /// `‖S_k − S_kᵀ‖_F` and `‖S_k·S_k* − I‖_F`.
    pub fn symmetric_unitary_residuals(&self) -> (f64, f64) {
        let b = &self.block;
        let k = b.nrows();
        ((b - b.transpose()).norm(), (b * b.adjoint() - CMatrix::identity(k, k)).norm())
    }
}

/// Splits a conjugation commuting with a PSD `P` along the eigenvalue
/// clusters of `P`.
pub fn conjugation_positive_factorization(
    p: &CMatrix,
    conj_map: &Conjugation,
    tol: &Tolerance,
) -> Result<Vec<ConjugationBlock>> {
    let n = ensure_square(p, "positive operator")?;
    if conj_map.dim() != n {
        return Err(Error::dims("conjugation_positive_factorization", p.shape(), conj_map.matrix().shape()));
    }
    let s = conj_map.matrix();
    if !tol.close(&(s * conj(p)), &(p * s)) {
        return Err(Error::Domain("C does not commute with P".into()));
    }
    let clusters = eigen_clusters(p, tol)?;
    if let Some(last) = clusters.last() {
        if last.value < -tol.bound(clusters[0].value.abs()) {
            return Err(Error::Domain("P is not positive semidefinite".into()));
        }
    }
    Ok(clusters
        .into_iter()
        .map(|cl| ConjugationBlock {
            value: cl.value,
            multiplicity: cl.multiplicity(),
            block: conj_map.compress(&cl.basis),
            basis: cl.basis,
        })
        .collect())
}

/// `Σ V_k·S_k·V_kᵀ`.
pub fn reassemble_conjugation(blocks: &[ConjugationBlock]) -> CMatrix {
    let n = blocks.first().map_or(0, |b| b.basis.nrows());
    blocks
        .iter()
        .fold(CMatrix::zeros(n, n), |acc, b| acc + &b.basis * &b.block * b.basis.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnormal::products::symmetrizations;
    use crate::matrix::{diag, diag_real, eye, from_real, zeros, I};
    use crate::random::{
        cjp_instance, commuting_conjugation_positive, normal_anticommuting, normal_cnormal, seeded, CjpOptions,
    };

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn skew_structure_examples() {
        let t = tol();
        let s = skew_structure(&diag_real(&[1.0, -1.0]), &Conjugation::flip(2), &t).unwrap();
        assert!(t.close(&s.block_plus, &diag_real(&[1.0])));
        assert_eq!(s.block_imag.shape(), (0, 0));
        assert!(s.passed());

        let s = skew_structure(&diag(&[I]), &Conjugation::canonical(1), &t).unwrap();
        assert_eq!(s.block_plus.shape(), (0, 0));
        assert!(t.close(&s.block_imag, &diag_real(&[1.0])));

        let s = skew_structure(&zeros(3, 3), &Conjugation::canonical(3), &t).unwrap();
        assert_eq!(s.block_imag, zeros(3, 3));
        assert!(s.passed());
    }

    #[test]
    fn skew_structure_rejects_bad_input() {
        let t = tol();
        let n2 = from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(skew_structure(&n2, &Conjugation::flip(2), &t), Err(Error::Domain(_))));
        assert!(matches!(skew_structure(&eye(2), &Conjugation::flip(2), &t), Err(Error::Domain(_))));
    }

    #[test]
    fn skew_structure_on_constructed_instances() {
        let t = tol();
        let mut rng = seeded(71);
        for n in 1..10 {
            let inst = normal_anticommuting(n, &mut rng);
            let s = skew_structure(&inst.t, &inst.conj, &t).unwrap();
            assert!(s.passed(), "{:?} {:?}", s.reconstruction, s.swap);
            assert_eq!(s.partition.positive.len(), inst.paired);
            assert_eq!(s.partition.imaginary.len(), inst.imaginary);
            assert!(t.close(&s.block_minus, &-s.block_plus.adjoint()));
        }
    }

    #[test]
    fn self_commutator_has_skew_structure() {
        let t = tol();
        let mut rng = seeded(72);
        for n in 2..8 {
            let inst = cjp_instance(n, CjpOptions::default(), &mut rng);
            let (s1, _) = symmetrizations(&inst.t);
            assert!(t.close(&inst.conj.sandwich(&s1), &-&s1));
            assert!(skew_structure(&s1, &inst.conj, &t).unwrap().passed());
        }
    }

    #[test]
    fn spectral_commutation_examples() {
        let t = tol();
        let r = spectral_commutation_check(&diag_real(&[1.0, 2.0]), &Conjugation::canonical(2), &t).unwrap();
        assert!(r.conj_commutes && r.ct_commutes);
        let n2 = from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let r = spectral_commutation_check(&n2, &Conjugation::flip(2), &t).unwrap();
        assert!(r.ct_commutes);
        assert_eq!(r.clusters, 2);
        assert!(matches!(
            spectral_commutation_check(&n2, &Conjugation::canonical(2), &t),
            Err(Error::NotCNormal(_))
        ));
        let mut rng = seeded(73);
        for n in 1..9 {
            let (tm, cm) = normal_cnormal(n, &mut rng);
            let r = spectral_commutation_check(&tm, &cm, &t).unwrap();
            assert!(r.conj_commutes && r.ct_commutes, "{r:?}");
            let inst = cjp_instance(n, CjpOptions::default(), &mut rng);
            assert!(spectral_commutation_check(&inst.t, &inst.conj, &t).unwrap().ct_commutes);
        }
    }

    #[test]
    fn conjugation_blocks_examples() {
        let t = tol();
        let s = Conjugation::random(2, &mut seeded(5));
        let blocks = conjugation_positive_factorization(&eye(2), &s, &t).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].multiplicity, 2);
        assert!(t.close(&reassemble_conjugation(&blocks), s.matrix()));

        let blocks = conjugation_positive_factorization(&diag_real(&[1.0, 2.0]), &Conjugation::canonical(2), &t).unwrap();
        assert_eq!(blocks.len(), 2);
        for b in &blocks {
            assert!((b.block[(0, 0)].norm() - 1.0).abs() < 1e-12);
        }

        let err = conjugation_positive_factorization(&diag_real(&[1.0, 2.0]), &Conjugation::flip(2), &t);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn conjugation_blocks_round_trip() {
        let t = tol();
        let mut rng = seeded(74);
        for n in 1..10 {
            let pair = commuting_conjugation_positive(n, &mut rng);
            let blocks = conjugation_positive_factorization(&pair.p, &pair.conj, &t).unwrap();
            let mult: Vec<usize> = blocks.iter().map(|b| b.multiplicity).collect();
            let mut expected = pair.multiplicities.clone();
            let mut got = mult.clone();
            expected.sort();
            got.sort();
            assert_eq!(got, expected);
            for b in &blocks {
                let (sym, uni) = b.symmetric_unitary_residuals();
                assert!(sym < 1e-10 && uni < 1e-10);
            }
            assert!(t.close(&reassemble_conjugation(&blocks), pair.conj.matrix()));
        }
    }
}
