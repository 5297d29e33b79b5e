//! Seeded random instances.
//!
//! All generators draw from [`ChaCha8Rng`] (a counter-based stream cipher
//! generator, identical output on every platform). A suite trial with offset
//! `k` under base seed `s` uses `ChaCha8Rng::seed_from_u64(s)` switched to
//! stream `k`, so trials are independent and can run in any order.

use nalgebra::QR;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::antilinear::{AntiLinearMap, Conjugation};
use crate::matrix::{c, conj, diag, zeros, CMatrix, I};
use crate::numeric::spectral_apply;

pub type TrialRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for trial `offset` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, offset: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(offset);
    rng
}

/// Ginibre matrix: i.i.d. entries `(g₁ + i·g₂)/√2`, `gᵢ ~ N(0, 1)`.
pub fn complex_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re * s, im * s)
    })
}

/// Haar unitary: QR of a Ginibre matrix with `R`'s diagonal made positive.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = complex_gaussian(n, n, rng);
    let qr = QR::new(g);
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random Hermitian matrix with the given spectrum.
pub fn hermitian_with_spectrum<R: Rng + ?Sized>(spectrum: &[f64], rng: &mut R) -> CMatrix {
    let u = haar_unitary(spectrum.len(), rng);
    spectral_apply(&u, spectrum)
}

/// Random PSD matrix of rank `rank` (Gram matrix of a thin Ginibre factor).
pub fn random_psd<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> CMatrix {
    let g = complex_gaussian(n, rank, rng);
    &g * g.adjoint()
}

/// Random partition of `n` into cluster sizes, each at most `max_block`.
pub fn random_partition<R: Rng + ?Sized>(n: usize, max_block: usize, rng: &mut R) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let k = rng.random_range(1..=max_block.min(left));
        sizes.push(k);
        left -= k;
    }
    sizes
}

/// Distinct positive cluster values with gaps of at least `0.1`.
fn distinct_values<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<f64> {
    let mut vals: Vec<f64> = (0..count).map(|k| 0.2 + 0.3 * k as f64 + rng.random_range(0.0..0.2)).collect();
    vals.shuffle(rng);
    vals
}

/// A block-diagonal Haar unitary with the given block sizes.
fn block_unitary<R: Rng + ?Sized>(sizes: &[usize], rng: &mut R) -> CMatrix {
    let n = sizes.iter().sum();
    let mut w = zeros(n, n);
    let mut at = 0;
    for &k in sizes {
        w.view_mut((at, at), (k, k)).copy_from(&haar_unitary(k, rng));
        at += k;
    }
    w
}

/// Block-diagonal symmetric unitary (each block `U·Uᵀ`).
fn block_symmetric_unitary<R: Rng + ?Sized>(sizes: &[usize], rng: &mut R) -> CMatrix {
    let n = sizes.iter().sum();
    let mut w = zeros(n, n);
    let mut at = 0;
    for &k in sizes {
        w.view_mut((at, at), (k, k)).copy_from(Conjugation::random(k, rng).matrix());
        at += k;
    }
    w
}

fn expand(sizes: &[usize], values: &[f64]) -> Vec<f64> {
    sizes.iter().zip(values).flat_map(|(&k, &v)| std::iter::repeat_n(v, k)).collect()
}

/// A C-normal instance `T = C∘J∘P` with `J` anti-unitary commuting with `P`.
#[derive(Debug, Clone)]
pub struct CjpInstance {
    pub conj: Conjugation,
    pub j: AntiLinearMap,
    pub p: CMatrix,
    pub t: CMatrix,
    /// Multiplicities of the distinct eigenvalues of `P`.
    pub multiplicities: Vec<usize>,
}

/// Options for [`cjp_instance`].
#[derive(Debug, Clone, Copy)]
pub struct CjpOptions {
    /// Allow a zero eigenvalue cluster in `P` (rank-deficient `T`).
    pub allow_kernel: bool,
    /// Make `P` an orthogonal projection (eigenvalues 0 and 1 only).
    pub projection: bool,
}

impl Default for CjpOptions {
    fn default() -> Self {
        Self { allow_kernel: true, projection: false }
    }
}

/// Draws `(C, J, P)` and returns `T = C∘J∘P`.
///
/// `P = V·D·V*` with clustered eigenvalues; `J` has matrix `V·W·Vᵀ` with `W`
/// block-diagonal unitary on the clusters, which makes `J∘P = P∘J`.
pub fn cjp_instance<R: Rng + ?Sized>(n: usize, opts: CjpOptions, rng: &mut R) -> CjpInstance {
    let conj_map = Conjugation::random(n, rng);
    let sizes = if opts.projection {
        let k = rng.random_range(0..=n);
        [n - k, k].into_iter().filter(|&s| s > 0).collect()
    } else {
        random_partition(n, 3, rng)
    };
    let mut values = if opts.projection {
        if sizes.len() == 2 { vec![1.0, 0.0] } else if rng.random_bool(0.5) { vec![1.0] } else { vec![0.0] }
    } else {
        distinct_values(sizes.len(), rng)
    };
    if opts.allow_kernel && !opts.projection && sizes.len() > 1 && rng.random_bool(0.3) {
        let k = rng.random_range(0..values.len());
        values[k] = 0.0;
    }
    let v = haar_unitary(n, rng);
    let p = spectral_apply(&v, &expand(&sizes, &values));
    let w = block_unitary(&sizes, rng);
    let j = AntiLinearMap::from_matrix(&v * w * v.transpose());
    let t = conj_map.matrix() * conj(j.matrix()) * &p;
    CjpInstance { conj: conj_map, j, p, t, multiplicities: sizes }
}

/// A commuting pair `(C, P)`: `P = V·D·V*`, `S = V·(⊕ Sₖ)·Vᵀ` with each
/// `Sₖ` symmetric unitary on one eigenvalue cluster.
#[derive(Debug, Clone)]
pub struct CommutingPair {
    pub conj: Conjugation,
    pub p: CMatrix,
    pub values: Vec<f64>,
    pub multiplicities: Vec<usize>,
}

pub fn commuting_conjugation_positive<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CommutingPair {
    let sizes = random_partition(n, 3, rng);
    let values = distinct_values(sizes.len(), rng);
    let v = haar_unitary(n, rng);
    let p = spectral_apply(&v, &expand(&sizes, &values));
    let s = &v * block_symmetric_unitary(&sizes, rng) * v.transpose();
    let s = (&s + s.transpose()).scale(0.5);
    CommutingPair { conj: Conjugation::from_matrix_unchecked(s), p, values, multiplicities: sizes }
}

/// Normal `T` with `C∘T∘C = −T`: `T = W·(T₁ ⊕ (−T₁*) ⊕ i·T₃)·W*`.
#[derive(Debug, Clone)]
pub struct AnticommutingInstance {
    pub t: CMatrix,
    pub conj: Conjugation,
    /// Size of the `T₁` block.
    pub paired: usize,
    /// Size of the `T₃` block.
    pub imaginary: usize,
}

pub fn normal_anticommuting<R: Rng + ?Sized>(n: usize, rng: &mut R) -> AnticommutingInstance {
    let k = rng.random_range(0..=n / 2);
    let m = n - 2 * k;
    // T₁ diagonal with Re λ ∈ [0.2, 2]
    let d1: Vec<_> = (0..k).map(|_| c(rng.random_range(0.2..2.0), rng.random_range(-2.0..2.0))).collect();
    let minus_adj: Vec<_> = d1.iter().map(|z| -z.conj()).collect();
    // H₃ = V₃·d·V₃* paired with S₃ = V₃·V₃ᵀ so that S₃·conj(H₃)·S₃* = H₃
    let d3: Vec<f64> = (0..m).map(|_| rng.random_range(-2.0..2.0)).collect();
    let v3 = haar_unitary(m, rng);
    let h3 = spectral_apply(&v3, &d3);
    let s3 = &v3 * v3.transpose();

    let mut t0 = zeros(n, n);
    t0.view_mut((0, 0), (k, k)).copy_from(&diag(&d1));
    t0.view_mut((k, k), (k, k)).copy_from(&diag(&minus_adj));
    t0.view_mut((2 * k, 2 * k), (m, m)).copy_from(&(h3 * I));
    let mut s0 = zeros(n, n);
    for i in 0..k {
        s0[(i, k + i)] = c(1.0, 0.0);
        s0[(k + i, i)] = c(1.0, 0.0);
    }
    s0.view_mut((2 * k, 2 * k), (m, m)).copy_from(&s3);

    let w = haar_unitary(n, rng);
    let t = &w * t0 * w.adjoint();
    let s = &w * s0 * w.transpose();
    let s = (&s + s.transpose()).scale(0.5);
    AnticommutingInstance { t, conj: Conjugation::from_matrix_unchecked(s), paired: k, imaginary: m }
}

/// Normal C-normal `T = V·diag(λ)·V*` with `S = V·(⊕ Sₖ)·Vᵀ`, the blocks
/// grouping eigenvalues of equal modulus.
pub fn normal_cnormal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (CMatrix, Conjugation) {
    let sizes = random_partition(n, 3, rng);
    let moduli = distinct_values(sizes.len(), rng);
    let lambdas: Vec<_> = expand(&sizes, &moduli)
        .into_iter()
        .map(|r| num_complex::Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    let v = haar_unitary(n, rng);
    let t = &v * diag(&lambdas) * v.adjoint();
    let s = &v * block_symmetric_unitary(&sizes, rng) * v.transpose();
    let s = (&s + s.transpose()).scale(0.5);
    (t, Conjugation::from_matrix_unchecked(s))
}

/// Uniform weights in the annulus `0.2 ≤ |λ| ≤ 2` with random phase.
pub fn random_weights<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<num_complex::Complex64> {
    (0..len)
        .map(|_| num_complex::Complex64::from_polar(rng.random_range(0.2..2.0), rng.random_range(0.0..std::f64::consts::TAU)))
        .collect()
}

/// Weights with `|λ_j| = |λ_{n−j}|` and independent phases.
pub fn mirrored_weights<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<num_complex::Complex64> {
    let mut w = random_weights(len, rng);
    for j in 0..len / 2 {
        let r = w[j].norm();
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        w[len - 1 - j] = num_complex::Complex64::from_polar(r, phase);
    }
    w
}
