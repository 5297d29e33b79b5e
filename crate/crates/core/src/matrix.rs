//! Dense complex matrix helpers over `nalgebra::DMatrix<Complex64>`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    CMatrix::zeros(rows, cols)
}

pub fn eye(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Row-major real entries.
pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> CMatrix {
    assert_eq!(data.len(), rows * cols);
    CMatrix::from_row_iterator(rows, cols, data.iter().map(|&x| c(x, 0.0)))
}

/// Row-major complex entries.
pub fn from_rows(rows: usize, cols: usize, data: &[Complex64]) -> CMatrix {
    assert_eq!(data.len(), rows * cols);
    CMatrix::from_row_slice(rows, cols, data)
}

pub fn diag_real(d: &[f64]) -> CMatrix {
    let mut m = zeros(d.len(), d.len());
    for (i, &x) in d.iter().enumerate() {
        m[(i, i)] = c(x, 0.0);
    }
    m
}

pub fn diag(d: &[Complex64]) -> CMatrix {
    let mut m = zeros(d.len(), d.len());
    for (i, &x) in d.iter().enumerate() {
        m[(i, i)] = x;
    }
    m
}

/// Antidiagonal ones: the matrix of `(z₁,…,zₙ) ↦ (z̄ₙ,…,z̄₁)`.
pub fn exchange(n: usize) -> CMatrix {
    let mut m = zeros(n, n);
    for i in 0..n {
        m[(i, n - 1 - i)] = c(1.0, 0.0);
    }
    m
}

pub fn conj(m: &CMatrix) -> CMatrix {
    m.map(|z| z.conj())
}

pub fn commutator(x: &CMatrix, y: &CMatrix) -> CMatrix {
    x * y - y * x
}

/// Block-diagonal `x ⊕ y`.
pub fn direct_sum(x: &CMatrix, y: &CMatrix) -> CMatrix {
    let mut out = zeros(x.nrows() + y.nrows(), x.ncols() + y.ncols());
    out.view_mut((0, 0), x.shape()).copy_from(x);
    out.view_mut(x.shape(), y.shape()).copy_from(y);
    out
}

pub fn block_diag(blocks: &[&CMatrix]) -> CMatrix {
    let rows = blocks.iter().map(|b| b.nrows()).sum();
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = zeros(rows, cols);
    let (mut r, mut c0) = (0, 0);
    for b in blocks {
        out.view_mut((r, c0), b.shape()).copy_from(*b);
        r += b.nrows();
        c0 += b.ncols();
    }
    out
}

/// Horizontal concatenation of matrices with equal row counts.
pub fn hstack(parts: &[&CMatrix], rows: usize) -> CMatrix {
    let cols = parts.iter().map(|p| p.ncols()).sum();
    let mut out = zeros(rows, cols);
    let mut at = 0;
    for p in parts {
        debug_assert_eq!(p.nrows(), rows);
        out.view_mut((0, at), p.shape()).copy_from(*p);
        at += p.ncols();
    }
    out
}

pub fn is_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn ensure_square(m: &CMatrix, what: &str) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::Domain(format!("{what} must be square, got {}x{}", m.nrows(), m.ncols())));
    }
    Ok(m.nrows())
}

pub fn ensure_same_shape(x: &CMatrix, y: &CMatrix, what: &str) -> Result<()> {
    if x.shape() != y.shape() {
        return Err(Error::dims(what, x.shape(), y.shape()));
    }
    Ok(())
}

pub fn ensure_finite(m: &CMatrix, what: &str) -> Result<()> {
    if !is_finite(m) {
        return Err(Error::Domain(format!("{what} has non-finite entries")));
    }
    Ok(())
}

/// Standard inner product, linear in the first slot: `⟨x, y⟩ = Σ xᵢ·conj(yᵢ)`.
pub fn inner(x: &CMatrix, y: &CMatrix) -> Complex64 {
    x.iter().zip(y.iter()).map(|(a, b)| a * b.conj()).sum()
}
