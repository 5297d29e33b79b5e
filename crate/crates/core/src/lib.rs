//! Conjugate-normal operator theory on dense complex matrices.
//!
//! Linear operators are plain [`CMatrix`] values. Anti-linear operators are
//! stored as the matrix `M` of the action `x ↦ M·conj(x)` (see
//! [`AntiLinearMap`]), which turns the anti-linear adjoint into a transpose
//! and every composition into a matrix product.
//!
//! Module map:
//! - [`numeric`]: SVD, Hermitian eigensolver, pseudoinverse, PSD calculus.
//! - [`antilinear`]: anti-linear maps, conjugations, compositions.
//! - [`douglas`]: range inclusion and the factorizations built on it.
//! - [`cnormal`]: the C-normality battery, Cartesian decomposition, weighted
//!   shifts and the spectral structure results.
//! - [`inequalities`]: singular-value and self-commutator bounds.
//! - [`verify`]: seeded bulk verification suites.

pub mod antilinear;
pub mod cnormal;
pub mod douglas;
pub mod error;
pub mod inequalities;
pub mod json;
pub mod matrix;
pub mod numeric;
pub mod random;
pub mod tolerance;
pub mod verify;

pub use antilinear::{AntiLinearMap, Compose, Conjugation, PartialAntiIsometry};
pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use num_complex::Complex64;
pub use tolerance::Tolerance;
