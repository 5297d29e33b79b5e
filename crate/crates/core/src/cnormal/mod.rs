//! C-normality: predicates, the equivalence battery, Cartesian
//! decomposition, truncated weighted shifts and the spectral structure
//! results for C-normal and C-skew operators.

pub mod battery;
pub mod cartesian;
pub mod cjp;
pub mod products;
pub mod shift;
pub mod structure;

pub use battery::{is_c_normal, is_c_normal_battery, is_c_skew, is_c_symmetric, CNormalReport};
pub use cartesian::{cartesian_decompose, cartesian_equivalences, CartesianPair, CartesianReport};
pub use cjp::{cjp_factor, cjp_synthesize};
pub use products::{left_right_products, symmetrizations, LeftRightProducts};
pub use shift::{shift_cnormal_criterion, shift_criterion, weighted_shift, ShiftCriterion};
pub use structure::{
    conjugation_positive_factorization, reassemble_conjugation, skew_structure, spectral_commutation_check, ConjugationBlock,
    SkewPartition, SkewStructure, SpectralCommutation,
};
