//! Matrix pth roots through generalized Fibonacci sequences.
//!
//! For a nonsingular `B`, set `A = I - B`. If `P` annihilates `A`, the series
//! `(I - tA)^{1/p} = sum b_n t^n A^n` collapses onto the Hörner basis
//! `A_0..A_{r-1}` of `P`, with scalar weights `phi_s(t)` available in closed
//! form from the roots of `P`. Evaluating at `t = 1` gives the principal root.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod binet;
pub mod combinatorics;
pub mod engine;
pub mod error;
pub mod horner;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod primary;

pub use num_complex::Complex64;

pub use binet::{binet_eval, compute_binet, compute_gamma, BinetCoefficients};
pub use combinatorics::{binomial, series_coefficients, stirling_first_kind, SeriesCoefficients, StirlingTable};
pub use engine::{
    d_power_apply, phi_general, phi_mixed, phi_single_root, principal_pth_root, pth_root_of_shifted, BranchedPower,
    DOperatorPolys, PhiCoefficients, Provenance, RootOptions, RootReport,
};
pub use error::{Error, Result};
pub use horner::{build_basis, fib_terms, horner_to_monomial, power_decomposition, FibHornerBasis, FibSequence};
pub use linalg::{frobenius_norm, mat_power, matmul, poly_eval_matrix, ComplexMatrix};
pub use oracle::{residual, series_root, spectral_root};
pub use poly::{characteristic_polynomial, find_spectrum, verify_annihilator, MonicPolynomial, Spectrum};
pub use primary::{enumerate_primary_roots, principal_from_enumeration, projector_power, BranchTuple, JordanForm};
