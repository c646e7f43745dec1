//! Independent checks: truncated binomial series, eigendecomposition roots and
//! defining-equation residuals.

use nalgebra::{DMatrix, Schur, SVD};
use num_complex::Complex64;

use crate::combinatorics::series_coefficients;
use crate::engine::doperator::branch_root;
use crate::error::{Error, Result};
use crate::linalg::{frobenius_norm, mat_power, ComplexMatrix};
use crate::poly::spectral_order;
use crate::primary::BranchTuple;

pub const DEFAULT_SERIES_TERMS: usize = 5000;
/// Target for the series tail bound.
pub const SERIES_TAIL_TARGET: f64 = 1e-16;
/// Eigenvalues closer than this (relative to `max(1, ||B||_F)`) are one cluster.
pub const EIGEN_CLUSTER_TOL: f64 = 1e-7;
/// Singular values below this (relative) span an eigenspace.
pub const NULL_SPACE_TOL: f64 = 1e-8;
/// Largest accepted condition number of the eigenvector matrix.
pub const MAX_EIGENBASIS_CONDITION: f64 = 1e10;

/// `sum_{n<N} b_n t^n A^n` and a bound on the neglected tail.
pub fn series_root(a: &ComplexMatrix, p: u32, t: f64, n_terms: usize) -> Result<(ComplexMatrix, f64)> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("p must be at least 2, got {p}")));
    }
    if n_terms == 0 {
        return Err(Error::InvalidArgument("n_terms must be positive".into()));
    }
    let d = a.dim();
    let ta = a.scale(Complex64::new(t, 0.0));
    let b = series_coefficients(p, n_terms + 1);
    let nilpotent = mat_power(&ta, d as u64)
        .as_slice()
        .iter()
        .all(|z| *z == Complex64::new(0.0, 0.0));

    let q = frobenius_norm(&ta);
    if !nilpotent && !(q < 1.0) {
        return Err(Error::OracleUnavailable(format!(
            "series needs |t| ||A||_F < 1, got {q:.6}"
        )));
    }
    let mut sum = ComplexMatrix::identity(d);
    let mut power = ComplexMatrix::identity(d);
    for n in 1..n_terms {
        if nilpotent && n >= d {
            return Ok((sum, 0.0));
        }
        power = &power * &ta;
        sum.axpy(Complex64::new(b.terms()[n], 0.0), &power);
        if !nilpotent {
            // |b_k| decreases for k >= 1, so the tail is dominated by a geometric series
            let tail = b.terms()[n + 1].abs() * q.powi(n as i32 + 1) / (1.0 - q);
            if tail < SERIES_TAIL_TARGET {
                return Ok((sum, tail));
            }
        }
    }
    let tail = if nilpotent {
        0.0
    } else {
        b.terms()[n_terms].abs() * q.powi(n_terms as i32) / (1.0 - q)
    };
    Ok((sum, tail))
}

fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<Complex64> {
    let d = m.dim();
    DMatrix::from_fn(d, d, |i, j| m[(i, j)])
}

fn from_nalgebra(m: &DMatrix<Complex64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), |i, j| m[(i, j)])
}

/// Distinct eigenvalues with multiplicities, in spectral order.
pub fn clustered_eigenvalues(b: &ComplexMatrix) -> Result<Vec<(Complex64, usize)>> {
    let schur = Schur::try_new(to_nalgebra(b), f64::EPSILON, 100_000)
        .ok_or_else(|| Error::OracleUnavailable("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    let mut eig: Vec<Complex64> = (0..t.nrows()).map(|i| t[(i, i)]).collect();
    eig.sort_by(|x, y| spectral_order(*x, *y));
    let tol = EIGEN_CLUSTER_TOL * frobenius_norm(b).max(1.0);
    let mut used = vec![false; eig.len()];
    let mut out = Vec::new();
    for i in 0..eig.len() {
        if used[i] {
            continue;
        }
        let mut members = Vec::new();
        for j in i..eig.len() {
            if !used[j] && (eig[j] - eig[i]).norm() <= tol {
                used[j] = true;
                members.push(eig[j]);
            }
        }
        let centre = members.iter().sum::<Complex64>() / members.len() as f64;
        out.push((centre, members.len()));
    }
    out.sort_by(|x, y| spectral_order(x.0, y.0));
    Ok(out)
}

/// `V diag(f_{j_k}(mu_k)) V^{-1}` over distinct eigenvalues in spectral order.
pub fn spectral_root(b: &ComplexMatrix, p: u32, branches: &BranchTuple) -> Result<ComplexMatrix> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("p must be at least 2, got {p}")));
    }
    let eig = clustered_eigenvalues(b)?;
    if branches.len() != eig.len() {
        return Err(Error::InvalidArgument(format!(
            "branch tuple has {} entries for {} distinct eigenvalues",
            branches.len(),
            eig.len()
        )));
    }
    let d = b.dim();
    let scale = frobenius_norm(b).max(1.0);
    let bn = to_nalgebra(b);
    let mut vectors: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    let mut values = Vec::with_capacity(d);
    for (&(mu, m), &j) in eig.iter().zip(branches.entries()) {
        if j >= p {
            return Err(Error::InvalidArgument(format!("branch {j} outside 0..{p}")));
        }
        if j == 0 && mu.im == 0.0 && mu.re <= 0.0 {
            return Err(Error::BranchCut(mu));
        }
        let shifted = &bn - DMatrix::<Complex64>::identity(d, d) * mu;
        let svd = SVD::new(shifted, false, true);
        let v_t = svd
            .v_t
            .ok_or_else(|| Error::OracleUnavailable("SVD produced no right vectors".into()))?;
        // singular values are sorted descending; the null space sits at the end
        let null_dim = svd
            .singular_values
            .iter()
            .filter(|&&s| s <= NULL_SPACE_TOL * scale)
            .count();
        if null_dim < m {
            return Err(Error::OracleUnavailable(format!(
                "eigenvalue {mu} is defective (geometric {null_dim} < algebraic {m})"
            )));
        }
        let root = branch_root(mu, p, j);
        for row in d - m..d {
            vectors.push((0..d).map(|c| v_t[(row, c)].conj()).collect());
            values.push(root);
        }
    }
    let v = DMatrix::from_fn(d, d, |i, k| vectors[k][i]);
    let v_inv = v
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::OracleUnavailable("eigenvector matrix is singular".into()))?;
    let cond = v.norm() * v_inv.norm();
    if !(cond <= MAX_EIGENBASIS_CONDITION) {
        return Err(Error::OracleUnavailable(format!(
            "eigenvector matrix condition {cond:.3e} too large"
        )));
    }
    let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(values));
    Ok(from_nalgebra(&(v * diag * v_inv)))
}

/// [`spectral_root`] with every branch principal.
pub fn spectral_principal_root(b: &ComplexMatrix, p: u32) -> Result<ComplexMatrix> {
    let l = clustered_eigenvalues(b)?.len();
    spectral_root(b, p, &BranchTuple::principal(l))
}

/// `||X^p - B||_F / max(1, ||B||_F)`
pub fn residual(x: &ComplexMatrix, b: &ComplexMatrix, p: u32) -> f64 {
    frobenius_norm(&(&mat_power(x, p as u64) - b)) / frobenius_norm(b).max(1.0)
}
