//! The Hörner basis `A_s = P_s(A)`, the generalized Fibonacci sequence `u_n`
//! and the decompositions built from them.

use num_complex::Complex64;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ONE, ZERO};
use crate::poly::{annihilator_residual, MonicPolynomial};

/// Relative tolerance used when checking `P(A) = 0` before building a basis.
pub const ANNIHILATOR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct FibHornerBasis {
    source: ComplexMatrix,
    poly: MonicPolynomial,
    basis: Vec<ComplexMatrix>,
}

impl FibHornerBasis {
    pub fn source(&self) -> &ComplexMatrix {
        &self.source
    }

    pub fn poly(&self) -> &MonicPolynomial {
        &self.poly
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `sum phi_s A_s`
    pub fn combine(&self, phi: &[Complex64]) -> Result<ComplexMatrix> {
        if phi.len() != self.basis.len() {
            return Err(Error::DimensionMismatch {
                left: phi.len(),
                right: self.basis.len(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.source.dim());
        for (&w, a_s) in phi.iter().zip(&self.basis) {
            out.axpy(w, a_s);
        }
        Ok(out)
    }
}

/// `A_0 = I`, `A_{j+1} = A A_j - a_j I`, after checking that `p` annihilates `a`.
pub fn build_basis(a: &ComplexMatrix, p: &MonicPolynomial) -> Result<FibHornerBasis> {
    let residual = annihilator_residual(p, a);
    if !(residual <= ANNIHILATOR_TOL) {
        return Err(Error::NotAnnihilator { residual });
    }
    Ok(build_basis_unchecked(a, p))
}

pub(crate) fn build_basis_unchecked(a: &ComplexMatrix, p: &MonicPolynomial) -> FibHornerBasis {
    let d = a.dim();
    let mut basis = Vec::with_capacity(p.degree());
    let mut current = ComplexMatrix::identity(d);
    for &aj in &p.coeffs()[..p.degree() - 1] {
        let next = (a * &current).add_scalar(-aj);
        basis.push(std::mem::replace(&mut current, next));
    }
    basis.push(current);
    FibHornerBasis {
        source: a.clone(),
        poly: p.clone(),
        basis,
    }
}

/// Cached `u_0..u_N`; indices below zero read as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct FibSequence {
    poly: MonicPolynomial,
    cache: Vec<Complex64>,
}

impl FibSequence {
    pub fn new(poly: &MonicPolynomial) -> Self {
        Self {
            poly: poly.clone(),
            cache: vec![ONE],
        }
    }

    pub fn poly(&self) -> &MonicPolynomial {
        &self.poly
    }

    /// Largest cached index.
    pub fn n_max(&self) -> usize {
        self.cache.len() - 1
    }

    pub fn extend_to(&mut self, n_max: usize) {
        let a = self.poly.coeffs();
        while self.cache.len() <= n_max {
            let n = self.cache.len() - 1;
            let next = a
                .iter()
                .enumerate()
                .take(n + 1)
                .map(|(s, &a_s)| a_s * self.cache[n - s])
                .sum();
            self.cache.push(next);
        }
    }

    pub fn get(&self, n: i64) -> Result<Complex64> {
        if n < 0 {
            return Ok(ZERO);
        }
        self.cache.get(n as usize).copied().ok_or(Error::CacheExhausted {
            requested: n as usize,
            available: self.cache.len(),
        })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.cache
    }
}

pub fn fib_terms(p: &MonicPolynomial, n_max: usize) -> FibSequence {
    let mut seq = FibSequence::new(p);
    seq.extend_to(n_max);
    seq
}

/// `A^n = sum_s u_{n-s} A_s`
pub fn power_decomposition(basis: &FibHornerBasis, seq: &FibSequence, n: usize) -> Result<ComplexMatrix> {
    if seq.poly() != basis.poly() {
        return Err(Error::InvalidArgument(
            "sequence and basis come from different polynomials".into(),
        ));
    }
    let weights = (0..basis.len())
        .map(|s| seq.get(n as i64 - s as i64))
        .collect::<Result<Vec<_>>>()?;
    basis.combine(&weights)
}

/// Rewrites `sum phi_s A_s` as `sum Omega_k A^k`.
pub fn horner_to_monomial(basis: &FibHornerBasis, phi: &[Complex64]) -> Vec<Complex64> {
    horner_to_monomial_coeffs(basis.poly(), phi)
}

/// `Omega_k = phi_k - sum_{s>k} phi_s a_{s-k-1}`
pub fn horner_to_monomial_coeffs(p: &MonicPolynomial, phi: &[Complex64]) -> Vec<Complex64> {
    let a = p.coeffs();
    let r = phi.len();
    (0..r)
        .map(|k| phi[k] - (k + 1..r).map(|s| phi[s] * a[s - k - 1]).sum::<Complex64>())
        .collect()
}

/// Inverse of [`horner_to_monomial_coeffs`]: `phi_s = sum_{k>=s} Omega_k u_{k-s}`.
pub fn monomial_to_horner_coeffs(p: &MonicPolynomial, omega: &[Complex64]) -> Vec<Complex64> {
    let r = omega.len();
    let seq = fib_terms(p, r);
    let u = seq.values();
    (0..r).map(|s| (s..r).map(|k| omega[k] * u[k - s]).sum()).collect()
}

/// Given `sum Omega_k A^k` with `A = I - B`, returns the coefficients of the
/// same matrix in powers of `B`.
pub fn monomial_in_complement(omega: &[Complex64]) -> Vec<Complex64> {
    let r = omega.len();
    (0..r)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            (j..r)
                .map(|k| omega[k] * (sign * binomial(k as u64, j as u64) as f64))
                .sum()
        })
        .collect()
}
