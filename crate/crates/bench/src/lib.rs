//! Shared fixtures for the benchmarks.

use matroot::{matmul, Complex64, ComplexMatrix, JordanForm, Result};

/// Dimensions swept by the benchmarks.
pub const DIMS: [usize; 3] = [3, 6, 9];

/// `S diag(mu) S^{-1}` with distinct real eigenvalues in `(0.5, 1.4)` and a
/// fixed unit upper-triangular `S`, so the principal root takes the
/// unshifted closed-form route.
pub fn diagonalizable(dim: usize) -> Result<ComplexMatrix> {
    let mu: Vec<Complex64> = (0..dim)
        .map(|k| Complex64::new(0.5 + 0.9 * (k as f64 + 0.5) / dim as f64, 0.0))
        .collect();
    let s = ComplexMatrix::from_fn(dim, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Complex64::new(1.0, 0.0),
        std::cmp::Ordering::Less => Complex64::new(0.1 * ((i + 2 * j) % 5) as f64 - 0.2, 0.0),
        std::cmp::Ordering::Greater => Complex64::new(0.0, 0.0),
    });
    matmul(&matmul(&s, &ComplexMatrix::diagonal(&mu))?, &s.inverse()?)
}

/// Jordan layout of `A = I - B` with one block of size `m` per group and
/// eigenvalues spread over `(0.2, 0.8)`.
pub fn jordan(groups: usize, m: usize) -> Result<JordanForm> {
    let sizes = [m];
    let spec: Vec<(f64, &[usize])> = (0..groups)
        .map(|k| (0.2 + 0.6 * (k as f64 + 0.5) / groups as f64, &sizes[..]))
        .collect();
    JordanForm::from_real(&spec)
}
