//! Dense complex square matrices.
//!
//! Storage is row-major `Vec<Complex64>`. Everything here is sized for the
//! desk-scale problems the root engine targets (d up to a few dozen), so the
//! kernels are plain triple loops.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::MonicPolynomial;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense `d x d` complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, ONE)
    }

    pub fn scalar(dim: usize, value: Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = value;
        }
        m
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting non-square or
    /// non-finite input.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for dim {}, got {}",
                dim * dim,
                dim,
                data.len()
            )));
        }
        if let Some(z) = data.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix(format!("non-finite entry {z}")));
        }
        Ok(Self { dim, data })
    }

    /// Convenience constructor from real rows. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "row {i} has wrong length");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(v, 0.0);
            }
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// `self + c*I`
    pub fn add_scalar(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out[(i, i)] += c;
        }
        out
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: Complex64, other: &ComplexMatrix) {
        assert_eq!(self.dim, other.dim);
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += c * y;
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    fn mul_unchecked(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * d..(k + 1) * d];
                let dst = &mut out.data[i * d..(i + 1) * d];
                for (o, b) in dst.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<ComplexMatrix> {
        let d = self.dim;
        let mut a = self.clone();
        let mut inv = ComplexMatrix::identity(d);
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for col in 0..d {
            let pivot = (col..d)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .unwrap();
            if a[(pivot, col)].norm() <= 1e-14 * scale {
                return Err(Error::Singular);
            }
            if pivot != col {
                for j in 0..d {
                    a.data.swap(pivot * d + j, col * d + j);
                    inv.data.swap(pivot * d + j, col * d + j);
                }
            }
            let p = a[(col, col)];
            for j in 0..d {
                a[(col, j)] /= p;
                inv[(col, j)] /= p;
            }
            for row in 0..d {
                if row == col {
                    continue;
                }
                let f = a[(row, col)];
                if f == ZERO {
                    continue;
                }
                for j in 0..d {
                    let (ac, ic) = (a[(col, j)], inv[(col, j)]);
                    a[(row, j)] -= f * ac;
                    inv[(row, j)] -= f * ic;
                }
            }
        }
        Ok(inv)
    }
}

/// Matrix product; errors when the dimensions differ.
pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(a.mul_unchecked(b))
}

/// `a^n` by repeated squaring, `a^0 = I`.
pub fn mat_power(a: &ComplexMatrix, mut n: u64) -> ComplexMatrix {
    let mut result = ComplexMatrix::identity(a.dim);
    let mut base = a.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = result.mul_unchecked(&base);
        }
        n >>= 1;
        if n > 0 {
            base = base.mul_unchecked(&base);
        }
    }
    result
}

/// Evaluates `P(A) = A^r - a_0 A^{r-1} - ... - a_{r-1} I` by Horner's rule.
pub fn poly_eval_matrix(p: &MonicPolynomial, a: &ComplexMatrix) -> ComplexMatrix {
    let mut acc = ComplexMatrix::identity(a.dim);
    for &c in p.coeffs() {
        acc = acc.mul_unchecked(a).add_scalar(-c);
    }
    acc
}

pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `||a - reference||_F / max(1, ||reference||_F)`
pub fn relative_error(a: &ComplexMatrix, reference: &ComplexMatrix) -> f64 {
    frobenius_norm(&(a - reference)) / frobenius_norm(reference).max(1.0)
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        self.mul_unchecked(rhs)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(-ONE)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6e}{:+.6e}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_a() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[5.0 / 6.0, 1.0], &[-1.0 / 6.0, 0.0]])
    }

    #[test]
    fn identity_is_neutral() {
        let m = example_a();
        let p = matmul(&ComplexMatrix::identity(2), &m).unwrap();
        assert_eq!(p, m);
    }

    #[test]
    fn nilpotent_square_vanishes() {
        let n = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(matmul(&n, &n).unwrap(), ComplexMatrix::zeros(2));
    }

    #[test]
    fn hand_multiplied_square() {
        let a = example_a();
        // 25/36 - 1/6 = 19/36 in the leading entry
        let expected = ComplexMatrix::from_real_rows(&[&[19.0 / 36.0, 5.0 / 6.0], &[-5.0 / 36.0, -1.0 / 6.0]]);
        let product = matmul(&a, &a).unwrap();
        assert!(relative_error(&product, &expected) < 1e-15);
        let naive = ComplexMatrix::from_fn(2, |i, j| (0..2).map(|k| a[(i, k)] * a[(k, j)]).sum());
        assert_eq!(product, naive);
    }

    #[test]
    fn matmul_rejects_mismatch() {
        let err = matmul(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 2, right: 3 });
    }

    #[test]
    fn power_edge_cases() {
        let a = example_a();
        assert_eq!(mat_power(&a, 0), ComplexMatrix::identity(2));
        assert_eq!(mat_power(&ComplexMatrix::identity(3), 11), ComplexMatrix::identity(3));
        let naive = (0..7).fold(ComplexMatrix::identity(2), |acc, _| &acc * &a);
        assert!(relative_error(&mat_power(&a, 7), &naive) < 1e-14);
        assert!(relative_error(&mat_power(&a, 2), &matmul(&a, &a).unwrap()) < 1e-16);
    }

    #[test]
    fn frobenius_values() {
        assert_eq!(frobenius_norm(&ComplexMatrix::zeros(4)), 0.0);
        assert!((frobenius_norm(&ComplexMatrix::identity(3)) - 3f64.sqrt()).abs() < 1e-15);
        let m = ComplexMatrix::from_real_rows(&[&[3.0, 4.0], &[0.0, 0.0]]);
        assert_eq!(frobenius_norm(&m), 5.0);
    }

    #[test]
    fn poly_eval_on_scalar_matrix() {
        let lambda = Complex64::new(0.3, -0.2);
        let p = MonicPolynomial::from_roots(&[lambda]);
        let z = poly_eval_matrix(&p, &ComplexMatrix::scalar(3, lambda));
        assert!(z.max_abs() < 1e-16);
    }

    #[test]
    fn poly_eval_example_pair() {
        let p = MonicPolynomial::new(vec![Complex64::new(5.0 / 6.0, 0.0), Complex64::new(-1.0 / 6.0, 0.0)]).unwrap();
        assert!(poly_eval_matrix(&p, &example_a()).max_abs() < 1e-15);
    }

    #[test]
    fn inverse_roundtrip_and_singular() {
        let s = ComplexMatrix::from_real_rows(&[&[2.0, 1.0, 0.0], &[1.0, 3.0, 1.0], &[0.0, 1.0, 4.0]]);
        let inv = s.inverse().unwrap();
        assert!(relative_error(&(&s * &inv), &ComplexMatrix::identity(3)) < 1e-15);
        let sing = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert_eq!(sing.inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn rejects_non_finite() {
        let r = ComplexMatrix::from_row_major(1, vec![Complex64::new(f64::NAN, 0.0)]);
        assert!(r.is_err());
        assert!(ComplexMatrix::from_row_major(2, vec![ONE; 3]).is_err());
    }
}
