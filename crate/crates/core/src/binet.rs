//! Closed-form coefficients of the generalized Fibonacci sequence
//! `u_n = sum_i sum_j C_{i,j} n^j lambda_i^n`.

use num_complex::Complex64;

use crate::combinatorics::{binomial, inv_factorial, StirlingTable};
use crate::error::{Error, Result};
use crate::linalg::{ONE, ZERO};
use crate::poly::Spectrum;

const C_TILDE_CHECK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BinetCoefficients {
    spectrum: Spectrum,
    gamma: Vec<Vec<Complex64>>,
    c: Vec<Vec<Complex64>>,
    c_tilde: Vec<Complex64>,
}

impl BinetCoefficients {
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn gamma(&self, i: usize, j: usize) -> Complex64 {
        self.gamma[i][j]
    }

    pub fn c(&self, i: usize, j: usize) -> Complex64 {
        self.c[i][j]
    }

    /// `C_{i,0..m_i-1}`
    pub fn c_row(&self, i: usize) -> &[Complex64] {
        &self.c[i]
    }

    pub fn c_tilde(&self, i: usize) -> Complex64 {
        self.c_tilde[i]
    }
}

/// Calls `f` on every tuple of `len` nonnegative integers summing to `total`.
pub(crate) fn for_each_composition(total: usize, len: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(rest: usize, slot: usize, parts: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if slot + 1 == parts.len() {
            parts[slot] = rest;
            f(parts);
            return;
        }
        for n in 0..=rest {
            parts[slot] = n;
            rec(rest - n, slot + 1, parts, f);
        }
    }
    if len == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut parts = vec![0; len];
    rec(total, 0, &mut parts, f);
}

/// `gamma[i][j]` for `j < m_i`.
pub fn compute_gamma(spec: &Spectrum) -> Result<Vec<Vec<Complex64>>> {
    let r = spec.degree();
    let l = spec.len();
    let mut table = Vec::with_capacity(l);
    for i in 0..l {
        let (lambda_i, m_i) = spec.roots()[i];
        let others: Vec<(Complex64, usize)> = (0..l)
            .filter(|&t| t != i)
            .map(|t| {
                let (lambda_t, m_t) = spec.roots()[t];
                (lambda_t - lambda_i, m_t)
            })
            .collect();
        if let Some(t) = others.iter().position(|&(diff, _)| diff == ZERO) {
            let t = if t >= i { t + 1 } else { t };
            return Err(Error::CoincidentRoots(lambda_i, spec.lambda(t)));
        }
        let sign = if (r - m_i).is_multiple_of(2) { 1.0 } else { -1.0 };
        let row = (0..m_i)
            .map(|j| {
                let mut sum = ZERO;
                for_each_composition(m_i - j - 1, others.len(), &mut |ns| {
                    let mut term = ONE;
                    for (&n_t, &(diff, m_t)) in ns.iter().zip(&others) {
                        let weight = binomial((n_t + m_t - 1) as u64, n_t as u64) as f64;
                        term *= weight / diff.powu((n_t + m_t) as u32);
                    }
                    sum += term;
                });
                sum * sign
            })
            .collect();
        table.push(row);
    }
    Ok(table)
}

pub fn compute_binet(spec: &Spectrum, stirling: &StirlingTable) -> Result<BinetCoefficients> {
    let needed = spec.max_multiplicity() - 1;
    if needed > stirling.max_n() {
        return Err(Error::StirlingOverflow {
            requested: needed,
            max: stirling.max_n(),
        });
    }
    let gamma = compute_gamma(spec)?;
    let r = spec.degree();
    let mut c = Vec::with_capacity(spec.len());
    let mut c_tilde = Vec::with_capacity(spec.len());
    for (i, &(lambda, m)) in spec.roots().iter().enumerate() {
        let row: Vec<Complex64> = (0..m)
            .map(|j| {
                (j..m)
                    .map(|h| {
                        let inner: f64 = (j..=h)
                            .map(|k| {
                                binomial((r - 1) as u64, (h - k) as u64) as f64
                                    * stirling.get(k, j) as f64
                                    * inv_factorial(k)
                            })
                            .sum();
                        lambda.powu((r - 1 - h) as u32) * gamma[i][h] * inner
                    })
                    .sum()
            })
            .collect();

        let tilde = if m == 1 {
            let mut denom = ONE;
            for (t, &(lambda_t, m_t)) in spec.roots().iter().enumerate() {
                if t != i {
                    denom *= (lambda_t - lambda).powu(m_t as u32);
                }
            }
            let sign = if (r - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
            lambda.powu((r - 1) as u32) * sign / denom
        } else {
            (0..m)
                .map(|h| lambda.powu((r - 1 - h) as u32) * gamma[i][h] * binomial((r - 1) as u64, h as u64) as f64)
                .sum()
        };
        let gap = (tilde - row[0]).norm();
        if !(gap <= C_TILDE_CHECK_TOL * row[0].norm().max(1.0)) {
            return Err(Error::Internal(format!(
                "C~_{i} = {tilde} disagrees with C_{{{i},0}} = {}",
                row[0]
            )));
        }
        c.push(row);
        c_tilde.push(tilde);
    }
    Ok(BinetCoefficients {
        spectrum: spec.clone(),
        gamma,
        c,
        c_tilde,
    })
}

pub fn binet_eval(bc: &BinetCoefficients, n: u64) -> Complex64 {
    let nf = n as f64;
    bc.spectrum
        .roots()
        .iter()
        .zip(&bc.c)
        .map(|(&(lambda, _), row)| {
            let power = lambda.powu(n as u32);
            row.iter()
                .enumerate()
                .map(|(j, &cij)| cij * nf.powi(j as i32))
                .sum::<Complex64>()
                * power
        })
        .sum()
}
