//! Closed-form weights `phi_s(t)` of `(I - tA)^{1/p} = sum phi_s(t) A_s`.

use std::fmt;

use num_complex::Complex64;

use crate::binet::{compute_binet, BinetCoefficients};
use crate::combinatorics::{binomial, inv_factorial, StirlingTable};
use crate::engine::doperator::{d_power_apply, DOperatorPolys};
use crate::error::{Error, Result};
use crate::linalg::{ONE, ZERO};
use crate::poly::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    General,
    SingleRoot,
    SimplePlusMultiple,
    TwoMultiple,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::General => "general",
            Provenance::SingleRoot => "single-root",
            Provenance::SimplePlusMultiple => "simple-plus-multiple",
            Provenance::TwoMultiple => "two-multiple",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiCoefficients {
    pub t: f64,
    pub values: Vec<Complex64>,
    pub provenance: Provenance,
}

fn check_p(p: u32) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("p must be at least 2, got {p}")));
    }
    Ok(())
}

/// Fails unless `|t| max |lambda_i| < 1`.
pub(crate) fn check_disk(spec: &Spectrum, t: f64) -> Result<()> {
    let (eigenvalue, rho) = spec
        .roots()
        .iter()
        .map(|&(z, _)| (z, z.norm() * t.abs()))
        .fold((ZERO, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    if !(rho < 1.0) {
        return Err(Error::Convergence { rho, eigenvalue });
    }
    Ok(())
}

fn sign_power(s: usize, e: usize) -> f64 {
    // (-s)^e with 0^0 = 1
    (-(s as f64)).powi(e as i32)
}

fn inv_power(lambda: Complex64, s: usize) -> Complex64 {
    ONE / lambda.powu(s as u32)
}

/// `D^k g` for `k = 0..=k_max` at principal branch.
fn d_powers(polys: &DOperatorPolys, t: f64) -> Result<Vec<Complex64>> {
    (0..=polys.k_max()).map(|k| polys.apply(k, t, 0)).collect()
}

/// `phi_0 = sum_i sum_j C_ij D^j g_i`, `phi_s = Phi_s + Psi_s` for `s >= 1`.
pub fn phi_general(bc: &BinetCoefficients, p: u32, t: f64) -> Result<PhiCoefficients> {
    check_p(p)?;
    let spec = bc.spectrum();
    check_disk(spec, t)?;
    let r = spec.degree();
    let mut dk = Vec::with_capacity(spec.len());
    for &(lambda, m) in spec.roots() {
        dk.push(d_powers(&DOperatorPolys::new(lambda, p, m - 1), t)?);
    }

    let mut values = Vec::with_capacity(r);
    values.push(
        spec.roots()
            .iter()
            .enumerate()
            .map(|(i, &(_, m))| (0..m).map(|j| bc.c(i, j) * dk[i][j]).sum::<Complex64>())
            .sum(),
    );
    for s in 1..r {
        let phi_big: Complex64 = spec
            .roots()
            .iter()
            .enumerate()
            .map(|(i, &(lambda, _))| bc.c_tilde(i) * inv_power(lambda, s) * dk[i][0])
            .sum();
        values.push(phi_big + psi_expanded(bc, p, t, s)?);
    }
    Ok(PhiCoefficients {
        t,
        values,
        provenance: Provenance::General,
    })
}

/// `Psi_s` as `Psi_{s,0}` plus the `P_{k,i}` terms.
pub fn psi_expanded(bc: &BinetCoefficients, p: u32, t: f64, s: usize) -> Result<Complex64> {
    let spec = bc.spectrum();
    let mut total = ZERO;
    for &i in spec.delta2() {
        let (lambda, m) = spec.roots()[i];
        let polys = DOperatorPolys::new(lambda, p, m - 1);
        let g = polys.apply(0, t, 0)?;
        let base = ONE - lambda * t;
        let scale = inv_power(lambda, s);
        for j in 1..m {
            let cij = bc.c(i, j) * scale;
            total += cij * sign_power(s, j) * g;
            for k in 1..=j {
                let weight = binomial(j as u64, k as u64) as f64 * sign_power(s, j - k);
                total += cij * weight * polys.poly_eval(k, t) * g / base.powu(k as u32);
            }
        }
    }
    Ok(total)
}

/// `Psi_s = sum_{i in Delta2} W_{s,i}(D) g_i`, with `W_{s,i}` collected as a
/// polynomial in `D` before it is applied.
pub fn psi_compact(bc: &BinetCoefficients, p: u32, t: f64, s: usize) -> Result<Complex64> {
    let spec = bc.spectrum();
    let mut total = ZERO;
    for &i in spec.delta2() {
        let (lambda, m) = spec.roots()[i];
        let scale = inv_power(lambda, s);
        let mut w = vec![ZERO; m];
        for j in 1..m {
            for (k, wk) in w.iter_mut().enumerate().take(j + 1) {
                *wk += bc.c(i, j) * scale * binomial(j as u64, k as u64) as f64 * sign_power(s, j - k);
            }
        }
        for (k, &wk) in w.iter().enumerate() {
            total += wk * d_power_apply(lambda, p, k, t, 0)?;
        }
    }
    Ok(total)
}

/// `sum_{j>=j_from} sum_k C_j lambda^{-s} C(j,k) (-s)^{j-k} D^k g` for one root.
fn root_contribution(lambda: Complex64, c_row: &[Complex64], dk: &[Complex64], s: usize, j_from: usize) -> Complex64 {
    let scale = inv_power(lambda, s);
    let mut total = ZERO;
    for (j, &cj) in c_row.iter().enumerate().skip(j_from) {
        for (k, &d) in dk.iter().enumerate().take(j + 1) {
            total += cj * scale * binomial(j as u64, k as u64) as f64 * sign_power(s, j - k) * d;
        }
    }
    total
}

/// `C_j = sum_{h>=j} C(r-1, h) S_{h,j} / h!` for `P(z) = (z - lambda)^r`.
pub fn single_root_c(r: usize, stirling: &StirlingTable) -> Result<Vec<f64>> {
    if r - 1 > stirling.max_n() {
        return Err(Error::StirlingOverflow {
            requested: r - 1,
            max: stirling.max_n(),
        });
    }
    Ok((0..r)
        .map(|j| {
            (j..r)
                .map(|h| binomial((r - 1) as u64, h as u64) as f64 * stirling.get(h, j) as f64 * inv_factorial(h))
                .sum()
        })
        .collect())
}

pub fn phi_single_root(
    lambda: Complex64,
    m: usize,
    p: u32,
    t: f64,
    stirling: &StirlingTable,
) -> Result<PhiCoefficients> {
    check_p(p)?;
    if m == 0 {
        return Err(Error::InvalidArgument("multiplicity must be positive".into()));
    }
    let spec = Spectrum::new(vec![(lambda, m)])?;
    check_disk(&spec, t)?;
    let c: Vec<Complex64> = single_root_c(m, stirling)?
        .into_iter()
        .map(|x| Complex64::new(x, 0.0))
        .collect();
    let dk = d_powers(&DOperatorPolys::new(lambda, p, m - 1), t)?;
    let mut values = Vec::with_capacity(m);
    values.push(dk[0] + (1..m).map(|j| c[j] * dk[j]).sum::<Complex64>());
    for s in 1..m {
        values.push(inv_power(lambda, s) * dk[0] + root_contribution(lambda, &c, &dk, s, 1));
    }
    Ok(PhiCoefficients {
        t,
        values,
        provenance: Provenance::SingleRoot,
    })
}

/// `C_{i,j}` from a row of `gamma` values.
fn c_from_gamma(lambda: Complex64, r: usize, gamma: &[Complex64], stirling: &StirlingTable) -> Result<Vec<Complex64>> {
    let m = gamma.len();
    if m - 1 > stirling.max_n() {
        return Err(Error::StirlingOverflow {
            requested: m - 1,
            max: stirling.max_n(),
        });
    }
    Ok((0..m)
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
                    lambda.powu((r - 1 - h) as u32) * gamma[h] * inner
                })
                .sum()
        })
        .collect())
}

fn superpose(roots: &[(Complex64, Vec<Complex64>)], p: u32, t: f64, provenance: Provenance) -> Result<PhiCoefficients> {
    let r: usize = roots.iter().map(|(_, c)| c.len()).sum();
    let mut dks = Vec::with_capacity(roots.len());
    for (lambda, c) in roots {
        dks.push(d_powers(&DOperatorPolys::new(*lambda, p, c.len() - 1), t)?);
    }
    let values = (0..r)
        .map(|s| {
            roots
                .iter()
                .zip(&dks)
                .map(|((lambda, c), dk)| root_contribution(*lambda, c, dk, s, 0))
                .sum()
        })
        .collect();
    Ok(PhiCoefficients { t, values, provenance })
}

/// Spectra with at most two distinct roots.
pub fn phi_mixed(spec: &Spectrum, p: u32, t: f64, stirling: &StirlingTable) -> Result<PhiCoefficients> {
    check_p(p)?;
    match spec.len() {
        1 => phi_single_root(spec.lambda(0), spec.multiplicity(0), p, t, stirling),
        2 => {
            check_disk(spec, t)?;
            let r = spec.degree();
            let (l0, m0) = spec.roots()[0];
            let (l1, m1) = spec.roots()[1];
            if m0 == 1 || m1 == 1 {
                let ((mu, _), (lambda, _)) = if m0 == 1 {
                    ((l0, m0), (l1, m1))
                } else {
                    ((l1, m1), (l0, m0))
                };
                let c_mu = (mu / (mu - lambda)).powu((r - 1) as u32);
                let gamma: Vec<Complex64> = (0..r - 1)
                    .map(|h| -ONE / (mu - lambda).powu((r - 1 - h) as u32))
                    .collect();
                let c_lambda = c_from_gamma(lambda, r, &gamma, stirling)?;
                superpose(
                    &[(mu, vec![c_mu]), (lambda, c_lambda)],
                    p,
                    t,
                    Provenance::SimplePlusMultiple,
                )
            } else {
                let gamma_for = |own_m: usize, other: Complex64, own: Complex64, other_m: usize| -> Vec<Complex64> {
                    let sign = if other_m.is_multiple_of(2) { 1.0 } else { -1.0 };
                    (0..own_m)
                        .map(|h| {
                            let n = own_m - 1 - h;
                            let weight = binomial((n + other_m - 1) as u64, n as u64) as f64;
                            Complex64::new(sign * weight, 0.0) / (other - own).powu((n + other_m) as u32)
                        })
                        .collect()
                };
                let c0 = c_from_gamma(l0, r, &gamma_for(m0, l1, l0, m1), stirling)?;
                let c1 = c_from_gamma(l1, r, &gamma_for(m1, l0, l1, m0), stirling)?;
                superpose(&[(l0, c0), (l1, c1)], p, t, Provenance::TwoMultiple)
            }
        }
        l => Err(Error::InvalidArgument(format!(
            "two-root fast paths cover at most two distinct roots, got {l}"
        ))),
    }
}

/// Fast path when one exists, general formula otherwise.
pub fn phi_dispatch(spec: &Spectrum, p: u32, t: f64, stirling: &StirlingTable) -> Result<PhiCoefficients> {
    if spec.len() <= 2 {
        phi_mixed(spec, p, t, stirling)
    } else {
        phi_general(&compute_binet(spec, stirling)?, p, t)
    }
}
