//! All primary `p`th roots `f_[j](I - tA)` of a matrix given in Jordan form,
//! one for each choice of branch per distinct eigenvalue.

use std::fmt;

use num_complex::Complex64;

use crate::binet::for_each_composition;
use crate::combinatorics::{binomial, StirlingTable};
use crate::engine::phi::phi_single_root;
use crate::engine::root::{choose_scale, choose_shift, SHIFT_THRESHOLD};
use crate::error::{Error, Result};
use crate::linalg::{frobenius_norm, mat_power, ComplexMatrix, ONE, ZERO};
use crate::poly::Spectrum;

/// Tolerance for the block-structure checks on a caller-supplied matrix.
const STRUCTURE_TOL: f64 = 1e-9;

/// All Jordan blocks belonging to one eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanGroup {
    pub lambda: Complex64,
    pub sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JordanForm {
    groups: Vec<JordanGroup>,
}

impl JordanForm {
    pub fn new(groups: Vec<JordanGroup>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::InvalidArgument("Jordan form has no blocks".into()));
        }
        for g in &groups {
            if g.sizes.is_empty() || g.sizes.contains(&0) {
                return Err(Error::InvalidArgument(format!(
                    "eigenvalue {} needs positive block sizes",
                    g.lambda
                )));
            }
            if !g.lambda.re.is_finite() || !g.lambda.im.is_finite() {
                return Err(Error::InvalidArgument("non-finite eigenvalue".into()));
            }
        }
        for (i, a) in groups.iter().enumerate() {
            for b in &groups[i + 1..] {
                if a.lambda == b.lambda {
                    return Err(Error::CoincidentRoots(a.lambda, b.lambda));
                }
            }
        }
        Ok(Self { groups })
    }

    pub fn from_real(groups: &[(f64, &[usize])]) -> Result<Self> {
        Self::new(
            groups
                .iter()
                .map(|&(x, sizes)| JordanGroup {
                    lambda: Complex64::new(x, 0.0),
                    sizes: sizes.to_vec(),
                })
                .collect(),
        )
    }

    pub fn groups(&self) -> &[JordanGroup] {
        &self.groups
    }

    /// Number of distinct eigenvalues.
    pub fn l(&self) -> usize {
        self.groups.len()
    }

    pub fn lambda(&self, k: usize) -> Complex64 {
        self.groups[k].lambda
    }

    /// Algebraic multiplicity `d_k`.
    pub fn d_k(&self, k: usize) -> usize {
        self.groups[k].sizes.iter().sum()
    }

    /// Minimal-polynomial exponent `m_k`: the largest block.
    pub fn m_k(&self, k: usize) -> usize {
        self.groups[k].sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn dim(&self) -> usize {
        (0..self.l()).map(|k| self.d_k(k)).sum()
    }

    fn offset(&self, k: usize) -> usize {
        (0..k).map(|i| self.d_k(i)).sum()
    }

    /// Block-diagonal Jordan matrix with ones on the superdiagonal of each block.
    pub fn matrix(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim());
        let mut pos = 0;
        for g in &self.groups {
            for &size in &g.sizes {
                for i in 0..size {
                    out[(pos + i, pos + i)] = g.lambda;
                    if i + 1 < size {
                        out[(pos + i, pos + i + 1)] = ONE;
                    }
                }
                pos += size;
            }
        }
        out
    }

    /// Same block layout with every eigenvalue mapped through `f`.
    pub fn map_eigenvalues(&self, f: impl Fn(Complex64) -> Complex64) -> Result<JordanForm> {
        JordanForm::new(
            self.groups
                .iter()
                .map(|g| JordanGroup {
                    lambda: f(g.lambda),
                    sizes: g.sizes.clone(),
                })
                .collect(),
        )
    }

    /// Minimal polynomial roots `(lambda_k, m_k)`.
    pub fn minimal_spectrum(&self) -> Result<Spectrum> {
        Spectrum::new((0..self.l()).map(|k| (self.lambda(k), self.m_k(k))).collect())
    }

    /// `I_(d_k, A)`: identity on the `k`th group, zero elsewhere.
    pub fn block_indicator(&self, k: usize) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim());
        let start = self.offset(k);
        for i in start..start + self.d_k(k) {
            out[(i, i)] = ONE;
        }
        out
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k >= self.l() {
            return Err(Error::InvalidArgument(format!(
                "eigenvalue index {k} out of range 0..{}",
                self.l()
            )));
        }
        Ok(())
    }
}

/// One branch index per distinct eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchTuple {
    entries: Vec<u32>,
}

impl BranchTuple {
    pub fn new(entries: Vec<u32>, p: u32) -> Result<Self> {
        if let Some(&j) = entries.iter().find(|&&j| j >= p) {
            return Err(Error::InvalidArgument(format!("branch {j} outside 0..{p}")));
        }
        Ok(Self { entries })
    }

    pub fn principal(l: usize) -> Self {
        Self { entries: vec![0; l] }
    }

    /// Every tuple in `R(p)^l`, first entry varying fastest.
    pub fn all(p: u32, l: usize) -> Vec<BranchTuple> {
        let count = (p as usize).pow(l as u32);
        (0..count)
            .map(|mut n| {
                let entries = (0..l)
                    .map(|_| {
                        let j = (n % p as usize) as u32;
                        n /= p as usize;
                        j
                    })
                    .collect();
                BranchTuple { entries }
            })
            .collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_principal(&self) -> bool {
        self.entries.iter().all(|&j| j == 0)
    }
}

impl fmt::Display for BranchTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|j| j.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `alpha_{i,k}` for `i = 0..m_k`: Taylor coefficients at `lambda_k` of
/// `prod_{t != k} ((lambda_k - lambda_t) / (z - lambda_t))^{m_t}`.
pub fn alpha_coeffs(jf: &JordanForm, k: usize) -> Result<Vec<Complex64>> {
    jf.check_index(k)?;
    let lambda_k = jf.lambda(k);
    let others: Vec<(Complex64, usize)> = (0..jf.l())
        .filter(|&t| t != k)
        .map(|t| (lambda_k - jf.lambda(t), jf.m_k(t)))
        .collect();
    Ok((0..jf.m_k(k))
        .map(|i| {
            let mut sum = ZERO;
            for_each_composition(i, others.len(), &mut |hs| {
                let mut term = ONE;
                for (&h, &(diff, m)) in hs.iter().zip(&others) {
                    term *= binomial((m + h - 1) as u64, h as u64) as f64 / diff.powu(h as u32);
                }
                sum += term;
            });
            if i % 2 == 0 {
                sum
            } else {
                -sum
            }
        })
        .collect())
}

/// `(M_k - lambda_k I)_A^eta` from polynomials in the Jordan matrix of `jf`.
pub fn projector_power(jf: &JordanForm, k: usize, eta: usize) -> Result<ComplexMatrix> {
    projector_power_of(&jf.matrix(), jf, k, eta)
}

/// As [`projector_power`] for any block-diagonal `a` whose layout and
/// eigenvalues are described by `jf`.
pub fn projector_power_of(a: &ComplexMatrix, jf: &JordanForm, k: usize, eta: usize) -> Result<ComplexMatrix> {
    jf.check_index(k)?;
    check_dims(a, jf)?;
    let d = a.dim();
    let m_k = jf.m_k(k);
    if eta >= m_k {
        return Ok(ComplexMatrix::zeros(d));
    }
    let lambda_k = jf.lambda(k);
    let mut prod = ComplexMatrix::identity(d);
    for w in (0..jf.l()).filter(|&w| w != k) {
        let lambda_w = jf.lambda(w);
        let m_w = jf.m_k(w);
        let factor =
            mat_power(&a.add_scalar(-lambda_w), m_w as u64).scale(ONE / (lambda_k - lambda_w).powu(m_w as u32));
        prod = &prod * &factor;
    }
    let alpha = alpha_coeffs(jf, k)?;
    let shifted = a.add_scalar(-lambda_k);
    let mut power = mat_power(&shifted, eta as u64);
    let mut sum = ComplexMatrix::zeros(d);
    for &alpha_i in alpha.iter().take(m_k - eta) {
        sum.axpy(alpha_i, &power);
        power = &power * &shifted;
    }
    Ok(&prod * &sum)
}

fn check_dims(a: &ComplexMatrix, jf: &JordanForm) -> Result<()> {
    if a.dim() != jf.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: jf.dim(),
        });
    }
    Ok(())
}

/// Rejects `a` unless it is block diagonal along `jf` with each block
/// annihilated by `(z - lambda_k)^{m_k}`.
fn check_structure(a: &ComplexMatrix, jf: &JordanForm) -> Result<()> {
    check_dims(a, jf)?;
    let scale = frobenius_norm(a).max(1.0);
    let mut owner = Vec::with_capacity(a.dim());
    for k in 0..jf.l() {
        owner.extend(std::iter::repeat_n(k, jf.d_k(k)));
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if owner[i] != owner[j] && a[(i, j)].norm() > STRUCTURE_TOL * scale {
                return Err(Error::InvalidMatrix(format!(
                    "entry ({i},{j}) couples different eigenvalue blocks"
                )));
            }
        }
    }
    for k in 0..jf.l() {
        let start = jf.offset(k);
        let dk = jf.d_k(k);
        let block = ComplexMatrix::from_fn(dk, |i, j| a[(start + i, start + j)]);
        let nil = mat_power(&block.add_scalar(-jf.lambda(k)), jf.m_k(k) as u64);
        if frobenius_norm(&nil) > STRUCTURE_TOL * scale.powi(jf.m_k(k) as i32) {
            return Err(Error::NotAnnihilator {
                residual: frobenius_norm(&nil),
            });
        }
    }
    Ok(())
}

/// Scalar weights of one eigenvalue group: `c_0` multiplies the block
/// indicator and `c_eta` the projector powers, all for the principal branch.
#[derive(Debug, Clone, PartialEq)]
struct GroupWeights {
    c: Vec<Complex64>,
}

fn group_weights(lambda: Complex64, m: usize, p: u32, t: f64, stirling: &StirlingTable) -> Result<GroupWeights> {
    let tl = (lambda * t).norm();
    if !(tl < 1.0) {
        return Err(Error::Convergence {
            rho: tl,
            eigenvalue: lambda,
        });
    }
    // small eigenvalues with m >= 2 are moved away from zero by an exact shift
    let (lam, t_eff, factor) = if t != 0.0 && m >= 2 && tl < SHIFT_THRESHOLD {
        match choose_shift(&[ONE - lambda * t]) {
            Some(kappa) if kappa != 1.0 => {
                let sigma = (1.0 - kappa) / t;
                (lambda - sigma, t / kappa, kappa.powf(1.0 / p as f64))
            }
            _ => (lambda, t, 1.0),
        }
    } else {
        (lambda, t, 1.0)
    };
    if m >= 2 && lam == ZERO {
        return Err(Error::Singular);
    }
    let phi = phi_single_root(lam, m, p, t_eff, stirling)?.values;
    // b_0 = 1, b_l = -a_{l-1} with a the coefficients of (z - lam)^m
    let a = Spectrum::new(vec![(lam, m)])?.expanded_coeffs();
    let b: Vec<Complex64> = std::iter::once(ONE).chain(a.iter().map(|&x| -x)).collect();

    let mut c = vec![ZERO; m];
    c[0] = phi[0];
    for (tau, &phi_tau) in phi.iter().enumerate().take(m).skip(1) {
        c[0] += phi_tau * (0..=tau).map(|l| b[l] * lam.powu((tau - l) as u32)).sum::<Complex64>();
    }
    for (eta, c_eta) in c.iter_mut().enumerate().skip(1) {
        for (tau, &phi_tau) in phi.iter().enumerate().take(m).skip(eta) {
            let upsilon: Complex64 = (0..=tau - eta)
                .map(|l| b[l] * binomial((tau - l) as u64, eta as u64) as f64 * lam.powu((tau - l - eta) as u32))
                .sum();
            *c_eta += phi_tau * upsilon;
        }
    }
    Ok(GroupWeights {
        c: c.into_iter().map(|x| x * factor).collect(),
    })
}

/// All `p^l` primary roots of `I - tA` for the Jordan matrix of `jf`.
pub fn enumerate_primary_roots(jf: &JordanForm, p: u32, t: f64) -> Result<Vec<(BranchTuple, ComplexMatrix)>> {
    enumerate_primary_roots_of(&jf.matrix(), jf, p, t)
}

/// As [`enumerate_primary_roots`] for any block-diagonal `a` laid out as `jf`.
pub fn enumerate_primary_roots_of(
    a: &ComplexMatrix,
    jf: &JordanForm,
    p: u32,
    t: f64,
) -> Result<Vec<(BranchTuple, ComplexMatrix)>> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("p must be at least 2, got {p}")));
    }
    check_structure(a, jf)?;
    let max_m = (0..jf.l()).map(|k| jf.m_k(k)).max().unwrap_or(1);
    let stirling = StirlingTable::new(max_m - 1)?;

    // per-group principal-branch contribution, shared by every branch tuple
    let mut parts = Vec::with_capacity(jf.l());
    for k in 0..jf.l() {
        let weights = group_weights(jf.lambda(k), jf.m_k(k), p, t, &stirling)?;
        let mut part = jf.block_indicator(k).scale(weights.c[0]);
        for (eta, &c_eta) in weights.c.iter().enumerate().skip(1) {
            part.axpy(c_eta, &projector_power_of(a, jf, k, eta)?);
        }
        parts.push(part);
    }

    let omega = |j: u32| root_of_unity(j, p);
    Ok(BranchTuple::all(p, jf.l())
        .into_iter()
        .map(|tuple| {
            let mut x = ComplexMatrix::zeros(a.dim());
            for (part, &j) in parts.iter().zip(tuple.entries()) {
                x.axpy(omega(j), part);
            }
            (tuple, x)
        })
        .collect())
}

/// `exp(2 pi i j / p)`, exact at quarter turns.
pub fn root_of_unity(j: u32, p: u32) -> Complex64 {
    let j = j % p;
    if (4 * j).is_multiple_of(p) {
        return match 4 * j / p {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / p as f64)
}

pub fn principal_from_enumeration(roots: &[(BranchTuple, ComplexMatrix)]) -> Result<ComplexMatrix> {
    roots
        .iter()
        .find(|(tuple, _)| tuple.is_principal())
        .map(|(_, x)| x.clone())
        .ok_or_else(|| Error::InvalidArgument("no principal branch tuple in the list".into()))
}

/// `S X S^{-1}` for every root, mapping roots of `J` to roots of `S J S^{-1}`.
pub fn conjugate_roots(
    roots: &[(BranchTuple, ComplexMatrix)],
    s: &ComplexMatrix,
) -> Result<Vec<(BranchTuple, ComplexMatrix)>> {
    let s_inv = s.inverse()?;
    roots
        .iter()
        .map(|(tuple, x)| {
            if x.dim() != s.dim() {
                return Err(Error::DimensionMismatch {
                    left: x.dim(),
                    right: s.dim(),
                });
            }
            Ok((tuple.clone(), &(s * x) * &s_inv))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumeratedRoots {
    pub roots: Vec<(BranchTuple, ComplexMatrix)>,
    /// Scale `c` when `B/c` was used.
    pub scale: Option<f64>,
}

/// All primary `p`th roots of `B` given in Jordan form, through `A = I - B`
/// (or `A = I - B/c` when `scale` is set and needed).
pub fn enumerate_roots_of_jordan(jf_b: &JordanForm, p: u32, scale: bool) -> Result<EnumeratedRoots> {
    enumerate_roots_of_block_diagonal(&jf_b.matrix(), jf_b, p, scale)
}

/// As [`enumerate_roots_of_jordan`] for any block-diagonal `b` laid out as `jf_b`.
pub fn enumerate_roots_of_block_diagonal(
    b: &ComplexMatrix,
    jf_b: &JordanForm,
    p: u32,
    scale: bool,
) -> Result<EnumeratedRoots> {
    if jf_b.groups().iter().any(|g| g.lambda == ZERO) {
        return Err(Error::Singular);
    }
    let (worst, rho) = jf_b
        .groups()
        .iter()
        .map(|g| (g.lambda, (ONE - g.lambda).norm()))
        .fold((ONE, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    let c = if rho < 1.0 {
        None
    } else if scale {
        let mus: Vec<(Complex64, usize)> = (0..jf_b.l()).map(|k| (jf_b.lambda(k), jf_b.d_k(k))).collect();
        Some(choose_scale(&mus).ok_or(Error::Convergence { rho, eigenvalue: worst })?)
    } else {
        return Err(Error::Convergence { rho, eigenvalue: worst });
    };
    let c_val = c.unwrap_or(1.0);
    let a = &ComplexMatrix::identity(b.dim()) - &b.scale(Complex64::new(1.0 / c_val, 0.0));
    let jf_a = jf_b.map_eigenvalues(|mu| ONE - mu / c_val)?;
    let mut roots = enumerate_primary_roots_of(&a, &jf_a, p, 1.0)?;
    if c.is_some() {
        let factor = Complex64::new(c_val.powf(1.0 / p as f64), 0.0);
        for (_, x) in &mut roots {
            *x = x.scale(factor);
        }
    }
    Ok(EnumeratedRoots { roots, scale: c })
}
