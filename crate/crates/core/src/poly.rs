//! Annihilating polynomials and their spectra.
//!
//! Polynomials use the recurrence sign convention
//! `P(z) = z^r - a_0 z^{r-1} - ... - a_{r-1}`, so the stored coefficients
//! `a_0..a_{r-1}` are exactly the weights of the generalized Fibonacci
//! recurrence `u_{n+1} = a_0 u_n + ... + a_{r-1} u_{n-r+1}`.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::linalg::{frobenius_norm, poly_eval_matrix, ComplexMatrix, ONE, ZERO};

/// Default absolute distance under which two computed roots are merged.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;
/// Relative size of the Taylor coefficients `P^{(j)}(c)/j!` below which a
/// merged cluster centre is accepted as a multiple root.
pub const DEFAULT_MULTIPLICITY_TOL: f64 = 1e-10;
/// Relative determinant threshold for declaring a matrix singular.
pub const SINGULAR_TOL: f64 = 1e-12;

const MAX_ABERTH_ITERATIONS: usize = 500;

#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial {
    coeffs: Vec<Complex64>,
}

impl MonicPolynomial {
    /// `coeffs` are `a_0..a_{r-1}`; the trailing coefficient must be nonzero.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidPolynomial("non-finite coefficient".into()));
        }
        if coeffs[coeffs.len() - 1] == ZERO {
            return Err(Error::InvalidPolynomial(
                "a_{r-1} must be nonzero (zero is a root)".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `prod (z - root)` over the given roots (repeat a root for multiplicity).
    /// Panics if a root is zero.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        Self::new(coeffs_from_roots(roots)).expect("roots must be nonzero")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_0..a_{r-1}`
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Ascending power-basis coefficients `c_0..c_r` with `c_r = 1`.
    pub fn ascending(&self) -> Vec<Complex64> {
        ascending_from_recurrence(&self.coeffs)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().fold(ONE, |acc, &a| acc * z - a)
    }
}

fn ascending_from_recurrence(a: &[Complex64]) -> Vec<Complex64> {
    let r = a.len();
    let mut c = vec![ZERO; r + 1];
    c[r] = ONE;
    for (j, &aj) in a.iter().enumerate() {
        c[r - 1 - j] = -aj;
    }
    c
}

/// Recurrence coefficients of `prod (z - root)`.
fn coeffs_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    // ascending power basis, built up one linear factor at a time
    let mut asc = vec![ONE];
    for &root in roots {
        let mut next = vec![ZERO; asc.len() + 1];
        for (k, &c) in asc.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= root * c;
        }
        asc = next;
    }
    let r = roots.len();
    (0..r).map(|j| -asc[r - 1 - j]).collect()
}

/// Distinct roots with multiplicities, split into simple (`delta1`) and
/// multiple (`delta2`) index sets.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    roots: Vec<(Complex64, usize)>,
    delta1: Vec<usize>,
    delta2: Vec<usize>,
}

impl Spectrum {
    /// Keeps the caller's ordering. Roots must be pairwise distinct and every
    /// multiplicity positive.
    pub fn new(roots: Vec<(Complex64, usize)>) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::InvalidArgument("spectrum has no roots".into()));
        }
        if roots.iter().any(|&(_, m)| m == 0) {
            return Err(Error::InvalidArgument("multiplicities must be positive".into()));
        }
        for (i, &(a, _)) in roots.iter().enumerate() {
            for &(b, _) in &roots[i + 1..] {
                if a == b {
                    return Err(Error::CoincidentRoots(a, b));
                }
            }
        }
        let delta1 = (0..roots.len()).filter(|&i| roots[i].1 == 1).collect();
        let delta2 = (0..roots.len()).filter(|&i| roots[i].1 > 1).collect();
        Ok(Self { roots, delta1, delta2 })
    }

    pub fn from_real(roots: &[(f64, usize)]) -> Result<Self> {
        Self::new(roots.iter().map(|&(x, m)| (Complex64::new(x, 0.0), m)).collect())
    }

    pub fn roots(&self) -> &[(Complex64, usize)] {
        &self.roots
    }

    pub fn lambda(&self, i: usize) -> Complex64 {
        self.roots[i].0
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.roots[i].1
    }

    /// Number of distinct roots.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Degree `r = sum m_i` of the generating polynomial.
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|&(_, m)| m).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.roots.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }

    pub fn delta1(&self) -> &[usize] {
        &self.delta1
    }

    pub fn delta2(&self) -> &[usize] {
        &self.delta2
    }

    pub fn spectral_radius(&self) -> f64 {
        self.roots.iter().map(|(z, _)| z.norm()).fold(0.0, f64::max)
    }

    /// Recurrence coefficients of `prod (z - lambda_i)^{m_i}` (may end in zero
    /// when 0 is a root).
    pub fn expanded_coeffs(&self) -> Vec<Complex64> {
        let flat: Vec<Complex64> = self
            .roots
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
            .collect();
        coeffs_from_roots(&flat)
    }

    pub fn to_polynomial(&self) -> Result<MonicPolynomial> {
        MonicPolynomial::new(self.expanded_coeffs())
    }

    /// Applies `z -> f(z)` to every root, keeping multiplicities and order.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Result<Spectrum> {
        Spectrum::new(self.roots.iter().map(|&(z, m)| (f(z), m)).collect())
    }

    /// Same roots ordered by ascending modulus, then ascending argument.
    pub fn sorted(&self) -> Spectrum {
        let mut roots = self.roots.clone();
        roots.sort_by(|a, b| spectral_order(a.0, b.0));
        Spectrum::new(roots).expect("reordering keeps validity")
    }
}

/// Ascending modulus, ties broken by ascending argument. Moduli are compared
/// after rounding to 1e-10 so that conjugate pairs order by argument.
pub fn spectral_order(a: Complex64, b: Complex64) -> Ordering {
    let key = |z: Complex64| (z.norm() * 1e10).round();
    key(a).total_cmp(&key(b)).then_with(|| a.arg().total_cmp(&b.arg()))
}

/// Characteristic polynomial by the Faddeev-LeVerrier trace recursion,
/// without any singularity check. Returns `a_0..a_{d-1}`.
pub fn faddeev_leverrier(a: &ComplexMatrix) -> Vec<Complex64> {
    let d = a.dim();
    // c[k] is the coefficient of z^k in det(zI - A)
    let mut c = vec![ZERO; d + 1];
    c[d] = ONE;
    let mut m = ComplexMatrix::zeros(d);
    for k in 1..=d {
        m = (a * &m).add_scalar(c[d - k + 1]);
        let am = a * &m;
        c[d - k] = -am.trace() / k as f64;
    }
    (0..d).map(|j| -c[d - 1 - j]).collect()
}

/// Characteristic polynomial in recurrence form; errors on singular input.
pub fn characteristic_polynomial(a: &ComplexMatrix) -> Result<MonicPolynomial> {
    let coeffs = faddeev_leverrier(a);
    let d = a.dim();
    let scale = frobenius_norm(a).max(1.0).powi(d as i32);
    if coeffs[d - 1].norm() <= SINGULAR_TOL * scale {
        return Err(Error::Singular);
    }
    MonicPolynomial::new(coeffs)
}

/// `||P(A)||_F <= tol * max(1, ||A||_F^r)`
pub fn verify_annihilator(p: &MonicPolynomial, a: &ComplexMatrix, tol: f64) -> bool {
    annihilator_residual(p, a) <= tol
}

/// `||P(A)||_F / max(1, ||A||_F^r)`
pub fn annihilator_residual(p: &MonicPolynomial, a: &ComplexMatrix) -> f64 {
    let scale = frobenius_norm(a).powi(p.degree() as i32).max(1.0);
    frobenius_norm(&poly_eval_matrix(p, a)) / scale
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    pub cluster_tol: f64,
    pub multiplicity_tol: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            cluster_tol: DEFAULT_CLUSTER_TOL,
            multiplicity_tol: DEFAULT_MULTIPLICITY_TOL,
        }
    }
}

/// All roots of `p`, clustered into distinct eigenvalues within `tol`.
pub fn find_spectrum(p: &MonicPolynomial, tol: f64) -> Result<Spectrum> {
    find_spectrum_with(
        p,
        &SpectrumOptions {
            cluster_tol: tol,
            ..SpectrumOptions::default()
        },
    )
}

pub fn find_spectrum_with(p: &MonicPolynomial, opts: &SpectrumOptions) -> Result<Spectrum> {
    spectrum_of_coeffs(p.coeffs(), opts)
}

/// Like [`find_spectrum_with`] but accepts a vanishing trailing coefficient,
/// so zero may appear as a root.
pub fn spectrum_of_coeffs(a: &[Complex64], opts: &SpectrumOptions) -> Result<Spectrum> {
    if a.is_empty() {
        return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
    }
    let asc = ascending_from_recurrence(a);
    let roots = polynomial_roots(&asc)?;
    let clusters = cluster_roots(&asc, roots, opts);
    Spectrum::new(clusters)
}

fn horner_with_derivative(asc: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &c in asc.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Rounding-level magnitude of `p(z)`: `sum |c_k| |z|^k`.
fn eval_scale(asc: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    asc.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Aberth-Ehrlich simultaneous iteration on a monic polynomial given in
/// ascending coefficients.
pub fn polynomial_roots(asc: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut asc = asc.to_vec();
    // exact zero roots are split off first
    let mut zeros = 0;
    while asc.len() > 1 && asc[0] == ZERO {
        asc.remove(0);
        zeros += 1;
    }
    let n = asc.len() - 1;
    let mut roots = vec![ZERO; zeros];
    if n == 0 {
        return Ok(roots);
    }
    let lead = asc[n];
    let asc: Vec<Complex64> = asc.iter().map(|c| c / lead).collect();
    if n == 1 {
        roots.push(-asc[0]);
        return Ok(roots);
    }

    // Fujiwara bound on root moduli
    let mut bound: f64 = 0.0;
    for k in 0..n {
        let term = if k == 0 { asc[0].norm() / 2.0 } else { asc[k].norm() };
        bound = bound.max(term.powf(1.0 / (n - k) as f64));
    }
    let radius = (2.0 * bound).max(f64::MIN_POSITIVE) * 0.5;

    let mut worst = f64::INFINITY;
    let mut best = Vec::new();
    for (attempt, offset) in START_OFFSETS.iter().enumerate() {
        // later attempts never freeze on backward error alone
        let z = aberth(&asc, radius, *offset, attempt == 0);
        let err = reconstruction_error(&asc, &z);
        if err <= RECONSTRUCTION_TOL {
            roots.extend(z);
            return Ok(roots);
        }
        if err < worst {
            worst = err;
            best = z;
        }
    }
    Err(Error::RootFinding {
        iterations: MAX_ABERTH_ITERATIONS * START_OFFSETS.len(),
        worst_residual: worst,
        best_roots: best,
    })
}

const START_OFFSETS: [f64; 4] = [0.4, 1.1, 2.3, 2.9];

/// Relative coefficient error of `prod (z - z_k)` against `asc`.
const RECONSTRUCTION_TOL: f64 = 1e-4;

fn reconstruction_error(asc: &[Complex64], z: &[Complex64]) -> f64 {
    let mut prod = vec![ONE];
    for &root in z {
        let mut next = vec![ZERO; prod.len() + 1];
        for (k, &c) in prod.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * root;
        }
        prod = next;
    }
    let scale = asc.iter().map(|c| c.norm()).sum::<f64>().max(1.0);
    prod.iter().zip(asc).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / scale
}

fn aberth(asc: &[Complex64], radius: f64, offset: f64, freeze: bool) -> Vec<Complex64> {
    let n = asc.len() - 1;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + offset))
        .collect();
    let eps = f64::EPSILON;
    let mut done = vec![false; n];
    for _ in 0..MAX_ABERTH_ITERATIONS {
        for k in 0..n {
            let (p, dp) = horner_with_derivative(asc, z[k]);
            let small = p.norm() <= 4.0 * n as f64 * eps * eval_scale(asc, z[k]);
            if small && (freeze || p == ZERO) {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = z[k] - z[j];
                    if diff == ZERO {
                        ZERO
                    } else {
                        ONE / diff
                    }
                })
                .sum();
            let step = ratio / (ONE - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // derivative vanished; nudge off the critical point
                z[k] += Complex64::new(radius * 1e-3, radius * 1e-3);
                done[k] = false;
                continue;
            }
            z[k] -= step;
            done[k] = small || step.norm() <= 4.0 * eps * z[k].norm().max(f64::MIN_POSITIVE);
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }
    z
}

/// `P^{(j)}(c) / j!` and its rounding scale.
fn taylor_coefficient(asc: &[Complex64], c: Complex64, j: usize) -> (Complex64, f64) {
    let mut value = ZERO;
    let mut scale = 0.0;
    for (k, &ck) in asc.iter().enumerate().skip(j) {
        let b = binomial(k as u64, j as u64) as f64;
        value += ck * b * c.powu((k - j) as u32);
        scale += ck.norm() * b * c.norm().powi((k - j) as i32);
    }
    (value, scale)
}

fn centroid(points: &[(Complex64, usize)]) -> (Complex64, usize) {
    let m: usize = points.iter().map(|p| p.1).sum();
    let sum: Complex64 = points.iter().map(|&(z, k)| z * k as f64).sum();
    (sum / m as f64, m)
}

/// Newton on `P^{(m-1)}`, which has a simple root at an `m`-fold root of `P`.
fn refine_multiple(asc: &[Complex64], start: Complex64, m: usize) -> Complex64 {
    let mut z = start;
    for _ in 0..50 {
        let (f, _) = taylor_coefficient(asc, z, m - 1);
        let (df, _) = taylor_coefficient(asc, z, m);
        let step = f / (df * m as f64);
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    z
}

/// Refined centre of a candidate `m`-fold root, if `P` and its first `m-1`
/// derivatives vanish there to within `multiplicity_tol`.
fn accept_multiple(
    asc: &[Complex64],
    members: &[(Complex64, usize)],
    opts: &SpectrumOptions,
) -> Option<(Complex64, usize)> {
    let (c0, m) = centroid(members);
    if m == 1 {
        return Some((c0, 1));
    }
    let c = refine_multiple(asc, c0, m);
    // roots of P(c + w) = eps * scale satisfy |T_j| |w|^j <= eps * scale for every j >= m
    let (_, s0) = taylor_coefficient(asc, c, 0);
    let radius = (m..asc.len())
        .map(|j| (opts.multiplicity_tol * s0 / taylor_coefficient(asc, c, j).0.norm()).powf(1.0 / j as f64))
        .fold(f64::INFINITY, f64::min);
    if members
        .iter()
        .any(|&(z, _)| (z - c).norm() > radius.max(opts.cluster_tol))
    {
        return None;
    }
    let ok = (0..m).all(|order| {
        let (v, s) = taylor_coefficient(asc, c, order);
        v.norm() <= opts.multiplicity_tol * s.max(f64::MIN_POSITIVE)
    });
    ok.then_some((c, m))
}

/// Greedy clustering in spectral order, then a merge pass for groups of
/// clusters whose joint centre is a numerically exact multiple root.
fn cluster_roots(asc: &[Complex64], mut roots: Vec<Complex64>, opts: &SpectrumOptions) -> Vec<(Complex64, usize)> {
    roots.sort_by(|a, b| spectral_order(*a, *b));
    let mut used = vec![false; roots.len()];
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let seed = roots[i];
        let mut members = Vec::new();
        for j in i..roots.len() {
            if !used[j] && (roots[j] - seed).norm() <= opts.cluster_tol {
                used[j] = true;
                members.push((roots[j], 1));
            }
        }
        let (c0, m) = centroid(&members);
        let c = if m > 1 { refine_multiple(asc, c0, m) } else { c0 };
        // keep the centroid if refinement wandered off
        let c = if (c - c0).norm() <= 10.0 * opts.cluster_tol {
            c
        } else {
            c0
        };
        clusters.push((c, m));
    }

    // grow each cluster by its nearest neighbours until the union is accepted
    'merge: loop {
        for i in 0..clusters.len() {
            let mut near: Vec<usize> = (0..clusters.len()).filter(|&j| j != i).collect();
            near.sort_by(|&a, &b| {
                let da = (clusters[a].0 - clusters[i].0).norm();
                let db = (clusters[b].0 - clusters[i].0).norm();
                da.total_cmp(&db)
            });
            for k in 1..=near.len() {
                let mut group = vec![clusters[i]];
                group.extend(near[..k].iter().map(|&j| clusters[j]));
                if let Some(merged) = accept_multiple(asc, &group, opts) {
                    let mut gone = near[..k].to_vec();
                    gone.sort_unstable_by(|a, b| b.cmp(a));
                    clusters[i] = merged;
                    for j in gone {
                        clusters.remove(j);
                    }
                    continue 'merge;
                }
            }
        }
        break;
    }

    clusters.sort_by(|a, b| spectral_order(a.0, b.0));
    clusters
}
