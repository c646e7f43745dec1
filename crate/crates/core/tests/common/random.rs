//! Seeded generators for randomized checks.
#![allow(dead_code)]

use matroot::primary::{JordanForm, JordanGroup};
use matroot::{Complex64, ComplexMatrix, MonicPolynomial, Spectrum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of modulus in `[r_min, r_max]`.
pub fn annulus_point(rng: &mut ChaCha8Rng, r_min: f64, r_max: f64) -> Complex64 {
    let r = rng.gen_range(r_min..=r_max);
    let theta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    Complex64::from_polar(r, theta)
}

/// `n` points in the annulus with pairwise distance at least `sep`.
pub fn separated_points(rng: &mut ChaCha8Rng, n: usize, r_min: f64, r_max: f64, sep: f64) -> Vec<Complex64> {
    loop {
        let mut pts: Vec<Complex64> = Vec::with_capacity(n);
        for _ in 0..200 * n {
            if pts.len() == n {
                break;
            }
            let z = annulus_point(rng, r_min, r_max);
            if pts.iter().all(|w| (w - z).norm() >= sep) {
                pts.push(z);
            }
        }
        if pts.len() == n {
            return pts;
        }
    }
}

pub fn spectrum_with(rng: &mut ChaCha8Rng, mults: &[usize], r_min: f64, r_max: f64, sep: f64) -> Spectrum {
    let pts = separated_points(rng, mults.len(), r_min, r_max, sep);
    Spectrum::new(pts.into_iter().zip(mults.iter().copied()).collect()).unwrap()
}

/// `l <= l_max` roots with multiplicities `<= m_max`.
pub fn random_spectrum(rng: &mut ChaCha8Rng, l_max: usize, m_max: usize, r_max: f64, sep: f64) -> Spectrum {
    let l = rng.gen_range(1..=l_max);
    let mults: Vec<usize> = (0..l).map(|_| rng.gen_range(1..=m_max)).collect();
    spectrum_with(rng, &mults, 0.0, r_max, sep)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, d: usize, scale: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale
    })
}

/// Well-conditioned `S = I + 0.3 G / sqrt(d)`.
pub fn random_similarity(rng: &mut ChaCha8Rng, d: usize) -> (ComplexMatrix, ComplexMatrix) {
    loop {
        let g = random_matrix(rng, d, 0.3 / (d as f64).sqrt());
        let s = &ComplexMatrix::identity(d) + &g;
        if let Ok(inv) = s.inverse() {
            if inv.max_abs() < 10.0 {
                return (s, inv);
            }
        }
    }
}

/// One Jordan block per root, so the spectrum polynomial is minimal.
pub fn jordan_of(spec: &Spectrum) -> ComplexMatrix {
    let groups = spec
        .roots()
        .iter()
        .map(|&(lambda, m)| JordanGroup { lambda, sizes: vec![m] })
        .collect();
    JordanForm::new(groups).unwrap().matrix()
}

/// `S J S^{-1}` annihilated by the polynomial of `spec`.
pub fn annihilated_matrix(rng: &mut ChaCha8Rng, spec: &Spectrum) -> (ComplexMatrix, MonicPolynomial) {
    let j = jordan_of(spec);
    let (s, s_inv) = random_similarity(rng, j.dim());
    (&(&s * &j) * &s_inv, spec.to_polynomial().unwrap())
}

/// Random Jordan form with `l <= l_max` groups and total size `<= d_max`.
pub fn random_jordan(rng: &mut ChaCha8Rng, l_max: usize, d_max: usize, r_max: f64, sep: f64) -> JordanForm {
    let l = rng.gen_range(1..=l_max);
    let pts = separated_points(rng, l, 0.05, r_max, sep);
    let mut budget = d_max - l;
    let groups = pts
        .into_iter()
        .map(|lambda| {
            let mut sizes = vec![1];
            while budget > 0 && sizes.len() < 3 && rng.gen_bool(0.5) {
                let grow = rng.gen_range(0..sizes.len() + 1);
                if grow < sizes.len() {
                    sizes[grow] += 1;
                } else {
                    sizes.push(1);
                }
                budget -= 1;
            }
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            JordanGroup { lambda, sizes }
        })
        .collect();
    JordanForm::new(groups).unwrap()
}

/// `B = I - S D S^{-1}` with `|lambda| in [0.05, 0.9]`, separation `>= 0.08`.
pub struct DiagonalizableCase {
    pub b: ComplexMatrix,
    pub a: ComplexMatrix,
    pub spectrum: Spectrum,
}

pub fn diagonalizable_case(rng: &mut ChaCha8Rng, d: usize) -> DiagonalizableCase {
    let spectrum = spectrum_with(rng, &vec![1; d], 0.05, 0.9, 0.08);
    let diag: Vec<Complex64> = spectrum.roots().iter().map(|r| r.0).collect();
    let (s, s_inv) = random_similarity(rng, d);
    let a = &(&s * &ComplexMatrix::diagonal(&diag)) * &s_inv;
    let b = &ComplexMatrix::identity(d) - &a;
    DiagonalizableCase { b, a, spectrum }
}

/// Signed `t` with `|t| rho < 0.95` and `|t lambda| >= 1e-2` for every root,
/// the regime in which the weights are evaluated without a shift.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn unshifted_t(rng: &mut ChaCha8Rng, spec: &Spectrum) -> Option<f64> {
    let moduli = spec.roots().iter().map(|r| r.0.norm());
    let (lo, hi) = moduli.fold((f64::INFINITY, 0.0f64), |(lo, hi), m| (lo.min(m), hi.max(m)));
    let (t_min, t_max) = (1e-2 / lo, 0.95 / hi.max(1e-300));
    if !(t_min < t_max) {
        return None;
    }
    let t = rng.gen_range(t_min..t_max.min(1.0).max(t_min * 1.0001));
    Some(if rng.gen_bool(0.5) { t } else { -t })
}
