//! Assembly of `(I - tA)^{1/p}` on the Hörner basis and principal roots of `B`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::combinatorics::StirlingTable;
use crate::engine::phi::{check_disk, phi_dispatch, PhiCoefficients, Provenance};
use crate::error::{Error, Result};
use crate::horner::{build_basis, ANNIHILATOR_TOL};
use crate::linalg::{frobenius_norm, relative_error, ComplexMatrix, ONE};
use crate::oracle::{residual, series_root, spectral_principal_root, DEFAULT_SERIES_TERMS};
use crate::poly::{
    annihilator_residual, characteristic_polynomial, faddeev_leverrier, spectrum_of_coeffs, MonicPolynomial, Spectrum,
    SpectrumOptions,
};

/// Below this value of `min |t lambda_i|` the spectrum is shifted away from zero.
pub const SHIFT_THRESHOLD: f64 = 1e-2;
/// Largest admissible `|t lambda|` after shifting or scaling.
pub const DISK_MARGIN: f64 = 0.95;
/// Slack on the sector test `|arg z| < pi/p`.
pub const SECTOR_TOL: f64 = 1e-10;

const SHIFT_CANDIDATES: [f64; 13] = [1.0, 1.05, 0.95, 1.1, 0.9, 1.2, 0.8, 1.3, 0.7, 1.5, 0.6, 2.0, 0.5];

/// Picks `kappa > 0` so that `I - tA = kappa (I - t/kappa (A - sigma I))`
/// keeps every `|kappa - w_i| / kappa` inside the disk and as far from zero as
/// possible, where `w_i = 1 - t lambda_i`.
pub fn choose_shift(ws: &[Complex64]) -> Option<f64> {
    let mut best: Option<(f64, f64)> = None;
    for &kappa in &SHIFT_CANDIDATES {
        let ratios = ws.iter().map(|w| (kappa - w).norm() / kappa);
        let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), x| (lo.min(x), hi.max(x)));
        if hi > DISK_MARGIN {
            continue;
        }
        if best.is_none_or(|(_, score)| lo > score) {
            best = Some((kappa, lo));
        }
    }
    best.map(|(kappa, _)| kappa)
}

/// Picks `c > 0` with `max |1 - mu_i / c| <= DISK_MARGIN`, trying the
/// centroid magnitude first.
pub fn choose_scale(mus: &[(Complex64, usize)]) -> Option<f64> {
    let total: usize = mus.iter().map(|m| m.1).sum();
    let centroid = (mus.iter().map(|&(z, m)| z * m as f64).sum::<Complex64>() / total as f64).norm();
    let max = mus.iter().map(|m| m.0.norm()).fold(0.0, f64::max);
    let min = mus.iter().map(|m| m.0.norm()).fold(f64::INFINITY, f64::min);
    let mean = mus.iter().map(|&(z, m)| z.norm() * m as f64).sum::<f64>() / total as f64;
    [centroid, max, 0.5 * (max + min), (max * min).sqrt(), mean]
        .into_iter()
        .filter(|c| c.is_finite() && *c > 0.0)
        .find(|&c| mus.iter().all(|&(z, _)| (ONE - z / c).norm() <= DISK_MARGIN))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedRoot {
    pub root: ComplexMatrix,
    pub phi: PhiCoefficients,
    /// Spectrum the weights were computed from (after any shift).
    pub spectrum: Spectrum,
    /// `kappa` when the spectrum was shifted away from zero.
    pub kappa: Option<f64>,
}

/// `(I - tA)^{1/p}` with full diagnostics. An explicit spectrum or annihilator
/// of `a` bypasses the characteristic polynomial.
pub fn shifted_root_detailed(
    a: &ComplexMatrix,
    p: u32,
    t: f64,
    annihilator: Option<&MonicPolynomial>,
    spectrum: Option<&Spectrum>,
    opts: &SpectrumOptions,
) -> Result<ShiftedRoot> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("p must be at least 2, got {p}")));
    }
    if !t.is_finite() {
        return Err(Error::InvalidArgument("t must be finite".into()));
    }
    if let Some(poly) = annihilator {
        let residual = annihilator_residual(poly, a);
        if !(residual <= ANNIHILATOR_TOL) {
            return Err(Error::NotAnnihilator { residual });
        }
    }
    let spectrum = match (spectrum, annihilator) {
        (Some(s), Some(poly)) if s.degree() != poly.degree() => {
            return Err(Error::InvalidArgument(format!(
                "spectrum degree {} does not match annihilator degree {}",
                s.degree(),
                poly.degree()
            )))
        }
        (Some(s), _) => s.clone(),
        (None, Some(poly)) => spectrum_of_coeffs(poly.coeffs(), opts)?,
        (None, None) => spectrum_of_coeffs(&faddeev_leverrier(a), opts)?,
    };
    let d = a.dim();
    if t == 0.0 || a.max_abs() == 0.0 {
        return Ok(ShiftedRoot {
            root: ComplexMatrix::identity(d),
            phi: PhiCoefficients {
                t,
                values: vec![ONE],
                provenance: Provenance::General,
            },
            spectrum,
            kappa: None,
        });
    }
    check_disk(&spectrum, t)?;

    let min_tl = spectrum
        .roots()
        .iter()
        .map(|(z, _)| z.norm() * t.abs())
        .fold(f64::INFINITY, f64::min);
    let kappa = if min_tl < SHIFT_THRESHOLD {
        let ws: Vec<Complex64> = spectrum.roots().iter().map(|&(z, _)| ONE - z * t).collect();
        match choose_shift(&ws) {
            Some(k) if k != 1.0 => Some(k),
            _ if min_tl == 0.0 => return Err(Error::Singular),
            _ => None,
        }
    } else {
        None
    };

    let (work_a, work_spec, work_t, poly) = match kappa {
        Some(k) => {
            let sigma = (1.0 - k) / t;
            let shifted = spectrum.map(|z| z - sigma)?;
            let poly = shifted.to_polynomial()?;
            (a.add_scalar(Complex64::new(-sigma, 0.0)), shifted, t / k, poly)
        }
        None => {
            let poly = match annihilator {
                Some(poly) => poly.clone(),
                None => spectrum.to_polynomial()?,
            };
            (a.clone(), spectrum, t, poly)
        }
    };

    let basis = build_basis(&work_a, &poly)?;
    let stirling = StirlingTable::new(work_spec.max_multiplicity() - 1)?;
    let phi = phi_dispatch(&work_spec, p, work_t, &stirling)?;
    let mut root = basis.combine(&phi.values)?;
    if let Some(k) = kappa {
        root = root.scale(Complex64::new(k.powf(1.0 / p as f64), 0.0));
    }
    Ok(ShiftedRoot {
        root,
        phi,
        spectrum: work_spec,
        kappa,
    })
}

/// `(I - tA)^{1/p} = sum_s phi_s(t) A_s`
pub fn pth_root_of_shifted(
    a: &ComplexMatrix,
    p: u32,
    t: f64,
    annihilator: Option<&MonicPolynomial>,
) -> Result<ComplexMatrix> {
    Ok(shifted_root_detailed(a, p, t, annihilator, None, &SpectrumOptions::default())?.root)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootOptions {
    /// Annihilating polynomial of `A = I - B`.
    pub annihilator: Option<MonicPolynomial>,
    /// Spectrum of `A = I - B`.
    pub spectrum: Option<Spectrum>,
    /// Allow `B^{1/p} = c^{1/p} (B/c)^{1/p}` when `I - B` is outside the disk.
    pub scale: bool,
    pub spectrum_options: SpectrumOptions,
    pub series_oracle: bool,
    pub spectral_oracle: bool,
    pub series_terms: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            annihilator: None,
            spectrum: None,
            scale: false,
            spectrum_options: SpectrumOptions::default(),
            series_oracle: true,
            spectral_oracle: true,
            series_terms: DEFAULT_SERIES_TERMS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub root: ComplexMatrix,
    /// `||X^p - B||_F / max(1, ||B||_F)`
    pub residual: f64,
    pub sector_ok: bool,
    pub root_eigenvalues: Vec<Complex64>,
    pub oracle_deltas: BTreeMap<String, f64>,
    pub provenance: Provenance,
    pub phi: Vec<Complex64>,
    /// Scale `c` when the scaled form was used.
    pub scale: Option<f64>,
    /// `kappa` when the spectrum was shifted away from zero.
    pub shift: Option<f64>,
}

fn on_negative_axis(z: Complex64) -> bool {
    z.re < 0.0 && z.im.abs() <= 1e-12 * z.norm()
}

/// Eigenvalues of `x` and whether all lie in `|arg z| < pi/p`.
pub fn sector_check(x: &ComplexMatrix, p: u32) -> Result<(bool, Vec<Complex64>)> {
    let spec = spectrum_of_coeffs(&faddeev_leverrier(x), &SpectrumOptions::default())?;
    let eigen: Vec<Complex64> = spec.roots().iter().map(|r| r.0).collect();
    let bound = PI / p as f64 + SECTOR_TOL;
    let ok = eigen.iter().all(|z| z.norm() > 0.0 && z.arg().abs() < bound);
    Ok((ok, eigen))
}

/// Principal `p`th root of a nonsingular `b` with `A = I - B`, `t = 1`.
pub fn principal_pth_root(b: &ComplexMatrix, p: u32, options: &RootOptions) -> Result<RootReport> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("p must be at least 2, got {p}")));
    }
    let d = b.dim();
    let char_b = characteristic_polynomial(b)?;
    let mu = spectrum_of_coeffs(char_b.coeffs(), &options.spectrum_options)?;
    if let Some(&(z, _)) = mu.roots().iter().find(|&&(z, _)| on_negative_axis(z)) {
        return Err(Error::BranchCut(z));
    }
    let a = &ComplexMatrix::identity(d) - b;
    let a_spec = match (&options.spectrum, &options.annihilator) {
        (Some(s), _) => s.clone(),
        (None, Some(poly)) => spectrum_of_coeffs(poly.coeffs(), &options.spectrum_options)?,
        (None, None) => mu.map(|z| ONE - z)?,
    };
    let (worst, rho) = a_spec
        .roots()
        .iter()
        .map(|&(z, _)| (z, z.norm()))
        .fold((ONE, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });

    let (root, shifted, scale) = if rho < 1.0 {
        let s = shifted_root_detailed(
            &a,
            p,
            1.0,
            options.annihilator.as_ref(),
            Some(&a_spec),
            &options.spectrum_options,
        )?;
        (s.root.clone(), s, None)
    } else if options.scale {
        let mus: Vec<(Complex64, usize)> = a_spec.roots().iter().map(|&(z, m)| (ONE - z, m)).collect();
        let c = choose_scale(&mus).ok_or(Error::Convergence {
            rho,
            eigenvalue: ONE - worst,
        })?;
        let scaled_b = b.scale(Complex64::new(1.0 / c, 0.0));
        let scaled_a = &ComplexMatrix::identity(d) - &scaled_b;
        let scaled_spec = a_spec.map(|z| ONE - (ONE - z) / c)?;
        let s = shifted_root_detailed(&scaled_a, p, 1.0, None, Some(&scaled_spec), &options.spectrum_options)?;
        let root = s.root.scale(Complex64::new(c.powf(1.0 / p as f64), 0.0));
        (root, s, Some(c))
    } else {
        return Err(Error::Convergence {
            rho,
            eigenvalue: ONE - worst,
        });
    };

    let res = residual(&root, b, p);
    let (sector_ok, root_eigenvalues) = sector_check(&root, p)?;

    let mut oracle_deltas = BTreeMap::new();
    if options.series_oracle {
        if let Some(delta) = series_delta(&a, &root, p, options) {
            oracle_deltas.insert("series".to_string(), delta);
        }
    }
    if options.spectral_oracle {
        if let Ok(x) = spectral_principal_root(b, p) {
            oracle_deltas.insert("spectral".to_string(), relative_error(&root, &x));
        }
    }

    Ok(RootReport {
        root,
        residual: res,
        sector_ok,
        root_eigenvalues,
        oracle_deltas,
        provenance: shifted.phi.provenance,
        phi: shifted.phi.values,
        scale,
        shift: shifted.kappa,
    })
}

/// Series comparison at `t = 1` when admissible, otherwise at `t = 0.9/||A||_F`
/// against a fresh evaluation of the closed form at that `t`.
fn series_delta(a: &ComplexMatrix, root: &ComplexMatrix, p: u32, options: &RootOptions) -> Option<f64> {
    if let Ok((x, _)) = series_root(a, p, 1.0, options.series_terms) {
        return Some(relative_error(root, &x));
    }
    let t = 0.9 / frobenius_norm(a);
    let (x, _) = series_root(a, p, t, options.series_terms).ok()?;
    let closed = shifted_root_detailed(a, p, t, None, None, &options.spectrum_options).ok()?;
    Some(relative_error(&closed.root, &x))
}
