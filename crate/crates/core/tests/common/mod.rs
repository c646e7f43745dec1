//! Worked examples from the reference text, shared by the golden and
//! acceptance suites.
#![allow(dead_code)]

pub mod hp;
pub mod random;

use matroot::primary::JordanForm;
use matroot::{Complex64, ComplexMatrix};

pub fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn real(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows)
}

pub fn max_entry_gap(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `sum coeffs[k] M^k`
pub fn poly_in(m: &ComplexMatrix, coeffs: &[f64]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(m.dim());
    let mut power = ComplexMatrix::identity(m.dim());
    for &w in coeffs {
        out.axpy(c(w), &power);
        power = &power * m;
    }
    out
}

pub fn pair_b() -> ComplexMatrix {
    real(&[&[1.0 / 6.0, -1.0], &[1.0 / 6.0, 1.0]])
}

pub fn pair_root() -> ComplexMatrix {
    let (s2, s3) = (2f64.sqrt(), 3f64.sqrt());
    real(&[
        &[s2 * (1.5 - 2.0 * s3 / 3.0), s2 * (3.0 - 2.0 * s3)],
        &[s2 * (-0.5 + s3 / 3.0), s2 * (-1.0 + s3)],
    ])
}

pub fn double_root_b() -> ComplexMatrix {
    real(&[
        &[10.0 / 6.0, -2.0 / 3.0, -1.0 / 3.0],
        &[7.0 / 12.0, 1.0 / 6.0, -1.0 / 6.0],
        &[35.0 / 12.0, -5.0 / 3.0, -1.0 / 3.0],
    ])
}

/// `phi_0 I - phi_1 B` with `phi_0 = sqrt2/4`, `phi_1 = -sqrt2/2`.
pub fn double_root_root() -> ComplexMatrix {
    let s2 = 2f64.sqrt();
    poly_in(&double_root_b(), &[s2 / 4.0, s2 / 2.0])
}

/// The monomial form printed in the remark on using the characteristic
/// polynomial: `(5 sqrt2/16) I + (sqrt2/4) B + (sqrt2/2) B^2`.
pub fn remark_printed_coeffs() -> [f64; 3] {
    let s2 = 2f64.sqrt();
    [5.0 * s2 / 16.0, s2 / 4.0, s2 / 2.0]
}

/// Coefficients the characteristic polynomial actually produces.
pub fn remark_derived_coeffs() -> [f64; 3] {
    let s2 = 2f64.sqrt();
    [3.0 * s2 / 16.0, 3.0 * s2 / 4.0, -s2 / 4.0]
}

pub fn cube_b() -> ComplexMatrix {
    real(&[
        &[0.75, 1.0, -1.0],
        &[1.0 / 24.0, 0.5, -1.0 / 6.0],
        &[5.0 / 48.0, 0.25, 1.0 / 12.0],
    ])
}

pub struct CubeExpected {
    pub phi: [f64; 3],
    pub alpha: f64,
    pub beta: f64,
}

pub fn cube_expected() -> CubeExpected {
    let (a, b) = ((1.0f64 / 3.0).cbrt(), 0.5f64.cbrt());
    let two = 2f64;
    CubeExpected {
        phi: [
            16.0 * a - 15.0 * b + two.powf(-1.0 / 3.0),
            24.0 * a - 24.0 * b + two.powf(2.0 / 3.0),
            36.0 * a - 36.0 * b + two.powf(5.0 / 3.0),
        ],
        alpha: 9.0 * a - 8.0 * b + two.powf(2.0 / 3.0) / 3.0,
        beta: 36.0 * b - 36.0 * a - 5.0 / 3.0 * two.powf(2.0 / 3.0),
    }
}

pub fn cube_root() -> ComplexMatrix {
    let e = cube_expected();
    poly_in(&cube_b(), &[e.alpha, e.beta, e.phi[2]])
}

pub fn fourth_b() -> ComplexMatrix {
    real(&[
        &[0.75, 7.0, -1.0, -1.5],
        &[0.0, 0.0, 0.0, 0.125],
        &[0.125, 3.75, 0.0, -0.875],
        &[0.0, -1.0, 0.0, 0.75],
    ])
}

pub struct FourthExpected {
    pub a: [f64; 4],
    /// `C_{1,0}, C_{1,1}, C_{2,0}, C_{2,1}`
    pub c: [f64; 4],
    pub phi: [f64; 4],
    /// `alpha, beta, gamma, phi_3` in powers of `I - B`
    pub monomial: [f64; 4],
}

pub fn fourth_expected() -> FourthExpected {
    let (h, q) = (0.5f64, 0.25f64);
    let (h4, q4, hm, qm) = (h.powf(0.25), q.powf(0.25), h.powf(-0.75), q.powf(-0.75));
    FourthExpected {
        a: [2.5, -37.0 / 16.0, 15.0 / 16.0, -9.0 / 64.0],
        c: [28.0, 4.0, -27.0, 9.0],
        phi: [
            28.0 * h4 - 27.0 * q4 - 0.5 * hm - 27.0 / 16.0 * qm,
            48.0 * h4 - 48.0 * q4 - hm - 9.0 / 4.0 * qm,
            80.0 * h4 - 80.0 * q4 - 2.0 * hm - 3.0 * qm,
            128.0 * h4 - 128.0 * q4 - 4.0 * hm - 4.0 * qm,
        ],
        monomial: [
            -27.0 * h4 + 28.0 * q4 + 9.0 / 8.0 * hm + 0.75 * qm,
            144.0 * h4 - 144.0 * q4 - 21.0 / 4.0 * hm - 4.0 * qm,
            -240.0 * h4 + 240.0 * q4 + 8.0 * hm + 7.0 * qm,
            128.0 * h4 - 128.0 * q4 - 4.0 * hm - 4.0 * qm,
        ],
    }
}

pub fn fourth_root() -> ComplexMatrix {
    let a = &ComplexMatrix::identity(4) - &fourth_b();
    poly_in(&a, &fourth_expected().monomial)
}

/// `A = I - B` of the two-eigenvalue square-root example, already in Jordan form.
pub fn jordan_two() -> JordanForm {
    JordanForm::from_real(&[(1.0 / 3.0, &[2]), (2.0 / 3.0, &[2])]).unwrap()
}

/// The four printed roots, in branch order (0,0), (1,0), (0,1), (1,1).
pub fn jordan_two_roots() -> Vec<ComplexMatrix> {
    let r = (2.0f64 / 3.0).sqrt();
    let o = -0.5 * 1.5f64.sqrt();
    let s = 3f64.sqrt() / 3.0;
    let u = -3f64.sqrt() / 2.0;
    let build = |e1: f64, e2: f64| {
        real(&[
            &[e1 * r, e1 * o, 0.0, 0.0],
            &[0.0, e1 * r, 0.0, 0.0],
            &[0.0, 0.0, e2 * s, e2 * u],
            &[0.0, 0.0, 0.0, e2 * s],
        ])
    };
    vec![build(1.0, 1.0), build(-1.0, 1.0), build(1.0, -1.0), build(-1.0, -1.0)]
}

/// `A = I - B` of the three-eigenvalue square-root example.
pub fn jordan_three() -> JordanForm {
    JordanForm::from_real(&[(0.5, &[2]), (1.0 / 3.0, &[2]), (0.25, &[1])]).unwrap()
}

/// The eight printed roots, first branch index varying fastest.
pub fn jordan_three_roots() -> Vec<ComplexMatrix> {
    let h = 2f64.sqrt() / 2.0;
    let r = (2.0f64 / 3.0).sqrt();
    let o = -0.5 * 1.5f64.sqrt();
    let w = 0.75f64.sqrt();
    let mut out = Vec::new();
    for j3 in [1.0, -1.0] {
        for j2 in [1.0, -1.0] {
            for j1 in [1.0, -1.0] {
                out.push(real(&[
                    &[j1 * h, -j1 * h, 0.0, 0.0, 0.0],
                    &[0.0, j1 * h, 0.0, 0.0, 0.0],
                    &[0.0, 0.0, j2 * r, j2 * o, 0.0],
                    &[0.0, 0.0, 0.0, j2 * r, 0.0],
                    &[0.0, 0.0, 0.0, 0.0, j3 * w],
                ]));
            }
        }
    }
    out
}
