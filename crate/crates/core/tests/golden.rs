//! Worked examples with published closed forms.

mod common;

use common::*;
use matroot::engine::shifted_root_detailed;
use matroot::horner::{horner_to_monomial_coeffs, monomial_in_complement};
use matroot::oracle::residual;
use matroot::poly::{characteristic_polynomial, SpectrumOptions};
use matroot::{
    compute_binet, enumerate_primary_roots, principal_pth_root, Complex64, ComplexMatrix, MonicPolynomial, Provenance,
    RootOptions, Spectrum, StirlingTable,
};

fn shifted(b: &ComplexMatrix) -> ComplexMatrix {
    &ComplexMatrix::identity(b.dim()) - b
}

#[test]
fn pair_principal_square_root() {
    let b = pair_b();
    let report = principal_pth_root(&b, 2, &RootOptions::default()).unwrap();
    assert!(max_entry_gap(&report.root, &pair_root()) <= 1e-10);
    assert!(report.residual <= 1e-12);
    assert!(report.sector_ok);
    for delta in report.oracle_deltas.values() {
        assert!(*delta <= 1e-10, "{:?}", report.oracle_deltas);
    }
}

#[test]
fn double_root_weights_from_minimal_polynomial() {
    let b = double_root_b();
    let a = shifted(&b);
    let min_poly = MonicPolynomial::from_real(&[1.0, -0.25]).unwrap();
    let out = shifted_root_detailed(&a, 2, 1.0, Some(&min_poly), None, &SpectrumOptions::default()).unwrap();
    let s2 = 2f64.sqrt();
    assert!((out.phi.values[0] - c(s2 / 4.0)).norm() <= 1e-12);
    assert!((out.phi.values[1] - c(-s2 / 2.0)).norm() <= 1e-12);
    assert_eq!(out.phi.provenance, Provenance::SingleRoot);
    assert!(max_entry_gap(&out.root, &double_root_root()) <= 1e-10);
    assert!(residual(&out.root, &b, 2) <= 1e-12);
}

#[test]
fn double_root_characteristic_polynomial_monomial_form() {
    let b = double_root_b();
    let a = shifted(&b);
    let char_poly = characteristic_polynomial(&a).unwrap();
    let spec = Spectrum::from_real(&[(0.5, 3)]).unwrap();
    let out = shifted_root_detailed(&a, 2, 1.0, Some(&char_poly), Some(&spec), &SpectrumOptions::default()).unwrap();
    assert!(max_entry_gap(&out.root, &double_root_root()) <= 1e-10);

    let in_a = horner_to_monomial_coeffs(&char_poly, &out.phi.values);
    let in_b = monomial_in_complement(&in_a);
    for (got, want) in in_b.iter().zip(remark_derived_coeffs()) {
        assert!((got - c(want)).norm() <= 1e-10, "{in_b:?}");
    }
    let printed = poly_in(&b, &remark_printed_coeffs());
    assert!(residual(&printed, &b, 2) > 1e-2);
}

#[test]
fn cube_root_example() {
    let b = cube_b();
    let spec = Spectrum::from_real(&[(0.5, 2), (2.0 / 3.0, 1)]).unwrap();
    let bc = compute_binet(&spec, &StirlingTable::new(1).unwrap()).unwrap();
    assert!((bc.c(1, 0) - c(16.0)).norm() <= 1e-9);
    assert!((bc.c(0, 0) - c(-15.0)).norm() <= 1e-9);
    assert!((bc.c(0, 1) - c(-3.0)).norm() <= 1e-9);

    let report = principal_pth_root(&b, 3, &RootOptions::default()).unwrap();
    let e = cube_expected();
    for (got, want) in report.phi.iter().zip(e.phi) {
        assert!((got - c(want)).norm() <= 1e-10);
    }
    let char_poly = characteristic_polynomial(&shifted(&b)).unwrap();
    let in_b = monomial_in_complement(&horner_to_monomial_coeffs(&char_poly, &report.phi));
    assert!((in_b[0] - c(e.alpha)).norm() <= 1e-10);
    assert!((in_b[1] - c(e.beta)).norm() <= 1e-10);
    assert!(max_entry_gap(&report.root, &cube_root()) <= 1e-10);
    assert!(report.residual <= 1e-10);
}

#[test]
fn fourth_root_example() {
    let b = fourth_b();
    let e = fourth_expected();
    let char_poly = characteristic_polynomial(&shifted(&b)).unwrap();
    for (got, want) in char_poly.coeffs().iter().zip(e.a) {
        assert!((got - c(want)).norm() <= 1e-9);
    }
    let spec = Spectrum::from_real(&[(0.5, 2), (0.75, 2)]).unwrap();
    let bc = compute_binet(&spec, &StirlingTable::new(1).unwrap()).unwrap();
    let got = [bc.c(0, 0), bc.c(0, 1), bc.c(1, 0), bc.c(1, 1)];
    for (g, w) in got.iter().zip(e.c) {
        assert!((g - c(w)).norm() <= 1e-9);
    }
    let report = principal_pth_root(&b, 4, &RootOptions::default()).unwrap();
    for (got, want) in report.phi.iter().zip(e.phi) {
        assert!((got - c(want)).norm() <= 1e-9 * want.abs().max(1.0));
    }
    assert!(max_entry_gap(&report.root, &fourth_root()) <= 1e-9);
    assert!(report.residual <= 1e-9);
}

fn matched_once(enumerated: &[ComplexMatrix], printed: &[ComplexMatrix]) {
    for target in printed {
        let hits = enumerated.iter().filter(|x| max_entry_gap(x, target) <= 1e-10).count();
        assert_eq!(hits, 1);
    }
}

#[test]
fn two_group_enumeration() {
    let jf = jordan_two();
    let roots = enumerate_primary_roots(&jf, 2, 1.0).unwrap();
    assert_eq!(roots.len(), 4);
    let b = shifted(&jf.matrix());
    for (_, x) in &roots {
        assert!(residual(x, &b, 2) <= 1e-10);
    }
    let printed = jordan_two_roots();
    for ((_, x), want) in roots.iter().zip(&printed) {
        assert!(max_entry_gap(x, want) <= 1e-10);
    }
    let xs: Vec<_> = roots.into_iter().map(|(_, x)| x).collect();
    matched_once(&xs, &printed);
}

#[test]
fn three_group_enumeration() {
    let jf = jordan_three();
    let roots = enumerate_primary_roots(&jf, 2, 1.0).unwrap();
    assert_eq!(roots.len(), 8);
    let b = shifted(&jf.matrix());
    for (_, x) in &roots {
        assert!(residual(x, &b, 2) <= 1e-10);
    }
    let xs: Vec<_> = roots.into_iter().map(|(_, x)| x).collect();
    matched_once(&xs, &jordan_three_roots());
}

#[test]
fn principal_root_of_identity() {
    let b = ComplexMatrix::identity(3);
    let report = principal_pth_root(&b, 7, &RootOptions::default()).unwrap();
    assert_eq!(report.root, ComplexMatrix::identity(3));
    assert_eq!(report.residual, 0.0);
}

#[test]
fn scalar_root_with_scaling() {
    let b = ComplexMatrix::scalar(1, Complex64::new(4.0, 0.0));
    let opts = RootOptions {
        scale: true,
        ..RootOptions::default()
    };
    let report = principal_pth_root(&b, 2, &opts).unwrap();
    assert!((report.root[(0, 0)] - c(2.0)).norm() <= 1e-14);
    assert!(report.scale.is_some());
}
