//! The four subcommands. Each returns the rendered output together with a
//! failure to report after the output is written.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, ValueEnum};
use matroot::engine::{sector_check, shifted_root_detailed};
use matroot::linalg::relative_error;
use matroot::oracle::{spectral_principal_root, spectral_root, DEFAULT_SERIES_TERMS};
use matroot::poly::{spectral_order, SpectrumOptions};
use matroot::primary::{conjugate_roots, enumerate_primary_roots_of, enumerate_roots_of_block_diagonal, BranchTuple};
use matroot::{
    principal_pth_root, pth_root_of_shifted, residual, series_root, Complex64, ComplexMatrix, Error, RootOptions,
};
use serde_json::Value;

use crate::error::CliError;
use crate::input::{digest, read_jordan, read_matrix, read_matrix_or_report, read_polynomial};
use crate::report::{render, RootReport, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleChoice {
    Series,
    Spectral,
    None,
}

#[derive(Debug, Clone, Args)]
pub struct Shared {
    /// Root order.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub p: u32,
    /// Parameter of `I - tA`; requires --shifted.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// The input holds `A` and the target is `I - tA`.
    #[arg(long)]
    pub shifted: bool,
    /// Polynomial annihilating `A` (`I - B` unless --shifted).
    #[arg(long)]
    pub annihilator: Option<PathBuf>,
    /// Allow pre-scaling `B = c (B/c)` when `I - B` is outside the unit disk.
    #[arg(long)]
    pub scale: bool,
    /// Terms of the series oracle.
    #[arg(long, default_value_t = DEFAULT_SERIES_TERMS)]
    pub terms: usize,
    /// Residual tolerance; a larger residual exits with status 5.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Restrict oracles (default: every applicable one).
    #[arg(long, value_enum)]
    pub oracle: Option<OracleChoice>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include per-phase timings (makes reports run-dependent).
    #[arg(long)]
    pub timings: bool,
}

impl Shared {
    fn wants(&self, oracle: OracleChoice) -> bool {
        self.oracle.is_none_or(|o| o == oracle)
    }

    fn t(&self) -> Result<f64, CliError> {
        if !self.t.is_finite() {
            return Err(CliError::Parse("--t must be finite".into()));
        }
        if !self.shifted && self.t != 1.0 {
            return Err(CliError::Parse("--t other than 1 requires --shifted".into()));
        }
        Ok(self.t)
    }

    fn tol_failure(&self, worst: f64) -> Option<CliError> {
        self.tol
            .filter(|&tol| !(worst <= tol))
            .map(|tol| CliError::Verification { residual: worst, tol })
    }
}

pub struct Outcome {
    pub text: String,
    pub out: Option<PathBuf>,
    pub failure: Option<CliError>,
}

struct Clock {
    last: Instant,
    phases: Vec<(String, f64)>,
}

impl Clock {
    fn new() -> Self {
        Self {
            last: Instant::now(),
            phases: Vec::new(),
        }
    }

    fn mark(&mut self, phase: &str) {
        let now = Instant::now();
        self.phases.push((phase.into(), (now - self.last).as_secs_f64() * 1e3));
        self.last = now;
    }

    fn report(self, enabled: bool) -> Option<Vec<(String, f64)>> {
        enabled.then_some(self.phases)
    }
}

fn shifted_target(a: &ComplexMatrix, t: f64) -> ComplexMatrix {
    &ComplexMatrix::identity(a.dim()) - &a.scale(Complex64::new(t, 0.0))
}

fn formula_path(base: &str, shift: Option<f64>, scale: Option<f64>) -> String {
    let mut path = base.to_string();
    if let Some(k) = shift {
        path.push_str(&format!("+shift(kappa={k})"));
    }
    if let Some(c) = scale {
        path.push_str(&format!("+scale(c={c:.16e})"));
    }
    path
}

/// Oracle errors only drop the oracle from the report.
fn oracle_delta(
    deltas: &mut BTreeMap<String, f64>,
    name: &str,
    root: &ComplexMatrix,
    other: matroot::Result<ComplexMatrix>,
) {
    if let Ok(x) = other {
        deltas.insert(name.into(), relative_error(root, &x));
    }
}

pub fn compute(matrix: &Path, shared: &Shared) -> Result<Outcome, CliError> {
    let mut clock = Clock::new();
    let t = shared.t()?;
    let input = read_matrix(matrix)?;
    let annihilator = shared.annihilator.as_deref().map(read_polynomial).transpose()?;
    clock.mark("parse");

    let p = shared.p;
    let (target, root, mut deltas, path) = if shared.shifted {
        let target = shifted_target(&input, t);
        let s = shifted_root_detailed(&input, p, t, annihilator.as_ref(), None, &SpectrumOptions::default())?;
        clock.mark("root");
        let mut deltas = BTreeMap::new();
        if shared.wants(OracleChoice::Series) {
            oracle_delta(
                &mut deltas,
                "series",
                &s.root,
                series_root(&input, p, t, shared.terms).map(|r| r.0),
            );
        }
        if shared.wants(OracleChoice::Spectral) {
            oracle_delta(&mut deltas, "spectral", &s.root, spectral_principal_root(&target, p));
        }
        clock.mark("oracles");
        let path = formula_path(s.phi.provenance.as_str(), s.kappa, None);
        (target, s.root, deltas, path)
    } else {
        let options = RootOptions {
            annihilator,
            scale: shared.scale,
            series_oracle: shared.wants(OracleChoice::Series),
            spectral_oracle: shared.wants(OracleChoice::Spectral),
            series_terms: shared.terms,
            ..RootOptions::default()
        };
        let report = principal_pth_root(&input, p, &options)?;
        clock.mark("root+oracles");
        let path = formula_path(report.provenance.as_str(), report.shift, report.scale);
        (input.clone(), report.root, report.oracle_deltas, path)
    };
    deltas.retain(|_, v| v.is_finite());

    let res = residual(&root, &target, p);
    let (sector_ok, _) = sector_check(&root, p)?;
    clock.mark("checks");
    let report = RootReport {
        input_digest: digest(&input),
        p,
        branch: "principal".into(),
        root,
        residual: res,
        sector_ok,
        oracle_deltas: deltas,
        formula_path: path,
        tail_bound: None,
        timings: clock.report(shared.timings),
    };
    Ok(Outcome {
        text: render(&report.to_value()),
        out: shared.out.clone(),
        failure: shared.tol_failure(res),
    })
}

/// Reorders a tuple indexed by Jordan group into spectral order of `mus`.
fn spectral_tuple(tuple: &BranchTuple, mus: &[Complex64], p: u32) -> matroot::Result<BranchTuple> {
    let mut order: Vec<usize> = (0..mus.len()).collect();
    order.sort_by(|&a, &b| spectral_order(mus[a], mus[b]));
    BranchTuple::new(order.iter().map(|&k| tuple.entries()[k]).collect(), p)
}

pub fn enumerate(jordan: &Path, shared: &Shared) -> Result<Outcome, CliError> {
    let mut clock = Clock::new();
    let t = shared.t()?;
    if shared.annihilator.is_some() {
        return Err(CliError::Parse("--annihilator does not apply to enumerate".into()));
    }
    let input = read_jordan(jordan)?;
    let matrix = input.matrix()?;
    clock.mark("parse");

    let p = shared.p;
    let form = &input.form;
    let (target, mut roots, mus, scale) = if shared.shifted {
        let roots = enumerate_primary_roots_of(&input.block_diagonal, form, p, t)?;
        let mus: Vec<Complex64> = form.groups().iter().map(|g| 1.0 - g.lambda * t).collect();
        (shifted_target(&matrix, t), roots, mus, None)
    } else {
        let found = enumerate_roots_of_block_diagonal(&input.block_diagonal, form, p, shared.scale)?;
        let mus = form.groups().iter().map(|g| g.lambda).collect();
        (matrix.clone(), found.roots, mus, found.scale)
    };
    if let Some(s) = &input.similarity {
        roots = conjugate_roots(&roots, s)?;
    }
    clock.mark("roots");

    let input_digest = digest(&matrix);
    let path = formula_path("primary", None, scale);
    let mut reports = Vec::with_capacity(roots.len());
    let mut worst: f64 = 0.0;
    for (tuple, root) in roots {
        let res = residual(&root, &target, p);
        worst = worst.max(res);
        let (sector_ok, _) = sector_check(&root, p)?;
        let mut deltas = BTreeMap::new();
        if shared.wants(OracleChoice::Spectral) {
            let other = spectral_tuple(&tuple, &mus, p).and_then(|b| spectral_root(&target, p, &b));
            oracle_delta(&mut deltas, "spectral", &root, other);
        }
        deltas.retain(|_, v| v.is_finite());
        reports.push(RootReport {
            input_digest: input_digest.clone(),
            p,
            branch: tuple.to_string(),
            root,
            residual: res,
            sector_ok,
            oracle_deltas: deltas,
            formula_path: path.clone(),
            tail_bound: None,
            timings: None,
        });
    }
    clock.mark("checks");
    if let (Some(first), Some(phases)) = (reports.first_mut(), clock.report(shared.timings)) {
        first.timings = Some(phases);
    }
    let list = Value::Array(reports.iter().map(RootReport::to_value).collect());
    Ok(Outcome {
        text: render(&list),
        out: shared.out.clone(),
        failure: shared.tol_failure(worst),
    })
}

/// Default tolerance of `verify`.
pub const VERIFY_TOL: f64 = 1e-9;

pub fn verify(root: &Path, matrix: &Path, shared: &Shared) -> Result<Outcome, CliError> {
    let t = shared.t()?;
    let x = read_matrix_or_report(root)?;
    let input = read_matrix(matrix)?;
    if x.dim() != input.dim() {
        return Err(CliError::Parse(format!(
            "root is {}x{} but the matrix is {}x{}",
            x.dim(),
            x.dim(),
            input.dim(),
            input.dim()
        )));
    }
    let target = if shared.shifted {
        shifted_target(&input, t)
    } else {
        input.clone()
    };
    let res = residual(&x, &target, shared.p);
    let tol = shared.tol.unwrap_or(VERIFY_TOL);
    let pass = res < tol;
    let report = VerifyReport {
        input_digest: digest(&input),
        root_digest: digest(&x),
        p: shared.p,
        residual: res,
        tol,
        pass,
    };
    Ok(Outcome {
        text: render(&report.to_value()),
        out: shared.out.clone(),
        failure: (!pass).then_some(CliError::Verification { residual: res, tol }),
    })
}

pub fn series(matrix: &Path, shared: &Shared) -> Result<Outcome, CliError> {
    let mut clock = Clock::new();
    let t = shared.t()?;
    let input = read_matrix(matrix)?;
    clock.mark("parse");
    let a = if shared.shifted {
        input.clone()
    } else {
        &ComplexMatrix::identity(input.dim()) - &input
    };
    let target = shifted_target(&a, t);
    let p = shared.p;
    let (root, tail) = series_root(&a, p, t, shared.terms).map_err(|e| match e {
        Error::OracleUnavailable(msg) => CliError::SeriesDomain(msg),
        other => CliError::Core(other),
    })?;
    clock.mark("series");
    let mut deltas = BTreeMap::new();
    if shared.oracle != Some(OracleChoice::None) {
        let annihilator = shared.annihilator.as_deref().map(read_polynomial).transpose()?;
        oracle_delta(
            &mut deltas,
            "closed-form",
            &root,
            pth_root_of_shifted(&a, p, t, annihilator.as_ref()),
        );
    }
    deltas.retain(|_, v| v.is_finite());
    let res = residual(&root, &target, p);
    let (sector_ok, _) = sector_check(&root, p)?;
    clock.mark("checks");
    let report = RootReport {
        input_digest: digest(&input),
        p,
        branch: "principal".into(),
        root,
        residual: res,
        sector_ok,
        oracle_deltas: deltas,
        formula_path: "series".into(),
        tail_bound: Some(tail),
        timings: clock.report(shared.timings),
    };
    Ok(Outcome {
        text: render(&report.to_value()),
        out: shared.out.clone(),
        failure: shared.tol_failure(res),
    })
}
