//! Branched powers `(1 - lambda t)^{1/p}` and the derivation-degree operator
//! `D = t d/dt` applied to them.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ONE, ZERO};

/// `f_j(z) = |z|^{1/p} exp(i (arg z + 2 pi j) / p)` with `arg` in `(-pi, pi]`.
pub fn branch_root(z: Complex64, p: u32, branch: u32) -> Complex64 {
    if z == ZERO {
        return ZERO;
    }
    let (modulus, arg) = z.to_polar();
    let arg = if arg <= -PI { PI } else { arg };
    Complex64::from_polar(
        modulus.powf(1.0 / p as f64),
        (arg + 2.0 * PI * branch as f64) / p as f64,
    )
}

fn on_branch_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchedPower {
    pub lambda: Complex64,
    pub p: u32,
    pub branch: u32,
}

impl BranchedPower {
    pub fn new(lambda: Complex64, p: u32, branch: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!("p must be at least 2, got {p}")));
        }
        if branch >= p {
            return Err(Error::InvalidArgument(format!("branch {branch} outside 0..{p}")));
        }
        Ok(Self { lambda, p, branch })
    }

    pub fn principal(lambda: Complex64, p: u32) -> Result<Self> {
        Self::new(lambda, p, 0)
    }

    /// `f_branch(1 - lambda t)`
    pub fn eval(&self, t: f64) -> Result<Complex64> {
        let z = ONE - self.lambda * t;
        if self.branch == 0 && on_branch_cut(z) {
            return Err(Error::BranchCut(z));
        }
        Ok(branch_root(z, self.p, self.branch))
    }
}

/// The polynomials `P_k(t)` with `D^k (1 - lambda t)^{1/p} = P_k(t) (1 - lambda t)^{1/p - k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DOperatorPolys {
    lambda: Complex64,
    p: u32,
    /// `polys[k]` holds ascending coefficients of `P_k`; `P_0 = 1`.
    polys: Vec<Vec<Complex64>>,
}

impl DOperatorPolys {
    pub fn new(lambda: Complex64, p: u32, k_max: usize) -> Self {
        let mut polys = vec![vec![ONE]];
        let pf = p as f64;
        for k in 0..k_max {
            let prev = &polys[k];
            // P_{k+1} = t (1 - lambda t) P_k' + lambda (pk - 1)/p t P_k
            let mut next = vec![ZERO; prev.len() + 1];
            for (n, &c) in prev.iter().enumerate().skip(1) {
                let dc = c * n as f64;
                next[n] += dc;
                next[n + 1] -= lambda * dc;
            }
            let weight = lambda * ((pf * k as f64 - 1.0) / pf);
            for (n, &c) in prev.iter().enumerate() {
                next[n + 1] += weight * c;
            }
            polys.push(next);
        }
        Self { lambda, p, polys }
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k_max(&self) -> usize {
        self.polys.len() - 1
    }

    /// Ascending coefficients of `P_k`.
    pub fn coeffs(&self, k: usize) -> &[Complex64] {
        &self.polys[k]
    }

    pub fn poly_eval(&self, k: usize, t: f64) -> Complex64 {
        self.polys[k].iter().rev().fold(ZERO, |acc, &c| acc * t + c)
    }

    /// `D^k f_branch(1 - lambda t)`
    pub fn apply(&self, k: usize, t: f64, branch: u32) -> Result<Complex64> {
        if k > self.k_max() {
            return Err(Error::CacheExhausted {
                requested: k,
                available: self.polys.len(),
            });
        }
        let root = BranchedPower::new(self.lambda, self.p, branch)?.eval(t)?;
        if k == 0 {
            return Ok(root);
        }
        let z = ONE - self.lambda * t;
        if z == ZERO {
            return Err(Error::BranchCut(z));
        }
        Ok(self.poly_eval(k, t) * root / z.powu(k as u32))
    }
}

pub fn d_power_apply(lambda: Complex64, p: u32, k: usize, t: f64, branch: u32) -> Result<Complex64> {
    DOperatorPolys::new(lambda, p, k).apply(k, t, branch)
}
