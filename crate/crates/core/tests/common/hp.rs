//! Multi-precision nested finite differences of `t d/dt` applied to
//! `(1 - lambda t)^{1/p}`.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use matroot::Complex64;

const PREC: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;

struct Ctx {
    cc: Consts,
}

#[derive(Clone)]
struct Cx {
    re: BigFloat,
    im: BigFloat,
}

fn big(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

fn to_f64(x: &BigFloat, cc: &mut Consts) -> f64 {
    x.format(Radix::Dec, RoundingMode::ToEven, cc)
        .expect("format")
        .parse()
        .expect("parse")
}

impl Ctx {
    fn new() -> Self {
        Self {
            cc: Consts::new().expect("constants"),
        }
    }

    /// Principal `(1 - lambda t)^{1/p}`; `Re(1 - lambda t) > 0` inside the disk.
    fn f(&mut self, lambda: &Cx, p: u32, t: &BigFloat) -> Cx {
        let re = big(1.0).sub(&lambda.re.mul(t, PREC, RM), PREC, RM);
        let im = lambda.im.mul(t, PREC, RM).neg();
        let mod2 = re.mul(&re, PREC, RM).add(&im.mul(&im, PREC, RM), PREC, RM);
        let inv_p = big(1.0).div(&big(p as f64), PREC, RM);
        let log_mod = mod2.ln(PREC, RM, &mut self.cc).mul(&big(0.5), PREC, RM);
        let radius = log_mod.mul(&inv_p, PREC, RM).exp(PREC, RM, &mut self.cc);
        let theta = im.div(&re, PREC, RM).atan(PREC, RM, &mut self.cc).mul(&inv_p, PREC, RM);
        Cx {
            re: radius.mul(&theta.cos(PREC, RM, &mut self.cc), PREC, RM),
            im: radius.mul(&theta.sin(PREC, RM, &mut self.cc), PREC, RM),
        }
    }

    /// `D^k f (t)` by nesting `t (g(t+h) - g(t-h)) / 2h`.
    fn d_power(&mut self, lambda: &Cx, p: u32, k: usize, t: &BigFloat, h: &BigFloat) -> Cx {
        if k == 0 {
            return self.f(lambda, p, t);
        }
        let up = self.d_power(lambda, p, k - 1, &t.add(h, PREC, RM), h);
        let down = self.d_power(lambda, p, k - 1, &t.sub(h, PREC, RM), h);
        let scale = t.div(&h.mul(&big(2.0), PREC, RM), PREC, RM);
        Cx {
            re: up.re.sub(&down.re, PREC, RM).mul(&scale, PREC, RM),
            im: up.im.sub(&down.im, PREC, RM).mul(&scale, PREC, RM),
        }
    }
}

/// `D^k` of the branch-`j` power at `t` with step `h`.
pub fn nested_difference(lambda: Complex64, p: u32, k: usize, t: f64, h: f64, branch: u32) -> Complex64 {
    let mut ctx = Ctx::new();
    let lam = Cx {
        re: big(lambda.re),
        im: big(lambda.im),
    };
    let v = ctx.d_power(&lam, p, k, &big(t), &big(h));
    let principal = Complex64::new(to_f64(&v.re, &mut ctx.cc), to_f64(&v.im, &mut ctx.cc));
    principal * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * branch as f64 / p as f64)
}
