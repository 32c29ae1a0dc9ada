//! Checks shared by the module tests and the acceptance run.

use super::quadrature;
use abx_core::extension::{Channel, ExtensionParams, FluxAlpha};
use abx_core::krein::{analytic_basis, full_resolvent_kernel, Polar};
use abx_core::specfun::{hankel1_complex, UpperHalfK};
use num_complex::Complex64 as C;
use std::f64::consts::PI;

/// (H_alpha - k^2) u at (r, phi) by central differences, H = -d_r^2 - (1/r) d_r - (1/r^2)(d_phi + i alpha)^2.
pub fn operator_residual<F: Fn(f64, f64) -> C>(u: &F, al: f64, k2: C, r: f64, phi: f64, h: f64) -> C {
    let dp = h / r;
    let c = u(r, phi);
    let (rp, rm) = (u(r + h, phi), u(r - h, phi));
    let (pp, pm) = (u(r, phi + dp), u(r, phi - dp));
    let urr = (rp - c * 2.0 + rm) / (h * h);
    let ur = (rp - rm) / (2.0 * h);
    let upp = (pp - c * 2.0 + pm) / (dp * dp);
    let up = (pp - pm) / (2.0 * dp);
    let ang = upp + up * C::new(0.0, 2.0 * al) - c * (al * al);
    -urr - ur / r - ang / (r * r) - c * k2
}

pub fn observed_orders(r: &[f64]) -> Vec<f64> {
    r.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

/// Largest residual over `points` for each h in `hs`.
pub fn residual_ladder<F: Fn(f64, f64) -> C>(u: &F, al: f64, k2: C, points: &[(f64, f64)], hs: &[f64]) -> Vec<f64> {
    hs.iter()
        .map(|&h| points.iter().map(|&(r, f)| operator_residual(u, al, k2, r, f, h).norm()).fold(0.0, f64::max))
        .collect()
}

/// (psi^{(j)}_{-conj k1}, psi^{(j)}_{k2}) by exp-sinh quadrature in r; the angular integral is 2 pi.
pub fn a_by_quadrature(al: FluxAlpha, ch: Channel, k1: UpperHalfK, k2: UpperHalfK) -> C {
    let b1 = analytic_basis(ch, al, k1);
    let b2 = analytic_basis(ch, al, k2);
    // sqrt(r) on each factor keeps the product finite near r = 0
    let (v, err) = quadrature::exp_sinh(|r| (b1.eval_dual(r, 0.3) * r.sqrt()) * (b2.eval(r, 0.3) * r.sqrt()), 1e-10);
    assert!(err.is_finite(), "quadrature did not settle");
    v * (2.0 * PI)
}

pub const A_PAIRS: [((f64, f64), (f64, f64)); 5] = [
    ((0.7071067811865476, 0.7071067811865476), (-0.7071067811865476, 0.7071067811865476)),
    ((1.0, 1.0), (0.5, 2.0)),
    ((0.0, 2.0), (0.3, 0.7)),
    ((-1.0, 1.0), (1.0, 0.5)),
    ((0.2, 1.5), (-0.8, 0.9)),
];

/// 4 / (i H0(k rho)) R(k + i eps; x, y), eps = 1e-6 k, with the source y = (rho, theta + pi), rho = k_rho / k.
pub fn resolvent_limit(p: &ExtensionParams, a: FluxAlpha, k: f64, theta: f64, r: f64, phi: f64, k_rho: f64) -> C {
    let rho = k_rho / k;
    let kc = C::new(k, 1e-6 * k);
    let uk = UpperHalfK::new(kc).unwrap();
    let kern = full_resolvent_kernel(p, a, uk, &Polar::new(r, phi), &Polar::new(rho, theta + PI)).unwrap();
    kern * 4.0 / (C::new(0.0, 1.0) * hankel1_complex(0.0, kc * rho))
}
