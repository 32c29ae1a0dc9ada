//! Order ladders nu0 + j, j = 0..=n, for complex argument in the closed
//! upper half-plane.
//!
//! J is the minimal solution of the three-term recurrence and is obtained
//! from backward ratios normalized by the Wronskian with H^(1); H^(1) is
//! dominant and recurs forward. Products J(z1) H(z2) are accumulated through
//! ratios so that neither factor has to be representable on its own.

use super::kfun::hankel1_pair_scaled;
use num_complex::Complex64 as C;
use std::f64::consts::PI;

fn miller_start(n: usize, z: C) -> usize {
    let a = z.norm();
    n.max(a.ceil() as usize) + 40 + (8.0 * a.cbrt()).ceil() as usize
}

/// rho[j - 1] = J_{nu0+j}(z) / J_{nu0+j-1}(z) for j = 1..=max(n, 1).
fn j_ratios(nu0: f64, z: C, n: usize) -> Vec<C> {
    let n = n.max(1);
    let top = miller_start(n, z);
    let mut out = vec![C::new(0.0, 0.0); n];
    let mut rho = C::new(0.0, 0.0);
    for j in (1..=top).rev() {
        rho = (C::new(2.0 * (nu0 + j as f64), 0.0) / z - rho).inv();
        if j <= n {
            out[j - 1] = rho;
        }
    }
    out
}

/// e^{-Im z} J_{nu0}(z) given rho_1 = J_{nu0+1}/J_{nu0}.
fn j_base_scaled(nu0: f64, z: C, rho1: C) -> C {
    let (h0, h1) = hankel1_pair_scaled(nu0, z);
    // J_nu H_{nu+1} - J_{nu+1} H_nu = -2i / (pi z)
    C::new(0.0, 2.0 / PI) / z * C::from_polar(1.0, -z.re) / (rho1 * h0 - h1)
}

/// e^{-Im z} J_{nu0+j}(z) for j = 0..=n; 0 <= nu0 < 1, Im z >= 0, z != 0.
pub fn j_ladder_scaled(nu0: f64, z: C, n: usize) -> Vec<C> {
    let rho = j_ratios(nu0, z, n);
    let mut out = Vec::with_capacity(n + 1);
    let mut v = j_base_scaled(nu0, z, rho[0]);
    out.push(v);
    for r in rho.iter().take(n) {
        v *= r;
        out.push(v);
    }
    out
}

/// e^{-iz} H^(1)_{nu0+j}(z) for j = 0..=n; 0 <= nu0 < 1, Im z >= 0, z != 0.
/// Values overflow to infinity once the order is far beyond |z|.
pub fn h_ladder_scaled(nu0: f64, z: C, n: usize) -> Vec<C> {
    let (h0, h1) = hankel1_pair_scaled(nu0, z);
    let mut out = Vec::with_capacity(n + 1);
    out.push(h0);
    if n >= 1 {
        out.push(h1);
    }
    for j in 2..=n {
        let nu = nu0 + (j - 1) as f64;
        let next = out[j - 1] * (2.0 * nu) / z - out[j - 2];
        out.push(next);
    }
    out
}

/// J_{nu0+j}(z1) H^(1)_{nu0+j}(z2) for j = 0..=n, with 0 <= Im z1 <= Im z2
/// and |z1| <= |z2|; 0 <= nu0 < 1.
pub fn jh_products(nu0: f64, z1: C, z2: C, n: usize) -> Vec<C> {
    let rho = j_ratios(nu0, z1, n);
    let j0 = j_base_scaled(nu0, z1, rho[0]);
    let (h0, h1) = hankel1_pair_scaled(nu0, z2);
    let phase = C::new(z1.im - z2.im, z2.re).exp();
    let mut p = j0 * h0 * phase;
    let mut out = Vec::with_capacity(n + 1);
    out.push(p);
    let mut sigma = h1 / h0;
    for j in 1..=n {
        if j > 1 {
            let nu = nu0 + (j - 1) as f64;
            sigma = C::new(2.0 * nu, 0.0) / z2 - sigma.inv();
        }
        p *= rho[j - 1] * sigma;
        out.push(p);
    }
    out
}
