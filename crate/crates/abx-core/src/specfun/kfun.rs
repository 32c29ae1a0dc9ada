//! Macdonald function K_mu(w) on the closed right half-plane, scaled by e^w.
//!
//! Temme's series for |w| <= 2 and Steed's continued fraction CF2 beyond.
//! Both are written for complex w; Re w = 0 (Hankel functions of real
//! argument) is included.

use super::gamma::temme_gammas;
use num_complex::Complex64 as C;
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;
const MAXIT: usize = 100_000;
const CROSSOVER: f64 = 2.0;

// 1/w without squaring |w|; C division underflows for |w| below ~1e-154.
fn recip(w: C) -> C {
    C::from_polar(w.norm().recip(), -w.arg())
}

fn temme(mu: f64, w: C) -> (C, C) {
    let x2 = w * 0.5;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = d * mu;
    let fact2 = if e.norm() < EPS { C::new(1.0, 0.0) } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
    let mut ff = (e.cosh() * gam1 + fact2 * d * gam2) * fact;
    let mut sum = ff;
    let ee = e.exp();
    let mut p = ee * (0.5 / gampl);
    let mut q = ee.inv() * (0.5 / gammi);
    let mut c = C::new(1.0, 0.0);
    let dd = x2 * x2;
    let mut sum1 = p;
    for i in 1..MAXIT {
        let fi = i as f64;
        ff = (ff * fi + p + q) / (fi * fi - mu * mu);
        c = c * dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - ff * fi);
        if del.norm() < sum.norm() * EPS {
            break;
        }
    }
    let ew = w.exp();
    (sum * ew, sum1 * recip(w) * 2.0 * ew)
}

fn steed(mu: f64, w: C) -> (C, C) {
    let a1 = 0.25 - mu * mu;
    let mut b = (w + 1.0) * 2.0;
    let mut d = b.inv();
    let mut h = d;
    let mut delh = d;
    let mut q1 = C::new(0.0, 0.0);
    let mut q2 = C::new(1.0, 0.0);
    let mut q = C::new(a1, 0.0);
    let mut c = a1;
    let mut a = -a1;
    let mut s = q * delh + 1.0;
    for i in 2..MAXIT {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += qnew * c;
        b += 2.0;
        d = (b + d * a).inv();
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).norm() < EPS {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (w * 2.0)).sqrt() / s;
    let k1 = k0 * (w + mu + 0.5 - h) / w;
    (k0, k1)
}

/// (e^w K_mu(w), e^w K_{mu+1}(w)) for |mu| <= 1/2, Re w >= 0, w != 0.
pub(crate) fn k_pair_scaled(mu: f64, w: C) -> (C, C) {
    debug_assert!(mu.abs() <= 0.5 + 1e-15 && w.re >= -1e-300 && w != C::new(0.0, 0.0));
    if w.norm() <= CROSSOVER {
        temme(mu, w)
    } else {
        steed(mu, w)
    }
}

/// (e^w K_nu(w), e^w K_{nu+1}(w)) for 0 <= nu < 2.
fn k_pair_order(nu: f64, w: C) -> (C, C) {
    if nu <= 0.5 {
        return k_pair_scaled(nu, w);
    }
    let mu = nu - 1.0;
    if mu <= 0.5 {
        let (k0, k1) = k_pair_scaled(mu, w);
        return (k1, k0 + k1 * (recip(w) * (2.0 * nu)));
    }
    let mu = nu - 2.0;
    let (k0, k1) = k_pair_scaled(mu, w);
    let k2 = k0 + k1 * (recip(w) * (2.0 * (mu + 1.0)));
    (k2, k1 + k2 * (recip(w) * (2.0 * nu)))
}

/// e^w K_nu(w) for 0 <= nu < 2 and Re w >= 0, w != 0.
pub fn bessel_k_scaled(nu: f64, w: C) -> C {
    k_pair_order(nu, w).0
}

/// e^{-iz} H^(1)_nu(z) and e^{-iz} H^(1)_{nu+1}(z) for 0 <= nu < 2, Im z >= 0.
pub(crate) fn hankel1_pair_scaled(nu: f64, z: C) -> (C, C) {
    let w = C::new(z.im, -z.re);
    let (k0, k1) = k_pair_order(nu, w);
    // H_nu(z) = (2 / (pi i)) e^{-i nu pi / 2} K_nu(-i z)
    let f0 = C::from_polar(2.0 / PI, -0.5 * PI * (nu + 1.0));
    let f1 = C::from_polar(2.0 / PI, -0.5 * PI * (nu + 2.0));
    (f0 * k0, f1 * k1)
}

/// e^{-iz} H^(1)_nu(z) for 0 <= nu < 2, Im z >= 0, z != 0.
pub fn hankel1_scaled(nu: f64, z: C) -> C {
    hankel1_pair_scaled(nu, z).0
}

/// H^(1)_nu(z) for 0 <= nu < 2, Im z >= 0, z != 0; underflows to 0 for large Im z.
pub fn hankel1_complex(nu: f64, z: C) -> C {
    hankel1_scaled(nu, z) * (C::i() * z).exp()
}
