//! Resolvent kernel of the pure-flux extension.
//!
//! Partial-wave series sum_m (i/4) e^{i m (phi - zeta)} J_{|m+alpha|}(k r<) H_{|m+alpha|}(k r>)
//! when the radii are well separated; when r ~ rho the series converges like
//! (r</r>)^m / m and the kernel is evaluated from
//!
//!   (i/4) [ e^{-i alpha D} H_0(k |x - y|)
//!           - (sin(pi alpha)/pi) int_0^inf H_0(k R(t)) w(t, D) dt ],
//!   R(t)^2 = r^2 + rho^2 + 2 r rho cosh t,
//!   w(t, D) = e^{-alpha t} / (1 + e^{iD - t}) + e^{-(1-alpha) t} e^{-iD} / (1 + e^{-iD - t}),
//!
//! valid for D = phi - zeta in (-pi, pi) and Im k > 0.

use crate::error::{domain, AbxError, Result};
use crate::extension::FluxAlpha;
use crate::quad;
use crate::specfun::{hankel1_complex, jh_products, UpperHalfK};
use num_complex::Complex64 as C;
use std::f64::consts::PI;

/// Point in polar coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Polar {
    pub r: f64,
    pub phi: f64,
}

impl Polar {
    pub fn new(r: f64, phi: f64) -> Self {
        Polar { r, phi }
    }

    pub fn distance(&self, o: &Polar) -> f64 {
        let s = (0.5 * (self.phi - o.phi)).sin();
        ((self.r - o.r).powi(2) + 4.0 * self.r * o.r * s * s).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelMethod {
    Series,
    Integral,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelValue {
    pub value: C,
    pub method: KernelMethod,
    /// Highest |m| retained (series) or quadrature panels (integral).
    pub terms: usize,
    /// Bound on the discarded series tail, or the quadrature error estimate.
    pub error_estimate: f64,
}

pub const TRUNCATION_TOL: f64 = 1e-10;
const SERIES_CAP: usize = 2_000_000;
const INTEGRAL_RATIO: f64 = 0.95;

/// ceil(|k| R) + ceil(8 (|k| R)^{1/3}) + 20
pub fn m_max_policy(kr: f64) -> usize {
    kr.ceil() as usize + (8.0 * kr.cbrt()).ceil() as usize + 20
}

/// Reduces an angle to (-pi, pi].
pub fn reduce_angle(x: f64) -> f64 {
    let mut y = x % (2.0 * PI);
    if y <= -PI {
        y += 2.0 * PI;
    } else if y > PI {
        y -= 2.0 * PI;
    }
    y
}

fn check_points(x: &Polar, y: &Polar) -> Result<()> {
    for p in [x, y] {
        if !(p.r > 0.0 && p.r.is_finite() && p.phi.is_finite()) {
            return domain(format!("kernel points need finite r > 0, got {p:?}"));
        }
    }
    if x.distance(y) <= 1e-14 * (x.r + y.r) {
        return domain("coincident points x = y: the kernel has a logarithmic singularity there");
    }
    Ok(())
}

/// Partial-wave series truncated at |m| <= m_max (m = -m_max-1 ..= m_max).
pub fn ab_kernel_series(alpha: FluxAlpha, k: UpperHalfK, x: &Polar, y: &Polar, m_max: usize) -> C {
    series_sum(alpha, k, x, y, m_max).0
}

/// Series value and the modulus of the two outermost terms.
fn series_sum(alpha: FluxAlpha, k: UpperHalfK, x: &Polar, y: &Polar, m_max: usize) -> (C, f64) {
    let (rl, rg) = if x.r <= y.r { (x.r, y.r) } else { (y.r, x.r) };
    let kk = k.k();
    let (z1, z2) = (kk * rl, kk * rg);
    let a = alpha.value();
    let up = jh_products(a, z1, z2, m_max);
    let down = jh_products(1.0 - a, z1, z2, m_max);
    let d = x.phi - y.phi;
    // Summed from the small tail terms inwards.
    let mut s = C::new(0.0, 0.0);
    for j in (0..=m_max).rev() {
        let m = j as f64;
        s += up[j] * C::from_polar(1.0, m * d) + down[j] * C::from_polar(1.0, -(m + 1.0) * d);
    }
    (s * C::new(0.0, 0.25), 0.25 * (up[m_max].norm() + down[m_max].norm()))
}

fn series_length(k: UpperHalfK, x: &Polar, y: &Polar) -> (usize, f64) {
    let (rl, rg) = if x.r <= y.r { (x.r, y.r) } else { (y.r, x.r) };
    let q = rl / rg;
    let base = m_max_policy(k.k().norm() * rg);
    let extra = if q < 1.0 { ((1e-17f64).ln() / q.ln()).ceil() } else { f64::INFINITY };
    let n = (base as f64 + extra).min(SERIES_CAP as f64) as usize;
    (n, q)
}

fn kernel_integral(alpha: FluxAlpha, k: UpperHalfK, x: &Polar, y: &Polar) -> KernelValue {
    let a = alpha.value();
    let kk = k.k();
    let (r, rho) = (x.r, y.r);
    let d = reduce_angle(x.phi - y.phi);
    let big_r = |t: f64| {
        let s = (0.5 * t).sinh();
        ((r + rho).powi(2) + 4.0 * r * rho * s * s).sqrt()
    };
    let antipodal = PI - d.abs() < 1e-12;
    let direct = if antipodal {
        hankel1_complex(0.0, kk * (r + rho)) * (PI * a).cos()
    } else {
        hankel1_complex(0.0, kk * x.distance(y)) * C::from_polar(1.0, -a * d)
    };
    let eid = C::from_polar(1.0, d);
    let weight = move |t: f64| -> C {
        if antipodal {
            // (e^{-a t} - e^{-(1-a) t}) / (1 - e^{-t}), finite as t -> 0
            let num = (-a * t).exp_m1() - (-(1.0 - a) * t).exp_m1();
            let den = -(-t).exp_m1();
            if t == 0.0 {
                return C::new(1.0 - 2.0 * a, 0.0);
            }
            return C::new(num / den, 0.0);
        }
        let et = (-t).exp();
        C::new((-a * t).exp(), 0.0) / (eid * et + 1.0) + eid.conj() * (-(1.0 - a) * t).exp() / (eid.conj() * et + 1.0)
    };
    let f = |t: f64| hankel1_complex(0.0, kk * big_r(t)) * weight(t);
    let scale = direct.norm().max(hankel1_complex(0.0, kk * (r + rho)).norm());
    let res = quad::integrate_tail(&f, 0.0, 1.0, 1e-14 * scale.max(1e-300), 1e-13);
    let value = (direct - res.value * ((PI * a).sin() / PI)) * C::new(0.0, 0.25);
    KernelValue { value, method: KernelMethod::Integral, terms: res.intervals, error_estimate: res.error * 0.25 }
}

/// Resolvent kernel R^AB(k; x, y) of the pure-flux extension.
pub fn ab_resolvent_kernel(alpha: FluxAlpha, k: UpperHalfK, x: &Polar, y: &Polar) -> Result<KernelValue> {
    check_points(x, y)?;
    let (n, q) = series_length(k, x, y);
    let kk = k.k();
    let decays = !k.on_real_axis() && kk.im >= 0.05 * kk.norm();
    if q > INTEGRAL_RATIO && decays {
        let v = kernel_integral(alpha, k, x, y);
        if !(v.value.re.is_finite() && v.value.im.is_finite()) || v.error_estimate > TRUNCATION_TOL {
            return Err(AbxError::NotConverged(format!("kernel integral error estimate {:e}", v.error_estimate)));
        }
        return Ok(v);
    }
    // Terms beyond the policy decay at least like q^m / m.
    let (value, last) = series_sum(alpha, k, x, y, n);
    let tail = if q < 1.0 { last * q / (1.0 - q) } else { f64::INFINITY };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(AbxError::NotConverged("kernel series produced a non-finite value".into()));
    }
    if tail > TRUNCATION_TOL {
        return Err(AbxError::NotConverged(format!(
            "kernel series tail {tail:e} after {n} terms (r/rho = {q}); move k off the real axis or separate the radii"
        )));
    }
    Ok(KernelValue { value, method: KernelMethod::Series, terms: n, error_estimate: tail })
}
