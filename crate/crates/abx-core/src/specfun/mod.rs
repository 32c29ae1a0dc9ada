//! Special functions: Gamma, Bessel J and Y of real argument, Hankel H^(1),
//! Macdonald K on the rays arg z = +-pi/4, and the branch of (-k^2)^s.

mod gamma;
mod kfun;
mod ladder;

pub use gamma::gamma_fn;
pub use kfun::{bessel_k_scaled, hankel1_complex, hankel1_scaled};
pub use ladder::{h_ladder_scaled, j_ladder_scaled, jh_products};

use crate::error::{domain, AbxError, Result};
use num_complex::Complex64 as C;
use std::f64::consts::{FRAC_PI_4, PI};

/// Bessel order in [0, 2).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && (0.0..2.0).contains(&nu) {
            Ok(Order(nu))
        } else {
            domain(format!("Bessel order must lie in [0, 2), got {nu}"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Spectral momentum k in the closed upper half-plane.
///
/// Real k is admitted only as a boundary value (limit Im k -> 0+) and only
/// for Re k > 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpperHalfK {
    k: C,
    on_real_axis: bool,
}

impl UpperHalfK {
    /// Strictly inside the upper half-plane.
    pub fn new(k: C) -> Result<Self> {
        if !(k.re.is_finite() && k.im.is_finite()) || k.im <= 0.0 {
            return domain(format!("k must satisfy Im k > 0, got {k}"));
        }
        Ok(UpperHalfK { k, on_real_axis: false })
    }

    /// Boundary value at real k > 0.
    pub fn real(k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return domain(format!("real k must be finite and > 0, got {k}"));
        }
        Ok(UpperHalfK { k: C::new(k, 0.0), on_real_axis: true })
    }

    /// Dispatches on Im k: zero imaginary part means boundary value.
    pub fn from_complex(k: C) -> Result<Self> {
        if k.im == 0.0 {
            Self::real(k.re)
        } else {
            Self::new(k)
        }
    }

    /// The reference point k0 = e^{i pi/4}, k0^2 = i.
    pub fn k0() -> Self {
        UpperHalfK { k: C::from_polar(1.0, FRAC_PI_4), on_real_axis: false }
    }

    pub fn k(&self) -> C {
        self.k
    }

    pub fn on_real_axis(&self) -> bool {
        self.on_real_axis
    }

    pub fn k2(&self) -> C {
        self.k * self.k
    }

    /// Principal log of k; arg k in [0, pi).
    pub(crate) fn ln_k(&self) -> C {
        C::new(self.k.norm().ln(), if self.on_real_axis { 0.0 } else { self.k.arg() })
    }

    /// k^s on the principal branch.
    pub fn pow(&self, s: f64) -> C {
        (self.ln_k() * s).exp()
    }
}

/// (-k^2)^s = exp(s Log(-k^2)) with the principal logarithm.
///
/// For arg k in (0, pi), Log(-k^2) = 2 Log k - i pi with imaginary part in
/// (-pi, pi); on the real axis this is the limit from above,
/// k^{2s} e^{-i pi s}.
pub fn branch_power(k: UpperHalfK, s: f64) -> C {
    let l = k.ln_k() * 2.0 - C::new(0.0, PI);
    (l * s).exp()
}

fn check_x(x: f64, allow_zero: bool) -> Result<()> {
    if !x.is_finite() || x < 0.0 || (!allow_zero && x == 0.0) {
        return domain(format!("argument must be finite and {}, got {x}", if allow_zero { ">= 0" } else { "> 0" }));
    }
    Ok(())
}

const SERIES_CROSSOVER: f64 = 12.0;

fn j_series(nu: f64, x: f64) -> Result<f64> {
    let m = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..500 {
        let kf = k as f64;
        term *= m / (kf * (nu + kf));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    let v = (0.5 * x).powf(nu) * gamma::rgamma_order(nu) * sum;
    if !v.is_finite() {
        return Err(AbxError::Overflow(format!("J series for nu={nu}, x={x}")));
    }
    Ok(v)
}

/// (J_nu(x), Y_nu(x)) for x > 0 from one set of evaluations.
fn jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    let h = hankel1_complex(nu, C::new(x, 0.0));
    if !(h.re.is_finite() && h.im.is_finite()) {
        return Err(AbxError::Overflow(format!("H^(1) for nu={nu}, x={x}")));
    }
    let j = if x <= SERIES_CROSSOVER.max(2.0 * nu) { j_series(nu, x)? } else { h.re };
    Ok((j, h.im))
}

/// Bessel function of the first kind J_nu(x), x >= 0.
pub fn bessel_j(nu: Order, x: f64) -> Result<f64> {
    check_x(x, true)?;
    let nu = nu.value();
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if x <= SERIES_CROSSOVER.max(2.0 * nu) {
        return j_series(nu, x);
    }
    Ok(jy(nu, x)?.0)
}

/// Bessel function of the second kind Y_nu(x), x > 0.
pub fn bessel_y(nu: Order, x: f64) -> Result<f64> {
    check_x(x, false)?;
    Ok(jy(nu.value(), x)?.1)
}

/// H^(1)_nu(x) = J_nu(x) + i Y_nu(x), x > 0.
pub fn hankel1(nu: Order, x: f64) -> Result<C> {
    check_x(x, false)?;
    let (j, y) = jy(nu.value(), x)?;
    Ok(C::new(j, y))
}

/// K_nu on one of the supported rays.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KValue {
    pub value: C,
    /// e^{-Re z} underflowed; `value` is reported as exactly 0.
    pub decayed: bool,
}

const RAY_TOL: f64 = 1e-12;

/// Macdonald function K_nu(z) for arg z = +pi/4 or -pi/4.
pub fn bessel_k(nu: Order, z: C) -> Result<KValue> {
    if !(z.norm() > 0.0) || !z.norm().is_finite() {
        return domain(format!("bessel_k requires finite z != 0, got {z}"));
    }
    let arg = z.arg();
    if (arg.abs() - FRAC_PI_4).abs() > RAY_TOL {
        return domain(format!("bessel_k supports only arg z = +-pi/4, got arg {arg}"));
    }
    if z.re > 700.0 {
        return Ok(KValue { value: C::new(0.0, 0.0), decayed: true });
    }
    let v = bessel_k_scaled(nu.value(), z) * (-z).exp();
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(AbxError::Overflow(format!("K_{} at |z| = {:e}", nu.value(), z.norm())));
    }
    Ok(KValue { value: v, decayed: false })
}
