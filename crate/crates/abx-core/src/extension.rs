//! Flux parameter, the (eta, a, b) family of self-adjoint extensions, the
//! unitary boundary matrix and the deficiency elements of the s- and p-wave
//! channels.

use crate::error::{domain, AbxError, Result};
use crate::mat2::Mat2;
use crate::quad;
use crate::specfun::{bessel_k, gamma_fn, Order};
use num_complex::Complex64 as C;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

pub const ALPHA_MIN: f64 = 1e-6;
pub const ALPHA_MAX: f64 = 1.0 - 1e-6;
pub const NORM_TOL: f64 = 1e-12;

/// Flux alpha in [1e-6, 1 - 1e-6].
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct FluxAlpha(f64);

impl FluxAlpha {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && (ALPHA_MIN..=ALPHA_MAX).contains(&alpha) {
            Ok(FluxAlpha(alpha))
        } else {
            domain(format!("alpha must lie in [{ALPHA_MIN:e}, 1 - {ALPHA_MIN:e}], got {alpha}"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Bessel order of the channel: alpha for m = 0, 1 - alpha for m = -1.
    pub fn order(self, ch: Channel) -> f64 {
        match ch {
            Channel::S => self.0,
            Channel::P => 1.0 - self.0,
        }
    }

    /// N = sqrt(2 cos(pi alpha / 2)) / pi.
    pub fn n_const(self) -> f64 {
        (2.0 * (FRAC_PI_2 * self.0).cos()).sqrt() / PI
    }

    /// M = sqrt(2 sin(pi alpha / 2)) / pi.
    pub fn m_const(self) -> f64 {
        (2.0 * (FRAC_PI_2 * self.0).sin()).sqrt() / PI
    }

    pub fn norm_const(self, ch: Channel) -> f64 {
        match ch {
            Channel::S => self.n_const(),
            Channel::P => self.m_const(),
        }
    }
}

/// The two angular-momentum channels carrying point interactions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    /// m = 0
    S,
    /// m = -1
    P,
}

impl Channel {
    pub const BOTH: [Channel; 2] = [Channel::S, Channel::P];

    pub fn m(self) -> i32 {
        match self {
            Channel::S => 0,
            Channel::P => -1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Channel::S => 0,
            Channel::P => 1,
        }
    }

    pub fn from_m(m: i32) -> Result<Self> {
        match m {
            0 => Ok(Channel::S),
            -1 => Ok(Channel::P),
            _ => domain(format!("channel must be 0 or -1, got {m}")),
        }
    }
}

fn wrap_angle(x: f64) -> f64 {
    let mut y = x % (2.0 * PI);
    if y <= -PI {
        y += 2.0 * PI;
    } else if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// (eta, a, b) with |a|^2 + |b|^2 = 1; eta is stored in (-pi, pi].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtensionParams {
    eta: f64,
    a: C,
    b: C,
}

impl ExtensionParams {
    pub fn new(eta: f64, a: C, b: C) -> Result<Self> {
        if !(eta.is_finite() && a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
            return domain("extension parameters must be finite");
        }
        let norm = a.norm_sqr() + b.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return domain(format!("|a|^2 + |b|^2 must equal 1 (within {NORM_TOL:e}), got {norm}"));
        }
        Ok(ExtensionParams { eta: wrap_angle(eta), a, b })
    }

    /// The regular (pure flux) extension: eta = 0, a = -1, b = 0.
    pub fn ab() -> Self {
        ExtensionParams { eta: 0.0, a: C::new(-1.0, 0.0), b: C::new(0.0, 0.0) }
    }

    /// b = 0, a = e^{i tau}.
    pub fn rotation_invariant(eta: f64, tau: f64) -> Self {
        ExtensionParams { eta: wrap_angle(eta), a: C::from_polar(1.0, tau), b: C::new(0.0, 0.0) }
    }

    /// eta = 0, a = 0, b = e^{i gamma}.
    pub fn mixing(gamma: f64) -> Self {
        ExtensionParams { eta: 0.0, a: C::new(0.0, 0.0), b: C::from_polar(1.0, gamma) }
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
    pub fn a(&self) -> C {
        self.a
    }
    pub fn b(&self) -> C {
        self.b
    }

    /// Representative of the class {(eta, a, b), (eta + pi, -a, -b)}: the first
    /// non-negligible component of (Re a, Im a, Re b, Im b) is made positive.
    pub fn canonical(&self) -> Self {
        let key = [self.a.re, self.a.im, self.b.re, self.b.im];
        let first = key.iter().copied().find(|v| v.abs() > 1e-14).unwrap_or(0.0);
        if first < 0.0 {
            ExtensionParams { eta: wrap_angle(self.eta + PI), a: -self.a, b: -self.b }
        } else {
            *self
        }
    }

    /// Inverse of `build_u_matrix`, returned in canonical form.
    pub fn from_u_matrix(u: &UMatrix) -> Result<Self> {
        if u.unitarity_residual() > 1e-10 {
            return domain("matrix is not unitary");
        }
        let m = &u.0 .0;
        let eta = 0.5 * u.0.det().arg();
        let ph = C::from_polar(1.0, -eta);
        let (a, b) = (ph * m[0][0], ph * m[1][0]);
        if (m[0][1] + C::from_polar(1.0, eta) * b.conj()).norm() > 1e-10 || (m[1][1] - C::from_polar(1.0, eta) * a.conj()).norm() > 1e-10 {
            return domain("unitary matrix is not of the form e^{i eta} [[a, -conj b], [b, conj a]]");
        }
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        Ok(ExtensionParams::new(eta, a / n, b / n)?.canonical())
    }
}

/// Unitary boundary matrix e^{i eta} [[a, -conj b], [b, conj a]] on channels (0, -1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UMatrix(pub Mat2);

impl UMatrix {
    /// max |(U U^dagger - I)_{ij}|
    pub fn unitarity_residual(&self) -> f64 {
        (self.0 * self.0.adjoint() - Mat2::identity()).max_abs()
    }
}

pub fn build_u_matrix(p: &ExtensionParams) -> UMatrix {
    let e = C::from_polar(1.0, p.eta);
    UMatrix(Mat2::new(e * p.a, -e * p.b.conj(), e * p.b, e * p.a.conj()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtensionClass {
    Ab,
    RotationInvariant { tau: f64 },
    Mixing,
}

pub const CLASS_TOL: f64 = 1e-12;

/// AB iff U = -I; rotation invariant iff b = 0; mixing otherwise.
pub fn classify(p: &ExtensionParams) -> ExtensionClass {
    if p.b.norm() > CLASS_TOL {
        return ExtensionClass::Mixing;
    }
    if (C::from_polar(1.0, p.eta) * p.a + 1.0).norm() <= CLASS_TOL {
        return ExtensionClass::Ab;
    }
    ExtensionClass::RotationInvariant { tau: p.a.arg() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Radial deficiency element xi^{(m)}_{+-} solving h* xi = +-i xi.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeficiencyElement {
    pub channel: Channel,
    pub sign: Sign,
}

/// xi(r): N sqrt(r) K_alpha(e^{-i pi/4} r) for (S, +); the - element is
/// e^{i pi nu/2} sqrt(r) K_nu(e^{i pi/4} r) times the same constant; the P
/// channel uses M and nu = 1 - alpha.
pub fn deficiency_radial(e: DeficiencyElement, alpha: FluxAlpha, r: f64) -> Result<C> {
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("r must be finite and > 0, got {r}"));
    }
    let nu = alpha.order(e.channel);
    let c = alpha.norm_const(e.channel) * r.sqrt();
    let order = Order::new(nu)?;
    Ok(match e.sign {
        Sign::Plus => bessel_k(order, C::from_polar(r, -FRAC_PI_4))?.value * c,
        Sign::Minus => bessel_k(order, C::from_polar(r, FRAC_PI_4))?.value * C::from_polar(c, FRAC_PI_2 * nu),
    })
}

/// Below this radius xi is replaced by its leading small-r term.
const NORM_R_MIN: f64 = 1e-12;

/// L2 norm of xi on (0, inf).
///
/// On (0, r_min] |xi|^2 = c^2 Gamma(nu)^2 2^{2 nu - 2} r^{1 - 2 nu} (1 + O(r^{2 min(nu, 1 - nu)}))
/// is integrated in closed form; for nu near 1 nearly all of the mass lies
/// there. [r_min, 1] is integrated in ln r and [1, inf) panel by panel
/// against the e^{-sqrt 2 r} decay.
pub fn l2_norm_deficiency(e: DeficiencyElement, alpha: FluxAlpha) -> Result<f64> {
    let nu = alpha.order(e.channel);
    let c = alpha.norm_const(e.channel);
    let g = gamma_fn(nu)?;
    let head = c * c * g * g * 2f64.powf(2.0 * nu - 2.0) * NORM_R_MIN.powf(2.0 - 2.0 * nu) / (2.0 - 2.0 * nu);
    let xi2 = |r: f64| deficiency_radial(e, alpha, r).map(|v| v.norm_sqr()).unwrap_or(f64::NAN);
    let mid = |t: f64| {
        let r = t.exp();
        C::new(xi2(r) * r, 0.0)
    };
    let tail = |r: f64| C::new(xi2(r), 0.0);
    let m = quad::integrate(&mid, NORM_R_MIN.ln(), 0.0, 1e-14, 1e-13, 4000);
    let t = quad::integrate_tail(&tail, 1.0, 1.0, 1e-15, 1e-13);
    let total = head + m.value.re + t.value.re;
    if !(m.converged && t.converged) || !total.is_finite() {
        return Err(AbxError::NotConverged(format!(
            "deficiency norm quadrature: error {:e} on [r_min, 1], {:e} on [1, inf)",
            m.error, t.error
        )));
    }
    Ok(total.sqrt())
}
