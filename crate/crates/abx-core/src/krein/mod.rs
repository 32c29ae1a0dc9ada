//! Krein-type resolvent formula for the extensions H^U.
//!
//! R^U(k) = R^AB(k) - sum_{j,l} p_{jl}(k) (psi^{(j)}_{-conj k}, .) psi^{(l)}_k
//! with p(k) = (1 + (k^2 - i) p0 A(k, k0))^{-1} p0, k0 = e^{i pi/4}. The rank-two
//! correction enters with a minus sign: only then does the range of R^U satisfy
//! the boundary condition selected by U.

mod kernel;

pub use kernel::{ab_kernel_series, ab_resolvent_kernel, m_max_policy, reduce_angle, KernelMethod, KernelValue, Polar, TRUNCATION_TOL};

use crate::error::{AbxError, Result};
use crate::extension::{Channel, ExtensionParams, FluxAlpha};
use crate::mat2::Mat2;
use crate::specfun::{branch_power, hankel1_complex, UpperHalfK};
use num_complex::Complex64 as C;
use std::f64::consts::{FRAC_PI_2, PI};

pub const DUAL_PATH_TOL: f64 = 1e-10;

fn i() -> C {
    C::new(0.0, 1.0)
}

/// Near-eigenvalue threshold on |D(k)|.
pub fn near_eigenvalue_threshold(k: UpperHalfK) -> f64 {
    1e-12 * (1.0 + k.k().norm_sqr())
}

/// Diagonal matrix A(k1, k2) on channels (0, -1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AMatrix {
    pub m: Mat2,
    pub k1: UpperHalfK,
    pub k2: UpperHalfK,
}

/// [E1^s - E2^s] / (E1 - E2) with E = -k^2, and its limit s E^{s-1}.
fn power_quotient(k1: UpperHalfK, k2: UpperHalfK, s: f64) -> C {
    let de = k2.k2() - k1.k2();
    let e1 = -k1.k2();
    if de.norm() > 1e-5 * e1.norm() {
        return (branch_power(k1, s) - branch_power(k2, s)) / de;
    }
    let mid = UpperHalfK::from_complex(0.5 * (k1.k() + k2.k())).unwrap_or(k1);
    branch_power(mid, s - 1.0) * s
}

pub fn a_matrix(alpha: FluxAlpha, k1: UpperHalfK, k2: UpperHalfK) -> AMatrix {
    let a = alpha.value();
    let h = FRAC_PI_2 * a;
    let a00 = power_quotient(k1, k2, a) / h.sin();
    let a11 = power_quotient(k1, k2, 1.0 - a) / h.cos();
    AMatrix { m: Mat2::diag(a00, a11), k1, k2 }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PAt {
    K0,
    K(UpperHalfK),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PMatrix {
    pub m: Mat2,
    pub at: PAt,
}

impl PMatrix {
    pub fn at(&self, j: Channel, l: Channel) -> C {
        self.m.0[j.index()][l.index()]
    }
}

/// p(e^{i pi/4}) = -(i/2) [[1 + e^{-i eta} conj a, -e^{-i eta} b], [e^{-i eta} conj b, 1 + e^{-i eta} a]].
pub fn p_at_i(p: &ExtensionParams) -> PMatrix {
    let e = C::from_polar(1.0, -p.eta());
    let (a, b) = (p.a(), p.b());
    let m = Mat2::new(e * a.conj() + 1.0, -e * b, e * b.conj(), e * a + 1.0).scale(C::new(0.0, -0.5));
    PMatrix { m, at: PAt::K0 }
}

/// Real coefficients of D(k) = common * (c1 E + c_alpha E^alpha + c_1malpha E^{1-alpha} + c0), E = -k^2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CCoeffs {
    pub c1: f64,
    pub c_alpha: f64,
    pub c_1malpha: f64,
    pub c0: f64,
    pub common: C,
}

impl CCoeffs {
    pub fn max_abs(&self) -> f64 {
        [self.c1, self.c_alpha, self.c_1malpha, self.c0].iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }
}

pub fn d_coeffs(p: &ExtensionParams, alpha: FluxAlpha) -> CCoeffs {
    let a = alpha.value();
    let (eta, ar, ai) = (p.eta(), p.a().re, p.a().im);
    let h = FRAC_PI_2 * a;
    CCoeffs {
        c1: -(ar + eta.cos()),
        c_alpha: ar * h.sin() + (h - eta).sin() + ai * h.cos(),
        c_1malpha: ar * h.cos() + (h + eta).cos() - ai * h.sin(),
        c0: eta.sin() - ai * (PI * a).cos() - ar * (PI * a).sin(),
        common: C::from_polar(1.0 / (PI * a).sin(), -eta),
    }
}

/// D(k) from the coefficients, and the sum of the moduli of its four terms.
fn d_from_coeffs(c: &CCoeffs, alpha: FluxAlpha, k: UpperHalfK) -> (C, f64) {
    let a = alpha.value();
    let e = -k.k2();
    let ea = branch_power(k, a);
    let eb = branch_power(k, 1.0 - a);
    let terms = [e * c.c1, ea * c.c_alpha, eb * c.c_1malpha, C::new(c.c0, 0.0)];
    let sum = terms.iter().fold(C::new(0.0, 0.0), |s, t| s + t);
    let scale = terms.iter().map(|t| t.norm()).sum::<f64>() * c.common.norm();
    (sum * c.common, scale)
}

/// 1 + (k^2 - i) p0 A(k, k0)
fn krein_operator(p: &ExtensionParams, alpha: FluxAlpha, k: UpperHalfK) -> Mat2 {
    let a = a_matrix(alpha, k, UpperHalfK::k0());
    Mat2::identity() + (p_at_i(p).m * a.m).scale(k.k2() - i())
}

/// Both evaluation paths of a quantity and their discrepancy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualPath<T> {
    pub closed_form: T,
    pub direct: T,
    /// |closed_form - direct| / scale
    pub rel_diff: f64,
}

/// D(k) through the coefficients and through det(1 + (k^2 - i) p0 A(k, k0)).
pub fn d_of_k_dual(p: &ExtensionParams, alpha: FluxAlpha, k: UpperHalfK) -> DualPath<C> {
    let c = d_coeffs(p, alpha);
    let (d1, scale) = d_from_coeffs(&c, alpha, k);
    let d2 = krein_operator(p, alpha, k).det();
    let denom = scale.max(d1.norm()).max(d2.norm()).max(f64::MIN_POSITIVE);
    DualPath { closed_form: d1, direct: d2, rel_diff: (d1 - d2).norm() / denom }
}

/// D(k); the determinant path is computed alongside and must agree.
pub fn d_of_k(p: &ExtensionParams, alpha: FluxAlpha, k: UpperHalfK) -> Result<C> {
    let dp = d_of_k_dual(p, alpha, k);
    if dp.rel_diff > DUAL_PATH_TOL {
        return Err(AbxError::NotConverged(format!(
            "D(k) paths disagree at k = {}: {} vs {} (rel {:e})",
            k.k(),
            dp.closed_form,
            dp.direct,
            dp.rel_diff
        )));
    }
    Ok(dp.closed_form)
}

/// Closed-form p(k) given D(k).
fn p_closed(p: &ExtensionParams, alpha: FluxAlpha, k: UpperHalfK, d: C) -> Mat2 {
    let a = alpha.value();
    let h = FRAC_PI_2 * a;
    let (eta, am, b) = (p.eta(), p.a(), p.b());
    let f = C::from_polar(1.0, -eta) / (d * 2.0);
    let g = am.re + eta.cos();
    let e_eta = C::from_polar(1.0, eta);
    let k0 = UpperHalfK::k0();
    let p00 = f * ((branch_power(k, 1.0 - a) - branch_power(k0, 1.0 - a)) * (g / h.cos()) - i() * (e_eta + am.conj()));
    let p11 = f * ((branch_power(k, a) - branch_power(k0, a)) * (g / h.sin()) - i() * (e_eta + am));
    let p01 = f * i() * b;
    let p10 = -f * i() * b.conj();
    Mat2::new(p00, p01, p10, p11)
}

/// p(k) by the closed forms and by inverting 1 + (k^2 - i) p0 A(k, k0).
pub fn p_of_k_dual(p: &ExtensionParams, alpha: FluxAlpha, k: UpperHalfK) -> Result<DualPath<Mat2>> {
    let dd = d_of_k_dual(p, alpha, k);
    let d = dd.closed_form;
    if d.norm() < near_eigenvalue_threshold(k) {
        return Err(AbxError::NearEigenvalue { k: k.k(), d });
    }
    let closed = p_closed(p, alpha, k, d);
    let op = krein_operator(p, alpha, k);
    let direct = match op.inverse() {
        Some(inv) => inv * p_at_i(p).m,
        None => return Err(AbxError::NearEigenvalue { k: k.k(), d }),
    };
    let scale = closed.max_abs().max(direct.max_abs()).max(f64::MIN_POSITIVE);
    Ok(DualPath { closed_form: closed, direct, rel_diff: (closed - direct).max_abs() / scale })
}

/// p(k); both evaluation paths must agree to 1e-10 relative, loosened by the
/// conditioning 1/|D| near an eigenvalue.
pub fn p_of_k(p: &ExtensionParams, alpha: FluxAlpha, k: UpperHalfK) -> Result<PMatrix> {
    let dp = p_of_k_dual(p, alpha, k)?;
    let d = d_of_k_dual(p, alpha, k).closed_form.norm();
    let tol = DUAL_PATH_TOL.max(1e-13 * (1.0 + k.k().norm_sqr()) / d);
    if dp.rel_diff > tol {
        return Err(AbxError::NotConverged(format!("p(k) paths disagree at k = {} (rel {:e})", k.k(), dp.rel_diff)));
    }
    Ok(PMatrix { m: dp.closed_form, at: PAt::K(k) })
}

/// psi^{(j)}_k: an element of the range of 1 + (k^2 - i) R^AB(k) applied to psi_+,
/// normalized so that its r^{-nu} coefficient at the origin does not depend on k:
///
///   psi^{(0)}_k  = N (pi i/2) e^{i pi alpha/4} k^alpha H_alpha(k r)
///   psi^{(-1)}_k = M (pi i/2) e^{i pi (1-alpha)/4} k^{1-alpha} H_{1-alpha}(k r) e^{-i phi}
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticBasisElement {
    pub channel: Channel,
    pub alpha: FluxAlpha,
    pub k: UpperHalfK,
}

impl AnalyticBasisElement {
    fn nu(&self) -> f64 {
        self.alpha.order(self.channel)
    }

    /// Radial prefactor with the phase e^{+- i pi nu / 4}.
    fn prefactor(&self, conj_phase: bool) -> C {
        let nu = self.nu();
        let ph = if conj_phase { -0.25 * PI * nu } else { 0.25 * PI * nu };
        C::new(0.0, 0.5 * PI * self.alpha.norm_const(self.channel)) * C::from_polar(1.0, ph) * self.k.pow(nu)
    }

    /// psi_k(r, phi)
    pub fn eval(&self, r: f64, phi: f64) -> C {
        let h = hankel1_complex(self.nu(), self.k.k() * r);
        let ang = match self.channel {
            Channel::S => C::new(1.0, 0.0),
            Channel::P => C::from_polar(1.0, -phi),
        };
        self.prefactor(false) * h * ang
    }

    /// conj(psi_{-conj k}(r, phi)), continued to real k.
    pub fn eval_dual(&self, r: f64, phi: f64) -> C {
        let h = hankel1_complex(self.nu(), self.k.k() * r);
        let ang = match self.channel {
            Channel::S => C::new(1.0, 0.0),
            Channel::P => C::from_polar(1.0, phi),
        };
        self.prefactor(true) * h * ang
    }

    /// Outgoing-wave coefficient: psi_k ~ coeff * e^{i k r} / sqrt(r) * (angular factor), real k.
    pub fn far_field_coefficient(&self) -> C {
        let nu = self.nu();
        let k = self.k.k();
        self.prefactor(false) * (2.0 / (PI * k)).sqrt() * C::from_polar(1.0, -0.5 * PI * nu - 0.25 * PI)
    }
}

pub fn analytic_basis(channel: Channel, alpha: FluxAlpha, k: UpperHalfK) -> AnalyticBasisElement {
    AnalyticBasisElement { channel, alpha, k }
}

/// Resolvent kernel R^U(k; x, y) = R^AB(k; x, y) - sum_{jl} p_{jl}(k) psi^{(l)}_k(x) conj(psi^{(j)}_{-conj k}(y)).
pub fn full_resolvent_kernel(p: &ExtensionParams, alpha: FluxAlpha, k: UpperHalfK, x: &Polar, y: &Polar) -> Result<C> {
    let base = ab_resolvent_kernel(alpha, k, x, y)?.value;
    let pm = p_of_k(p, alpha, k)?;
    Ok(base - krein_correction(&pm, alpha, k, x, y))
}

/// sum_{jl} p_{jl} psi^{(l)}_k(x) conj(psi^{(j)}_{-conj k}(y))
pub fn krein_correction(pm: &PMatrix, alpha: FluxAlpha, k: UpperHalfK, x: &Polar, y: &Polar) -> C {
    let mut s = C::new(0.0, 0.0);
    for j in Channel::BOTH {
        let pj = analytic_basis(j, alpha, k).eval_dual(y.r, y.phi);
        for l in Channel::BOTH {
            let pjl = pm.at(j, l);
            if pjl != C::new(0.0, 0.0) {
                s += pjl * analytic_basis(l, alpha, k).eval(x.r, x.phi) * pj;
            }
        }
    }
    s
}
