//! Generalized eigenfunctions, scattering amplitudes, cross sections and
//! s/p channel mixing.
//!
//! A plane wave of momentum k > 0 incident from direction theta is written as
//! the limit of the resolvent kernel with the source point sent to infinity
//! opposite to theta. For the pure-flux operator this gives the partial-wave
//! series psi_ab; for H^U the rank-two part of the kernel adds
//! -sum_{jl} p_{jl}(k) L_j psi^{(l)}_k with
//!   L_0  =  2 pi N e^{-3 i pi alpha/4} k^alpha,
//!   L_-1 = -2 pi M e^{-3 i pi (1-alpha)/4} k^{1-alpha} e^{i theta}.

use crate::error::{domain, AbxError, Result};
use crate::extension::{Channel, ExtensionParams, FluxAlpha};
use crate::krein::{analytic_basis, m_max_policy, p_of_k, reduce_angle, PMatrix};
use crate::mat2::Mat2;
use crate::specfun::{j_ladder_scaled, UpperHalfK};
use num_complex::Complex64 as C;
use std::f64::consts::{FRAC_PI_4, PI};

/// Half-width of the excluded forward cone |phi - theta| < EPS_FWD.
pub const EPS_FWD: f64 = 1e-3;

/// Incident momentum k > 0 and direction theta in [0, 2 pi).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWaveChannel {
    k: f64,
    theta: f64,
}

impl PlaneWaveChannel {
    pub fn new(k: f64, theta: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) || !theta.is_finite() {
            return domain(format!("plane wave needs finite k > 0 and finite theta, got k={k}, theta={theta}"));
        }
        Ok(PlaneWaveChannel { k, theta: theta.rem_euclid(2.0 * PI) })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    fn uhk(&self) -> UpperHalfK {
        UpperHalfK::real(self.k).expect("k validated at construction")
    }
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return domain(format!("r must be finite and > 0, got {r}"));
    }
    Ok(())
}

/// sum_m i^{|m|} e^{i m (phi-theta)} e^{i pi (|m| - |m+alpha|)/2} J_{|m+alpha|}(k r)
pub fn psi_ab(alpha: FluxAlpha, chan: &PlaneWaveChannel, r: f64, phi: f64) -> Result<C> {
    check_r(r)?;
    let x = chan.k * r;
    let a = alpha.value();
    let d = phi - chan.theta;
    let mut n = m_max_policy(x);
    loop {
        let up = j_ladder_scaled(a, C::new(x, 0.0), n);
        let down = j_ladder_scaled(1.0 - a, C::new(x, 0.0), n);
        if up[n].norm() + down[n].norm() > 1e-17 && n < 1_000_000 {
            n *= 2;
            continue;
        }
        let pu = C::from_polar(1.0, -0.5 * PI * a);
        let pd = C::from_polar(1.0, 0.5 * PI * a);
        let mut s = C::new(0.0, 0.0);
        for j in (0..=n).rev() {
            let m = j as f64;
            // m >= 0: i^m e^{i m d}; m = -(j+1): i^{j+1} e^{-i (j+1) d}
            s += pu * up[j].re * C::from_polar(1.0, m * (d + 0.5 * PI));
            s += pd * down[j].re * C::from_polar(1.0, (m + 1.0) * (0.5 * PI - d));
        }
        return Ok(s);
    }
}

/// L_j of the module header, without the e^{i theta} factor of L_-1.
fn source_weight(alpha: FluxAlpha, ch: Channel, k: f64) -> C {
    let nu = alpha.order(ch);
    let sign = match ch {
        Channel::S => 1.0,
        Channel::P => -1.0,
    };
    C::from_polar(sign * 2.0 * PI * alpha.norm_const(ch) * k.powf(nu), -0.75 * PI * nu)
}

fn p_on_shell(p: &ExtensionParams, alpha: FluxAlpha, k: f64) -> Result<PMatrix> {
    p_of_k(p, alpha, UpperHalfK::real(k)?)
}

/// Psi^U(r, phi) for incidence (k, theta).
pub fn psi_u(p: &ExtensionParams, alpha: FluxAlpha, chan: &PlaneWaveChannel, r: f64, phi: f64) -> Result<C> {
    let base = psi_ab(alpha, chan, r, phi)?;
    let pm = p_on_shell(p, alpha, chan.k)?;
    Ok(base - correction(&pm, alpha, chan, r, phi))
}

fn correction(pm: &PMatrix, alpha: FluxAlpha, chan: &PlaneWaveChannel, r: f64, phi: f64) -> C {
    let k = chan.uhk();
    let mut s = C::new(0.0, 0.0);
    for j in Channel::BOTH {
        let lj = source_weight(alpha, j, chan.k)
            * match j {
                Channel::S => C::new(1.0, 0.0),
                Channel::P => C::from_polar(1.0, chan.theta),
            };
        for l in Channel::BOTH {
            let pjl = pm.at(j, l);
            if pjl != C::new(0.0, 0.0) {
                s += pjl * lj * analytic_basis(l, alpha, k).eval(r, phi);
            }
        }
    }
    s
}

/// Scattering amplitude: the outgoing wave f e^{ikr}/sqrt(r) off the forward
/// direction, plus the forward distribution kept symbolically.
///
/// smooth(theta, phi) = sqrt(2pi/(ik)) (i sin(pi alpha)/pi) / (e^{i(phi-theta)} - 1)
///                      + sum_{jl} w_{jl} e^{i theta [j = -1]} e^{-i phi [l = -1]}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Amplitude {
    pub alpha: FluxAlpha,
    pub k: f64,
    /// w_{jl}; zero for the pure-flux operator.
    pub corrections: Mat2,
    /// Coefficient of delta(phi - theta).
    pub forward_delta_coeff: C,
    /// Weight of the principal value P 1/(e^{i(phi-theta)} - 1).
    pub forward_pv_weight: C,
}

impl Amplitude {
    /// Off-forward amplitude; |phi - theta| < EPS_FWD (mod 2 pi) is rejected.
    pub fn smooth(&self, theta: f64, phi: f64) -> Result<C> {
        let d = reduce_angle(phi - theta);
        if d.abs() < EPS_FWD {
            return domain(format!(
                "forward direction: |phi - theta| = {:e} < {EPS_FWD:e}; the forward amplitude is a distribution",
                d.abs()
            ));
        }
        let mut f = self.forward_pv_weight / (C::from_polar(1.0, d) - 1.0);
        let w = &self.corrections;
        f += w.at(0, 0);
        f += w.at(-1, 0) * C::from_polar(1.0, theta);
        f += w.at(0, -1) * C::from_polar(1.0, -phi);
        f += w.at(-1, -1) * C::from_polar(1.0, theta - phi);
        Ok(f)
    }
}

/// sqrt(2 pi / (i k))
fn amp_prefactor(k: f64) -> C {
    C::from_polar((2.0 * PI / k).sqrt(), -FRAC_PI_4)
}

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return domain(format!("k must be finite and > 0, got {k}"));
    }
    Ok(())
}

pub fn amplitude_ab(alpha: FluxAlpha, k: f64) -> Result<Amplitude> {
    check_k(k)?;
    let a = alpha.value();
    let pre = amp_prefactor(k);
    Ok(Amplitude {
        alpha,
        k,
        corrections: Mat2::zero(),
        forward_delta_coeff: pre * ((PI * a).cos() - 1.0),
        forward_pv_weight: pre * C::new(0.0, (PI * a).sin() / PI),
    })
}

pub fn amplitude_u(p: &ExtensionParams, alpha: FluxAlpha, k: f64) -> Result<Amplitude> {
    let mut amp = amplitude_ab(alpha, k)?;
    let pm = p_on_shell(p, alpha, k)?;
    let kk = UpperHalfK::real(k)?;
    let mut w = Mat2::zero();
    for j in Channel::BOTH {
        for l in Channel::BOTH {
            let far = analytic_basis(l, alpha, kk).far_field_coefficient();
            w.0[j.index()][l.index()] = -pm.at(j, l) * source_weight(alpha, j, k) * far;
        }
    }
    amp.corrections = w;
    Ok(amp)
}

/// d sigma / d phi = |f(theta, phi)|^2 off the forward cone.
pub fn cross_section(p: &ExtensionParams, alpha: FluxAlpha, k: f64, theta: f64, phi: f64) -> Result<f64> {
    Ok(amplitude_u(p, alpha, k)?.smooth(theta, phi)?.norm_sqr())
}

/// sin^2(pi alpha) / (2 pi k sin^2((phi - theta)/2))
pub fn classical_ab_cross_section(alpha: f64, k: f64, theta: f64, phi: f64) -> f64 {
    let s = (0.5 * (phi - theta)).sin();
    (PI * alpha).sin().powi(2) / (2.0 * PI * k * s * s)
}

/// Partial-wave S-matrix on the channels (0, -1): outgoing amplitudes of
/// e^{ikr}/sqrt(r) per incoming amplitude of e^{-ikr}/sqrt(r), S[l][j] for j -> l.
/// The pure-flux operator gives diag(e^{-i pi (nu_l + 1/2)}).
pub fn channel_s_matrix(p: &ExtensionParams, alpha: FluxAlpha, k: f64) -> Result<Mat2> {
    check_k(k)?;
    let pm = p_on_shell(p, alpha, k)?;
    let kk = UpperHalfK::real(k)?;
    let g = (2.0 / (PI * k)).sqrt();
    let mut s = Mat2::zero();
    for j in Channel::BOTH {
        let nu_j = alpha.order(j);
        let mj = j.m().unsigned_abs() as f64;
        // plane-wave coefficient of J_nu e^{i m phi}, and its incoming part
        let c_j = C::from_polar(1.0, 0.5 * PI * mj + 0.5 * PI * (mj - nu_j));
        let incoming = c_j * 0.5 * g * C::from_polar(1.0, 0.5 * PI * nu_j + FRAC_PI_4);
        for l in Channel::BOTH {
            let far = analytic_basis(l, alpha, kk).far_field_coefficient();
            let mut v = -pm.at(j, l) * source_weight(alpha, j, k) * far / incoming;
            if j == l {
                v += C::from_polar(1.0, -PI * (nu_j + 0.5));
            }
            s.0[l.index()][j.index()] = v;
        }
    }
    Ok(s)
}

/// Probabilities of the s -> p and p -> s transitions at momentum k.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelMixing {
    pub prob_0_to_m1: f64,
    pub prob_m1_to_0: f64,
    /// The probabilities equal constant * |p_{0,-1}(k)|^2 resp. constant * |p_{-1,0}(k)|^2.
    pub constant: f64,
}

/// 8 k^2 sin(pi alpha)
pub fn mixing_constant(alpha: FluxAlpha, k: f64) -> f64 {
    8.0 * k * k * (PI * alpha.value()).sin()
}

pub fn channel_mixing(p: &ExtensionParams, alpha: FluxAlpha, k: f64) -> Result<ChannelMixing> {
    check_k(k)?;
    let pm = p_on_shell(p, alpha, k)?;
    let c = mixing_constant(alpha, k);
    let m = ChannelMixing {
        prob_0_to_m1: c * pm.at(Channel::S, Channel::P).norm_sqr(),
        prob_m1_to_0: c * pm.at(Channel::P, Channel::S).norm_sqr(),
        constant: c,
    };
    let diff = (m.prob_0_to_m1 - m.prob_m1_to_0).abs();
    if diff > 1e-12 * m.prob_0_to_m1.max(m.prob_m1_to_0).max(f64::MIN_POSITIVE) {
        return Err(AbxError::NotConverged(format!("channel mixing asymmetry {diff:e}")));
    }
    Ok(m)
}

/// Estimate of the scattering amplitude from Psi^U at large r.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtractedAmplitude {
    pub value: C,
    /// The three single-radius estimates at r_max, 2 r_max, 4 r_max.
    pub samples: [C; 3],
    /// |extrapolated - estimate at 4 r_max|
    pub spread: f64,
}

/// Incident part of Psi^AB at large r: e^{ikr cos d} e^{-i alpha (d - pi)}, d = (phi - theta) mod 2pi in (0, 2pi).
pub fn incident_wave(alpha: FluxAlpha, chan: &PlaneWaveChannel, r: f64, phi: f64) -> C {
    let d = (phi - chan.theta).rem_euclid(2.0 * PI);
    C::from_polar(1.0, chan.k * r * d.cos() - alpha.value() * (d - PI))
}

/// [Psi^U - incident] sqrt(r) e^{-ikr} at r_max, 2 r_max, 4 r_max, combined to
/// cancel the 1/r and 1/r^2 remainders.
pub fn extract_amplitude(p: &ExtensionParams, alpha: FluxAlpha, chan: &PlaneWaveChannel, phi: f64, r_max: f64) -> Result<ExtractedAmplitude> {
    check_r(r_max)?;
    if reduce_angle(phi - chan.theta).abs() < EPS_FWD {
        return domain("extract_amplitude is undefined in the forward cone");
    }
    let mut s = [C::new(0.0, 0.0); 3];
    for (i, f) in [1.0, 2.0, 4.0].iter().enumerate() {
        let r = r_max * f;
        let psi = psi_u(p, alpha, chan, r, phi)?;
        s[i] = (psi - incident_wave(alpha, chan, r, phi)) * r.sqrt() * C::from_polar(1.0, -chan.k * r);
    }
    let value = (s[2] * 8.0 - s[1] * 6.0 + s[0]) / 3.0;
    let spread = (value - s[2]).norm();
    if !(value.re.is_finite() && value.im.is_finite()) || spread > 0.5 * value.norm().max(1e-3) {
        return Err(AbxError::NotConverged(format!("amplitude extraction spread {spread:e} at r_max = {r_max}")));
    }
    Ok(ExtractedAmplitude { value, samples: s, spread })
}
