//! Slow extended-precision Bessel functions for use as test ground truth.
//!
//! Plain ascending series evaluated in double-double arithmetic; independent
//! of the library's Temme / continued-fraction / recurrence machinery. Valid
//! for |z| up to about 25 (the series cancels ~ e^{|z|}).

use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};
use twofloat::TwoFloat as D;

// Taylor coefficients of 1/Gamma(1+z), each as an unevaluated (hi, lo) sum.
const RGAMMA1P: [(f64, f64); 45] = [
    (1.0, 0.0),
    (0.5772156649015329, -4.942915152430645e-18),
    (-0.6558780715202539, 2.137185197068536e-17),
    (-0.04200263503409524, 1.4920306285650505e-18),
    (0.16653861138229148, 1.0189144546842026e-17),
    (-0.04219773455554433, -3.3579992682480134e-18),
    (-0.009621971527876973, -5.300031368830263e-19),
    (0.0072189432466631, -3.6006537063394283e-19),
    (-0.0011651675918590652, 5.659947853880981e-20),
    (-0.00021524167411495098, 2.3758686180729364e-21),
    (0.0001280502823881162, -9.359124499198967e-21),
    (-2.013485478078824e-05, 3.0488773972037385e-23),
    (-1.2504934821426706e-06, -2.66214092271898e-23),
    (1.133027231981696e-06, -4.622235212104869e-23),
    (-2.056338416977607e-07, -3.0061601618645134e-24),
    (6.116095104481416e-09, -2.693458298171306e-25),
    (5.002007644469223e-09, -1.538123614056751e-26),
    (-1.18127457048702e-09, -1.0052356155716208e-25),
    (1.0434267116911005e-10, -2.9298419956825035e-27),
    (7.782263439905071e-12, 4.397255556595848e-28),
    (-3.696805618642206e-12, 2.7050034921703885e-28),
    (5.100370287454476e-13, 2.253001461085878e-29),
    (-2.0583260535665066e-14, -1.4747481491954336e-30),
    (-5.348122539423018e-15, -1.6208384686356568e-31),
    (1.2267786282382608e-15, -5.072915146023867e-32),
    (-1.1812593016974588e-16, 6.422257838149681e-33),
    (1.1866922547516004e-18, -4.2037265494226014e-35),
    (1.4123806553180319e-18, -7.576946701116294e-35),
    (-2.29874568443537e-19, 1.3335481917069145e-36),
    (1.7144063219273374e-20, 5.230715150426935e-38),
    (1.337351730493693e-22, 2.6434059649079228e-39),
    (-2.0542335517666728e-22, 3.6856892424568953e-39),
    (2.736030048608e-23, -2.8599315416397774e-39),
    (-1.7323564459105165e-24, -1.7540883508197598e-40),
    (-2.3606190244992872e-26, -1.260225016995785e-42),
    (1.8649829417172943e-26, 8.774775617290965e-43),
    (-2.2180956242071973e-27, 6.809640315042753e-44),
    (1.2977819749479937e-28, -3.325692466804093e-45),
    (1.1806974749665284e-30, -4.184949275966516e-48),
    (-1.124584349277088e-30, -2.01842815487355e-47),
    (1.277085175140866e-31, 1.0535632367878753e-47),
    (-7.391451169615141e-33, 1.8114253268366145e-49),
    (1.1347502575542158e-35, -4.9791058715013306e-52),
    (4.639134641058722e-35, 2.6040634859975098e-52),
    (-5.3473368184391986e-36, -2.3112956912714733e-52),
];

pub fn dd(x: f64) -> D {
    D::from(x)
}

fn pi() -> D {
    twofloat::consts::PI
}

// Long division with exact remainders; TwoFloat / TwoFloat drops the
// reciprocal correction and is only good to about 1e-16.
pub fn quo(a: D, b: D) -> D {
    let q1 = a.hi() / b.hi();
    let r = a - b * dd(q1);
    let q2 = r.hi() / b.hi();
    let r = r - b * dd(q2);
    let q3 = r.hi() / b.hi();
    dd(q1) + dd(q2) + dd(q3)
}

// twofloat's own transcendentals stop near 1e-18 relative; these reach ~1e-31
// using only its exact arithmetic.

const LN2: (f64, f64) = (0.6931471805599453, 2.3190468138462996e-17);

pub fn exp(x: D) -> D {
    let n = (x.hi() / LN2.0).round();
    let r = (x - D::from(n) * (D::from(LN2.0) + D::from(LN2.1))) / 32.0;
    let mut term = dd(1.0);
    let mut sum = dd(1.0);
    for k in 1..30 {
        term = term * r / k as f64;
        sum = sum + term;
    }
    for _ in 0..5 {
        sum = sum * sum;
    }
    sum * dd(2f64.powi(n as i32))
}

pub fn ln(x: D) -> D {
    let mut y = dd(x.hi().ln());
    for _ in 0..2 {
        y = y + x * exp(-y) - dd(1.0);
    }
    y
}

// Taylor series for |r| <= pi/4 + small.
fn sin_taylor(r: D) -> D {
    let r2 = r * r;
    let mut term = r;
    let mut sum = r;
    for k in 1..25 {
        term = -(term * r2) / ((2 * k) * (2 * k + 1)) as f64;
        sum = sum + term;
    }
    sum
}

fn cos_taylor(r: D) -> D {
    let r2 = r * r;
    let mut term = dd(1.0);
    let mut sum = dd(1.0);
    for k in 1..25 {
        term = -(term * r2) / ((2 * k - 1) * (2 * k)) as f64;
        sum = sum + term;
    }
    sum
}

pub fn sin_cos(x: D) -> (D, D) {
    let half_pi = pi() / 2.0;
    let q = (x.hi() / half_pi.hi()).round();
    let r = x - D::from(q) * half_pi;
    let (s, c) = (sin_taylor(r), cos_taylor(r));
    match (q as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

pub fn atan2(y: D, x: D) -> D {
    let t0 = y.hi().atan2(x.hi());
    let (s, c) = sin_cos(dd(t0));
    // rotate by -t0; the residual angle is O(1e-16)
    let a = x * c + y * s;
    let b = y * c - x * s;
    let t = quo(b, a);
    dd(t0) + t - t * t * t / 3.0
}

/// 1/Gamma(1+z), |z| <= 1.
fn rgamma1p(z: D) -> D {
    let mut acc = dd(0.0);
    for &(hi, lo) in RGAMMA1P.iter().rev() {
        acc = acc * z + (D::from(hi) + D::from(lo));
    }
    acc
}

/// 1/Gamma(1+nu) for nu >= -2.
pub fn rgamma_order(nu: D) -> D {
    if nu > dd(1.0) {
        quo(rgamma_order(nu - dd(1.0)), nu)
    } else if nu < dd(-1.0) {
        (nu + dd(1.0)) * rgamma1p(nu + dd(1.0))
    } else {
        rgamma1p(nu)
    }
}

/// Gamma(x), 0 < x < 3.
pub fn gamma(x: f64) -> f64 {
    quo(dd(1.0), rgamma_order(dd(x) - dd(1.0))).hi()
}

#[derive(Clone, Copy, Debug)]
pub struct Cd {
    pub re: D,
    pub im: D,
}

impl Cd {
    pub fn new(re: D, im: D) -> Self {
        Cd { re, im }
    }
    pub fn real(x: D) -> Self {
        Cd { re: x, im: dd(0.0) }
    }
    pub fn from_c(z: Complex64) -> Self {
        Cd { re: dd(z.re), im: dd(z.im) }
    }
    pub fn polar(r: D, t: D) -> Self {
        let (s, c) = sin_cos(t);
        Cd { re: r * c, im: r * s }
    }
    pub fn to_c(self) -> Complex64 {
        Complex64::new(self.re.hi() + self.re.lo(), self.im.hi() + self.im.lo())
    }
    pub fn norm(self) -> D {
        (self.re * self.re + self.im * self.im).sqrt()
    }
    pub fn arg(self) -> D {
        atan2(self.im, self.re)
    }
    pub fn scale(self, s: D) -> Self {
        Cd { re: self.re * s, im: self.im * s }
    }
}

impl Add for Cd {
    type Output = Cd;
    fn add(self, o: Cd) -> Cd {
        Cd { re: self.re + o.re, im: self.im + o.im }
    }
}
impl Sub for Cd {
    type Output = Cd;
    fn sub(self, o: Cd) -> Cd {
        Cd { re: self.re - o.re, im: self.im - o.im }
    }
}
impl Neg for Cd {
    type Output = Cd;
    fn neg(self) -> Cd {
        Cd { re: -self.re, im: -self.im }
    }
}
impl Mul for Cd {
    type Output = Cd;
    fn mul(self, o: Cd) -> Cd {
        Cd { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}
impl Div for Cd {
    type Output = Cd;
    fn div(self, o: Cd) -> Cd {
        let d = o.re * o.re + o.im * o.im;
        Cd { re: quo(self.re * o.re + self.im * o.im, d), im: quo(self.im * o.re - self.re * o.im, d) }
    }
}

// (z/2)^nu sum_k (sign z^2/4)^k / (k! Gamma(nu+k+1)); sign -1 gives J, +1 gives I.
fn ascending(nu: D, z: Cd, sign: f64) -> Cd {
    let q = (z * z).scale(dd(0.25 * sign));
    let mut term = Cd::real(rgamma_order(nu));
    let mut sum = term;
    for k in 1..600 {
        let kf = dd(k as f64);
        term = (term * q).scale(quo(dd(1.0), kf * (nu + kf)));
        sum = sum + term;
        if k > 5 && term.norm() < sum.norm() * dd(1e-34) {
            break;
        }
    }
    let half = z.scale(dd(0.5));
    let pw = Cd::polar(exp(nu * ln(half.norm())), nu * half.arg());
    pw * sum
}

pub fn bessel_j(nu: f64, z: Complex64) -> Complex64 {
    ascending(dd(nu), Cd::from_c(z), -1.0).to_c()
}

fn y_dd(n: D, zc: Cd) -> (Cd, Cd) {
    let (s, c) = sin_cos(n * pi());
    let j = ascending(n, zc, -1.0);
    let y = (j.scale(c) - ascending(-n, zc, -1.0)).scale(quo(dd(1.0), s));
    (j, y)
}

/// Y_nu = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi), non-integer nu.
pub fn bessel_y(nu: f64, z: Complex64) -> Complex64 {
    y_dd(dd(nu), Cd::from_c(z)).1.to_c()
}

pub fn hankel1(nu: f64, z: Complex64) -> Complex64 {
    let (j, y) = y_dd(dd(nu), Cd::from_c(z));
    (j + Cd::new(-y.im, y.re)).to_c()
}

/// K_nu = pi / (2 sin(nu pi)) (I_{-nu} - I_nu), non-integer nu.
pub fn bessel_k(nu: f64, z: Complex64) -> Complex64 {
    let n = dd(nu);
    let zc = Cd::from_c(z);
    let (s, _) = sin_cos(n * pi());
    (ascending(-n, zc, 1.0) - ascending(n, zc, 1.0)).scale(quo(pi(), dd(2.0) * s)).to_c()
}

/// |a - b| / |b|.
pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}
