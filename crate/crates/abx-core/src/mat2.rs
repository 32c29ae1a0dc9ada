//! 2x2 complex matrices indexed by the channels (0, -1) in that order.

use num_complex::Complex64 as C;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[C; 2]; 2]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[C::new(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        Mat2::diag(C::new(1.0, 0.0), C::new(1.0, 0.0))
    }

    pub fn diag(a: C, b: C) -> Self {
        let z = C::new(0.0, 0.0);
        Mat2([[a, z], [z, b]])
    }

    pub fn new(a: C, b: C, c: C, d: C) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn det(&self) -> C {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 || !d.re.is_finite() || !d.im.is_finite() {
            return None;
        }
        let m = &self.0;
        Some(Mat2([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]))
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn scale(&self, s: C) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entry by channel label (0 or -1).
    pub fn at(&self, j: i32, l: i32) -> C {
        self.0[chan_index(j)][chan_index(l)]
    }
}

pub(crate) fn chan_index(m: i32) -> usize {
    match m {
        0 => 0,
        -1 => 1,
        _ => panic!("channel must be 0 or -1, got {m}"),
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(C::new(-1.0, 0.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}
