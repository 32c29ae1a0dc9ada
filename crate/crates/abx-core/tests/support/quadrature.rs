//! Test-side quadrature, independent of the library's Gauss-Kronrod code.

use num_complex::Complex64 as C;
use std::f64::consts::{FRAC_PI_2, PI};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
pub fn gl_composite<F: Fn(f64) -> C>(f: F, a: f64, b: f64, n: usize, panels: usize) -> C {
    let rule = gauss_legendre(n);
    let w = (b - a) / panels as f64;
    let mut s = C::new(0.0, 0.0);
    for p in 0..panels {
        let (lo, hi) = (a + w * p as f64, a + w * (p + 1) as f64);
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        for &(x, wt) in &rule {
            s += f(mid + half * x) * (wt * half);
        }
    }
    s
}

/// Double-exponential (exp-sinh) rule for integrals over (0, inf) with an
/// integrable endpoint singularity at 0 and decay at infinity. Step halving
/// until successive estimates agree to `tol` relative.
pub fn exp_sinh<F: Fn(f64) -> C>(f: F, tol: f64) -> (C, f64) {
    let node = |t: f64| {
        let x = (FRAC_PI_2 * t.sinh()).exp();
        (x, FRAC_PI_2 * t.cosh() * x)
    };
    let eval = |h: f64, offset: bool| {
        let mut s = C::new(0.0, 0.0);
        let start = if offset { 0.5 * h } else { 0.0 };
        for dir in [1.0, -1.0] {
            let mut j = 0;
            loop {
                let t = dir * (start + h * j as f64);
                if !offset && dir < 0.0 && j == 0 {
                    j += 1;
                    continue;
                }
                let (x, w) = node(t);
                if !(1e-250..=1e4).contains(&x) {
                    break;
                }
                let v = f(x) * w;
                s += v;
                if j > 8 && v.norm() < 1e-22 * s.norm().max(1e-300) {
                    break;
                }
                j += 1;
            }
        }
        s
    };
    let mut h = 0.5;
    let mut sum = eval(h, false);
    let mut est = sum * h;
    for _ in 0..12 {
        sum += eval(h, true);
        h *= 0.5;
        let next = sum * h;
        let diff = (next - est).norm();
        est = next;
        if diff <= tol * est.norm() {
            return (est, diff);
        }
    }
    (est, f64::INFINITY)
}
