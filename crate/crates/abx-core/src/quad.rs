//! Globally adaptive Gauss-Kronrod (10/21) quadrature for complex integrands.

use num_complex::Complex64 as C;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_937_596_210,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// One 21-point Kronrod panel: (estimate, |Kronrod - Gauss|).
pub fn gk21<F: Fn(f64) -> C>(f: &F, a: f64, b: f64) -> (C, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[10];
    let mut gauss = C::new(0.0, 0.0);
    for i in 0..10 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kron += s * WGK[i];
        if i % 2 == 1 {
            gauss += s * WG[i / 2];
        }
    }
    let kron = kron * h;
    let gauss = gauss * h;
    (kron, (kron - gauss).norm())
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: C,
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

struct Panel {
    a: f64,
    b: f64,
    value: C,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

/// Integrates f over [a, b] to max(abs_tol, rel_tol |I|), bisecting the
/// panel with the largest error estimate; at most `max_intervals` panels.
pub fn integrate<F: Fn(f64) -> C>(f: &F, a: f64, b: f64, abs_tol: f64, rel_tol: f64, max_intervals: usize) -> QuadResult {
    let (v, e) = gk21(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value: v, error: e });
    let mut total = v;
    let mut err = e;
    let mut n = 1;
    while err > abs_tol.max(rel_tol * total.norm()) && n < max_intervals {
        let p = heap.pop().expect("heap holds at least one panel");
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            heap.push(p);
            break;
        }
        let (v1, e1) = gk21(f, p.a, m);
        let (v2, e2) = gk21(f, m, p.b);
        total += v1 + v2 - p.value;
        err += e1 + e2 - p.error;
        heap.push(Panel { a: p.a, b: m, value: v1, error: e1 });
        heap.push(Panel { a: m, b: p.b, value: v2, error: e2 });
        n += 1;
    }
    // Recompute sums from scratch to shed accumulated cancellation.
    let value = heap.iter().fold(C::new(0.0, 0.0), |s, p| s + p.value);
    let error = heap.iter().map(|p| p.error).sum::<f64>();
    QuadResult { value, error, intervals: n, converged: error <= abs_tol.max(rel_tol * value.norm()) }
}

/// Integrates a decaying f over [a, inf): geometric panels of growing width,
/// stopped once two consecutive panels contribute below `abs_tol`.
pub fn integrate_tail<F: Fn(f64) -> C>(f: &F, a: f64, first_width: f64, abs_tol: f64, rel_tol: f64) -> QuadResult {
    let mut lo = a;
    let mut w = first_width;
    let mut value = C::new(0.0, 0.0);
    let mut error = 0.0;
    let mut intervals = 0;
    let mut converged = true;
    let mut quiet = 0;
    for _ in 0..200 {
        let r = integrate(f, lo, lo + w, 0.25 * abs_tol, rel_tol, 500);
        value += r.value;
        error += r.error;
        intervals += r.intervals;
        converged &= r.converged;
        if r.value.norm() + r.error < abs_tol.max(1e-3 * rel_tol * value.norm()) {
            quiet += 1;
            if quiet >= 2 {
                return QuadResult { value, error, intervals, converged };
            }
        } else {
            quiet = 0;
        }
        lo += w;
        w *= 1.5;
    }
    QuadResult { value, error, intervals, converged: false }
}
