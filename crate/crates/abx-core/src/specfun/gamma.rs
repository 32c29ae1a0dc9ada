use crate::error::{domain, AbxError, Result};
use std::f64::consts::PI;

// Taylor coefficients of 1/Gamma(1+z) about z = 0; entry j multiplies z^j.
const RGAMMA1P: [f64; 30] = [
    1.0,
    0.577_215_664_901_532_860_6,
    -0.655_878_071_520_253_881_1,
    -0.042_002_635_034_095_235_53,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_75,
    -0.009_621_971_527_876_973_562,
    0.007_218_943_246_663_099_542,
    -0.001_165_167_591_859_065_112,
    -0.000_215_241_674_114_950_972_8,
    0.000_128_050_282_388_116_186_2,
    -0.000_020_134_854_780_788_238_66,
    -1.250_493_482_142_670_657e-6,
    1.133_027_231_981_695_882e-6,
    -2.056_338_416_977_607_104e-7,
    6.116_095_104_481_415_818e-9,
    5.002_007_644_469_222_930e-9,
    -1.181_274_570_487_020_145e-9,
    1.043_426_711_691_100_511e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783e-14,
    -5.348_122_539_423_017_982e-15,
    1.226_778_628_238_260_790e-15,
    -1.181_259_301_697_458_770e-16,
    1.186_692_254_751_600_333e-18,
    1.412_380_655_318_031_782e-18,
    -2.298_745_684_435_370_207e-19,
    1.714_406_321_927_337_433e-20,
];

/// 1/Gamma(1+z) for |z| <= 1.
pub(crate) fn rgamma1p(z: f64) -> f64 {
    RGAMMA1P.iter().rev().fold(0.0, |acc, &c| acc * z + c)
}

/// Temme's auxiliary quantities for |mu| <= 1/2:
/// (gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu)).
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    // gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2,
    // both read off the even/odd parts of the series so mu -> 0 needs no limit.
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    for j in (0..RGAMMA1P.len()).rev() {
        if j % 2 == 1 {
            gam1 = gam1 * mu2 - RGAMMA1P[j];
        } else {
            gam2 = gam2 * mu2 + RGAMMA1P[j];
        }
    }
    (gam1, gam2, rgamma1p(mu), rgamma1p(-mu))
}

/// 1/Gamma(1+nu) for 0 <= nu < 2.
pub(crate) fn rgamma_order(nu: f64) -> f64 {
    if nu <= 1.0 {
        rgamma1p(nu)
    } else {
        rgamma1p(nu - 1.0) / nu
    }
}

const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Gamma(x) for real x > 0.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("gamma_fn requires finite x > 0, got {x}"));
    }
    if x > 171.6 {
        return Err(AbxError::Overflow(format!("Gamma({x}) exceeds f64 range")));
    }
    if x <= 1.0 {
        return Ok(1.0 / (x * rgamma1p(x)));
    }
    if x < 12.0 {
        let y = x - 1.0;
        let n = y.floor();
        let z = y - n;
        let mut g = 1.0 / rgamma1p(z);
        for j in 1..=(n as usize) {
            g *= z + j as f64;
        }
        return Ok(g);
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = STIRLING.iter().rev().fold(0.0, |acc, &c| acc * inv2 + c) * inv;
    // x^(x - 1/2) split in two halves so that the intermediate stays finite.
    let half = x.powf(0.5 * x - 0.25);
    Ok((2.0 * PI).sqrt() * half * (half * (-x).exp()) * series.exp())
}
