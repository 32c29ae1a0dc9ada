//! Task dispatch. Each task yields structured JSON results and a flat table for CSV.

use crate::config::{RunConfig, Task};
use crate::error::CliError;
use abx_core::extension::{build_u_matrix, classify, Channel, ExtensionClass};
use abx_core::krein::{
    d_coeffs, d_of_k, d_of_k_dual, full_resolvent_kernel, m_max_policy, p_of_k, p_of_k_dual, reduce_angle, Polar,
};
use abx_core::mat2::Mat2;
use abx_core::scattering::{
    amplitude_u, channel_mixing, channel_s_matrix, classical_ab_cross_section, psi_u, PlaneWaveChannel, EPS_FWD,
};
use abx_core::specfun::hankel1_complex;
use abx_core::spectrum::{rot_invariant_equations, spectral_report};
use abx_core::UpperHalfK;
use num_complex::Complex64 as C;
use rayon::prelude::*;
use rayon::ThreadPool;
use serde_json::{json, Value};
use std::f64::consts::PI;

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    /// Leading text column, one entry per row when non-empty.
    pub labels: Vec<String>,
}

pub struct Report {
    pub results: Value,
    pub diagnostics: Value,
    pub table: Table,
    /// Set by validate when a check misses its tolerance.
    pub failed: bool,
}

pub fn cplx(c: C) -> Value {
    json!([c.re, c.im])
}

fn mat(m: &Mat2) -> Value {
    json!([[cplx(m.0[0][0]), cplx(m.0[0][1])], [cplx(m.0[1][0]), cplx(m.0[1][1])]])
}

pub fn class_name(cfg: &RunConfig) -> &'static str {
    match classify(&cfg.params) {
        ExtensionClass::Ab => "ab",
        ExtensionClass::RotationInvariant { .. } => "rotation-invariant",
        ExtensionClass::Mixing => "mixing",
    }
}

/// Evaluates `f` over `items` on the pool; results keep grid order, the first error in grid order wins.
fn grid<T: Sync, U: Send>(pool: &ThreadPool, items: &[T], f: impl Fn(&T) -> Result<U, CliError> + Sync) -> Result<Vec<U>, CliError> {
    pool.install(|| items.par_iter().map(&f).collect::<Vec<_>>()).into_iter().collect()
}

fn forward(cfg: &RunConfig, phi: f64) -> bool {
    reduce_angle(phi - cfg.theta).abs() < EPS_FWD
}

pub fn run_task(cfg: &RunConfig, pool: &ThreadPool) -> Result<Report, CliError> {
    match cfg.task {
        Task::Spectrum => spectrum(cfg),
        Task::Amplitude => amplitude(cfg, pool),
        Task::Xsection => xsection(cfg, pool),
        Task::Eigenfunction => eigenfunction(cfg, pool),
        Task::Resolvent => resolvent(cfg, pool),
        Task::Mixing => mixing(cfg, pool),
        Task::Validate => validate(cfg),
    }
}

fn spectrum(cfg: &RunConfig) -> Result<Report, CliError> {
    let (s, notes) = spectral_report(&cfg.params, cfg.alpha);
    let c = d_coeffs(&cfg.params, cfg.alpha);
    let factorized = match classify(&cfg.params) {
        ExtensionClass::Mixing => Value::Null,
        _ => {
            let r = rot_invariant_equations(&cfg.params, cfg.alpha)?;
            json!({
                "s_wave": r.s_wave.map(|e| -e),
                "p_wave": r.p_wave.map(|e| -e),
                "s_resonance": r.s_resonance,
                "p_resonance": r.p_resonance,
            })
        }
    };
    let energies = s.energies();
    let residuals: Vec<f64> = s.bound_states.iter().map(|b| b.residual).collect();
    let results = json!({
        "bound_states": energies,
        "zero_resonance": s.zero_resonance,
        "essential_spectrum": [0.0, "inf"],
        "factorized": factorized,
        "notes": notes,
    });
    let diagnostics = json!({
        "tolerances": {"root_residual": "1e-10 (1 + |c1| |E|)", "zero_resonance": "1e-12 max(|c1|, |c_alpha|, |c_1malpha|, 1)"},
        "coefficients": {"c1": c.c1, "c_alpha": c.c_alpha, "c_1malpha": c.c_1malpha, "c0": c.c0, "common": cplx(c.common)},
        "residuals": residuals,
    });
    let rows = s.bound_states.iter().map(|b| vec![b.energy, b.residual]).collect();
    Ok(Report { results, diagnostics, table: Table { columns: vec!["energy", "residual"], rows, labels: Vec::new() }, failed: false })
}

/// (index into cfg.k, phi), k-major.
fn k_angle_grid(cfg: &RunConfig) -> Vec<(usize, f64)> {
    let angles = cfg.angle_grid();
    (0..cfg.k.len()).flat_map(|i| angles.iter().map(move |&phi| (i, phi))).collect()
}

fn amplitude(cfg: &RunConfig, pool: &ThreadPool) -> Result<Report, CliError> {
    let amps = cfg.k.iter().map(|&k| amplitude_u(&cfg.params, cfg.alpha, k)).collect::<Result<Vec<_>, _>>()?;
    let points = k_angle_grid(cfg);
    let n = cfg.angles;
    let values = grid(pool, &points, |&(i, phi)| if forward(cfg, phi) { Ok(None) } else { Ok(Some(amps[i].smooth(cfg.theta, phi)?)) })?;
    let mut rows = Vec::new();
    let mut per_k = Vec::new();
    for (i, amp) in amps.iter().enumerate() {
        let mut samples = Vec::new();
        for (j, v) in values[i * n..(i + 1) * n].iter().enumerate() {
            let phi = points[i * n + j].1;
            match v {
                None => {
                    samples.push(json!({"phi": phi, "f": null, "forward": true}));
                    rows.push(vec![amp.k, phi, f64::NAN, f64::NAN, 1.0]);
                }
                Some(f) => {
                    samples.push(json!({"phi": phi, "f": cplx(*f), "forward": false}));
                    rows.push(vec![amp.k, phi, f.re, f.im, 0.0]);
                }
            }
        }
        per_k.push(json!({
            "k": amp.k,
            "forward_delta_coeff": cplx(amp.forward_delta_coeff),
            "forward_pv_weight": cplx(amp.forward_pv_weight),
            "corrections": mat(&amp.corrections),
            "samples": samples,
        }));
    }
    Ok(Report {
        results: json!({"theta": cfg.theta, "amplitudes": per_k}),
        diagnostics: json!({"tolerances": {"forward_cone": EPS_FWD}}),
        table: Table { columns: vec!["k", "phi", "f_re", "f_im", "forward"], rows, labels: Vec::new() },
        failed: false,
    })
}

fn xsection(cfg: &RunConfig, pool: &ThreadPool) -> Result<Report, CliError> {
    let amps = cfg.k.iter().map(|&k| amplitude_u(&cfg.params, cfg.alpha, k)).collect::<Result<Vec<_>, _>>()?;
    let points = k_angle_grid(cfg);
    let n = cfg.angles;
    let values = grid(pool, &points, |&(i, phi)| {
        if forward(cfg, phi) {
            return Ok(None);
        }
        let ab = classical_ab_cross_section(cfg.alpha.value(), cfg.k[i], cfg.theta, phi);
        Ok(Some((amps[i].smooth(cfg.theta, phi)?.norm_sqr(), ab)))
    })?;
    let mut rows = Vec::new();
    let mut per_k = Vec::new();
    for (i, &k) in cfg.k.iter().enumerate() {
        let mut samples = Vec::new();
        for (j, v) in values[i * n..(i + 1) * n].iter().enumerate() {
            let phi = points[i * n + j].1;
            match v {
                None => {
                    samples.push(json!({"phi": phi, "dsigma": null, "classical_ab": null, "forward": true}));
                    rows.push(vec![k, phi, f64::NAN, f64::NAN, 1.0]);
                }
                Some((x, ab)) => {
                    samples.push(json!({"phi": phi, "dsigma": x, "classical_ab": ab, "forward": false}));
                    rows.push(vec![k, phi, *x, *ab, 0.0]);
                }
            }
        }
        per_k.push(json!({"k": k, "samples": samples}));
    }
    Ok(Report {
        results: json!({"theta": cfg.theta, "cross_sections": per_k}),
        diagnostics: json!({"tolerances": {"forward_cone": EPS_FWD}}),
        table: Table { columns: vec!["k", "phi", "dsigma", "classical_ab", "forward"], rows, labels: Vec::new() },
        failed: false,
    })
}

fn field_grid(cfg: &RunConfig) -> Vec<(f64, f64)> {
    let angles = cfg.angle_grid();
    cfg.radial_grid().into_iter().flat_map(|r| angles.iter().map(move |&phi| (r, phi))).collect()
}

fn eigenfunction(cfg: &RunConfig, pool: &ThreadPool) -> Result<Report, CliError> {
    let field = field_grid(cfg);
    let points: Vec<(usize, f64, f64)> = (0..cfg.k.len()).flat_map(|i| field.iter().map(move |&(r, phi)| (i, r, phi))).collect();
    let chans = cfg.k.iter().map(|&k| PlaneWaveChannel::new(k, cfg.theta)).collect::<Result<Vec<_>, _>>()?;
    let values = grid(pool, &points, |&(i, r, phi)| Ok(psi_u(&cfg.params, cfg.alpha, &chans[i], r, phi)?))?;
    let rows = points.iter().zip(&values).map(|(&(i, r, phi), v)| vec![cfg.k[i], r, phi, v.re, v.im]).collect();
    let samples: Vec<Value> =
        points.iter().zip(&values).map(|(&(i, r, phi), v)| json!({"k": cfg.k[i], "r": r, "phi": phi, "psi": cplx(*v)})).collect();
    let orders: Vec<usize> = cfg.k.iter().map(|&k| m_max_policy(k * cfg.r_max)).collect();
    Ok(Report {
        results: json!({"theta": cfg.theta, "samples": samples}),
        diagnostics: json!({"truncation_orders": orders}),
        table: Table { columns: vec!["k", "r", "phi", "psi_re", "psi_im"], rows, labels: Vec::new() },
        failed: false,
    })
}

fn resolvent(cfg: &RunConfig, pool: &ThreadPool) -> Result<Report, CliError> {
    let k = UpperHalfK::new(cfg.kc)?;
    let y = Polar::new(cfg.source.0, cfg.source.1);
    let d = d_of_k(&cfg.params, cfg.alpha, k)?;
    let pm = p_of_k(&cfg.params, cfg.alpha, k)?;
    let points = field_grid(cfg);
    let values = grid(pool, &points, |&(r, phi)| Ok(full_resolvent_kernel(&cfg.params, cfg.alpha, k, &Polar::new(r, phi), &y)?))?;
    let rows = points.iter().zip(&values).map(|(&(r, phi), v)| vec![r, phi, v.re, v.im]).collect();
    let samples: Vec<Value> = points.iter().zip(&values).map(|(&(r, phi), v)| json!({"r": r, "phi": phi, "value": cplx(*v)})).collect();
    Ok(Report {
        results: json!({"k": cplx(cfg.kc), "source": [cfg.source.0, cfg.source.1], "samples": samples}),
        diagnostics: json!({"d": cplx(d), "p": mat(&pm.m)}),
        table: Table { columns: vec!["r", "phi", "re", "im"], rows, labels: Vec::new() },
        failed: false,
    })
}

fn mixing(cfg: &RunConfig, pool: &ThreadPool) -> Result<Report, CliError> {
    let values = grid(pool, &cfg.k, |&k| {
        let m = channel_mixing(&cfg.params, cfg.alpha, k)?;
        let s = channel_s_matrix(&cfg.params, cfg.alpha, k)?;
        let unitarity = (s.adjoint() * s - Mat2::identity()).max_abs();
        Ok((k, m, unitarity))
    })?;
    let rows = values.iter().map(|(k, m, u)| vec![*k, m.prob_0_to_m1, m.prob_m1_to_0, m.constant, *u]).collect();
    let per_k: Vec<Value> = values
        .iter()
        .map(|(k, m, _)| json!({"k": k, "prob_0_to_m1": m.prob_0_to_m1, "prob_m1_to_0": m.prob_m1_to_0, "constant": m.constant}))
        .collect();
    let residuals: Vec<f64> = values.iter().map(|v| v.2).collect();
    Ok(Report {
        results: json!({"mixing": per_k}),
        diagnostics: json!({"s_matrix_unitarity_residuals": residuals, "tolerances": {"symmetry": 1e-12}}),
        table: Table { columns: vec!["k", "prob_0_to_m1", "prob_m1_to_0", "constant", "unitarity_residual"], rows, labels: Vec::new() },
        failed: false,
    })
}

struct Check {
    name: String,
    value: f64,
    tol: f64,
}

fn validate(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut checks = Vec::new();
    let mut ks: Vec<UpperHalfK> = vec![UpperHalfK::new(cfg.kc)?];
    for &k in &cfg.k {
        ks.push(UpperHalfK::real(k)?);
    }
    for k in &ks {
        let label = format!("{}{:+}i", k.k().re, k.k().im);
        checks.push(Check { name: format!("D dual path at k = {label}"), value: d_of_k_dual(&cfg.params, cfg.alpha, *k).rel_diff, tol: cfg.dual_tol });
        checks.push(Check { name: format!("p dual path at k = {label}"), value: p_of_k_dual(&cfg.params, cfg.alpha, *k)?.rel_diff, tol: cfg.dual_tol });
    }
    for &k in &cfg.k {
        let s = channel_s_matrix(&cfg.params, cfg.alpha, k)?;
        checks.push(Check { name: format!("S-matrix unitarity at k = {k}"), value: (s.adjoint() * s - Mat2::identity()).max_abs(), tol: 1e-12 });
        let pm = p_of_k(&cfg.params, cfg.alpha, UpperHalfK::real(k)?)?;
        let (x, y) = (pm.at(Channel::S, Channel::P).norm(), pm.at(Channel::P, Channel::S).norm());
        checks.push(Check { name: format!("|p01| = |p10| at k = {k}"), value: (x - y).abs() / x.max(f64::MIN_POSITIVE), tol: 1e-12 });
    }
    // Eigenfunction against the resolvent limit with the source at k rho = 1e3 opposite theta.
    let k = cfg.k[0];
    let (r, phi) = (1.0 / k, cfg.theta + 2.0);
    let kc = C::new(k, 1e-6 * k);
    let rho = 1e3 / k;
    let kern = full_resolvent_kernel(&cfg.params, cfg.alpha, UpperHalfK::new(kc)?, &Polar::new(r, phi), &Polar::new(rho, cfg.theta + PI))?;
    let limit = kern * 4.0 / (C::new(0.0, 1.0) * hankel1_complex(0.0, kc * rho));
    let closed = psi_u(&cfg.params, cfg.alpha, &PlaneWaveChannel::new(k, cfg.theta)?, r, phi)?;
    checks.push(Check { name: format!("eigenfunction vs resolvent limit at k = {k}, r = {r}, phi = {phi}"), value: (limit - closed).norm() / closed.norm(), tol: cfg.limit_tol });
    let u = build_u_matrix(&cfg.params);
    checks.push(Check { name: "boundary matrix unitarity".into(), value: u.unitarity_residual(), tol: 1e-12 });

    let failed = checks.iter().any(|c| !(c.value <= c.tol));
    let list: Vec<Value> =
        checks.iter().map(|c| json!({"check": c.name, "value": c.value, "tol": c.tol, "pass": c.value <= c.tol})).collect();
    let labels = checks.iter().map(|c| c.name.clone()).collect();
    let rows = checks.iter().map(|c| vec![c.value, c.tol, if c.value <= c.tol { 1.0 } else { 0.0 }]).collect();
    Ok(Report {
        results: json!({"checks": list, "all_passed": !failed}),
        diagnostics: json!({"tolerances": {"dual_path": cfg.dual_tol, "resolvent_limit": cfg.limit_tol}}),
        table: Table { columns: vec!["check", "value", "tol", "pass"], rows, labels },
        failed,
    })
}
