//! JSON and CSV rendering. Both are byte-for-byte deterministic for a fixed configuration.

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::tasks::{class_name, cplx, Report};
use serde_json::{json, Value};

fn params(cfg: &RunConfig) -> Value {
    json!({
        "alpha": cfg.alpha.value(),
        "eta": cfg.params.eta(),
        "a": cplx(cfg.params.a()),
        "b": cplx(cfg.params.b()),
        "class": class_name(cfg),
        "k": cfg.k,
        "theta": cfg.theta,
        "angles": cfg.angles,
        "r_min": cfg.r_min,
        "r_max": cfg.r_max,
        "r_points": cfg.r_points,
        "kc": cplx(cfg.kc),
        "source": [cfg.source.0, cfg.source.1],
        "dual_tol": cfg.dual_tol,
        "limit_tol": cfg.limit_tol,
    })
}

fn provenance() -> Value {
    json!({
        "library": format!("abx-core {}", env!("CARGO_PKG_VERSION")),
        "conventions": [
            "(-k^2)^s = exp(s (2 Log k - i pi)) on the physical sheet Im k >= 0",
            "R^U(k; x, y) = R^AB(k; x, y) - sum_{jl} p_jl(k) psi_k^(l)(x) conj(psi_{-conj k}^(j)(y))",
            "Psi^U(x) = lim 4 R^U(k + i0; x, y) / (i H0(k |y|)), y = (|y|, theta + pi), |y| -> inf",
            "far field: Psi^AB ~ e^{ikr cos d} e^{-i alpha (d - pi)} + f e^{ikr} / sqrt(r), d = (phi - theta) mod 2 pi",
            "angle grids are half-open [0, 2 pi); points with |phi - theta| < forward_cone are marked forward and left empty",
        ],
    })
}

pub fn render(cfg: &RunConfig, report: &Report) -> Result<String, CliError> {
    match cfg.format {
        Format::Json => {
            let doc = json!({
                "params": params(cfg),
                "task": cfg.task.name(),
                "results": report.results,
                "diagnostics": report.diagnostics,
                "provenance": provenance(),
            });
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Numerical(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let p = &cfg.params;
            let mut s = String::new();
            s.push_str(&format!("# abx {}\n", cfg.task.name()));
            s.push_str(&format!("# alpha={} eta={} a={},{} b={},{} class={}\n", cfg.alpha.value(), p.eta(), p.a().re, p.a().im, p.b().re, p.b().im, class_name(cfg)));
            let ks: Vec<String> = cfg.k.iter().map(f64::to_string).collect();
            s.push_str(&format!("# k={} kc={},{} theta={}\n", ks.join(","), cfg.kc.re, cfg.kc.im, cfg.theta));
            let t = &report.table;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&t.columns).map_err(|e| CliError::Io(e.into()))?;
            for (i, row) in t.rows.iter().enumerate() {
                let cells = t.labels.get(i).cloned().into_iter().chain(row.iter().map(|x| format!("{x:?}")));
                w.write_record(cells).map_err(|e| CliError::Io(e.into()))?;
            }
            let body = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            s.push_str(&String::from_utf8(body).expect("csv of numbers is utf-8"));
            Ok(s)
        }
    }
}
