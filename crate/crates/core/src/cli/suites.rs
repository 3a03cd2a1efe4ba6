//! The verification suites behind `run <suite>`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::config::RunConfig;
use super::report::{eigenvalues_csv, matrix_csv, SuiteReport, SuiteRun, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::kernel;
use crate::linalg::DenseMatrix;
use crate::operators::{self, Route};
use crate::scalar::{Rational, Scalar, ScalarKind};
use crate::schur::{self, MeasureContext};
use crate::series::{self, Side};
use crate::spectral::{self, AuditOptions, SpectrumReport, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Suite {
    #[serde(rename = "theorem1")]
    Theorem1,
    #[serde(rename = "theorem3")]
    Theorem3,
    #[serde(rename = "theorem4")]
    Theorem4,
    #[serde(rename = "lemma6")]
    Lemma6,
    #[serde(rename = "tpAudit")]
    TpAudit,
    #[serde(rename = "all")]
    All,
}

impl Suite {
    pub const SINGLE: [Suite; 5] = [
        Suite::Theorem1,
        Suite::Theorem3,
        Suite::Theorem4,
        Suite::Lemma6,
        Suite::TpAudit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Theorem3 => "theorem3",
            Suite::Theorem4 => "theorem4",
            Suite::Lemma6 => "lemma6",
            Suite::TpAudit => "tpAudit",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All]
            .into_iter()
            .chain(Suite::SINGLE)
            .find(|suite| suite.name() == s || (s == "tp-audit" && *suite == Suite::TpAudit))
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

/// Run one suite, or all five (concurrently with `parallel`). Nothing is written.
pub fn run_suite(cfg: &RunConfig, suite: Suite) -> Result<Vec<SuiteRun>> {
    if suite != Suite::All {
        return Ok(vec![run_single(cfg, suite)?]);
    }
    if cfg.parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = Suite::SINGLE
                .iter()
                .map(|&s| scope.spawn(move || run_single(cfg, s)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("suite thread panicked"))
                .collect()
        })
    } else {
        Suite::SINGLE.iter().map(|&s| run_single(cfg, s)).collect()
    }
}

fn run_single(cfg: &RunConfig, suite: Suite) -> Result<SuiteRun> {
    let start = Instant::now();
    let (pass, result, files) = match suite {
        Suite::Theorem1 => theorem1(cfg)?,
        Suite::Theorem3 => theorem3(cfg)?,
        Suite::Theorem4 => theorem4(cfg)?,
        Suite::Lemma6 => lemma6(cfg)?,
        Suite::TpAudit => tp_audit(cfg)?,
        Suite::All => unreachable!("expanded by run_suite"),
    };
    Ok(SuiteRun {
        report: SuiteReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.name().to_string(),
            tag: cfg.tag.clone(),
            inputs: cfg.clone(),
            verdict: pass,
            elapsed_seconds: start.elapsed().as_secs_f64(),
            artifacts: files.iter().map(|(name, _)| name.clone()).collect(),
            result,
        },
        files,
    })
}

type Outcome = (Verdict, serde_json::Value, Vec<(String, String)>);

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn theorem1(cfg: &RunConfig) -> Result<Outcome> {
    let tol = &cfg.tolerances;
    let series_tol = cfg.headline_tolerance.unwrap_or(tol.series);
    let r = kernel::verify_theorem1_with(&cfg.params, cfg.matrix_order, tol.resolvent, series_tol)?;
    let k = kernel::kernel_blocks_from_params::<f64>(&cfg.params, cfg.matrix_order)?;
    let files = vec![(format!("{}-K.matrix.csv", cfg.tag), matrix_csv(&k.assemble(), 0))];
    Ok((Verdict::from_bool(r.pass), to_json(&r), files))
}

fn theorem3(cfg: &RunConfig) -> Result<Outcome> {
    let tol = cfg.headline_tolerance.unwrap_or(cfg.tolerances.correlation);
    let cap = cfg.enumeration_cap;
    let ctx = MeasureContext::<f64>::for_size(&cfg.params, cap)?;
    let sets = schur::singletons_and_pairs(cfg.points.0, cfg.points.1);
    let r = schur::verify_theorem3(&ctx, &sets, cap, tol)?;
    let (mass, _) = schur::total_mass(&ctx, cap)?;
    let mass_tail = schur::size_tail_bound(&cfg.params, cap)?;
    let z_closed = schur::cauchy_z::<f64>(&cfg.params)?;
    let z_series = schur::normalization_z(&cfg.params, cfg.series_order)?;
    let a = operators::build_a::<f64>(&cfg.params, cfg.matrix_order, Route::HookSchur)?;
    let b = operators::build_b::<f64>(&cfg.params, cfg.matrix_order, Route::HookSchur)?;
    let det_l = operators::build_l(&a, &b)?.shift_identity(&1.0).determinant()?;
    let det_relative = (det_l - z_closed).abs() / z_closed;
    let z_agreement = (z_series.value - z_closed).abs();
    let mass_ok = mass <= 1.0 + 1e-12 && mass >= 1.0 - mass_tail - 1e-12;
    let pass = r.pass && mass_ok && z_agreement <= 1e-12 * z_closed && det_relative <= 1e-6;
    let zk = kernel::z_kernel(&cfg.params, r.kernel_window.0, r.kernel_window.1)?;
    let files = vec![(format!("{}-Kz.matrix.csv", cfg.tag), matrix_csv(&zk.values, zk.x_min))];
    let result = json!({
        "correlations": r,
        "normalization": {
            "total_mass": mass,
            "mass_tail_bound": mass_tail,
            "z_closed_form": z_closed,
            "z_series": z_series,
            "z_agreement": z_agreement,
            "det_one_plus_l": det_l,
            "det_relative_error": det_relative,
            "matrix_order": cfg.matrix_order,
        },
        "weights_cached": ctx.cached_weights(),
    });
    Ok((Verdict::from_bool(pass), result, files))
}

fn theorem4(cfg: &RunConfig) -> Result<Outcome> {
    let tol = &cfg.tolerances;
    let spectrum_tol = cfg.headline_tolerance.unwrap_or(tol.spectrum);
    let r = spectral::verify_theorem4(
        &cfg.params,
        cfg.matrix_order,
        &cfg.tail_starts,
        spectrum_tol,
        tol.similarity,
    )?;
    let params = cfg.params.clone();
    let sweep = spectral::sweep_convergence(
        "AtB",
        move |n| spectral::atb(&params, n),
        &cfg.sweep_schedule,
        tol.convergence,
    )?;
    let mut files = Vec::new();
    let mut dump = |s: &SpectrumReport, name: String| files.push((name, eigenvalues_csv(&s.eigenvalues)));
    for t in &r.tails {
        for s in [&t.k11, &t.k22, &t.t] {
            dump(s, format!("{}-{}-n{}.eigenvalues.csv", cfg.tag, s.operator_tag, t.tail_start));
        }
    }
    dump(&sweep.final_spectrum, format!("{}-AtB.eigenvalues.csv", cfg.tag));
    let verdict = match (r.pass, sweep.verdict) {
        (false, _) | (_, Verdict::Fail) => Verdict::Fail,
        (true, v) => v,
    };
    Ok((verdict, json!({ "spectra": r, "sweep": sweep }), files))
}

fn lemma6(cfg: &RunConfig) -> Result<Outcome> {
    let random = spectral::lemma6_random_trials(cfg.lemma6_trials, cfg.seed, 3, 3)?;
    let structured = spectral::lemma6_structured(&cfg.params, 6, 3, spectral::STRUCTURED_INNER_ORDER, 3)?;
    let pass = random.pass && structured.pass;
    Ok((
        Verdict::from_bool(pass),
        json!({ "random": random, "structured": structured }),
        Vec::new(),
    ))
}

fn tp_audit(cfg: &RunConfig) -> Result<Outcome> {
    let audits = match cfg.scalar {
        ScalarKind::Float => tp_audits::<f64>(cfg)?,
        ScalarKind::Rational => tp_audits::<Rational>(cfg)?,
    };
    let pass = audits.iter().all(|a| a.pass);
    Ok((Verdict::from_bool(pass), json!({ "audits": audits }), Vec::new()))
}

/// Audits of A, B, AᵗB and the Toeplitz matrices `[h_{i−j}]` of both sides.
fn tp_audits<S: Scalar>(cfg: &RunConfig) -> Result<Vec<spectral::TotalPositivityAudit>> {
    let order = cfg.matrix_order.max(cfg.tp_window);
    let mut opts = AuditOptions::new(cfg.tp_minor_size, cfg.tp_window).sampled(cfg.tp_samples, cfg.seed);
    opts.tolerance = cfg.headline_tolerance.unwrap_or(cfg.tolerances.minor);
    let a = operators::build_a::<S>(&cfg.params, order, Route::HookSchur)?.matrix;
    let b = operators::build_b::<S>(&cfg.params, order, Route::HookSchur)?.matrix;
    let atb = a.transpose().matmul(&b)?;
    let toeplitz = |side: Side| -> Result<DenseMatrix<S>> {
        let h = series::h_coefficients::<S>(&cfg.params, side, cfg.tp_window)?;
        Ok(DenseMatrix::from_fn(cfg.tp_window, cfg.tp_window, |i, j| {
            h.get(i as i64 - j as i64).unwrap_or_else(S::zero)
        }))
    };
    let mats = [
        ("A", a),
        ("B", b),
        ("AtB", atb),
        ("Toeplitz h+", toeplitz(Side::Plus)?),
        ("Toeplitz h-", toeplitz(Side::Minus)?),
    ];
    let audits = spectral::parallel_map(&mats, |(tag, m)| spectral::audit_total_positivity(m, tag, &opts));
    audits.into_iter().collect()
}
