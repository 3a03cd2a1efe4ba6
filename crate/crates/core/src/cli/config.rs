//! Run configuration: a flat TOML document, resolved against presets and
//! command-line overrides.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::presets;
use crate::error::{Error, Result};
use crate::scalar::ScalarKind;
use crate::schur::MAX_ENUMERATION_SIZE;
use crate::series::SymbolParams;
use crate::spectral::MAX_AUDIT_MINOR;

pub const MAX_MATRIX_ORDER: usize = 256;
pub const MAX_SERIES_ORDER: usize = 4096;
pub const MAX_TP_WINDOW: usize = 64;
pub const MAX_LEMMA6_TRIALS: usize = 1000;
pub const MAX_POINT_SPAN: i64 = 64;

/// The document as written. Every key is optional; unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub preset: Option<String>,
    pub alpha_plus: Option<Vec<f64>>,
    pub beta_plus: Option<Vec<f64>>,
    pub alpha_minus: Option<Vec<f64>>,
    pub beta_minus: Option<Vec<f64>>,
    pub gamma_plus: Option<f64>,
    pub gamma_minus: Option<f64>,

    pub series_order: Option<usize>,
    pub matrix_order: Option<usize>,
    pub enumeration_cap: Option<usize>,
    pub tail_starts: Option<Vec<usize>>,
    pub point_min: Option<i64>,
    pub point_max: Option<i64>,
    pub sweep_schedule: Option<Vec<usize>>,
    pub tp_window: Option<usize>,
    pub tp_minor_size: Option<usize>,
    pub tp_samples: Option<usize>,
    pub lemma6_trials: Option<usize>,

    pub scalar: Option<ScalarKind>,
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub parallel: Option<bool>,

    pub resolvent_tolerance: Option<f64>,
    pub series_tolerance: Option<f64>,
    pub correlation_tolerance: Option<f64>,
    pub spectrum_tolerance: Option<f64>,
    pub similarity_tolerance: Option<f64>,
    pub minor_tolerance: Option<f64>,
    pub convergence_tolerance: Option<f64>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    fn has_params(&self) -> bool {
        self.alpha_plus.is_some()
            || self.beta_plus.is_some()
            || self.alpha_minus.is_some()
            || self.beta_minus.is_some()
            || self.gamma_plus.is_some()
            || self.gamma_minus.is_some()
    }

    fn clear_params(&mut self) {
        self.alpha_plus = None;
        self.beta_plus = None;
        self.alpha_minus = None;
        self.beta_minus = None;
        self.gamma_plus = None;
        self.gamma_minus = None;
    }
}

/// Overrides taken from the command line.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub preset: Option<String>,
    pub order: Option<usize>,
    pub scalar: Option<ScalarKind>,
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub resolvent: f64,
    pub series: f64,
    pub correlation: f64,
    pub spectrum: f64,
    pub similarity: f64,
    pub minor: f64,
    pub convergence: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            resolvent: crate::kernel::RESOLVENT_TOLERANCE,
            series: crate::kernel::SERIES_TOLERANCE,
            correlation: 1e-7,
            spectrum: crate::spectral::IMAG_TOLERANCE,
            similarity: 1e-10,
            minor: crate::spectral::MINOR_TOLERANCE,
            convergence: crate::spectral::CONVERGENCE_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Preset name, or `custom` for explicit parameters.
    pub tag: String,
    pub params: SymbolParams,
    pub float_only: bool,
    pub series_order: usize,
    pub matrix_order: usize,
    pub enumeration_cap: usize,
    pub tail_starts: Vec<usize>,
    pub points: (i64, i64),
    pub sweep_schedule: Vec<usize>,
    pub tp_window: usize,
    pub tp_minor_size: usize,
    pub tp_samples: usize,
    pub lemma6_trials: usize,
    pub scalar: ScalarKind,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub parallel: bool,
    pub tolerances: Tolerances,
    /// `--tolerance`: replaces the headline tolerance of whichever suite runs.
    pub headline_tolerance: Option<f64>,
}

impl RunConfig {
    pub fn from_preset(name: &str) -> Result<Self> {
        Self::resolve(ConfigFile::default(), &Overrides {
            preset: Some(name.to_string()),
            ..Overrides::default()
        })
    }

    pub fn resolve(mut file: ConfigFile, cli: &Overrides) -> Result<Self> {
        if let Some(p) = &cli.preset {
            file.preset = Some(p.clone());
            file.clear_params();
        }
        let (tag, params, float_only) = match &file.preset {
            Some(name) => {
                if file.has_params() {
                    return Err(Error::Config(format!(
                        "preset `{name}` given together with explicit parameters; use one or the other"
                    )));
                }
                let p = presets::preset(name)?;
                (p.name.to_string(), p.params, p.float_only)
            }
            None => {
                let params = explicit_params(&file)?;
                let float_only = params.has_exponential();
                ("custom".to_string(), params, float_only)
            }
        };
        params.validate().map_err(|e| Error::Config(e.to_string()))?;

        let d = Tolerances::default();
        let tol = |v: Option<f64>, default: f64, key: &str| -> Result<f64> {
            match v {
                Some(x) if !(x.is_finite() && x > 0.0) => {
                    Err(Error::Config(format!("`{key}` must be a positive number, got {x}")))
                }
                Some(x) => Ok(x),
                None => Ok(default),
            }
        };
        let tolerances = Tolerances {
            resolvent: tol(file.resolvent_tolerance, d.resolvent, "resolvent_tolerance")?,
            series: tol(file.series_tolerance, d.series, "series_tolerance")?,
            correlation: tol(file.correlation_tolerance, d.correlation, "correlation_tolerance")?,
            spectrum: tol(file.spectrum_tolerance, d.spectrum, "spectrum_tolerance")?,
            similarity: tol(file.similarity_tolerance, d.similarity, "similarity_tolerance")?,
            minor: tol(file.minor_tolerance, d.minor, "minor_tolerance")?,
            convergence: tol(file.convergence_tolerance, d.convergence, "convergence_tolerance")?,
        };
        let headline_tolerance = cli.tolerance.map(|t| tol(Some(t), t, "--tolerance")).transpose()?;

        let scalar = cli.scalar.or(file.scalar).unwrap_or(ScalarKind::Float);
        if scalar == ScalarKind::Rational && float_only {
            return Err(Error::Config(format!(
                "parameter set `{tag}` has γ± ≠ 0 and is float-only; rational mode is unavailable"
            )));
        }
        let matrix_order = cli.order.or(file.matrix_order).unwrap_or(32);
        let cfg = RunConfig {
            tag,
            params,
            float_only,
            series_order: file.series_order.unwrap_or(200),
            matrix_order,
            enumeration_cap: file.enumeration_cap.unwrap_or(40),
            tail_starts: file
                .tail_starts
                .unwrap_or_else(|| (0..=5).filter(|&n| n < matrix_order).collect()),
            points: (file.point_min.unwrap_or(-4), file.point_max.unwrap_or(4)),
            sweep_schedule: file.sweep_schedule.unwrap_or_else(|| vec![8, 16, 32, 64]),
            tp_window: file.tp_window.unwrap_or(12),
            tp_minor_size: file.tp_minor_size.unwrap_or(4),
            tp_samples: file.tp_samples.unwrap_or(200),
            lemma6_trials: file.lemma6_trials.unwrap_or(20),
            scalar,
            output_dir: cli
                .output_dir
                .clone()
                .or(file.output_dir)
                .unwrap_or_else(|| PathBuf::from("reports")),
            seed: cli.seed.or(file.seed).unwrap_or(2024),
            parallel: cli.parallel || file.parallel.unwrap_or(false),
            tolerances,
            headline_tolerance,
        };
        cfg.check()?;
        Ok(cfg)
    }

    /// Shape errors are configuration errors; sizes above the caps are resource errors.
    fn check(&self) -> Result<()> {
        let cap = |what: &str, v: usize, max: usize| -> Result<()> {
            if v > max {
                Err(Error::Resource(format!("{what} = {v} exceeds the limit {max}")))
            } else {
                Ok(())
            }
        };
        if self.matrix_order == 0 {
            return Err(Error::Config("`matrix_order` must be at least 1".into()));
        }
        cap("matrix_order", self.matrix_order, MAX_MATRIX_ORDER)?;
        cap("series_order", self.series_order, MAX_SERIES_ORDER)?;
        cap("enumeration_cap", self.enumeration_cap, MAX_ENUMERATION_SIZE)?;
        cap("tp_window", self.tp_window, MAX_TP_WINDOW)?;
        cap("tp_minor_size", self.tp_minor_size, MAX_AUDIT_MINOR)?;
        cap("lemma6_trials", self.lemma6_trials, MAX_LEMMA6_TRIALS)?;
        if let Some(&n) = self.tail_starts.iter().find(|&&n| n >= self.matrix_order) {
            return Err(Error::Config(format!(
                "tail start {n} must be below matrix_order {}",
                self.matrix_order
            )));
        }
        if self.points.0 > self.points.1 {
            return Err(Error::Config("`point_min` exceeds `point_max`".into()));
        }
        if self.points.1 - self.points.0 > MAX_POINT_SPAN {
            return Err(Error::Resource(format!("point window wider than {MAX_POINT_SPAN}")));
        }
        if self.sweep_schedule.is_empty() || self.sweep_schedule.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("`sweep_schedule` must be non-empty and increasing".into()));
        }
        if self.sweep_schedule.contains(&0) {
            return Err(Error::Config("`sweep_schedule` entries must be positive".into()));
        }
        cap("sweep_schedule", *self.sweep_schedule.last().unwrap(), MAX_MATRIX_ORDER)?;
        if self.tp_minor_size == 0 {
            return Err(Error::Config("`tp_minor_size` must be at least 1".into()));
        }
        Ok(())
    }
}

fn explicit_params(file: &ConfigFile) -> Result<SymbolParams> {
    let missing: Vec<&str> = [
        ("alpha_plus", file.alpha_plus.is_none()),
        ("beta_plus", file.beta_plus.is_none()),
        ("alpha_minus", file.alpha_minus.is_none()),
        ("beta_minus", file.beta_minus.is_none()),
        ("gamma_plus", file.gamma_plus.is_none()),
        ("gamma_minus", file.gamma_minus.is_none()),
    ]
    .into_iter()
    .filter(|&(_, absent)| absent)
    .map(|(k, _)| k)
    .collect();
    if missing.len() == 6 {
        return Err(Error::Config(
            "no symbol parameters: set `preset` or all of alpha_plus, beta_plus, alpha_minus, beta_minus, gamma_plus, gamma_minus".into(),
        ));
    }
    if !missing.is_empty() {
        let names: Vec<String> = missing.iter().map(|k| format!("`{k}`")).collect();
        return Err(Error::Config(format!("missing field {}", names.join(", "))));
    }
    Ok(SymbolParams {
        alpha_plus: file.alpha_plus.clone().unwrap_or_default(),
        beta_plus: file.beta_plus.clone().unwrap_or_default(),
        alpha_minus: file.alpha_minus.clone().unwrap_or_default(),
        beta_minus: file.beta_minus.clone().unwrap_or_default(),
        gamma_plus: file.gamma_plus.unwrap_or_default(),
        gamma_minus: file.gamma_minus.unwrap_or_default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const WIDOM: &str = r#"
alpha_plus = []
beta_plus = [0.4]
alpha_minus = [0.4]
beta_minus = []
gamma_plus = 0.0
gamma_minus = 0.0
matrix_order = 40
"#;

    #[test]
    fn explicit_parameters() {
        let cfg = RunConfig::resolve(ConfigFile::parse(WIDOM).unwrap(), &Overrides::default()).unwrap();
        assert_eq!(cfg.params, SymbolParams::widom(&[0.4], &[0.4]));
        assert_eq!(cfg.matrix_order, 40);
        assert_eq!(cfg.tag, "custom");
    }

    #[test]
    fn missing_gamma_is_named() {
        let text = WIDOM.replace("gamma_plus = 0.0\n", "");
        let err = RunConfig::resolve(ConfigFile::parse(&text).unwrap(), &Overrides::default()).unwrap_err();
        assert!(matches!(&err, Error::Config(m) if m.contains("gamma_plus")), "{err}");
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = ConfigFile::parse("preset = \"trivial\"\nmatrix_ordr = 3\n").unwrap_err();
        assert!(matches!(&err, Error::Config(m) if m.contains("matrix_ordr")), "{err}");
    }

    #[test]
    fn caps_and_conflicts() {
        let big = Overrides {
            preset: Some("geometric".into()),
            order: Some(1000),
            ..Overrides::default()
        };
        assert!(matches!(RunConfig::resolve(ConfigFile::default(), &big), Err(Error::Resource(_))));
        let both = ConfigFile::parse(&format!("preset = \"geometric\"\n{WIDOM}")).unwrap();
        assert!(matches!(RunConfig::resolve(both, &Overrides::default()), Err(Error::Config(_))));
        let exact_exp = Overrides {
            preset: Some("exp".into()),
            scalar: Some(ScalarKind::Rational),
            ..Overrides::default()
        };
        assert!(matches!(RunConfig::resolve(ConfigFile::default(), &exact_exp), Err(Error::Config(_))));
    }

    #[test]
    fn command_line_preset_wins() {
        let cli = Overrides {
            preset: Some("mixed".into()),
            seed: Some(9),
            ..Overrides::default()
        };
        let cfg = RunConfig::resolve(ConfigFile::parse(WIDOM).unwrap(), &cli).unwrap();
        assert_eq!(cfg.tag, "mixed");
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.matrix_order, 40);
    }
}
