//! Command-line front end. `main` parses arguments, runs the requested
//! command and maps the outcome to an exit status:
//! 0 all verdicts pass, 1 a verdict failed (or a computation errored),
//! 2 configuration error, 3 resource cap exceeded.

pub mod config;
pub mod presets;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::kernel;
use crate::linalg::DenseMatrix;
use crate::operators;
use crate::scalar::{Rational, Scalar, ScalarKind};
use crate::series::{self, Side};
use crate::spectral;

pub use config::{ConfigFile, Overrides, RunConfig, Tolerances};
pub use presets::{preset, preset_catalog, Preset};
pub use report::{SuiteReport, SuiteRun, SCHEMA_VERSION};
pub use suites::{run_suite, Suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "schur-kernel", version, about = "Truncated kernels and spectral checks for Schur measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and write its report.
    Run {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        common: Common,
    },
    /// List the built-in parameter presets.
    Presets,
    /// Print h, e and ratio-window coefficients as JSON.
    Coeffs {
        #[command(flatten)]
        common: Common,
    },
    /// Write the four kernel blocks as CSV.
    Kernel {
        #[arg(long, value_enum, default_value = "blocks")]
        route: RouteArg,
        #[command(flatten)]
        common: Common,
    },
    /// Print the spectrum report of one truncated operator.
    Spectrum {
        #[arg(value_enum)]
        operator: OperatorArg,
        #[arg(long, default_value_t = 0)]
        tail_start: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// TOML run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Built-in parameter preset (overrides parameters from --config).
    #[arg(long)]
    pub preset: Option<String>,
    /// Matrix truncation order N.
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum)]
    pub scalar: Option<ScalarArg>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Headline tolerance of the suite being run.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Run independent suites concurrently.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Theorem1,
    Theorem3,
    Theorem4,
    Lemma6,
    #[value(name = "tpAudit", alias = "tp-audit")]
    TpAudit,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Theorem1 => Suite::Theorem1,
            SuiteArg::Theorem3 => Suite::Theorem3,
            SuiteArg::Theorem4 => Suite::Theorem4,
            SuiteArg::Lemma6 => Suite::Lemma6,
            SuiteArg::TpAudit => Suite::TpAudit,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScalarArg {
    Float,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Direct,
    Blocks,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorArg {
    K11,
    K22,
    T,
    #[value(name = "atb")]
    AtB,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            preset: self.preset.clone(),
            order: self.order,
            scalar: self.scalar.map(|s| match s {
                ScalarArg::Float => ScalarKind::Float,
                ScalarArg::Rational => ScalarKind::Rational,
            }),
            output_dir: self.out.clone(),
            seed: self.seed,
            tolerance: self.tolerance,
            parallel: self.parallel,
        }
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        RunConfig::resolve(file, &self.overrides())
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) => EXIT_CONFIG,
        Error::Resource(_) => EXIT_RESOURCE,
        _ => EXIT_VERDICT,
    }
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(command: &Command) -> Result<i32> {
    match command {
        Command::Run { suite, common } => {
            let cfg = common.resolve()?;
            let runs = run_suite(&cfg, (*suite).into())?;
            let mut all_pass = true;
            for run in &runs {
                run.write(&cfg.output_dir)?;
                println!(
                    "{:<9} {:<12} {:?} ({:.2}s)",
                    run.report.suite, cfg.tag, run.report.verdict, run.report.elapsed_seconds
                );
                all_pass &= run.passed();
            }
            Ok(if all_pass { EXIT_PASS } else { EXIT_VERDICT })
        }
        Command::Presets => {
            print_json(&json!(preset_catalog()))?;
            Ok(EXIT_PASS)
        }
        Command::Coeffs { common } => {
            let cfg = common.resolve()?;
            let order = common.order.unwrap_or(16);
            let body = match cfg.scalar {
                ScalarKind::Float => coefficient_dump::<f64>(&cfg, order)?,
                ScalarKind::Rational => coefficient_dump::<Rational>(&cfg, order)?,
            };
            print_json(&body)?;
            Ok(EXIT_PASS)
        }
        Command::Kernel { route, common } => {
            let cfg = common.resolve()?;
            let files = match cfg.scalar {
                ScalarKind::Float => dump_kernel::<f64>(&cfg, *route)?,
                ScalarKind::Rational => dump_kernel::<Rational>(&cfg, *route)?,
            };
            print_json(&json!({ "route": format!("{route:?}").to_lowercase(), "order": cfg.matrix_order, "files": files }))?;
            Ok(EXIT_PASS)
        }
        Command::Spectrum {
            operator,
            tail_start,
            common,
        } => {
            let cfg = common.resolve()?;
            let report = spectrum(&cfg, *operator, *tail_start)?;
            let name = format!("{}-{}-n{}.eigenvalues.csv", cfg.tag, report.operator_tag, tail_start);
            write_file(&cfg.output_dir, &name, &report::eigenvalues_csv(&report.eigenvalues))?;
            print_json(&json!(report))?;
            Ok(if report.verdict.passed() { EXIT_PASS } else { EXIT_VERDICT })
        }
    }
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?);
    Ok(())
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, body)?;
    Ok(path)
}

fn scalar_json<S: Scalar>(v: &S) -> serde_json::Value {
    if S::is_exact() {
        json!(v.to_string())
    } else {
        json!(v.to_f64())
    }
}

fn coefficient_dump<S: Scalar>(cfg: &RunConfig, order: usize) -> Result<serde_json::Value> {
    let list = |s: &series::TruncatedSeries<S>| s.coeffs().iter().map(scalar_json).collect::<Vec<_>>();
    let hp = series::h_coefficients::<S>(&cfg.params, Side::Plus, order)?;
    let ep = series::e_coefficients::<S>(&cfg.params, Side::Plus, order)?;
    let hm = series::h_coefficients::<S>(&cfg.params, Side::Minus, order)?;
    let em = series::e_coefficients::<S>(&cfg.params, Side::Minus, order)?;
    let lo = -(order as i64);
    let window = series::ratio_window(&cfg.params, lo, order as i64)?;
    let ratio: Vec<_> = window.range().map(|k| json!([k, window.ratio(k)])).collect();
    let dual: Vec<_> = window.range().map(|k| json!([k, window.dual(k)])).collect();
    Ok(json!({
        "tag": cfg.tag,
        "order": order,
        "scalar": cfg.scalar,
        "h_plus": list(&hp),
        "e_plus": list(&ep),
        "h_minus": list(&hm),
        "e_minus": list(&em),
        "ratio_window": {
            "lo": window.lo(),
            "hi": window.hi(),
            "internal_order": window.internal_order(),
            "ratio": ratio,
            "dual": dual,
        },
    }))
}

fn dump_kernel<S: Scalar>(cfg: &RunConfig, route: RouteArg) -> Result<Vec<String>> {
    let n = cfg.matrix_order;
    let names = ["K11", "K12", "K21", "K22"];
    let blocks: Vec<String> = match route {
        RouteArg::Series => {
            if S::is_exact() {
                return Err(Error::Config("the series route runs in float mode only".into()));
            }
            let k = kernel::kernel_series(&cfg.params, n)?;
            k.blocks().iter().map(|(_, m)| report::matrix_csv(*m, 0)).collect()
        }
        RouteArg::Direct | RouteArg::Blocks => {
            let k = if route == RouteArg::Direct {
                kernel::kernel_direct_from_params::<S>(&cfg.params, n)?
            } else {
                kernel::kernel_blocks_from_params::<S>(&cfg.params, n)?
            };
            k.blocks().iter().map(|(_, m)| report::matrix_csv(*m, 0)).collect()
        }
    };
    names
        .iter()
        .zip(blocks)
        .map(|(name, body)| {
            let path = write_file(&cfg.output_dir, &format!("{}-{name}.matrix.csv", cfg.tag), &body)?;
            Ok(path.display().to_string())
        })
        .collect()
}

fn spectrum(cfg: &RunConfig, op: OperatorArg, tail_start: usize) -> Result<spectral::SpectrumReport> {
    let n = cfg.matrix_order;
    let tol = cfg.headline_tolerance.unwrap_or(cfg.tolerances.spectrum);
    let (tag, m): (&str, DenseMatrix<f64>) = match op {
        OperatorArg::K11 | OperatorArg::K22 => {
            let k = kernel::kernel_blocks_from_params::<f64>(&cfg.params, n)?;
            if op == OperatorArg::K11 {
                ("K11", operators::project_tail(&k.k11, tail_start)?)
            } else {
                ("K22", operators::project_tail(&k.k22, tail_start)?)
            }
        }
        OperatorArg::T => ("T", operators::build_t(&cfg.params, tail_start, n)?.matrix),
        OperatorArg::AtB => ("AtB", operators::project_tail(&spectral::atb(&cfg.params, n)?, tail_start)?),
    };
    let mut report = spectral::spectrum_verdict_with(&m, tag, tol, tol)?;
    report.truncation_order = n;
    report.tail_start = tail_start;
    Ok(report)
}
