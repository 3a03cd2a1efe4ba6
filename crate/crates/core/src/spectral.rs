//! Eigenvalue verdicts, total-positivity audits, truncation sweeps and the
//! exact corner-resolvent identity harness.

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel;
use crate::linalg::{eigenvalues, hausdorff_distance, DenseMatrix};
use crate::operators::{self, Route};
use crate::scalar::{Rational, Scalar};
use crate::series::SymbolParams;

/// Slack on `|Im λ|`.
pub const IMAG_TOLERANCE: f64 = 1e-8;
/// Slack on `Re λ ∈ [0, 1]`.
pub const EDGE_TOLERANCE: f64 = 1e-8;
/// Float minors above `−MINOR_TOLERANCE` count as nonnegative.
pub const MINOR_TOLERANCE: f64 = 1e-12;
/// Eigenvalues at most this large are treated as zero in sweep distances.
pub const ZERO_EIGENVALUE: f64 = 1e-12;
/// Sweep distances below this count as converged.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-8;
/// Terms kept in the inner sum of `AᵗB` for the structured corner instance.
pub const STRUCTURED_INNER_ORDER: usize = 16;
/// Largest minor an audit may request.
pub const MAX_AUDIT_MINOR: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub operator_tag: String,
    pub truncation_order: usize,
    pub tail_start: usize,
    /// `(re, im)` pairs, sorted by decreasing real part.
    pub eigenvalues: Vec<(f64, f64)>,
    pub max_imag_abs: f64,
    pub range: (f64, f64),
    /// Eigenvalues whose real part lies within the edge tolerance of 1.
    pub near_one: usize,
    pub backward_error_bound: f64,
    pub qr_iterations: usize,
    pub convergence_trace: Vec<(usize, f64)>,
    pub imag_tolerance: f64,
    pub edge_tolerance: f64,
    pub verdict: Verdict,
}

impl SpectrumReport {
    pub fn complex_values(&self) -> Vec<Complex64> {
        self.eigenvalues.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
    }
}

pub fn spectrum_verdict(m: &DenseMatrix<f64>, tag: &str) -> Result<SpectrumReport> {
    spectrum_verdict_with(m, tag, IMAG_TOLERANCE, EDGE_TOLERANCE)
}

pub fn spectrum_verdict_with(
    m: &DenseMatrix<f64>,
    tag: &str,
    imag_tolerance: f64,
    edge_tolerance: f64,
) -> Result<SpectrumReport> {
    let eig = eigenvalues(m)?;
    let mut values: Vec<(f64, f64)> = eig.values.iter().map(|z| (z.re, z.im)).collect();
    values.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    let max_imag_abs = values.iter().map(|v| v.1.abs()).fold(0.0, f64::max);
    let range = if values.is_empty() {
        (0.0, 0.0)
    } else {
        (values[values.len() - 1].0, values[0].0)
    };
    let near_one = values.iter().filter(|v| (v.0 - 1.0).abs() <= edge_tolerance).count();
    let ok = max_imag_abs < imag_tolerance && range.0 >= -edge_tolerance && range.1 <= 1.0 + edge_tolerance;
    Ok(SpectrumReport {
        operator_tag: tag.to_string(),
        truncation_order: m.rows(),
        tail_start: 0,
        eigenvalues: values,
        max_imag_abs,
        range,
        near_one,
        backward_error_bound: eig.backward_error_bound,
        qr_iterations: eig.iterations,
        convergence_trace: Vec::new(),
        imag_tolerance,
        edge_tolerance,
        verdict: Verdict::from_bool(ok),
    })
}

/// Spectra with eigenvalues below [`ZERO_EIGENVALUE`] replaced by a single 0,
/// so truncations of different sizes compare on their nonzero parts.
pub fn nonzero_spectrum_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let keep = |v: &[Complex64]| {
        let mut out: Vec<Complex64> = v.iter().copied().filter(|z| z.norm() > ZERO_EIGENVALUE).collect();
        out.push(Complex64::new(0.0, 0.0));
        out
    };
    hausdorff_distance(&keep(a), &keep(b))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinorViolation {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TotalPositivityAudit {
    pub matrix_tag: String,
    pub max_minor_size: usize,
    pub window_cap: usize,
    /// Consecutive row/column windows examined.
    pub windows_examined: usize,
    /// Non-consecutive index sets drawn at random.
    pub sampled: usize,
    pub exact: bool,
    pub min_minor_value: f64,
    /// Exact value of the smallest minor in rational mode.
    pub min_minor_exact: Option<String>,
    pub minor_tolerance: f64,
    pub violation_count: usize,
    /// First violations found, at most [`MAX_LISTED_VIOLATIONS`].
    pub violations: Vec<MinorViolation>,
    pub pass: bool,
}

pub const MAX_LISTED_VIOLATIONS: usize = 32;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AuditOptions {
    pub max_minor_size: usize,
    /// Row and column indices stay below this.
    pub window_cap: usize,
    /// Random non-consecutive index pairs to draw.
    pub samples: usize,
    pub seed: u64,
    /// Float slack; exact audits demand `≥ 0`.
    pub tolerance: f64,
}

impl AuditOptions {
    pub fn new(max_minor_size: usize, window_cap: usize) -> Self {
        AuditOptions {
            max_minor_size,
            window_cap,
            samples: 0,
            seed: 0,
            tolerance: MINOR_TOLERANCE,
        }
    }

    pub fn sampled(mut self, samples: usize, seed: u64) -> Self {
        self.samples = samples;
        self.seed = seed;
        self
    }
}

/// Minors of `m` up to the option's size with indices below its window cap:
/// every consecutive row window against every consecutive column window,
/// plus seeded random non-consecutive pairs.
pub fn audit_total_positivity<S: Scalar>(
    m: &DenseMatrix<S>,
    tag: &str,
    opts: &AuditOptions,
) -> Result<TotalPositivityAudit> {
    let AuditOptions {
        max_minor_size,
        window_cap,
        samples,
        seed,
        tolerance,
    } = *opts;
    if max_minor_size > MAX_AUDIT_MINOR {
        return Err(Error::Resource(format!(
            "minor size {max_minor_size} above the audit cap {MAX_AUDIT_MINOR}"
        )));
    }
    if max_minor_size == 0 {
        return Err(Error::Domain("audit needs a minor size of at least 1".into()));
    }
    let rows = window_cap.min(m.rows());
    let cols = window_cap.min(m.cols());
    let tolerance = if S::is_exact() { 0.0 } else { tolerance };
    let mut audit = TotalPositivityAudit {
        matrix_tag: tag.to_string(),
        max_minor_size,
        window_cap,
        windows_examined: 0,
        sampled: 0,
        exact: S::is_exact(),
        min_minor_value: f64::INFINITY,
        min_minor_exact: None,
        minor_tolerance: tolerance,
        violation_count: 0,
        violations: Vec::new(),
        pass: true,
    };
    let mut min_exact: Option<S> = None;
    let mut record = |r: &[usize], c: &[usize], audit: &mut TotalPositivityAudit| -> Result<()> {
        let v = m.minor(r, c)?;
        let vf = v.to_f64();
        if min_exact.as_ref().is_none_or(|cur| v < *cur) {
            min_exact = Some(v.clone());
        }
        audit.min_minor_value = audit.min_minor_value.min(vf);
        let negative = if S::is_exact() { v < S::zero() } else { vf < -tolerance };
        if negative {
            audit.violation_count += 1;
            if audit.violations.len() < MAX_LISTED_VIOLATIONS {
                audit.violations.push(MinorViolation {
                    rows: r.to_vec(),
                    cols: c.to_vec(),
                    value: vf,
                });
            }
        }
        Ok(())
    };
    for k in 1..=max_minor_size.min(rows).min(cols) {
        for i in 0..=rows - k {
            let r: Vec<usize> = (i..i + k).collect();
            for j in 0..=cols - k {
                let c: Vec<usize> = (j..j + k).collect();
                record(&r, &c, &mut audit)?;
                audit.windows_examined += 1;
            }
        }
    }
    let top = max_minor_size.min(rows).min(cols);
    if top >= 2 && samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let k = rng.gen_range(2..=top);
            let mut r = sample(&mut rng, rows, k).into_vec();
            let mut c = sample(&mut rng, cols, k).into_vec();
            r.sort_unstable();
            c.sort_unstable();
            record(&r, &c, &mut audit)?;
            audit.sampled += 1;
        }
    }
    if S::is_exact() {
        audit.min_minor_exact = min_exact.map(|v| v.to_string());
    }
    if audit.min_minor_value == f64::INFINITY {
        audit.min_minor_value = 0.0;
    }
    audit.pass = audit.violation_count == 0;
    Ok(audit)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub operator_tag: String,
    pub schedule: Vec<usize>,
    /// Distances between consecutive nonzero spectra, tagged with the larger order.
    pub distances: Vec<(usize, f64)>,
    /// `det(1 + M_N)` per order.
    pub determinants: Vec<(usize, f64)>,
    /// Slack allowed when comparing consecutive distances.
    pub noise_floor: f64,
    pub monotone: bool,
    pub converged: bool,
    pub final_spectrum: SpectrumReport,
    pub verdict: Verdict,
}

/// Spectra of `builder(N)` over an increasing schedule.
pub fn sweep_convergence(
    tag: &str,
    builder: impl Fn(usize) -> Result<DenseMatrix<f64>> + Sync,
    schedule: &[usize],
    tolerance: f64,
) -> Result<SweepReport> {
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(format!("sweep schedule {schedule:?} must be increasing and non-empty")));
    }
    let runs = parallel_map(schedule, |&n| -> Result<(SpectrumReport, f64, f64)> {
        let m = builder(n)?;
        let det = m.shift_identity(&1.0).determinant()?;
        let norm = m.norm_inf();
        Ok((spectrum_verdict(&m, tag)?, det, norm))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let norm = runs.iter().map(|r| r.2).fold(0.0, f64::max);
    let noise_floor = 1e-12 * norm.max(1.0);
    let distances: Vec<(usize, f64)> = runs
        .windows(2)
        .zip(schedule.windows(2))
        .map(|(r, n)| (n[1], nonzero_spectrum_distance(&r[0].0.complex_values(), &r[1].0.complex_values())))
        .collect();
    let monotone = distances.windows(2).all(|d| d[1].1 <= d[0].1 + noise_floor);
    let converged = distances.last().is_none_or(|d| d.1 < tolerance);
    let determinants = schedule.iter().zip(&runs).map(|(&n, r)| (n, r.1)).collect();
    let mut final_spectrum = runs.last().expect("non-empty schedule").0.clone();
    final_spectrum.convergence_trace = distances.clone();
    let verdict = if !converged {
        Verdict::Inconclusive
    } else {
        Verdict::from_bool(monotone)
    };
    Ok(SweepReport {
        operator_tag: tag.to_string(),
        schedule: schedule.to_vec(),
        distances,
        determinants,
        noise_floor,
        monotone,
        converged,
        final_spectrum,
        verdict,
    })
}

/// `AᵗB` at order `n` from float hook matrices.
pub fn atb(params: &SymbolParams, n: usize) -> Result<DenseMatrix<f64>> {
    let a = operators::build_a::<f64>(params, n, Route::HookSchur)?;
    let b = operators::build_b::<f64>(params, n, Route::HookSchur)?;
    a.matrix.transpose().matmul(&b.matrix)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TailSpectra {
    pub tail_start: usize,
    pub k11: SpectrumReport,
    pub k22: SpectrumReport,
    pub t: SpectrumReport,
    /// Largest `|T_pq − (−1)^{p+q} (K₁₁)_pq|`.
    pub sign_similarity_residual: f64,
    /// Hausdorff distance between the spectra of `T⁽ⁿ⁾` and `K₁₁⁽ⁿ⁾`.
    pub t_k11_distance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Theorem4Report {
    pub order: usize,
    pub spectrum_tolerance: f64,
    pub similarity_tolerance: f64,
    pub atb_min_real: f64,
    pub tails: Vec<TailSpectra>,
    pub pass: bool,
}

/// Spectra of the tail blocks of `K₁₁`, `K₂₂` and of `T⁽ⁿ⁾` for each `n`.
pub fn verify_theorem4(
    params: &SymbolParams,
    order: usize,
    tail_starts: &[usize],
    spectrum_tolerance: f64,
    similarity_tolerance: f64,
) -> Result<Theorem4Report> {
    let bundle = kernel::kernel_blocks_from_params::<f64>(params, order)?;
    let verdict = |m: &DenseMatrix<f64>, tag: &str| spectrum_verdict_with(m, tag, spectrum_tolerance, spectrum_tolerance);
    let atb_spec = verdict(&atb(params, order)?, "AtB")?;
    let tails = parallel_map(tail_starts, |&n| -> Result<TailSpectra> {
        let k11 = operators::project_tail(&bundle.k11, n)?;
        let k22 = operators::project_tail(&bundle.k22, n)?;
        let t = operators::build_t(params, n, order)?.matrix;
        let signed = DenseMatrix::from_fn(k11.rows(), k11.cols(), |i, j| {
            if (i + j) % 2 == 0 { k11[(i, j)] } else { -k11[(i, j)] }
        });
        let sign_similarity_residual = t.max_abs_diff(&signed)?;
        let mut rk11 = verdict(&k11, "K11")?;
        let mut rk22 = verdict(&k22, "K22")?;
        let mut rt = verdict(&t, "T")?;
        for r in [&mut rk11, &mut rk22, &mut rt] {
            r.tail_start = n;
            r.truncation_order = order;
        }
        let t_k11_distance = hausdorff_distance(&rt.complex_values(), &rk11.complex_values());
        let pass = rk11.verdict.passed()
            && rk22.verdict.passed()
            && rt.verdict.passed()
            && t_k11_distance < similarity_tolerance;
        Ok(TailSpectra {
            tail_start: n,
            k11: rk11,
            k22: rk22,
            t: rt,
            sign_similarity_residual,
            t_k11_distance,
            pass,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(Theorem4Report {
        order,
        spectrum_tolerance,
        similarity_tolerance,
        atb_min_real: atb_spec.range.0,
        pass: tails.iter().all(|t| t.pass) && atb_spec.range.0 >= -spectrum_tolerance,
        tails,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Lemma6Trial {
    pub trial: usize,
    /// Instances discarded for a singular `1 + C` or `1 − D`.
    pub regenerated: usize,
    pub det_one_minus_d: String,
    pub det_one_minus_d_f64: f64,
    pub determinant_identity: bool,
    pub minor_identities_checked: usize,
    pub minor_identities_failed: usize,
    pub pass: bool,
}

/// Both corner identities for `C` of order `m + n`, exactly, over all row and
/// column sets `X, Y` of equal size at most 2 in the lower corner.
pub fn lemma6_check(c: &DenseMatrix<Rational>, m: usize) -> Result<Lemma6Trial> {
    let total = c.rows();
    if !c.is_square() || m > total {
        return Err(Error::Dimension(format!(
            "need a square C with split m = {m} inside, got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    let n = total - m;
    let one = Rational::from_i64(1);
    let one_plus_c = c.shift_identity(&one);
    let det_c = one_plus_c.determinant()?;
    if det_c == Rational::from_i64(0) {
        return Err(Error::Precondition("1 + C is singular".into()));
    }
    let resolvent = c.matmul(&one_plus_c.inverse()?)?;
    let d = resolvent.block(m, total, m, total);
    let one_minus_d = DenseMatrix::identity(n).try_sub(&d)?;
    let det_omd = one_minus_d.determinant()?;
    if det_omd == Rational::from_i64(0) {
        return Err(Error::Precondition("1 − D is singular".into()));
    }
    let subsets_m = subsets(m, m);
    let mut rhs = Rational::from_i64(0);
    for x in &subsets_m {
        rhs += c.minor(x, x)?;
    }
    let determinant_identity = det_omd == rhs.clone() / det_c.clone();

    let e = d.matmul(&one_minus_d.inverse()?)?;
    let det_e = e.shift_identity(&one).determinant()?;
    let small = subsets(n, 2);
    let mut checked = 0;
    let mut failed = 0;
    for x in &small {
        for y in small.iter().filter(|y| y.len() == x.len()) {
            let lhs = e.minor(x, y)? / det_e.clone();
            let mut sum = Rational::from_i64(0);
            for z in &subsets_m {
                let rows: Vec<usize> = z.iter().copied().chain(x.iter().map(|i| i + m)).collect();
                let cols: Vec<usize> = z.iter().copied().chain(y.iter().map(|j| j + m)).collect();
                sum += c.minor(&rows, &cols)?;
            }
            checked += 1;
            if lhs != sum / det_c.clone() {
                failed += 1;
            }
        }
    }
    Ok(Lemma6Trial {
        trial: 0,
        regenerated: 0,
        det_one_minus_d_f64: det_omd.to_f64(),
        det_one_minus_d: det_omd.to_string(),
        determinant_identity,
        minor_identities_checked: checked,
        minor_identities_failed: failed,
        pass: determinant_identity && failed == 0,
    })
}

/// All subsets of `{0, …, n−1}` with at most `max_len` elements, sorted inside.
fn subsets(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|mask| mask.count_ones() as usize <= max_len)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Lemma6Report {
    pub seed: u64,
    pub m: usize,
    pub n: usize,
    pub trials: Vec<Lemma6Trial>,
    pub pass: bool,
}

/// Entries `p/q` with `p ∈ [−5, 5]`, `q ∈ [1, 5]`.
fn random_rational_matrix(rng: &mut ChaCha8Rng, size: usize) -> DenseMatrix<Rational> {
    DenseMatrix::from_fn(size, size, |_, _| {
        let p: i64 = rng.gen_range(-5..=5);
        let q: i64 = rng.gen_range(1..=5);
        crate::scalar::ratio(p, q)
    })
}

const MAX_REGENERATIONS: usize = 100;

/// Seeded random instances; trial `t` draws from stream `t` of `seed`.
pub fn lemma6_random_trials(trials: usize, seed: u64, m: usize, n: usize) -> Result<Lemma6Report> {
    let indices: Vec<usize> = (0..trials).collect();
    let results = parallel_map(&indices, |&t| -> Result<Lemma6Trial> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        for regenerated in 0..MAX_REGENERATIONS {
            let c = random_rational_matrix(&mut rng, m + n);
            match lemma6_check(&c, m) {
                Ok(mut trial) => {
                    trial.trial = t;
                    trial.regenerated = regenerated;
                    return Ok(trial);
                }
                Err(Error::Precondition(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::Precondition(format!(
            "trial {t}: no usable instance in {MAX_REGENERATIONS} draws"
        )))
    });
    let trials = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(Lemma6Report {
        seed,
        m,
        n,
        pass: trials.iter().all(|t| t.pass),
        trials,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructuredLemma6 {
    pub size: usize,
    pub split: usize,
    /// Order of the hook matrices feeding the inner sum of `AᵗB`.
    pub inner_order: usize,
    pub identities: Lemma6Trial,
    pub det_one_minus_d_positive: bool,
    pub d_audit: TotalPositivityAudit,
    pub e_audit: TotalPositivityAudit,
    pub pass: bool,
}

/// `C` = leading `size × size` corner of `AᵗB` (exact, inner sum over
/// `inner_order` terms), `D` its corner resolvent below `split`.
pub fn lemma6_structured(
    params: &SymbolParams,
    size: usize,
    split: usize,
    inner_order: usize,
    audit_size: usize,
) -> Result<StructuredLemma6> {
    if inner_order < size || split > size {
        return Err(Error::Domain(format!(
            "need split ≤ size ≤ inner order, got {split}, {size}, {inner_order}"
        )));
    }
    let a = operators::build_a::<Rational>(params, inner_order, Route::HookSchur)?.matrix;
    let b = operators::build_b::<Rational>(params, inner_order, Route::HookSchur)?.matrix;
    let c = a.transpose().matmul(&b)?.block(0, size, 0, size);
    let identities = lemma6_check(&c, split)?;
    let n = size - split;
    let one = Rational::from_i64(1);
    let resolvent = c.matmul(&c.shift_identity(&one).inverse()?)?;
    let d = resolvent.block(split, size, split, size);
    let e = d.matmul(&DenseMatrix::identity(n).try_sub(&d)?.inverse()?)?;
    let opts = AuditOptions::new(audit_size, n);
    let d_audit = audit_total_positivity(&d, "D", &opts)?;
    let e_audit = audit_total_positivity(&e, "E", &opts)?;
    let positive = identities.det_one_minus_d_f64 > 0.0;
    Ok(StructuredLemma6 {
        size,
        split,
        inner_order,
        pass: identities.pass && positive && d_audit.pass && e_audit.pass,
        identities,
        det_one_minus_d_positive: positive,
        d_audit,
        e_audit,
    })
}

/// Map over `items` on scoped threads, preserving order.
pub(crate) fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len());
    if workers <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                scope.spawn(move || part.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}
