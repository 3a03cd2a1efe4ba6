//! C interface to `schur-kernel`.
//!
//! Parameters and kernels live behind opaque handles that the caller frees
//! with the matching `*_free`. Every function returns an [`SkStatus`]; on
//! failure [`sk_last_error_message`] describes the error for the calling
//! thread. Output buffers are caller-allocated and sized as documented.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schur_kernel::cli::preset;
use schur_kernel::kernel::{self, KernelBundle};
use schur_kernel::schur;
use schur_kernel::series::{self, Side};
use schur_kernel::spectral;
use schur_kernel::{DenseMatrix, Error, SymbolParams};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    Dimension = 4,
    Singular = 5,
    Convergence = 6,
    Index = 7,
    Domain = 8,
    Truncation = 9,
    Resource = 10,
    Precondition = 11,
    Config = 12,
    Io = 13,
    Panic = 14,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkSide {
    Plus = 0,
    Minus = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkKernelRoute {
    Direct = 0,
    Blocks = 1,
    Series = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkBlock {
    K11 = 0,
    K12 = 1,
    K21 = 2,
    K22 = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SkTheorem1Residuals {
    pub direct_vs_blocks: f64,
    pub direct_vs_series: f64,
    pub blocks_vs_series: f64,
    pub det_one_plus_l: f64,
    pub pass: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SkSpectrumSummary {
    pub max_imag_abs: f64,
    pub min_real: f64,
    pub max_real: f64,
    pub pass: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SkNormalization {
    pub series_value: f64,
    pub closed_form: f64,
    pub tail_estimate: f64,
}

/// Opaque symbol parameters.
pub struct SkParams {
    inner: SymbolParams,
}

/// Opaque kernel: the four blocks at one truncation order.
pub struct SkKernel {
    inner: KernelBundle<f64>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SkStatus {
    match err {
        Error::Dimension(_) => SkStatus::Dimension,
        Error::Singular { .. } => SkStatus::Singular,
        Error::Convergence { .. } => SkStatus::Convergence,
        Error::Index(_) => SkStatus::Index,
        Error::Domain(_) => SkStatus::Domain,
        Error::Truncation(_) => SkStatus::Truncation,
        Error::Resource(_) => SkStatus::Resource,
        Error::Precondition(_) => SkStatus::Precondition,
        Error::Config(_) => SkStatus::Config,
        Error::Io(_) => SkStatus::Io,
    }
}

struct Fail(SkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn fail<T>(status: SkStatus, msg: &str) -> Result<T, Fail> {
    Err(Fail(status, msg.to_string()))
}

/// Run `f`, turning errors and panics into a status plus a stored message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SkStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {msg}"));
            SkStatus::Panic
        }
    }
}

unsafe fn slice<'a>(data: *const f64, len: usize, what: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return fail(SkStatus::NullPointer, &format!("{what} is null with length {len}"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn params_ref<'a>(p: *const SkParams) -> Result<&'a SymbolParams, Fail> {
    p.as_ref()
        .map(|p| &p.inner)
        .ok_or_else(|| Fail(SkStatus::NullPointer, "params handle is null".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return fail(SkStatus::NullPointer, &format!("{what} is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn copy_into(values: &[f64], out: *mut f64, out_len: usize) -> Result<(), Fail> {
    if out.is_null() {
        return fail(SkStatus::NullPointer, "output buffer is null");
    }
    if out_len < values.len() {
        return fail(
            SkStatus::BufferTooSmall,
            &format!("output buffer holds {out_len} values, {} needed", values.len()),
        );
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn sk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Build parameters from four lists and the two exponents.
///
/// # Safety
/// Each non-empty list pointer must reference `n_*` readable doubles; `out`
/// must be writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn sk_params_new(
    alpha_plus: *const f64,
    n_alpha_plus: usize,
    beta_plus: *const f64,
    n_beta_plus: usize,
    alpha_minus: *const f64,
    n_alpha_minus: usize,
    beta_minus: *const f64,
    n_beta_minus: usize,
    gamma_plus: f64,
    gamma_minus: f64,
    out: *mut *mut SkParams,
) -> SkStatus {
    guard(|| {
        let params = SymbolParams {
            alpha_plus: slice(alpha_plus, n_alpha_plus, "alpha_plus")?.to_vec(),
            beta_plus: slice(beta_plus, n_beta_plus, "beta_plus")?.to_vec(),
            alpha_minus: slice(alpha_minus, n_alpha_minus, "alpha_minus")?.to_vec(),
            beta_minus: slice(beta_minus, n_beta_minus, "beta_minus")?.to_vec(),
            gamma_plus,
            gamma_minus,
        };
        params.validate()?;
        write_out(out, Box::into_raw(Box::new(SkParams { inner: params })), "out")
    })
}

/// Parameters of a named preset (`trivial`, `widom-1`, `widom-2`, `geometric`, `mixed`, `exp`).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_params_preset(name: *const c_char, out: *mut *mut SkParams) -> SkStatus {
    guard(|| {
        if name.is_null() {
            return fail(SkStatus::NullPointer, "preset name is null");
        }
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|_| Fail(SkStatus::InvalidArgument, "preset name is not UTF-8".into()))?;
        let p = preset(name)?;
        write_out(out, Box::into_raw(Box::new(SkParams { inner: p.params })), "out")
    })
}

/// # Safety
/// `p` must come from `sk_params_new` or `sk_params_preset`, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn sk_params_free(p: *mut SkParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `h_0 … h_order` of one side into `out[0..=order]`.
///
/// # Safety
/// `p` must be a live handle; `out` must hold `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sk_h_coefficients(
    p: *const SkParams,
    side: SkSide,
    order: usize,
    out: *mut f64,
    out_len: usize,
) -> SkStatus {
    guard(|| {
        let params = params_ref(p)?;
        let side = match side {
            SkSide::Plus => Side::Plus,
            SkSide::Minus => Side::Minus,
        };
        let h = series::h_coefficients::<f64>(params, side, order)?;
        copy_into(h.coeffs(), out, out_len)
    })
}

/// Kernel blocks at truncation order `order` by the given route.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_kernel_new(
    p: *const SkParams,
    order: usize,
    route: SkKernelRoute,
    out: *mut *mut SkKernel,
) -> SkStatus {
    guard(|| {
        let params = params_ref(p)?;
        if order == 0 {
            return fail(SkStatus::InvalidArgument, "order must be at least 1");
        }
        let bundle = match route {
            SkKernelRoute::Direct => kernel::kernel_direct_from_params::<f64>(params, order)?,
            SkKernelRoute::Blocks => kernel::kernel_blocks_from_params::<f64>(params, order)?,
            SkKernelRoute::Series => kernel::kernel_series(params, order)?,
        };
        write_out(out, Box::into_raw(Box::new(SkKernel { inner: bundle })), "out")
    })
}

/// Truncation order of a kernel, 0 for NULL.
///
/// # Safety
/// `k` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sk_kernel_order(k: *const SkKernel) -> usize {
    k.as_ref().map_or(0, |k| k.inner.order)
}

/// One block, row-major, into `out[0 .. order²]`.
///
/// # Safety
/// `k` must be a live handle; `out` must hold `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sk_kernel_block(
    k: *const SkKernel,
    block: SkBlock,
    out: *mut f64,
    out_len: usize,
) -> SkStatus {
    guard(|| {
        let k = k
            .as_ref()
            .ok_or_else(|| Fail(SkStatus::NullPointer, "kernel handle is null".into()))?;
        let m = match block {
            SkBlock::K11 => &k.inner.k11,
            SkBlock::K12 => &k.inner.k12,
            SkBlock::K21 => &k.inner.k21,
            SkBlock::K22 => &k.inner.k22,
        };
        copy_into(m.as_slice(), out, out_len)
    })
}

/// # Safety
/// `k` must come from `sk_kernel_new`, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn sk_kernel_free(k: *mut SkKernel) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// `Z` from the log-series (summed to `order`) and in closed form.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_normalization_z(
    p: *const SkParams,
    order: usize,
    out: *mut SkNormalization,
) -> SkStatus {
    guard(|| {
        let params = params_ref(p)?;
        let z = schur::normalization_z(params, order)?;
        let closed = schur::cauchy_z::<f64>(params)?;
        write_out(
            out,
            SkNormalization {
                series_value: z.value,
                closed_form: closed,
                tail_estimate: z.tail_estimate,
            },
            "out",
        )
    })
}

/// Cross-route kernel residuals at order `order`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_theorem1_residuals(
    p: *const SkParams,
    order: usize,
    out: *mut SkTheorem1Residuals,
) -> SkStatus {
    guard(|| {
        let params = params_ref(p)?;
        if order == 0 {
            return fail(SkStatus::InvalidArgument, "order must be at least 1");
        }
        let r = kernel::verify_theorem1(params, order)?;
        write_out(
            out,
            SkTheorem1Residuals {
                direct_vs_blocks: r.direct_vs_blocks,
                direct_vs_series: r.direct_vs_series,
                blocks_vs_series: r.blocks_vs_series,
                det_one_plus_l: r.det_one_plus_l,
                pass: r.pass,
            },
            "out",
        )
    })
}

/// Eigenvalues of the row-major `n × n` matrix and the `[0, 1]` verdict.
/// `eig_re` / `eig_im` may be NULL; otherwise each holds `n` doubles,
/// sorted by decreasing real part.
///
/// # Safety
/// `matrix` must hold `n²` doubles; non-NULL outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_spectrum_verdict(
    matrix: *const f64,
    n: usize,
    eig_re: *mut f64,
    eig_im: *mut f64,
    out: *mut SkSpectrumSummary,
) -> SkStatus {
    guard(|| {
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Fail(SkStatus::InvalidArgument, "matrix order overflows".into()))?;
        let data = slice(matrix, len, "matrix")?.to_vec();
        let m = DenseMatrix::from_row_major(n, n, data)?;
        let r = spectral::spectrum_verdict(&m, "ffi")?;
        if !eig_re.is_null() {
            let re: Vec<f64> = r.eigenvalues.iter().map(|v| v.0).collect();
            copy_into(&re, eig_re, n)?;
        }
        if !eig_im.is_null() {
            let im: Vec<f64> = r.eigenvalues.iter().map(|v| v.1).collect();
            copy_into(&im, eig_im, n)?;
        }
        write_out(
            out,
            SkSpectrumSummary {
                max_imag_abs: r.max_imag_abs,
                min_real: r.range.0,
                max_real: r.range.1,
                pass: r.verdict.passed(),
            },
            "out",
        )
    })
}
