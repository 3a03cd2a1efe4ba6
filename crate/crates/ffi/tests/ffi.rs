use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use schur_kernel_ffi::*;

fn preset(name: &str) -> *mut SkParams {
    let name = CString::new(name).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { sk_params_preset(name.as_ptr(), &mut p) }, SkStatus::Ok);
    assert!(!p.is_null());
    p
}

fn last_error() -> String {
    let msg = sk_last_error_message();
    assert!(!msg.is_null());
    unsafe { CStr::from_ptr(msg) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(sk_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn geometric_h_and_normalization() {
    let p = preset("geometric");
    let mut h = [0.0; 6];
    assert_eq!(unsafe { sk_h_coefficients(p, SkSide::Plus, 5, h.as_mut_ptr(), h.len()) }, SkStatus::Ok);
    for (n, v) in h.iter().enumerate() {
        assert_eq!(*v, 0.5f64.powi(n as i32));
    }
    let mut short = [0.0; 3];
    assert_eq!(
        unsafe { sk_h_coefficients(p, SkSide::Plus, 5, short.as_mut_ptr(), short.len()) },
        SkStatus::BufferTooSmall
    );
    assert!(last_error().contains("6 needed"));
    let mut z = SkNormalization::default();
    assert_eq!(unsafe { sk_normalization_z(p, 200, &mut z) }, SkStatus::Ok);
    assert!((z.series_value - 4.0 / 3.0).abs() < 1e-12);
    assert_eq!(z.closed_form, 4.0 / 3.0);
    unsafe { sk_params_free(p) };
}

#[test]
fn explicit_params_and_validation() {
    let r = [0.4];
    let mut p = ptr::null_mut();
    let status = unsafe {
        sk_params_new(ptr::null(), 0, r.as_ptr(), 1, r.as_ptr(), 1, ptr::null(), 0, 0.0, 0.0, &mut p)
    };
    assert_eq!(status, SkStatus::Ok);
    let mut res = SkTheorem1Residuals::default();
    assert_eq!(unsafe { sk_theorem1_residuals(p, 16, &mut res) }, SkStatus::Ok);
    assert!(res.pass);
    assert!(res.direct_vs_blocks < 1e-10);
    unsafe { sk_params_free(p) };

    let bad = [1.5];
    let mut q = ptr::null_mut();
    let status = unsafe {
        sk_params_new(bad.as_ptr(), 1, ptr::null(), 0, ptr::null(), 0, ptr::null(), 0, 0.0, 0.0, &mut q)
    };
    assert_eq!(status, SkStatus::Domain);
    assert!(q.is_null());
    let status = unsafe {
        sk_params_new(ptr::null(), 2, ptr::null(), 0, ptr::null(), 0, ptr::null(), 0, 0.0, 0.0, &mut q)
    };
    assert_eq!(status, SkStatus::NullPointer);
}

#[test]
fn kernel_blocks_match_geometric_closed_forms() {
    let p = preset("geometric");
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { sk_kernel_new(p, 32, SkKernelRoute::Direct, &mut k) }, SkStatus::Ok);
    assert_eq!(unsafe { sk_kernel_order(k) }, 32);
    let mut k12 = vec![0.0; 32 * 32];
    assert_eq!(unsafe { sk_kernel_block(k, SkBlock::K12, k12.as_mut_ptr(), k12.len()) }, SkStatus::Ok);
    // K₁₂[0, q] = (1 − ab) a^{q+1}
    for q in 0..6 {
        assert!((k12[q] - 0.75 * 0.5f64.powi(q as i32 + 1)).abs() < 1e-14);
    }
    unsafe {
        sk_kernel_free(k);
        sk_params_free(p);
    }
    assert_eq!(unsafe { sk_kernel_order(ptr::null()) }, 0);
    assert_eq!(
        unsafe { sk_kernel_block(ptr::null(), SkBlock::K11, k12.as_mut_ptr(), k12.len()) },
        SkStatus::NullPointer
    );
}

#[test]
fn spectrum_of_a_small_matrix() {
    let m = [0.5, 0.0, 0.25, 0.2];
    let (mut re, mut im) = ([0.0; 2], [0.0; 2]);
    let mut s = SkSpectrumSummary::default();
    let status = unsafe { sk_spectrum_verdict(m.as_ptr(), 2, re.as_mut_ptr(), im.as_mut_ptr(), &mut s) };
    assert_eq!(status, SkStatus::Ok);
    assert!(s.pass);
    assert!((re[0] - 0.5).abs() < 1e-15 && (re[1] - 0.2).abs() < 1e-15);
    assert_eq!(im, [0.0, 0.0]);
    let rot = [0.0, -1.0, 1.0, 0.0];
    let status = unsafe { sk_spectrum_verdict(rot.as_ptr(), 2, ptr::null_mut(), ptr::null_mut(), &mut s) };
    assert_eq!(status, SkStatus::Ok);
    assert!(!s.pass);
}

#[test]
fn unknown_preset_is_a_config_error() {
    let name = CString::new("nope").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { sk_params_preset(name.as_ptr(), &mut p) }, SkStatus::Config);
    assert!(last_error().contains("unknown preset"));
    assert_eq!(unsafe { sk_params_preset(ptr::null(), &mut p) }, SkStatus::NullPointer);
}

/// Compile `c_smoke.c` against the generated header and the static library.
#[test]
fn c_program_links_against_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("schur_kernel.h").exists(), "header not generated");
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"));
    let lib = target.join("debug/libschur_kernel_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping C link check: no static library at {} or no C compiler", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("c_smoke");
    let out = Command::new("cc")
        .arg(manifest.join("tests/c_smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
