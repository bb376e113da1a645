use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use heiscalc_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    hc_string_free(s);
    out
}

#[test]
fn subsymbol_round_trip() {
    unsafe {
        let mut ctx = ptr::null_mut();
        assert_eq!(
            hc_context_new(1, c("1/2").as_ptr(), c("1/2").as_ptr(), &mut ctx),
            HcStatus::Ok
        );
        let mut op = ptr::null_mut();
        assert_eq!(hc_op_parse(ctx, c("z*Dz^2").as_ptr(), &mut op), HcStatus::Ok);
        assert_eq!(take(hc_op_to_string(op)), "z*Dz^2");
        let (mut k, mut d) = (0, 0);
        assert_eq!(hc_op_bidegree(op, &mut k, &mut d), HcStatus::Ok);
        assert_eq!((k, d), (2, 4));
        let mut sym = ptr::null_mut();
        assert_eq!(hc_subsymbol(op, 2, &mut sym), HcStatus::Ok);
        assert_eq!(take(hc_symbol_to_string(sym)), "-zeta");
        let mut sq = ptr::null_mut();
        assert_eq!(hc_op_compose(op, op, &mut sq), HcStatus::Ok);
        assert_eq!(hc_op_bidegree(sq, &mut k, &mut d), HcStatus::Ok);
        assert_eq!((k, d), (4, 8));
        hc_op_free(sq);
        hc_symbol_free(sym);
        hc_op_free(op);
        hc_context_free(ctx);
    }
}

#[test]
fn quantize_and_resonance() {
    unsafe {
        let mut ctx = ptr::null_mut();
        assert_eq!(
            hc_context_new(1, c("0").as_ptr(), c("1/3").as_ptr(), &mut ctx),
            HcStatus::Ok
        );
        let mut sym = ptr::null_mut();
        assert_eq!(hc_symbol_parse(ctx, c("zeta*beta1").as_ptr(), &mut sym), HcStatus::Ok);
        let mut op = ptr::null_mut();
        assert_eq!(hc_quantize(ctx, sym, &mut op), HcStatus::Ok);
        assert_eq!(take(hc_op_to_string(op)), "1/2*x1*Dz^2 - Dz*Dy1");
        hc_op_free(op);
        hc_symbol_free(sym);
        hc_context_free(ctx);

        let mut ctx = ptr::null_mut();
        assert_eq!(
            hc_context_new(1, c("0").as_ptr(), c("1/2").as_ptr(), &mut ctx),
            HcStatus::Ok
        );
        let mut sym = ptr::null_mut();
        assert_eq!(hc_symbol_parse(ctx, c("zeta").as_ptr(), &mut sym), HcStatus::Ok);
        let mut op = ptr::null_mut();
        assert_eq!(hc_quantize(ctx, sym, &mut op), HcStatus::Resonance);
        assert!(op.is_null());
        let msg = CStr::from_ptr(hc_last_error()).to_str().unwrap();
        assert!(msg.contains("contact-resonant"), "{msg}");
        hc_symbol_free(sym);
        hc_context_free(ctx);

        let mut r = false;
        assert_eq!(hc_is_contact_resonant(1, c("1/2").as_ptr(), &mut r), HcStatus::Ok);
        assert!(r);
        assert_eq!(hc_is_projectively_resonant(1, c("1/2").as_ptr(), &mut r), HcStatus::Ok);
        assert!(!r);
        assert_eq!(hc_is_contact_resonant(1, c("half").as_ptr(), &mut r), HcStatus::Parse);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut ctx = ptr::null_mut();
        assert_eq!(hc_context_new(0, ptr::null(), ptr::null(), &mut ctx), HcStatus::Domain);
        assert_eq!(
            hc_context_new(1, ptr::null(), ptr::null(), ptr::null_mut()),
            HcStatus::NullPointer
        );
        assert_eq!(hc_context_new(2, ptr::null(), ptr::null(), &mut ctx), HcStatus::Ok);
        let mut op = ptr::null_mut();
        assert_eq!(hc_op_parse(ctx, c("Dx3").as_ptr(), &mut op), HcStatus::Parse);
        assert_eq!(
            hc_op_parse(ptr::null(), c("z").as_ptr(), &mut op),
            HcStatus::NullPointer
        );
        let bad = [0xffu8, 0];
        assert_eq!(hc_op_parse(ctx, bad.as_ptr().cast(), &mut op), HcStatus::InvalidUtf8);
        assert_eq!(hc_op_parse(ctx, c("0").as_ptr(), &mut op), HcStatus::Ok);
        let (mut k, mut d) = (0, 0);
        assert_eq!(hc_op_bidegree(op, &mut k, &mut d), HcStatus::Domain);
        hc_op_free(op);
        hc_context_free(ctx);
        hc_op_free(ptr::null_mut());
        hc_string_free(ptr::null_mut());
        assert!(hc_op_to_string(ptr::null()).is_null());
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libheiscalc_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let exe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("heiscalc_demo");
    let status = Command::new("cc")
        .arg(crate_dir.join("examples/demo.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "bidegree 2 4\nsubsymbol -zeta\nresonant 1\nparse status 3\n"
    );
}

#[test]
fn header_is_current() {
    let h = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/heiscalc.h")).unwrap();
    for name in [
        "hc_context_new",
        "hc_op_parse",
        "hc_subsymbol",
        "hc_quantize",
        "hc_last_error",
        "HC_STATUS_RESONANCE",
    ] {
        assert!(h.contains(name), "{name}");
    }
}
