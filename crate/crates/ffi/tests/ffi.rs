use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use frobsig_ffi::*;

const CUSP: &str = "field GF(2)\nring x y\nmod y^2 + x^3\nideal I0 = x\ntask srel I0 e_max=2\n";

fn parse(text: &str) -> (FrobsigStatus, *mut FrobsigInstance) {
    let text = CString::new(text).unwrap();
    let mut inst = ptr::null_mut();
    let status = unsafe { frobsig_instance_parse(text.as_ptr(), &mut inst) };
    (status, inst)
}

fn last_error() -> String {
    let p = frobsig_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { frobsig_string_free(s) };
    text
}

#[test]
fn run_returns_the_json_report() {
    let (status, inst) = parse(CUSP);
    assert_eq!(status, FrobsigStatus::Ok);
    let name = CString::new("cusp").unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { frobsig_run(inst, name.as_ptr(), ptr::null(), &mut out) };
    assert_eq!(status, FrobsigStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["instance"], "cusp");
    assert_eq!(report["rows"][1]["value"]["num"], "0");
    unsafe { frobsig_instance_free(inst) };
}

#[test]
fn options_override_the_task() {
    let (_, inst) = parse(CUSP);
    let task = CString::new("hk").unwrap();
    let opts = FrobsigRunOptions {
        task: task.as_ptr(),
        e_max: 4,
        format: FrobsigFormat::Table,
        ..frobsig_run_options_default()
    };
    let mut out = ptr::null_mut();
    let status = unsafe { frobsig_run(inst, ptr::null(), &opts, &mut out) };
    assert_eq!(status, FrobsigStatus::Ok);
    let table = take(out);
    assert!(table.contains("4  32"), "{table}");
    unsafe { frobsig_instance_free(inst) };
}

#[test]
fn status_codes() {
    let (status, inst) = parse("field GF(2)\nring x y\nideal I0 = x\ntask srel I0 bogus=1\n");
    assert_eq!(status, FrobsigStatus::Invalid);
    assert!(inst.is_null());
    assert!(last_error().contains("line 4"));

    let (_, inst) = parse("field GF(2)\nring x y\nideal M = x^2, x*y, y^2\ntask srel M\n");
    let opts = FrobsigRunOptions {
        budget: 1,
        ..frobsig_run_options_default()
    };
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { frobsig_run(inst, ptr::null(), &opts, &mut out) }, FrobsigStatus::Budget);
    assert!(out.is_null());

    let task = CString::new("nonsense").unwrap();
    let opts = FrobsigRunOptions {
        task: task.as_ptr(),
        ..frobsig_run_options_default()
    };
    assert_eq!(unsafe { frobsig_run(inst, ptr::null(), &opts, &mut out) }, FrobsigStatus::Invalid);
    unsafe { frobsig_instance_free(inst) };

    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { frobsig_instance_parse(ptr::null(), &mut inst) }, FrobsigStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { frobsig_instance_parse(bad.as_ptr().cast(), &mut inst) }, FrobsigStatus::InvalidUtf8);
}

#[test]
fn successful_calls_clear_the_error() {
    let (status, _) = parse("nonsense\n");
    assert_eq!(status, FrobsigStatus::Invalid);
    let (status, inst) = parse(CUSP);
    assert_eq!(status, FrobsigStatus::Ok);
    assert!(frobsig_last_error_message().is_null());
    unsafe { frobsig_instance_free(inst) };
}

#[test]
fn print_round_trips() {
    let (_, inst) = parse(CUSP);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { frobsig_instance_print(inst, &mut out) }, FrobsigStatus::Ok);
    let printed = take(out);
    let (status, again) = parse(&printed);
    assert_eq!(status, FrobsigStatus::Ok);
    let mut out2 = ptr::null_mut();
    unsafe { frobsig_instance_print(again, &mut out2) };
    assert_eq!(take(out2), printed);
    unsafe {
        frobsig_instance_free(inst);
        frobsig_instance_free(again);
    }
}

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(frobsig_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// `target/<profile>`, where cargo places the static library.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(crate_dir.join("include/frobsig.h")).unwrap();
    for symbol in ["frobsig_instance_parse", "frobsig_instance_free", "frobsig_run", "frobsig_string_free", "frobsig_last_error_message"] {
        assert!(header.contains(symbol), "{symbol} missing from the header");
    }
    let lib = artifact_dir().join("libfrobsig_ffi.a");
    if !lib.exists() {
        // `cargo test` only builds the rlib.
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let status = Command::new(cargo).args(["build", "-p", "frobsig-ffi", "--lib"]).status().unwrap();
        assert!(status.success());
    }
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let csv = String::from_utf8(run.stdout).unwrap();
    assert!(csv.starts_with("instance,task,e,num,den,"));
    assert!(csv.contains("cusp,srel,2,0,1,"));
}
