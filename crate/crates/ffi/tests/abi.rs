use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use macroatlas_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ma_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn params_round_trip() {
    unsafe {
        let p = ma_params_new();
        let mut v = 0.0;
        assert_eq!(ma_params_get(p, cstr("Ms").as_ptr(), &mut v), MaStatus::Ok);
        assert_eq!(v, 1000.0);
        assert_eq!(ma_params_set(p, cstr("Ms").as_ptr(), 2000.0), MaStatus::Ok);
        assert_eq!(ma_params_get(p, cstr("Ms").as_ptr(), &mut v), MaStatus::Ok);
        assert_eq!(v, 2000.0);
        assert_eq!(
            ma_params_get(p, cstr("nope").as_ptr(), &mut v),
            MaStatus::UnknownField
        );
        assert!(last_error().contains("nope"));

        let mut json = ptr::null_mut();
        assert_eq!(ma_params_to_json(p, &mut json), MaStatus::Ok);
        let mut q = ptr::null_mut();
        assert_eq!(ma_params_from_json(json, &mut q), MaStatus::Ok);
        assert_eq!(ma_params_get(q, cstr("Ms").as_ptr(), &mut v), MaStatus::Ok);
        assert_eq!(v, 2000.0);
        ma_string_free(json);
        ma_params_free(q);
        ma_params_free(p);
    }
}

#[test]
fn bad_json_and_nulls() {
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(
            ma_params_from_json(cstr("{\"Mss\": 1}").as_ptr(), &mut q),
            MaStatus::Validation
        );
        assert!(q.is_null());
        assert_eq!(
            ma_params_from_json(ptr::null(), &mut q),
            MaStatus::NullPointer
        );
        assert_eq!(ma_params_validate(ptr::null()), MaStatus::NullPointer);
        ma_params_free(ptr::null_mut());
        ma_string_free(ptr::null_mut());
    }
}

#[test]
fn solvers() {
    unsafe {
        let p = ma_params_new();
        let mut sr = MaEconState::default();
        let mut lr = MaEconState::default();
        assert_eq!(ma_solve_short_run(p, &mut sr), MaStatus::Ok);
        assert_eq!(ma_solve_long_run(p, &mut lr), MaStatus::Ok);
        assert!(sr.output < sr.full_employment_output);
        assert!((lr.output - lr.full_employment_output).abs() < 1e-8);
        assert_eq!(last_error(), "");

        let (mut y, mut i) = (0.0, 0.0);
        assert_eq!(ma_islm_solve(p, 1.0, &mut y, &mut i), MaStatus::Ok);
        assert!((y - 2302.694).abs() < 1e-2 && (i - 1.40933).abs() < 1e-4);
        assert_eq!(ma_islm_solve(p, -1.0, &mut y, &mut i), MaStatus::Validation);

        assert_eq!(ma_params_set(p, cstr("m").as_ptr(), 1e12), MaStatus::Ok);
        assert_eq!(ma_solve_short_run(p, &mut sr), MaStatus::Convergence);
        ma_params_free(p);
    }
}

#[test]
fn graph_queries() {
    unsafe {
        let g = ma_graph_new();
        assert_eq!(ma_graph_node_count(g), 27);
        let mut ids = [0u32; 32];
        let mut len = 0usize;
        assert_eq!(
            ma_graph_descendants(g, 16, ids.as_mut_ptr(), ids.len(), &mut len),
            MaStatus::Ok
        );
        assert_eq!(&ids[..len], &[14, 17, 19, 20, 24]);
        assert_eq!(
            ma_graph_descendants(g, 99, ids.as_mut_ptr(), ids.len(), &mut len),
            MaStatus::UnknownNode
        );
        assert_eq!(
            ma_graph_propagate(g, cstr("G").as_ptr(), ids.as_mut_ptr(), ids.len(), &mut len),
            MaStatus::Ok
        );
        assert_eq!(&ids[..len], &[27, 22, 23, 24, 19, 14, 20]);
        assert_eq!(
            ma_graph_propagate(g, cstr("G").as_ptr(), ptr::null_mut(), 0, &mut len),
            MaStatus::BufferTooSmall
        );
        assert_eq!(len, 7);
        ma_graph_free(g);
    }
}

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps/
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_is_current_and_compiles_with_c() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(crate_dir.join("include/macroatlas.h")).unwrap();
    for name in [
        "ma_params_new",
        "ma_solve_short_run",
        "ma_graph_propagate",
        "ma_last_error_message",
        "MA_STATUS_CONVERGENCE = 3",
        "typedef struct MaParams MaParams;",
    ] {
        assert!(header.contains(name), "{name}");
    }

    let lib = target_dir().join("libmacroatlas_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping C link test");
        return;
    }
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
