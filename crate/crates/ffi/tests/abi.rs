use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use treeperc_ffi::*;

unsafe fn take_string(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    tp_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tp_last_error_message()) }
        .to_str()
        .unwrap()
        .to_owned()
}

#[test]
fn cut_table_through_handles() {
    unsafe {
        let mut gf = ptr::null_mut();
        assert_eq!(tp_cut_gf(2, 3, -1, ptr::null(), &mut gf), TpStatus::Ok);
        let mut table = ptr::null_mut();
        assert_eq!(tp_betti_from_gf(gf, &mut table), TpStatus::Ok);
        assert_eq!(tp_betti_max_degree(table), 7);
        let mut beta = 0u64;
        assert_eq!(tp_betti_get_u64(table, 3, 9, &mut beta), TpStatus::Ok);
        assert_eq!(beta, 40);
        let mut s = ptr::null_mut();
        assert_eq!(tp_betti_get(table, 2, 5, &mut s), TpStatus::Ok);
        assert_eq!(take_string(s), "10");
        assert_eq!(tp_betti_get(table, 2, 3, &mut s), TpStatus::Ok);
        assert_eq!(take_string(s), "0");
        assert_eq!(tp_betti_to_csv(table, &mut s), TpStatus::Ok);
        assert!(take_string(s).starts_with("i,j,beta\n0,0,1\n"));
        assert_eq!(tp_betti_to_json(table, &mut s), TpStatus::Ok);
        assert!(take_string(s).starts_with(r#"[{"i":0,"j":0,"beta":"1"}"#));
        tp_betti_free(table);
        tp_poly_free(gf);
    }
}

#[test]
fn polynomial_json_round_trip() {
    unsafe {
        let mut gf = ptr::null_mut();
        assert_eq!(tp_cut_gf(2, 2, -1, ptr::null(), &mut gf), TpStatus::Ok);
        let mut h = ptr::null_mut();
        assert_eq!(tp_poly_numerator(gf, &mut h), TpStatus::Ok);
        assert_eq!(tp_poly_term_count(h), 6);
        let mut json = ptr::null_mut();
        assert_eq!(tp_poly_to_json(h, &mut json), TpStatus::Ok);
        let text = take_string(json);
        let c = CString::new(text.clone()).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(tp_poly_from_json(c.as_ptr(), &mut back), TpStatus::Ok);
        let mut again = ptr::null_mut();
        tp_poly_to_json(back, &mut again);
        assert_eq!(take_string(again), text);
        for p in [gf, h, back] {
            tp_poly_free(p);
        }
    }
}

#[test]
fn percolation_and_bounds() {
    unsafe {
        let half = CString::new("1/2").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(
            tp_percolation_exact(2, 2, half.as_ptr(), &mut s),
            TpStatus::Ok
        );
        assert_eq!(take_string(s), "39/64");
        let mut v = 0.0;
        assert_eq!(tp_percolation_infinite(2, 0.75, &mut v), TpStatus::Ok);
        assert!((v - 8.0 / 9.0).abs() < 1e-10);
        assert_eq!(tp_percolation_f64(2, 2, 0.5, &mut v), TpStatus::Ok);
        assert_eq!(v, 39.0 / 64.0);
        let mut kind = TpBoundKind::Exact;
        assert_eq!(
            tp_path_bound(2, 2, 2, half.as_ptr(), &mut s, &mut kind),
            TpStatus::Ok
        );
        assert_eq!(
            (take_string(s), kind),
            ("1/2".to_string(), TpBoundKind::PathLower)
        );
        assert_eq!(
            tp_cut_bound(2, 2, 9, half.as_ptr(), &mut s, &mut kind),
            TpStatus::Ok
        );
        assert_eq!(
            (take_string(s), kind),
            ("25/64".to_string(), TpBoundKind::Exact)
        );
        assert_eq!(tp_q_star(2, &mut v), TpStatus::Ok);
        assert_eq!(v, 0.25);
    }
}

#[test]
fn error_reporting() {
    unsafe {
        let mut gf = ptr::null_mut();
        let tight = TpBudget {
            max_terms: 10,
            max_coeff_bits: 64,
        };
        assert_eq!(
            tp_cut_gf(2, 6, -1, &tight, &mut gf),
            TpStatus::BudgetExceeded
        );
        assert!(gf.is_null());
        assert!(last_error().contains("budget exceeded"), "{}", last_error());
        assert_eq!(
            tp_path_gf(1, 2, -1, ptr::null(), &mut gf),
            TpStatus::InvalidArgument
        );
        let bad = CString::new("two thirds").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(
            tp_percolation_exact(2, 2, bad.as_ptr(), &mut s),
            TpStatus::Parse
        );
        let mut v = 0.0;
        assert_eq!(
            tp_percolation_infinite(2, 1.5, &mut v),
            TpStatus::InvalidArgument
        );
        assert_eq!(tp_q_star(2, ptr::null_mut()), TpStatus::NullPointer);
        assert_eq!(
            tp_percolation_exact(2, 2, ptr::null(), &mut s),
            TpStatus::NullPointer
        );

        assert_eq!(tp_cut_gf(2, 7, -1, ptr::null(), &mut gf), TpStatus::Ok);
        let mut table = ptr::null_mut();
        assert_eq!(tp_betti_from_gf(gf, &mut table), TpStatus::Ok);
        // locate the largest entry with the library itself
        let reference =
            treeperc::resolution::betti_table(&treeperc::resolution::cut_gf(2, 7).unwrap())
                .unwrap();
        let (i, j, big) = reference
            .iter()
            .max_by_key(|(_, _, b)| (*b).clone())
            .unwrap();
        assert!(big.bits() > 64);
        let mut beta = 0u64;
        assert_eq!(tp_betti_get_u64(table, i, j, &mut beta), TpStatus::Overflow);
        assert!(last_error().contains("exceeds 64 bits"));
        assert_eq!(tp_betti_get(table, i, j, &mut s), TpStatus::Ok);
        assert_eq!(take_string(s), big.to_string());
        assert_eq!(last_error(), "");
        tp_betti_free(table);
        tp_poly_free(gf);
        tp_string_free(ptr::null_mut());
    }
}

fn header() -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/treeperc.h");
    std::fs::read_to_string(path).expect("header generated by the build script")
}

#[test]
fn header_declares_exports() {
    let header = header();
    let source = include_str!("../src/lib.rs");
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .filter_map(|rest| rest.split('(').next())
        .collect();
    assert!(exports.len() >= 20, "{exports:?}");
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    for ty in [
        "typedef struct TpPoly TpPoly;",
        "TP_STATUS_BUDGET_EXCEEDED = 3",
        "TP_BOUND_KIND_CUT_UPPER",
    ] {
        assert!(header.contains(ty), "{ty} missing from header");
    }
}

/// Compiles and runs a C program against the header and the static library.
/// The library is built into a private target directory because the outer
/// cargo invocation holds the lock on the shared one.
#[test]
fn c_program_links_and_runs() {
    let target = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ffi-build");
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let status = Command::new(cargo)
        .args([
            "build",
            "--quiet",
            "--offline",
            "-p",
            "treeperc-ffi",
            "--target-dir",
        ])
        .arg(&target)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .status()
        .expect("cargo runs");
    assert!(status.success());
    let archive = target.join("debug").join("libtreeperc_ffi.a");
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ffi-smoke");
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "treeperc.h"

int main(void) {
    TpPoly *gf = NULL;
    TpBettiTable *table = NULL;
    uint64_t beta = 0;
    char *p = NULL;
    if (tp_cut_gf(2, 3, -1, NULL, &gf) != TP_STATUS_OK) return 1;
    if (tp_betti_from_gf(gf, &table) != TP_STATUS_OK) return 2;
    if (tp_betti_get_u64(table, 3, 9, &beta) != TP_STATUS_OK || beta != 40) return 3;
    if (tp_percolation_exact(2, 2, "0.5", &p) != TP_STATUS_OK || strcmp(p, "39/64") != 0) return 4;
    tp_string_free(p);
    if (tp_path_gf(1, 1, -1, NULL, &gf) != TP_STATUS_INVALID_ARGUMENT) return 5;
    if (strlen(tp_last_error_message()) == 0) return 6;
    tp_betti_free(table);
    tp_poly_free(gf);
    printf("ok %s\n", tp_version());
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("smoke");
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
