//! Compiles a small C program against include/hns.h and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn static_lib() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    [deps, deps.parent().unwrap()]
        .iter()
        .map(|d| d.join("libhns_ffi.a"))
        .find(|p| p.exists())
        .expect("libhns_ffi.a next to the test binary")
}

#[test]
fn c_program_links_and_runs() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out_dir = tempfile_dir();
    let bin = out_dir.join("smoke");
    let status = Command::new("cc")
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(static_lib())
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());

    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert!(lines
        .next()
        .unwrap()
        .ends_with(":loy6sd4BV30g6bKezDDQzqzcQCi1SKvZME2tRxAbj2c=:/6V4r8CR1OENNxcqIfh0Sf0u7Mj2dcFmyVQxMPm9+zng=:/Csi2JCKab335baSzrL0%2FUo2OT%2F43jaBYjBOcYJyql0w="));
    assert!(lines.next().unwrap().contains("byte 18"));
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hns-ffi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
