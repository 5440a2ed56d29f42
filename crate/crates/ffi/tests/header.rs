//! The checked-in header against the exported symbols, and a C program
//! compiled against both.

use std::path::{Path, PathBuf};
use std::process::Command;

const MANIFEST: &str = env!("CARGO_MANIFEST_DIR");

fn read(relative: &str) -> String {
    std::fs::read_to_string(Path::new(MANIFEST).join(relative)).unwrap()
}

/// Names of the `extern "C"` functions defined in the crate source.
fn exported() -> Vec<String> {
    read("src/lib.rs")
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap().to_string())
        .collect()
}

#[test]
fn header_declares_every_export_and_nothing_else() {
    let header = read("include/workbench.h");
    let declared: Vec<String> = header
        .lines()
        .filter(|l| l.contains("wb_") && l.trim_end().ends_with(");"))
        .map(|l| {
            let name = l.split('(').next().unwrap();
            name.rsplit([' ', '*']).next().unwrap().to_string()
        })
        .collect();
    let mut a = exported();
    let mut b = declared;
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn status_codes_match() {
    let header = read("include/workbench.h");
    use workbench_ffi::WbStatus::*;
    for (name, status) in [
        ("WB_OK", Ok),
        ("WB_NULL_ARGUMENT", NullArgument),
        ("WB_INVALID_UTF8", InvalidUtf8),
        ("WB_MALFORMED", Malformed),
        ("WB_SIZE_LIMIT", SizeLimit),
        ("WB_INVALID", Invalid),
        ("WB_UNKNOWN_SUITE", UnknownSuite),
        ("WB_PANIC", Panic),
    ] {
        assert!(header.contains(&format!("{name} = {}", status as i32)), "{name}");
    }
}

/// The static library: beside this test binary under `cargo test`, one level
/// up after a plain `cargo build`.
fn static_library() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    [deps, deps.parent().unwrap()]
        .iter()
        .map(|d| d.join("libworkbench_ffi.a"))
        .find(|p| p.exists())
        .unwrap_or_else(|| panic!("libworkbench_ffi.a was not built next to {}", deps.display()))
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = static_library();
    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("smoke");
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(Path::new(MANIFEST).join("include"))
        .arg(Path::new(MANIFEST).join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}: {}", run.status.code(), String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
