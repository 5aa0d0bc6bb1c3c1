//! Golden files for every builtin group. Regenerate with `UPDATE_GOLDEN=1`.

use fusionloc_core::corpus::BUILTIN_NAMES;
use std::path::PathBuf;
use std::process::Command;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

fn run(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_fusionloc")).args(args).output().expect("run fusionloc");
    assert!(out.status.success(), "{args:?} exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn check(file: &str, actual: &str) {
    let path = golden_dir().join(file);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("{} missing; run with UPDATE_GOLDEN=1", path.display()));
    assert!(expected == actual, "{} differs from the current output", path.display());
}

#[test]
fn classification_of_every_builtin() {
    for name in BUILTIN_NAMES {
        check(&format!("{}.classify.json", file_stem(name)), &run(&["classify", "--builtin", name, "--json"]));
    }
}

#[test]
fn verification_report_of_every_builtin() {
    for name in BUILTIN_NAMES {
        check(&format!("{}.verify.json", file_stem(name)), &run(&["verify", "--builtin", name, "--json"]));
    }
}

#[test]
fn transporter_exports() {
    check("A5_all.transporter.dot", &run(&["build", "--builtin", "A5", "--prime", "2", "--objects", "all", "--export", "dot", "--collapse"]));
    check("S4_theta.transporter.json", &run(&["build", "--builtin", "S4", "--prime", "2", "--quotient-theta", "--export", "json"]));
}
