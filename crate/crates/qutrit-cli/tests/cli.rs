use std::path::Path;
use std::process::{Command, Output};
use tempfile::TempDir;

fn qkak(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkak"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn qkak")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn setup(n: &str) -> TempDir {
    let dir = TempDir::new().unwrap();
    assert_eq!(
        code(&qkak(&["random", n, "--seed", "5", "-o", "u.json"], dir.path())),
        0
    );
    dir
}

#[test]
fn synth_then_verify() {
    let dir = setup("2");
    let o = qkak(&["synth", "u.json", "-o", "c.txt", "--report", "r.json"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["two_qutrit"], 21);
    assert_eq!(report["expected"], 21);
    assert!(report["distance"].as_f64().unwrap() < 1e-8);
    let o = qkak(&["verify", "u.json", "c.txt"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("distance "));
}

#[test]
fn gcx_only_three_qutrits() {
    let dir = setup("3");
    let o = qkak(
        &["synth", "u.json", "--gate-set", "gcx", "--report", "r.json"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("QUTRITS 3\n"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["two_qutrit"], 315);
}

#[test]
fn tampered_circuit_fails_verification() {
    let dir = setup("2");
    assert_eq!(code(&qkak(&["synth", "u.json", "-o", "c.txt"], dir.path())), 0);
    let c = std::fs::read_to_string(dir.path().join("c.txt")).unwrap();
    std::fs::write(dir.path().join("bad.txt"), c + "R x 01 q0 0.5\n").unwrap();
    assert_eq!(code(&qkak(&["verify", "u.json", "bad.txt"], dir.path())), 4);
}

#[test]
fn width_mismatch_and_parse_errors() {
    let dir = setup("2");
    std::fs::write(dir.path().join("one.txt"), "QUTRITS 1\nR z 01 q0 0.1\n").unwrap();
    assert_eq!(code(&qkak(&["verify", "u.json", "one.txt"], dir.path())), 2);
    std::fs::write(dir.path().join("junk.txt"), "QUTRITS 2\nFOO q0\n").unwrap();
    assert_eq!(code(&qkak(&["verify", "u.json", "junk.txt"], dir.path())), 2);
    std::fs::write(dir.path().join("bad.json"), "{\"qutrits\": 1").unwrap();
    assert_eq!(code(&qkak(&["synth", "bad.json"], dir.path())), 2);
}

#[test]
fn non_unitary_input() {
    let dir = TempDir::new().unwrap();
    let mut rows = vec![vec![[0.0, 0.0]; 3]; 3];
    for (i, r) in rows.iter_mut().enumerate() {
        r[i] = [1.0, 0.0];
    }
    rows[0][1] = [1e-3, 0.0];
    let json = serde_json::json!({ "qutrits": 1, "dim": 3, "matrix": rows });
    std::fs::write(dir.path().join("m.json"), json.to_string()).unwrap();
    assert_eq!(code(&qkak(&["synth", "m.json"], dir.path())), 3);
    let o = qkak(&["synth", "m.json", "--sanitize"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("QUTRITS 1\n"));
}

#[test]
fn counts_table() {
    let dir = TempDir::new().unwrap();
    let o = qkak(&["counts", "--to", "4"], dir.path());
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("  3        315        271"));
    assert!(out.contains("  4       3094       2686"));
    assert!(out.contains("217"));
    assert_eq!(code(&qkak(&["counts", "--from", "1"], dir.path())), 2);
}

#[test]
fn selftest_and_injected_fault() {
    let dir = TempDir::new().unwrap();
    let o = qkak(&["selftest"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("FAIL"));
    let o = qkak(&["selftest", "--inject-fault"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL commutation"));
}

#[test]
fn random_rejects_out_of_range_width() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&qkak(&["random", "6"], dir.path())), 2);
}
