//! CLI acceptance: determinism of solve output (criterion 8) and the stable
//! exit-code API exercised end to end through the binary.

use std::path::Path;
use std::process::{Command, Output};

fn jones(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jones"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write_graph(dir: &Path, name: &str, family: &str, n: usize, seed: u64) -> String {
    let path = dir.join(name);
    let out = jones(
        &[
            "gen",
            "--family",
            family,
            "--n",
            &n.to_string(),
            "--seed",
            &seed.to_string(),
            "--out",
            path.to_str().unwrap(),
        ],
        dir,
    );
    assert!(out.status.success(), "gen failed: {out:?}");
    path.to_str().unwrap().to_string()
}

#[test]
fn criterion_8_solve_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for (family, n, seed) in [
        ("halin", 3usize, 11u64),
        ("wheel", 7, 0),
        ("random-based", 14, 9),
    ] {
        let name = format!("{family}.graph");
        let path = write_graph(dir.path(), &name, family, n, seed);
        let a = jones(&["solve", &path, "--quiet"], dir.path());
        let b = jones(&["solve", &path, "--quiet"], dir.path());
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(b.status.code(), Some(0));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "certificate bytes differ for {family}");
    }
    println!("PASS criterion 8: repeated cli solve runs produce byte-identical certificates");
}

#[test]
fn exit_code_contract() {
    let dir = tempfile::tempdir().unwrap();

    // 0: solve a valid based planar graph, then verify its certificate.
    let w5 = write_graph(dir.path(), "w5.graph", "wheel", 5, 0);
    let solve = jones(&["solve", &w5, "--quiet"], dir.path());
    assert_eq!(solve.status.code(), Some(0));
    let cert_path = dir.path().join("w5.cert");
    std::fs::write(&cert_path, &solve.stdout).unwrap();
    let verify = jones(&["verify", &w5, cert_path.to_str().unwrap()], dir.path());
    assert_eq!(verify.status.code(), Some(0));

    // 1: malformed rotation (asymmetric edge).
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "2 1\n0: 1\n1:\nouter: 0 1\n").unwrap();
    let out = jones(&["solve", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "diagnostic names a line: {err}");

    // 1: bad flags.
    let out = jones(&["gen", "--family", "nonsense", "--n", "4"], dir.path());
    assert_eq!(out.status.code(), Some(1));

    // 2: cube is not based planar.
    let q3 = write_graph(dir.path(), "q3.graph", "prism", 4, 0);
    let out = jones(&["solve", &q3], dir.path());
    assert_eq!(out.status.code(), Some(2));

    // 4: tampered certificate (empty fvs leaves the graph cyclic).
    let tampered = dir.path().join("tampered.cert");
    let cert_text = String::from_utf8(solve.stdout).unwrap();
    let mut lines: Vec<String> = cert_text.lines().map(String::from).collect();
    lines[0] = "fvs: []".into();
    lines[2] = "bound: 0 <= 2*1".into();
    std::fs::write(&tampered, lines.join("\n") + "\n").unwrap();
    let out = jones(&["verify", &w5, tampered.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("residual cyclic"), "names the violation: {err}");

    // 4: packing the outer face boundary.
    let outer_packed = dir.path().join("outer.cert");
    std::fs::write(
        &outer_packed,
        "fvs: [1, 5]\npacking: [[0, 1, 2, 3, 4]]\nbound: 2 <= 2*1\nface_packing: true\ntrace:\n",
    )
    .unwrap();
    let out = jones(&["verify", &w5, outer_packed.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("outer face"), "names the violation: {err}");
}

#[test]
fn stress_is_clean_on_based_families() {
    let dir = tempfile::tempdir().unwrap();
    for family in ["halin", "wheel", "fan", "outerplanar", "random-based"] {
        let out = jones(
            &[
                "stress", "--family", family, "--n-max", "10", "--iters", "25", "--seed", "7",
            ],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0), "stress {family}: {out:?}");
        let report = String::from_utf8_lossy(&out.stdout);
        assert!(report.contains("failures 0"), "{report}");
    }
}

#[test]
fn oracle_limit_env_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let w5 = write_graph(dir.path(), "w5.graph", "wheel", 5, 0);
    let out = Command::new(env!("CARGO_BIN_EXE_jones"))
        .args(["oracle", &w5])
        .env("JONES_ORACLE_LIMIT", "4")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = jones(&["oracle", &w5], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let report = String::from_utf8_lossy(&out.stdout);
    assert!(report.contains("fvs: 2"));
    assert!(report.contains("cp: 1"));
}
