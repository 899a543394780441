use std::path::PathBuf;
use std::process::{Command, Output};

fn vbclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vbclass"))
        .args(args)
        .output()
        .expect("run vbclass")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.manifold"))
        .to_string_lossy()
        .into_owned()
}

#[test]
fn validate_builtin_and_file() {
    let o = vbclass(&["validate", "--builtin", "cp4", "--strict"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(!stdout(&o).contains("FAIL"));
    let o = vbclass(&["validate", &fixture("torsion-demo"), "--strict"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exactness: im rho2 = ker beta"));
}

#[test]
fn validate_reports_wrong_spinc() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("cp4"))
        .unwrap()
        .replace("spinc 5", "spinc 4");
    let path = dir.path().join("bad.manifold");
    std::fs::write(&path, text).unwrap();
    let o = vbclass(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL rho2(c) = w2"), "{}", stdout(&o));
    // loading for a decision refuses invalid data
    let o = vbclass(&["rank4", path.to_str().unwrap(), "--chern", "0;0;0;0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("failed validation"));
    let o = vbclass(&[
        "rank4",
        path.to_str().unwrap(),
        "--no-validate",
        "--chern",
        "0;0;0;0",
    ]);
    assert_ne!(o.status.code(), Some(2));
}

#[test]
fn rank4_exit_codes() {
    let o = vbclass(&["rank4", "--builtin", "cp4", "--chern", "4;6;4;1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("REALIZABLE"));
    let o = vbclass(&["rank4", &fixture("cp4"), "--chern", "0;0;0;3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NOT REALIZABLE"));
}

#[test]
fn rank3_examples() {
    assert_eq!(
        vbclass(&["rank3", "--builtin", "cp4", "--chern", "0;2;2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        vbclass(&["rank3", "--builtin", "cp4", "--chern", "0;1;0"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn input_errors_exit_2() {
    let o = vbclass(&["rank4", "--builtin", "cp4", "--chern", "1;2;3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = vbclass(&["rank4", "--builtin", "cp4", "--chern", "1,1;0;0;0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = vbclass(&["rank4", "--builtin", "rp8", "--chern", "0;0;0;0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown builtin"));
    let o = vbclass(&[
        "count",
        "--builtin",
        "cp4",
        "--rank",
        "5",
        "--chern",
        "0;0;0;0",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_section_and_shape_errors() {
    let dir = tempfile::tempdir().unwrap();
    let base = std::fs::read_to_string(fixture("cp4")).unwrap();
    let no_pairing: String = base
        .lines()
        .filter(|l| !l.starts_with("pairing"))
        .map(|l| format!("{l}\n"))
        .collect();
    let p = dir.path().join("a.manifold");
    std::fs::write(&p, no_pairing).unwrap();
    let o = vbclass(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing section: pairing"));

    let wide = base.replace("matrix rho2 2 1x1\n1\n", "matrix rho2 2 1x2\n1 0\n");
    std::fs::write(&p, wide).unwrap();
    let o = vbclass(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(rho2, 2)"), "{}", stderr(&o));
}

#[test]
fn count_and_groups() {
    let o = vbclass(&[
        "count",
        "--builtin",
        "torsion-demo",
        "--rank",
        "4",
        "--chern",
        "-;-;-;0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("classes: 2"));
    let o = vbclass(&[
        "count",
        "--builtin",
        "cp4",
        "--rank",
        "3",
        "--chern",
        "0;2;2",
    ]);
    assert!(stdout(&o).contains("classes: 1"));
    let o = vbclass(&[
        "count",
        "--builtin",
        "cp4",
        "--rank",
        "4",
        "--chern",
        "0;0;0;1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("classes: 0"));

    let o = vbclass(&["groups", "--builtin", "odd-demo"]);
    assert_eq!(stdout(&o), "B = 0\nT = Z/2\n");
    let o = vbclass(&["groups", "--builtin", "torsion-demo"]);
    assert_eq!(stdout(&o), "B = Z/2\nT = 0\n");
}

#[test]
fn groups_without_odd_generators() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("odd-demo")).unwrap();
    let text: String = text
        .lines()
        .filter(|l| !l.starts_with("oddgen"))
        .map(|l| format!("{l}\n"))
        .collect();
    let p = dir.path().join("bare.manifold");
    std::fs::write(&p, text).unwrap();
    let o = vbclass(&["groups", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("T unavailable: supply odd unitary generators"));
    let o = vbclass(&[
        "count",
        p.to_str().unwrap(),
        "--rank",
        "3",
        "--chern",
        "0;-;0",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_prints_exact_rational() {
    let o = vbclass(&["oracle", "--builtin", "cp4", "--chern", "0;0;0;1"]);
    assert_eq!(stdout(&o).trim(), "-1/6 (not an integer)");
    let o = vbclass(&["oracle", "--builtin", "cp4", "--chern", "0;0;0;6"]);
    assert_eq!(stdout(&o).trim(), "-1 (integer)");
}

#[test]
fn enumerate_bounds() {
    let o = vbclass(&[
        "enumerate",
        "--builtin",
        "cp4",
        "--bound",
        "0",
        "--rank",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "a1,a2,a3,a4,closed_form,generic\n0,0,0,0,true,true\n"
    );
    assert!(stderr(&o).contains("disagreements: 0"));

    let o = vbclass(&["enumerate", "--bound", "6", "--rank", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .contains("tuples: 2197  realizable: 274  disagreements: 0  parity violations: 0"));
}

#[test]
fn enumerate_is_worker_independent() {
    let a = vbclass(&[
        "enumerate",
        "--bound",
        "3",
        "--rank",
        "4",
        "--format",
        "csv",
        "--all",
    ]);
    let b = vbclass(&[
        "enumerate",
        "--bound",
        "3",
        "--rank",
        "4",
        "--format",
        "csv",
        "--all",
        "--jobs",
        "3",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 1 + 7usize.pow(4));
}

#[test]
fn export_matches_shipped_fixture() {
    for name in [
        "cp4",
        "s8",
        "hp2",
        "cp2xcp2",
        "cp1xcp3",
        "torsion-demo",
        "odd-demo",
    ] {
        let o = vbclass(&["export", "--builtin", name]);
        assert_eq!(
            stdout(&o),
            std::fs::read_to_string(fixture(name)).unwrap(),
            "{name}"
        );
    }
}
