use std::path::PathBuf;

use vbclass::builtins::{builtin, BUILTIN_NAMES};
use vbclass::{format, Error};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.manifold"))
}

#[test]
fn shipped_files_equal_builtins() {
    for name in BUILTIN_NAMES {
        let loaded = format::load(fixture(name), true).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(loaded, builtin(name).unwrap(), "{name}");
    }
}

#[test]
fn shipped_files_round_trip() {
    for name in BUILTIN_NAMES {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let data = format::parse(&text).unwrap();
        assert_eq!(
            format::parse(&format::to_string(&data)).unwrap(),
            data,
            "{name}"
        );
    }
}

#[test]
fn missing_pairing_is_named() {
    let text = std::fs::read_to_string(fixture("cp4")).unwrap();
    let text: String = text
        .lines()
        .filter(|l| !l.starts_with("pairing"))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(
        format::parse(&text).unwrap_err().to_string(),
        "missing section: pairing"
    );
}

#[test]
fn load_reports_io_errors() {
    assert!(matches!(
        format::load(fixture("no-such-manifold"), true),
        Err(Error::Io(_))
    ));
}

#[test]
fn unknown_builtin() {
    let err = builtin("rp8").unwrap_err();
    assert!(matches!(err, Error::UnknownBuiltin(..)));
    assert!(err.to_string().contains("cp4"));
}
