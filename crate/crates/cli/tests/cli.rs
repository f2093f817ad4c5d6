use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colorhom"))
        .args(args)
        .output()
        .unwrap()
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["validate", &fixture("heis3.json")]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["validate", &fixture("mutated/jacobi.json")])
            .status
            .code(),
        Some(1)
    );
    let out = run(&["hochschild", &fixture("heis3.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even generator z"));
    assert_eq!(
        run(&["validate", "/nonexistent.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn fixtures_round_trip() {
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "json") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let spec = colorhom_cli::parse_spec(&text).unwrap();
        let again = colorhom_cli::parse_spec(&spec.to_json()).unwrap();
        assert_eq!(spec, again, "{}", path.display());
    }
}

#[test]
fn semantic_errors_carry_location() {
    let dir = std::env::temp_dir().join(format!("colorhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = std::fs::read_to_string(fixtures().join("heis3.json")).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        text.replacen("\"right\": \"y\"", "\"right\": \"q\"", 1),
    )
    .unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("lie.brackets[0].right") && err.contains("\"q\""),
        "{err}"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn lie_cohomology_json_and_dumps() {
    let dir = std::env::temp_dir().join(format!("colorhom-dump-{}", std::process::id()));
    let out = run(&[
        "lie-cohomology",
        &fixture("abelian_odd_1.json"),
        "--n-max",
        "1",
        "--dump-matrices",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["command"], "lie-cohomology");
    assert_eq!(report["n_max"], 1);
    let dumped = std::fs::read_to_string(dir.join("k.ce.n0.h1.json")).unwrap();
    let m: serde_json::Value = serde_json::from_str(&dumped).unwrap();
    assert_eq!(m["n"], 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pretty_output() {
    let out = run(&[
        "compare",
        &fixture("abelian_odd_1.json"),
        "--n-max",
        "1",
        "--pretty",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("overall all_equal: true"));
}
