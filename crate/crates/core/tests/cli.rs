use std::path::PathBuf;
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn hermsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermsig"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

#[test]
fn orderings_of_sqrt2() {
    let path = scenario("sqrt2.toml");
    let o = hermsig(&["orderings", "--scenario", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o).len(), 2);
}

#[test]
fn total_signature_lines_are_bare() {
    let path = scenario("sqrt2.toml");
    let o = hermsig(&["total", "--scenario", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    for line in json_lines(&o) {
        let keys: Vec<_> = line.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["ordering", "value"]);
    }
}

#[test]
fn trace_formula_holds_on_quaternion_scenario() {
    let path = scenario("quaternion_sqrt2.toml");
    let o = hermsig(&["ktf-verify", "--scenario", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let lines = json_lines(&o);
    let summary = lines.last().unwrap();
    assert_eq!(summary["summary"]["failed"], 0);
    for row in &lines[..lines.len() - 1] {
        for key in ["lhs", "rhs", "r", "t", "per_gamma"] {
            assert!(row.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn morita_check_on_symplectic_context() {
    let path = scenario("morita_sqrt2.toml");
    let o = hermsig(&["morita-check", "--scenario", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn missing_block_is_a_usage_error() {
    let path = scenario("sqrt2.toml");
    let o = hermsig(&["morita-check", "--scenario", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("hermsig-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(
        &bad,
        "[base]\nfactors = [[0, 1]]\n[form.q]\nalgebra = \"missing\"\ndiagonal = [1]\n",
    )
    .unwrap();
    let o = hermsig(&["sign", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&bad, "not toml [").unwrap();
    assert_eq!(
        hermsig(&["sign", "--scenario", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let missing = dir.join("nope.toml");
    assert_eq!(
        hermsig(&["orderings", "--scenario", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hermsig(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let path = scenario("morita_sqrt2.toml");
    let args = [
        "find-ref",
        "--scenario",
        path.to_str().unwrap(),
        "--json",
        "--seed",
        "3",
    ];
    let a = hermsig(&args);
    let b = hermsig(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
