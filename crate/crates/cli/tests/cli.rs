use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn jacobi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobi"))
        .args(args)
        .env_remove("JACOBI_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jacobi-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn normalize_applies_antisymmetry() {
    let o = jacobi(&["normalize", "Y[a1,a2,a3] + Y[a2,a1,a3]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn bracket_json_has_rational_coefficients() {
    let o = jacobi(&["--format", "json", "bracket", "Y[a1,a2,b1]", "Y[b1,b2,a2]"]);
    assert!(o.status.success());
    let v = json(&o);
    let terms = v["terms"].as_array().unwrap();
    assert!(!terms.is_empty());
    assert!(terms.iter().all(|t| t["coeff"].as_str().unwrap().contains('/')));
}

#[test]
fn chi_round_trip_through_the_cli() {
    let o = jacobi(&["chi", "Y[a1,a2,b1]"]);
    let ordered = stdout(&o);
    let back = jacobi(&["chiinv", ordered.trim()]);
    assert_eq!(stdout(&back).trim(), "1/1*Y[a1,a2,b1]");
}

#[test]
fn parse_errors_exit_one_with_offset() {
    let o = jacobi(&["normalize", "Y[a1,a2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte"));
    let o = jacobi(&["--genus", "1", "normalize", "Y[a1,a2,b1]"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn caps_exit_two() {
    assert_eq!(jacobi(&["--genus", "4", "verify", "ker-b2"]).status.code(), Some(2));
    assert_eq!(jacobi(&["--no-cache", "dim", "--degree", "4"]).status.code(), Some(2));
    assert_eq!(jacobi(&["--genus", "9", "dim"]).status.code(), Some(2));
    assert_eq!(jacobi(&["--max-degree", "1", "--no-cache", "dim", "--degree", "2"]).status.code(), Some(2));
}

#[test]
fn t1_reports_theta_coefficient() {
    let o = jacobi(&["--format", "json", "verify", "t1", "--genus", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["values"]["theta_coefficient"]["got"], "-3/2");
}

#[test]
fn ker_b2_reports_dimensions() {
    let o = jacobi(&["--format", "json", "verify", "ker-b2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["values"]["kernel_dim"]["got"], 84);
    assert_eq!(v["values"]["kernel_dim"]["expected"], 84);
}

#[test]
fn verify_all_is_deterministic() {
    let a = jacobi(&["--format", "json", "verify", "all"]);
    let b = jacobi(&["--format", "json", "verify", "all", "--threads", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["checks"].as_array().unwrap().len(), 12);
}

#[test]
fn l2l3_at_genus_five() {
    let o = jacobi(&["--format", "json", "decompose", "--target", "l2l3", "--genus", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["values"]["total_dim"]["got"], "7140");
}

#[test]
fn decompose_a_partition() {
    let o = jacobi(&["--format", "json", "--genus", "2", "decompose", "--target", "lambda=1,1"]);
    let v = json(&o);
    // Λ²H = Γ_{ω2} ⊕ Γ_0 for g = 2
    let dims: Vec<(&str, i64)> = v["restriction"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["dim"].as_str().unwrap(), r["multiplicity"].as_i64().unwrap()))
        .collect();
    assert_eq!(dims, vec![("1", 1), ("5", 1)]);
}

#[test]
fn dimensions_use_the_cache() {
    let dir = scratch("cache");
    let d = dir.to_str().unwrap();
    let first = jacobi(&["--cache-dir", d, "dim", "--space", "Ac", "--degree", "2"]);
    assert_eq!(stdout(&first).lines().next(), Some("127"));
    assert!(std::fs::read_dir(&dir).unwrap().count() == 1);
    let again = jacobi(&["--cache-dir", d, "dim", "--space", "Ac", "--degree", "2"]);
    assert_eq!(first.stdout, again.stdout);
    let full = jacobi(&["--cache-dir", d, "dim", "--space", "A", "--degree", "2"]);
    assert_eq!(stdout(&full).trim(), "337");
    let closed = jacobi(&["--no-cache", "dim", "--space", "I", "--degree", "1"]);
    assert_eq!(stdout(&closed).trim(), "14");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn weights_from_builtin_and_file() {
    let o = jacobi(&["--genus", "1", "weight", "--lie", "abelian:2", "Theta"]);
    assert_eq!(stdout(&o).trim(), "0");
    let dir = scratch("lie");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("so3.json");
    std::fs::write(
        &file,
        r#"{"dim": 3, "brackets": [[0, 1, [[2, 1]]], [1, 2, [[0, 1]]], [2, 0, [[1, 1]]]], "form": [[1,0,0],[0,1,0],[0,0,1]]}"#,
    )
    .unwrap();
    let o = jacobi(&["--genus", "1", "--format", "json", "weight", "--lie", file.to_str().unwrap(), "Theta"]);
    assert!(o.status.success());
    let terms = json(&o)["terms"].as_array().unwrap().clone();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["t"], 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn export_b2_matrix() {
    let o = jacobi(&["export", "b2"]);
    let v = json(&o);
    assert_eq!(v["cols"].as_array().unwrap().len(), 190);
    let rows = v["rows"].as_array().unwrap().len();
    assert!(rows <= 127);
    for e in v["entries"].as_array().unwrap() {
        assert!(e[0].as_u64().unwrap() < rows as u64 && e[1].as_u64().unwrap() < 190);
    }
}
