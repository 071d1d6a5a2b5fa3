use std::path::PathBuf;
use std::process::{Command, Output};

fn quintic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quintic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("quintic-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn rmatrix_json_lists_entries_through_order() {
    let o = quintic(&["rmatrix", "--order-z", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    assert_eq!(v["data"]["kmax"], 5);
    let entries = v["data"]["entries"].as_array().expect("entries");
    let ks: std::collections::BTreeSet<u64> = entries.iter().map(|e| e["k"].as_u64().unwrap()).collect();
    assert_eq!(ks, (1..=5).collect());
    assert!(entries.iter().all(|e| e["poly"].as_array().is_some_and(|p| !p.is_empty())));
    // R1 row 0 sits in column 4 with coefficient -3/20 on L^-1 Z
    let r1 = entries.iter().find(|e| e["k"] == 1 && e["i"] == 0).expect("R1 row 0");
    assert_eq!(r1["j"], 4);
    assert_eq!(r1["poly"][0]["coeff"], "-3/20");
}

#[test]
fn json_output_is_deterministic() {
    let a = quintic(&["rmatrix", "--order-z", "4", "--json"]);
    let b = quintic(&["rmatrix", "--order-z", "4", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let a = quintic(&["graphs", "--kind", "bipartite", "--json"]);
    let b = quintic(&["graphs", "--kind", "bipartite", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bipartite_genus_two_writes_dot_files() {
    let dir = scratch("dot");
    let o = quintic(&["graphs", "--genus", "2", "--kind", "bipartite", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count: 6"));
    let dots: Vec<_> = std::fs::read_dir(&dir).unwrap().filter_map(|e| e.ok()).filter(|e| e.path().extension().is_some_and(|x| x == "dot")).collect();
    assert_eq!(dots.len(), 6);
    for d in dots {
        assert!(std::fs::read_to_string(d.path()).unwrap().starts_with("graph"));
    }
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn hae_writes_errata_ledger() {
    let dir = scratch("hae");
    let o = quintic(&["hae", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[DIAG]"));
    let ledger: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("errata.json")).unwrap()).unwrap();
    let items = ledger.as_array().expect("list");
    assert!(items.iter().any(|e| e["printed"] == "125/2" && e["computed"] == "125/12"));
    assert!(dir.join("hae.txt").exists());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn small_suites_pass() {
    for args in [vec!["series", "--order-q", "8"], vec!["ring", "--order-q", "6", "--degree", "3"], vec!["pf", "--order-z", "5"]] {
        let o = quintic(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(!stdout(&o).contains("[FAIL]"));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(quintic(&["bogus"]).status.code(), Some(2));
    assert_eq!(quintic(&["series", "--order-q", "x"]).status.code(), Some(2));
    assert_eq!(quintic(&["graphs", "--kind", "quadripartite"]).status.code(), Some(2));
    assert_eq!(quintic(&[]).status.code(), Some(2));
    assert_eq!(quintic(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_all_fails_only_on_the_genus_one_count() {
    let o = quintic(&["verify-all"]);
    let text = stdout(&o);
    let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("[FAIL]")).collect();
    assert_eq!(fails.len(), 1, "{fails:?}");
    assert!(fails[0].contains("bipartite genus 1, nu = (1)"));
    assert_eq!(o.status.code(), Some(1));
    assert!(text.contains("[DIAG]"));
}
