use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn lieq(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lieq")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = lieq(args);
    (code, serde_json::from_str(&out).expect("stdout is JSON"))
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn secondary_product_is_not_coformal() {
    let (code, r) = report(&["coformal", &path("secondary.dgl"), "--deg-cutoff", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["coformal"], false);
    assert_eq!(r["result"]["n0"], 2);
    assert_eq!(r["cutoffs"]["deg"], 5);
    assert_eq!(r["cutoffs"]["filt"], 3, "the file's cutoff applies when no flag is given");
    assert_eq!(r["schema"], "lieq-report/1");
    assert!(r["conventions"]["n0"].as_str().unwrap().contains("r + 1"));
    assert!(r["conventions"]["cohomology"].as_str().unwrap().contains("M_{j+t}"));
    assert_eq!(r["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn homology_of_the_free_lie_algebra_on_an_even_generator() {
    let (code, r) = report(&["homology", &path("sphere2.dgl"), "--deg-cutoff", "6"]);
    assert_eq!(code, 0);
    let betti = r["result"]["betti"].as_object().unwrap();
    let nonzero: Vec<(&String, u64)> = betti.iter().map(|(k, v)| (k, v.as_u64().unwrap())).filter(|(_, v)| *v > 0).collect();
    assert_eq!(nonzero, vec![(&"2".to_string(), 1)]);
    assert_eq!(betti.len(), 6);
}

#[test]
fn square_zero_failure_names_the_generator() {
    let (code, r) = report(&["validate", &path("not_square_zero.dgl")]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "diagnostic");
    let d = &r["diagnostics"][0];
    assert_eq!(d["kind"], "square-zero");
    assert_eq!(d["generator"], "x");
    // Every other command refuses the same file.
    let (code, _) = report(&["homology", &path("not_square_zero.dgl")]);
    assert_eq!(code, 1);
}

#[test]
fn parse_diagnostics_carry_positions() {
    let (code, r) = report(&["validate", &path("degree_zero.dgl")]);
    assert_eq!(code, 1);
    let d = &r["diagnostics"][0];
    assert_eq!((d["kind"].as_str().unwrap(), d["line"].as_u64().unwrap(), d["column"].as_u64().unwrap()), ("connectedness", 3, 5));
    assert!(d["message"].as_str().unwrap().contains("connectedness"));

    let (code, r) = report(&["minimal-model", &path("bad_degree.dgl")]);
    assert_eq!(code, 1);
    let d = &r["diagnostics"][0];
    assert_eq!((d["kind"].as_str().unwrap(), d["line"].as_u64().unwrap()), ("degree", 7));

    let (code, _, err) = lieq(&["validate", &path("degree_zero.dgl")]);
    assert_eq!(code, 1);
    assert!(err.contains("degree_zero.dgl:3:5"), "{err}");
}

#[test]
fn missing_file_is_a_diagnostic() {
    let (code, r) = report(&["validate", "/nonexistent/file.dgl"]);
    assert_eq!(code, 1);
    assert_eq!(r["diagnostics"][0]["kind"], "io");
}

#[test]
fn truncation_exits_with_two() {
    let (code, r) = report(&["bigraded-model", &path("massey.dgl"), "--filt-cutoff", "1"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "cutoff-incomplete");
    assert!(!r["result"]["incomplete"].as_array().unwrap().is_empty());
    let (code, r) = report(&["bigraded-model", &path("massey.dgl")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verified"], true);
}

#[test]
fn relations_give_the_odd_abelian_model() {
    let (code, r) = report(&["bigraded-model", &path("odd_abelian.dgl"), "--deg-cutoff", "4"]);
    assert_eq!(code, 0);
    let gens = r["result"]["generators"].as_array().unwrap();
    let filt1: Vec<&Value> = gens.iter().filter(|g| g["bidegree"][0] == 1).collect();
    assert_eq!(filt1.len(), 1);
    assert_eq!(filt1[0]["bidegree"][1], 2);
    assert_eq!(filt1[0]["degree"], 3, "total degree");
    let a = gens.iter().find(|g| g["bidegree"][0] == 0).unwrap()["name"].as_str().unwrap().to_string();
    assert_eq!(filt1[0]["differential"], format!("[{a},{a}]"));
    // Relations are not a DGL.
    let (code, _) = report(&["homology", &path("odd_abelian.dgl")]);
    assert_eq!(code, 1);
}

#[test]
fn fixtures_round_trip() {
    let dir = std::env::temp_dir().join(format!("lieq-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["secondary.dgl", "massey.dgl", "sphere2.dgl", "disk.dgl", "odd_abelian.dgl"] {
        let (code, r) = report(&["validate", &path(name)]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(r["result"]["round_trip"], true, "{name}");
        let copy = dir.join(name);
        std::fs::write(&copy, r["result"]["normalized"].as_str().unwrap()).unwrap();
        let (code, again) = report(&["validate", &copy.display().to_string()]);
        assert_eq!(code, 0);
        assert_eq!(again["result"]["normalized"], r["result"]["normalized"], "{name}");
        assert_eq!(again["result"]["generators"], r["result"]["generators"], "{name}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_format_and_timing() {
    let out = std::env::temp_dir().join(format!("lieq-out-{}.txt", std::process::id()));
    let (code, stdout, _) = lieq(&["homology", &path("disk.dgl"), "--format", "text", "--out", &out.display().to_string()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).unwrap();
    assert!(text.contains("command: homology"));
    assert!(text.contains("status: ok"));

    let (_, plain) = report(&["homology", &path("disk.dgl")]);
    assert!(plain.get("timing").is_none());
    let (_, timed) = report(&["homology", &path("disk.dgl"), "--timing"]);
    assert!(timed["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn flags_override_file_cutoffs() {
    let (_, r) = report(&["homology", &path("massey.dgl"), "--deg-cutoff", "4"]);
    assert_eq!(r["cutoffs"]["deg"], 4);
    assert_eq!(r["cutoffs"]["simp"], 3);
    let (_, r) = report(&["homology", &path("sphere2.dgl")]);
    assert_eq!((r["cutoffs"]["deg"].as_u64(), r["cutoffs"]["filt"].as_u64(), r["cutoffs"]["simp"].as_u64()), (Some(8), Some(4), Some(4)));
}

#[test]
fn jacobi_check_on_a_linear_differential() {
    let (code, r) = report(&["jacobi-check", &path("disk.dgl"), "--deg-cutoff", "6"]);
    assert_eq!(code, 0);
    let f = &r["result"]["free_jacobi"];
    assert_eq!(f["square_zero"], true);
    assert_eq!(f["homology"]["jacobi"], true);
    assert!(f["theta"].as_array().unwrap().iter().all(|row| row["quasi_isomorphism"] == true));
    let (code, r) = report(&["jacobi-check", &path("secondary.dgl"), "--deg-cutoff", "5"]);
    assert_eq!(code, 0);
    assert!(r["result"]["free_jacobi"]["skipped"].is_string());
    assert_eq!(r["result"]["dgl"]["jacobi"], true);
}

#[test]
fn cohomology_follows_the_stated_convention() {
    let (code, r) = report(&["cohomology", &path("disk.dgl"), "--coefficients", "0:1,1:2"]);
    assert_eq!(code, 0);
    let cells = r["result"]["cells"].as_array().unwrap();
    // H_{0,2} is spanned by the sphere a; M lives in degrees 0 and 1.
    let at = |t: i64| cells.iter().find(|c| c["s"] == 0 && c["t"] == t).map(|c| c["dim"].as_u64().unwrap());
    assert_eq!(at(-2), Some(1));
    assert_eq!(at(-1), Some(2));
    let (code, _) = report(&["cohomology", &path("disk.dgl"), "--coefficients", "zero"]);
    assert_eq!(code, 1);
}
