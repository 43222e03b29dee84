use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn schur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schur")).args(args).output().unwrap()
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn fixture(name: &str) -> String {
    fixtures_dir().join(name).to_str().unwrap().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("schur-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_human_and_json_agree() {
    let path = fixture("sample_g.json");
    let human = text(&schur(&["analyze", "--input", &path]));
    let v = stdout_json(&schur(&["analyze", "--input", &path, "--json"]));
    assert!(human.contains("M = p^23, H2 = p^29"), "{human}");
    assert!(human.contains("psi(U) = 12, psi(U/rad) = 8"));
    assert!(human.contains("delta = 5"));
    assert_eq!(v["bounds"]["thm33"]["effective"], 25);
    assert_eq!(v["bounds"]["ew_chain"]["effective"], 23);
    assert_eq!(v["graph"]["tree_of_height_one"], false);
    assert_eq!(v["capability"]["verdict"], "capable");
}

#[test]
fn analyze_is_deterministic_and_honours_order() {
    let path = fixture("four_pair.json");
    let strip = |v: Value| {
        let mut v = v;
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let a = strip(stdout_json(&schur(&["analyze", "--input", &path, "--json"])));
    let b = strip(stdout_json(&schur(&["analyze", "--input", &path, "--json"])));
    assert_eq!(a, b);
    let pairs: Vec<Value> = a["pair_basis"]["pairs"].as_array().unwrap().clone();
    assert_eq!(pairs.len(), 4);
    assert_eq!(pairs[0], serde_json::json!([1, 2]));

    let c = strip(stdout_json(&schur(&["analyze", "--input", &path, "--order", "5,4,3,2,1", "--json"])));
    assert_eq!(c["input"]["order"], serde_json::json!([5, 4, 3, 2, 1]));
    assert_eq!(c["exact"], a["exact"]);
    assert_eq!(schur(&["analyze", "--input", &path, "--order", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn malformed_input_exits_two_and_names_the_field() {
    let dir = scratch("malformed");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"p": 3, "dimU": 3, "dimV": 1, "entries": [{"i": 1, "j": 2, "value": [1, 0]}]}"#).unwrap();
    let out = schur(&["analyze", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("{1,2}") && err.contains("dimV"), "{err}");

    std::fs::write(&bad, r#"{"p": 4, "dimU": 3, "dimV": 1, "entries": []}"#).unwrap();
    let err = String::from_utf8_lossy(&schur(&["analyze", "--input", bad.to_str().unwrap()]).stderr).to_string();
    assert!(err.contains("modulus 4"), "{err}");

    std::fs::write(&bad, r#"{"p": 3, "dimU": 3}"#).unwrap();
    let out = schur(&["analyze", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimV"));

    assert_eq!(schur(&["analyze", "--input", "/nonexistent/map.json"]).status.code(), Some(2));
}

#[test]
fn bounds_rows_and_boundary_flag() {
    let v = stdout_json(&schur(&[
        "bounds", "--p", "3", "--n", "39", "--d", "8", "--delta", "8", "--k", "29", "--kprime", "28", "--json",
    ]));
    assert_eq!(v["thm33"]["effective"], 182);
    assert_eq!(v["rai_ineq4"]["effective"], 217);
    // delta = kprime + 1
    let v = stdout_json(&schur(&[
        "bounds", "--p", "3", "--n", "9", "--d", "5", "--delta", "5", "--k", "4", "--kprime", "4", "--json",
    ]));
    assert_eq!(v["thm33_eq_ineq4"], true);
    let out = schur(&["bounds", "--p", "3", "--n", "9", "--d", "5", "--delta", "6", "--k", "4", "--kprime", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = schur(&["bounds", "--p", "6", "--n", "9", "--d", "5", "--delta", "5", "--k", "4", "--kprime", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_writes_map_and_presentation() {
    let dir = scratch("construct");
    let out_path = dir.join("g.json");
    let v = stdout_json(&schur(&[
        "construct", "--p", "3", "--d", "6", "--delta", "6", "--k", "11", "--out", out_path.to_str().unwrap(), "--json",
    ]));
    assert_eq!(v["schur_multiplier"], v["thm33"]);
    assert_eq!(v["invariants"]["n"], 17);
    let map = schur_core::parse_altmap(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!((map.dim_u(), map.dim_v()), (6, 11));
    let pres = std::fs::read_to_string(dir.join("g.txt")).unwrap();
    let g = schur_core::grouplab::parse_presentation(&pres).unwrap();
    assert_eq!(g.map(), &map);

    let heis = dir.join("h.json");
    let v = stdout_json(&schur(&[
        "construct", "--p", "3", "--d", "3", "--delta", "3", "--k", "3", "--out", heis.to_str().unwrap(), "--json",
    ]));
    assert_eq!(v["schur_multiplier"], 8);

    let bad = schur(&["construct", "--p", "3", "--d", "5", "--delta", "4", "--k", "2", "--out", heis.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    let clash = dir.join("x.txt");
    let out = schur(&["construct", "--p", "3", "--d", "3", "--delta", "3", "--k", "3", "--out", clash.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_ignores_parallelism() {
    let grid = "soundness:p=3,5;n=2..6;m=1..6;seed=0..3";
    let one = text(&schur(&["sweep", "--grid", grid, "--parallel", "1", "--json"]));
    let many = text(&schur(&["sweep", "--grid", grid, "--parallel", "8", "--json"]));
    assert_eq!(one, many);
    let v: Value = serde_json::from_str(&one).unwrap();
    assert_eq!(v["violations"], 0);

    let v = stdout_json(&schur(&["sweep", "--grid", "ordering:d=2..12", "--json"]));
    assert_eq!(v["violations"], 0);
    let v = stdout_json(&schur(&["sweep", "--grid", "sharpness", "--json"]));
    assert_eq!((v["cases"].as_u64(), v["violations"].as_u64()), (Some(150), Some(0)));
}

#[test]
fn sweep_edge_cases() {
    let out = schur(&["sweep", "--grid", ""]);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out).contains("cases: 0, violations: 0"));
    for bad in ["ordering:d=2..", "ordering:x=3", "nothing", "sharpness:p=4"] {
        assert_eq!(schur(&["sweep", "--grid", bad]).status.code(), Some(2), "{bad}");
    }
}

#[test]
fn triangles_small_cases() {
    let v = stdout_json(&schur(&["triangles", "--edges", "10", "--json"]));
    assert_eq!(v["formula"], 10);
    assert_eq!(v["extremal_edges"].as_array().unwrap().len(), 10);
    let v = stdout_json(&schur(&["triangles", "--edges", "8", "--oracle", "--json"]));
    assert_eq!((v["formula"].as_u64(), v["oracle"].as_u64()), (Some(5), Some(5)));
    let v = stdout_json(&schur(&["triangles", "--edges", "0", "--json"]));
    assert_eq!(v["formula"], 0);
    let out = schur(&["triangles", "--edges", "20", "--oracle", "--max-vertices", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("work cap"));
}

fn copy_fixtures(to: &Path) {
    for entry in std::fs::read_dir(fixtures_dir()).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), to.join(entry.file_name())).unwrap();
    }
}

#[test]
fn verify_paper_passes_and_detects_corruption() {
    let out = schur(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0));
    let listing = text(&out);
    assert_eq!(listing.matches("documented-mismatch").count(), 2);
    assert!(!listing.contains("FAIL"));

    let v = stdout_json(&schur(&["verify-paper", "--json"]));
    assert_eq!(v["failed"], 0);
    assert_eq!(v["documented_mismatches"], 2);

    let dir = scratch("store");
    copy_fixtures(&dir);
    let out = schur(&["verify-paper", "--fixtures", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let table = dir.join("comparison_table.json");
    let corrupted = std::fs::read_to_string(&table).unwrap().replace("\"thm33\": 89", "\"thm33\": 90");
    std::fs::write(&table, corrupted).unwrap();
    std::fs::remove_file(dir.join("five_pair.json")).unwrap();
    let out = schur(&["verify-paper", "--fixtures", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(text(&out).matches("FAIL").count(), 2);
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(schur(&["--help"]).status.code(), Some(0));
    assert_eq!(schur(&["sweep", "--help"]).status.code(), Some(0));
    assert_eq!(schur(&[]).status.code(), Some(2));
    assert_eq!(schur(&["bounds", "--p", "3"]).status.code(), Some(2));
    assert_eq!(schur(&["frobnicate"]).status.code(), Some(2));
}
