use std::path::PathBuf;
use std::process::Command;

use g2topo_cli::app::run;
use serde_json::Value;

fn g2topo(args: &[&str]) -> (i32, String, String) {
    run(std::iter::once("g2topo").chain(args.iter().copied()))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn embedded() -> &'static str {
    include_str!("../fixtures/tables.json")
}

#[test]
fn homology_json_for_g37() {
    let (code, out, _) = g2topo(&["homology", "--space", "grassmann+:3:7", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let torsion: Vec<Value> = v["homology"].as_array().unwrap().iter().map(|g| g["torsion"].clone()).collect();
    let ranks: Vec<u64> = v["homology"].as_array().unwrap().iter().map(|g| g["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 1]);
    for n in [2, 5, 6, 9] {
        assert_eq!(torsion[n], serde_json::json!([2]), "degree {n}");
    }
}

#[test]
fn homology_markdown_and_bad_space() {
    let (code, out, _) = g2topo(&["homology", "--space", "so3", "--markdown"]);
    assert_eq!(code, 0);
    assert!(out.contains("Z2"), "{out}");
    let (code, _, err) = g2topo(&["homology", "--space", "klein-bottle"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn replay_so4_fibration() {
    let (code, out, _) = g2topo(&["specseq", "replay", "so4-g2-ass", "--json"]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let solutions = v["solutions"].as_array().unwrap();
    assert!(!solutions.is_empty());
    for s in solutions {
        assert_eq!(s["total"][8]["torsion"], serde_json::json!([2]));
        assert_eq!(s["total"][9]["rank"], 0);
    }
}

#[test]
fn solve_from_problem_file() {
    let problem = scratch(
        "circle-over-g27.json",
        r#"{"fiber": "s1", "base": "?", "total": "v27"}"#,
    );
    let (code, out, err) = g2topo(&["specseq", "solve", problem.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["solutions"].as_array().unwrap().len(), 1);
}

#[test]
fn unknown_names_are_usage_errors() {
    assert_eq!(g2topo(&["frobnicate"]).0, 2);
    assert_eq!(g2topo(&["specseq", "replay", "no-such-replay"]).0, 2);
    assert_eq!(g2topo(&["report", "--only", "no-such-fixture"]).0, 2);
    assert_eq!(g2topo(&["g2", "classify", "--plane", "e1,e2"]).0, 2);
    assert_eq!(g2topo(&["--help"]).0, 0);
}

#[test]
fn single_table_report() {
    let (code, out, _) = g2topo(&["report", "--only", "g37", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["g37", "g37/duality"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn corrupted_fixture_names_the_failure() {
    let bad = embedded().replacen(
        r#""homology": [{"rank": 1, "torsion": []}, {"rank": 0, "torsion": []}, {"rank": 0, "torsion": [2]}, {"rank": 0, "torsion": []}, {"rank": 2"#,
        r#""homology": [{"rank": 1, "torsion": []}, {"rank": 0, "torsion": []}, {"rank": 0, "torsion": [2]}, {"rank": 0, "torsion": []}, {"rank": 3"#,
        1,
    );
    assert_ne!(bad, embedded(), "corruption pattern must match the g37 table");
    let path = scratch("corrupted_fixtures.json", &bad);
    let (code, out, _) = g2topo(&["--fixtures", path.to_str().unwrap(), "report", "--only", "g37", "--format", "json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"g37"), "{failed:?}");

    let out = Command::new(env!("CARGO_BIN_EXE_g2topo"))
        .args(["report", "--only", "g37"])
        .env("G2TOPO_FIXTURES", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("| g37 | FAIL"));
}

#[test]
fn malformed_fixture_file_is_rejected() {
    let path = scratch("wrong_version.json", &embedded().replacen(r#""version": 1"#, r#""version": 99"#, 1));
    let (code, _, err) = g2topo(&["--fixtures", path.to_str().unwrap(), "report"]);
    assert_eq!(code, 2);
    assert!(err.contains("version"), "{err}");
}

#[test]
fn binary_report_is_deterministic() {
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            let out = Command::new(env!("CARGO_BIN_EXE_g2topo"))
                .args(["report", "--format", "json"])
                .env_remove("G2TOPO_FIXTURES")
                .output()
                .unwrap();
            assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
            out.stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let v: Value = serde_json::from_slice(&runs[0]).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn sampled_checks_pass_for_other_seeds() {
    let (a, _, _) = g2topo(&["report", "--only", "calibration-identity", "--seed", "1"]);
    let (b, _, _) = g2topo(&["report", "--only", "calibration-identity", "--seed", "2"]);
    assert_eq!((a, b), (0, 0));
}

#[test]
fn plane_classes() {
    assert_eq!(g2topo(&["g2", "classify", "--plane", "e1,e2,e4"]).1.split_whitespace().next(), Some("hl"));
    assert_eq!(g2topo(&["g2", "classify", "--plane", "e1,e2,e3"]).1.split_whitespace().next(), Some("ass+"));
    assert_eq!(g2topo(&["g2", "classify", "--plane", "e2,e1,e3"]).1.split_whitespace().next(), Some("ass-"));
}

#[test]
fn flow_from_a_plane() {
    let (code, out, _) = g2topo(&["g2", "flow", "--start", "e1,e2,e4", "--dir", "down"]);
    assert_eq!(code, 0);
    let phi: f64 = out.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!(phi <= -1.0 + 1e-8, "{out}");
}

#[test]
fn hl_pair_exit_codes() {
    assert_eq!(g2topo(&["g2", "hl-pair", "--p1", "0", "--euler", "2"]).0, 0);
    assert_eq!(g2topo(&["g2", "hl-pair", "--p1", "0", "--euler", "0"]).0, 1);
}

#[test]
fn ring_dims_and_homomorphisms() {
    let cubic = scratch("cubic.json", r#"{"coeff": "Z", "gens": [["d", 4]], "rels": ["d^3"]}"#);
    let square = scratch("square.json", r#"{"coeff": "Z", "gens": [["x", 4]], "rels": ["x^2"]}"#);
    let (code, out, _) = g2topo(&["ring", "dims", cubic.to_str().unwrap(), "--cutoff", "9", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let ranks: Vec<u64> = v.as_array().unwrap().iter().map(|g| g["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [1, 0, 0, 0, 1, 0, 0, 0, 1, 0]);

    let onto = scratch("d_to_x.json", r#"{"images": {"d": "x"}}"#);
    let into = scratch("x_to_d.json", r#"{"images": {"x": "d"}}"#);
    let (c, s) = (cubic.to_str().unwrap(), square.to_str().unwrap());
    // d^3 = 0 maps to x^3 = 0; x^2 = 0 would have to map to d^2 ≠ 0
    assert_eq!(g2topo(&["ring", "hom", c, s, onto.to_str().unwrap()]).0, 0);
    assert_eq!(g2topo(&["ring", "hom", s, c, into.to_str().unwrap()]).0, 1);
}
