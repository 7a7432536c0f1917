use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../core/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn cofil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cofil")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn cofiltration_on_square() {
    let out = cofil(&["cofiltration", &fixture("square_3x3.filt")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], "cofil-report/1");
    assert_eq!(r["complement_monotone"], true);
    let grades = r["grades"].as_array().unwrap();
    assert_eq!(grades.len(), 9);
    let g11 = grades.iter().find(|g| g["grade"] == "1,1").unwrap();
    assert_eq!(g11["tree"], serde_json::json!(["1 2", "1 3", "2 4"]));
    assert_eq!(g11["complement"], serde_json::json!(["3 4"]));
}

#[test]
fn subfiltration_absent_on_square() {
    let out = cofil(&["subfiltration", &fixture("square_3x3.filt")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["exists"], false);
}

#[test]
fn subfiltration_present_on_constant_input() {
    let out = cofil(&["subfiltration", &fixture("hollow_triangle.filt")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["exists"], true);
}

#[test]
fn homology_of_hollow_triangle_over_q() {
    let out = cofil(&["homology", "--coeff", "q", &fixture("hollow_triangle.filt")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["ring"], "q");
    assert_eq!(r["grades"][0]["groups"][1]["rank"], 1);
}

#[test]
fn precover_rank_table() {
    for coeff in ["z", "q", "zp:2"] {
        let out = cofil(&["precover", "--coeff", coeff, &fixture("square_3x3.filt")]);
        assert_eq!(out.status.code(), Some(0));
        let r = json(&out);
        assert_eq!(r["epimorphism"], true);
        assert_eq!(r["summands"].as_array().unwrap().len(), 3);
        let top = r["ranks"].as_array().unwrap().iter().find(|g| g["grade"] == "2,2").unwrap().clone();
        assert_eq!((top["precover_rank"].as_u64(), top["image_rank"].as_u64(), top["z1_rank"].as_u64()), (Some(3), Some(2), Some(2)));
    }
}

#[test]
fn tree_span_and_verify() {
    let out = cofil(&["tree", "--grade", "0,2", &fixture("square_3x3.filt")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["tree"], serde_json::json!(["1 2", "1 4"]));

    let out = cofil(&["span-n", "--n", "2", &fixture("hollow_tetrahedron.filt")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["kept"].as_array().unwrap().len(), 3);
    assert_eq!(r["verified"], true);

    for name in ["square_3x3.filt", "hollow_triangle.filt", "hollow_tetrahedron.filt"] {
        let out = cofil(&["verify", &fixture(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(json(&out)["passed"], true);
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for cmd in ["tree", "cofiltration", "subfiltration", "precover", "span-n", "homology", "verify"] {
        let a = cofil(&[cmd, &fixture("square_3x3.filt")]);
        let b = cofil(&[cmd, &fixture("square_3x3.filt")]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn errors_exit_with_one() {
    assert_eq!(cofil(&["tree", "/nonexistent.filt"]).status.code(), Some(1));
    assert_eq!(cofil(&["frobnicate", &fixture("square_3x3.filt")]).status.code(), Some(1));
    assert_eq!(cofil(&["tree", "--coeff", "zp:4", &fixture("square_3x3.filt")]).status.code(), Some(1));
    assert_eq!(cofil(&["tree", "--grade", "9,9", &fixture("square_3x3.filt")]).status.code(), Some(1));

    let dir = std::env::temp_dir().join(format!("cofil-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.filt");
    std::fs::write(&bad, "filtration v1\nposet grid 2\nvertices u v\nsimplex u : 0\nsimplex v : 1\nsimplex u v : 0\n").unwrap();
    let out = cofil(&["tree", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 6") && err.contains("`v`") && err.contains("`u v`"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn span_n_flags_unverified_complexes() {
    let file = fixture("projective_plane_glued.filt");
    let out = cofil(&["span-n", "--n", "2", &file]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["verified"], false);
    assert_eq!(r["excluded"], serde_json::json!(["1 2 4"]));

    let out = cofil(&["span-n", "--n", "2", "--coeff", "q", &file]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verified"], true);

    let out = cofil(&["verify", &file]);
    assert_eq!(out.status.code(), Some(2));
    let failed: Vec<Value> = json(&out)["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].clone())
        .collect();
    assert_eq!(failed, vec![Value::from("spanning complexes")]);
}
