use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use ecctree::enumeration::canonical_code;
use ecctree::FamilySpec;
use serde_json::Value;

fn ecctree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecctree")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = ecctree(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&ok(&all)).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

fn code_of(spec: FamilySpec) -> String {
    canonical_code(&spec.build().unwrap())
}

#[test]
fn star_energy() {
    let v = json(&["spectrum", "star:n=5"]);
    assert_eq!(v["schema"], 1);
    assert!(v["command"].as_str().unwrap().starts_with("ecctree spectrum star:n=5"));
    assert_eq!(v["inputs"]["source"], "family");
    let s = &v["results"]["summary"];
    let energy = 2.0 * (3.0 + 13f64.sqrt());
    assert!((s["energy"].as_f64().unwrap() - energy).abs() < 1e-9);
    assert!(ok(&["spectrum", "star:n=5"]).contains("energy: 13.2111025509\n"));
    assert_eq!(s["inertia"], serde_json::json!([1, 4, 0]));
}

#[test]
fn path_spectrum_from_family_string() {
    let v = json(&["spectrum", "odd:n=4,d=3,a=0,b=0"]);
    assert_eq!(floats(&v["results"]["summary"]["spectrum"]), vec![4.0, 1.0, -1.0, -4.0]);
    assert!(ok(&["spectrum", "odd:n=4,d=3,a=0,b=0"]).contains("spectrum: 4, 1, -1, -4\n"));
}

#[test]
fn edge_list_matches_family_form() {
    let p4 = scratch("p4.txt", "# P4\n0 1\n1 2\n2 3\n");
    let p4 = p4.to_str().unwrap();
    for format in ["text", "csv"] {
        let a = ok(&["spectrum", p4, "--matrix", "--format", format]);
        let b = ok(&["spectrum", "odd:n=4,d=3,a=0,b=0", "--matrix", "--format", format]);
        assert_eq!(a, b, "{format}");
    }
    let a = json(&["spectrum", p4, "--matrix"]);
    let b = json(&["spectrum", "path:n=4", "--matrix"]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["inputs"]["source"], "edge-list");
}

#[test]
fn exported_edge_lists_round_trip() {
    for family in ["star:n=6", "odd:n=8,d=5,a=1,b=1", "even:n=9,d=6,a=1,b=0,c=1", "odd:n=12,d=7,a=1,b=3"] {
        let text = ok(&["export", family]);
        let file = scratch(&format!("{}.txt", family.replace([':', ',', '='], "_")), &text);
        let file = file.to_str().unwrap();
        for format in ["text", "csv"] {
            assert_eq!(
                ok(&["spectrum", file, "--matrix", "--format", format]),
                ok(&["spectrum", family, "--matrix", "--format", format]),
                "{family} {format}"
            );
        }
        assert_eq!(json(&["spectrum", file])["results"], json(&["spectrum", family])["results"]);
    }
    let out = scratch("unused.txt", "");
    ok(&["export", "star:n=4", "--output", out.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&out).unwrap(), "n 4\n0 1\n0 2\n0 3\n");
}

#[test]
fn verify_typos_names_the_matching_constant() {
    let text = ok(&["verify", "typos"]);
    assert!(text.contains("K = 37893 (max error"));
    assert!(text.contains("corrected form matches"));
    assert_eq!(text, ok(&["verify", "typos"]));
    let v = json(&["verify", "typos"]);
    let rows = v["results"]["discrepancies"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let t7 = rows.iter().find(|r| r["id"] == "t7-constant").unwrap();
    assert_eq!(t7["corrected"], "K = 37893");
    assert_eq!(t7["verdict"], "corrected");
    assert!(rows.iter().all(|r| r["verdict"] == "corrected"));
}

#[test]
fn verify_passes_over_ranges() {
    for (check, range, rows) in [("energy-min", "5..11", 7), ("inertia", "4..12", 9), ("xi2-min", "5..=9", 5)] {
        let v = json(&["verify", check, range]);
        let checks = v["results"]["checks"].as_array().unwrap();
        assert_eq!(checks.len(), rows, "{check}");
        assert!(checks.iter().all(|r| r["pass"] == true), "{check}");
        assert_eq!(v["results"]["summary"]["status"], "pass");
    }
    for check in ["orderings", "prior", "bounds"] {
        assert_eq!(json(&["verify", check])["results"]["summary"]["failed"], 0, "{check}");
    }
}

#[test]
fn quotient_of_equitable_partition() {
    let tree = scratch("t85.txt", &ok(&["export", "odd:n=8,d=5,a=1,b=1"]));
    let pi = scratch("pi1.txt", "# cells\n0\n1 6\n2\n3\n4 7\n5\n");
    let v = json(&["quotient", tree.to_str().unwrap(), pi.to_str().unwrap()]);
    let s = &v["results"]["summary"];
    assert_eq!(s["equitable"], true);
    assert_eq!(s["spectrum_contained"], true);
    assert_eq!(s["factored"], "x^2 (x^4 - 107x^2 + 1681)");
    assert_eq!(v["results"]["quotient_matrix"][0], serde_json::json!(["0", "0", "0", "3", "8", "5"]));

    let single = scratch("single.txt", "0\n1\n2\n3\n4\n5\n6\n7\n");
    let v = json(&["quotient", tree.to_str().unwrap(), single.to_str().unwrap()]);
    let s = &v["results"]["summary"];
    assert_eq!(s["equitable"], true);
    assert!(s["characteristic_polynomial"].as_str().unwrap().starts_with("x^8 "));
    assert_eq!(s["factored"], "x^4 (x^4 - 107x^2 + 1681)");

    let coarse = scratch("coarse.txt", "0\n1\n2 3 4\n5\n6 7\n");
    let v = json(&["quotient", tree.to_str().unwrap(), coarse.to_str().unwrap()]);
    assert_eq!(v["results"]["summary"]["equitable"], false);
    assert_eq!(v["results"]["summary"]["spectrum_contained"], Value::Null);
}

#[test]
fn overlapping_cells_are_rejected() {
    let tree = scratch("t85b.txt", &ok(&["export", "odd:n=8,d=5,a=1,b=1"]));
    let bad = scratch("overlap.txt", "0 1\n1 2\n2 3 6\n3 7\n4\n5\n");
    let out = ecctree(&["quotient", tree.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("appears twice"), "{}", stderr(&out));
}

#[test]
fn enumerate_examples() {
    let csv = ok(&["enumerate", "8", "--statistic", "energy", "--top", "3", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "rank,code,diameter,value");
    assert_eq!(lines[1], format!("1,{},3,18.6428049199", code_of(FamilySpec::odd(3, 0, 4))));

    let v = json(&["enumerate", "7", "--statistic", "xi2", "--exclude-star", "--top", "1"]);
    let rows = v["results"]["ranking"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["code"], code_of(FamilySpec::odd(3, 0, 3)));

    let v = json(&["enumerate", "4", "--top", "2"]);
    let rows = v["results"]["ranking"].as_array().unwrap();
    assert_eq!(rows[0]["code"], code_of(FamilySpec::Star { n: 4 }));
    assert!((rows[0]["value"].as_f64().unwrap() - 2.0 * (2.0 + 7f64.sqrt())).abs() < 1e-9);
    assert_eq!(rows[1]["code"], code_of(FamilySpec::Path { n: 4 }));
    assert_eq!(rows[1]["value"], 10.0);
}

#[test]
fn worker_count_does_not_change_results() {
    let args = ["enumerate", "11", "--statistic", "xi1", "--top", "5", "--format", "csv"];
    let one = ok(&[&args[..], &["--jobs", "1"]].concat());
    let three = ok(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(one, three);
    assert_eq!(one, ok(&args));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| ecctree(args).status.code();
    assert_eq!(code(&["enumerate", "17"]), Some(2));
    assert_eq!(code(&["--cap", "19", "enumerate", "5"]), Some(2));
    assert_eq!(code(&["verify", "inertia", "4..17"]), Some(2));
    assert_eq!(code(&["verify", "inertia", "2..5"]), Some(2));
    assert_eq!(code(&["verify", "typos", "5..6"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["spectrum", "no-such-file.txt"]), Some(2));
    assert_eq!(code(&["--jobs", "0", "enumerate", "5"]), Some(2));
    assert_eq!(code(&["--tol", "-1", "spectrum", "star:n=5"]), Some(2));

    let out = ecctree(&["spectrum", "odd:n=9,d=5,a=1,b=1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("n - d - 1"), "{}", stderr(&out));
    let out = ecctree(&["spectrum", "odd:n=8,d=5,a=1,q=1"]);
    assert!(stderr(&out).contains("unknown parameter `q`"), "{}", stderr(&out));

    let broken = scratch("broken.txt", "0 1\n1 x\n");
    let out = ecctree(&["spectrum", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let out = ecctree(&["--tol", "100", "verify", "inertia", "4..6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("status: fail"));
}
