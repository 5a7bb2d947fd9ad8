use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superbider")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run(&a);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

#[test]
fn list_shows_hv_super() {
    let o = run(&["list"]);
    assert!(o.status.success());
    let line = stdout(&o).lines().find(|l| l.starts_with("hv-super")).unwrap().to_string();
    assert!(line.contains("G odd on Z+1/2"), "{line}");
    let v = json(&["list"]);
    let arr = v.as_array().unwrap();
    assert!(arr.iter().any(|e| e["name"] == "density-Fsuper"));
    let hv = arr.iter().find(|e| e["name"] == "hv-super").unwrap();
    assert!(hv["families"].as_array().unwrap().iter().any(|f| f["name"] == "G" && f["lattice"] == "Z+1/2"));
}

#[test]
fn check_examples_pass() {
    for args in [
        &["check", "--algebra", "virasoro", "-N", "8"][..],
        &["check", "--algebra", "w0b", "--param", "b=3/2", "-N", "6"],
        &["check", "--algebra", "sw22", "-N", "4"],
        &["check", "--algebra", "svir-ramond", "--module", "density-Fsuper", "--param", "b=1/2", "-N", "4"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains("pass"));
    }
    let v = json(&["check", "--algebra", "sw22", "-N", "4"]);
    assert_eq!(v["status"], "pass");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["failures"] == 0));
}

#[test]
fn bider_skew_density() {
    let v = json(&["bider", "--algebra", "virasoro", "--module", "density-F", "--param", "b=-1", "--symmetry", "skew", "-N", "6", "-K", "2"]);
    assert_eq!(v["interior_dimension"], 1);
    assert_eq!(v["window"]["N_int"], "2");
    let comps = v["basis"][0]["components"].as_array().unwrap();
    assert!(comps.iter().any(|c| c["pair"] == "L,L" && c["rule"] == "(m-n) v_{m+n}"));
    assert_eq!(v["basis"][0]["normalized"], true);
}

#[test]
fn bider_hv_super_family() {
    let v = json(&["bider", "--algebra", "hv-super", "--adjoint", "--symmetry", "symmetric", "-N", "5", "-K", "2"]);
    assert_eq!(v["interior_dimension"], 5);
    let fams = v["families"].as_array().unwrap();
    assert_eq!(fams.len(), 1);
    assert_eq!(fams[0]["rule"], "H_{m+n+k}");
    for b in v["basis"].as_array().unwrap() {
        for c in b["components"].as_array().unwrap() {
            assert_eq!(c["pair"], "L,L");
            assert_eq!(c["output_family"], "H");
        }
    }
}

#[test]
fn bider_n2_is_zero() {
    let v = json(&["bider", "--algebra", "n2-ramond", "--adjoint", "--symmetry", "symmetric", "-N", "5", "-K", "2"]);
    assert_eq!(v["interior_dimension"], 0);
}

#[test]
fn postlie_hv_super_witness() {
    let v = json(&["postlie", "--algebra", "hv-super", "-N", "5", "-K", "2"]);
    assert_eq!(v["interior_dimension"], 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["obstruction"]["quadratic_vanishes"], true);
    let w = v["witnesses"].as_array().unwrap();
    assert!(w.iter().any(|s| s.as_str().unwrap().starts_with("(L_2, L_1, L_3)")), "{w:?}");
}

#[test]
fn postlie_svir_and_w00() {
    let v = json(&["postlie", "--algebra", "svir-ramond", "-N", "5", "-K", "2"]);
    assert_eq!(v["interior_dimension"], 0);
    let o = run(&["postlie", "--algebra", "w0b", "--param", "b=0", "-N", "4", "-K", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not asserted"));
    let v = json(&["postlie", "--algebra", "w0b", "--param", "b=0", "-N", "4", "-K", "1"]);
    assert_eq!(v["obstruction"]["asserted"], false);
    assert_eq!(v["interior_dimension"], 0);
}

#[test]
fn verify_paper_t33_b1() {
    let o = run(&["verify-paper", "--case", "T3.3", "--param", "b=1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["verify-paper", "--case", "T3.3", "--param", "b=1"]);
    assert_eq!(v["status"], "pass");
    let s = &v["cases"][0]["samples"][0];
    assert_eq!(s["status"], "pass");
    assert!(s["families"].as_array().unwrap().iter().any(|f| f["rule"] == "(m+n+k) v_{m+n+k}"));
}

#[test]
fn unknown_case_exits_2() {
    let o = run(&["verify-paper", "--case", "NOPE"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown case"));
}

#[test]
fn float_param_rejected() {
    let o = run(&["bider", "--algebra", "virasoro", "--module", "density-F", "--param", "b=0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_algebra_exits_2() {
    let o = run(&["bider", "--algebra", "nope", "--adjoint"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = ["centroid", "--algebra", "virasoro", "--module", "density-F", "--param", "b=-1", "--json", "--out"];
    let mut a = args.to_vec();
    a.push(path.to_str().unwrap());
    let o = run(&a);
    assert!(o.status.success());
    let written = std::fs::read(&path).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&written).unwrap();
    assert_eq!(v["interior_dimension"], 1);
    assert_eq!(v["schema_version"], 1);
    assert!(v["elapsed_ms"].is_null());
}

#[test]
fn json_is_deterministic() {
    let args = ["bider", "--algebra", "svir-ramond", "--module", "density-Fsuper", "--param", "b=-1", "--symmetry", "skew", "-N", "5", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

/// Full default suite, expected 14/14 with exit 0.
#[test]
fn verify_paper_full_suite() {
    let o = run(&["verify-paper"]);
    let out = stdout(&o);
    assert!(out.contains("14/14 cases pass"), "{}", out.lines().last().unwrap_or(""));
    assert_eq!(o.status.code(), Some(0));
}
