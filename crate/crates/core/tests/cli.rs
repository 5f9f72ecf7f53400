use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bundlex::cli::{run_with, ExtensionFile, ReportFile, SpecFile, EXIT_BAD_INPUT, EXIT_OK, EXIT_VERIFY_FAILED};
use serde_json::Value;
use tempfile::TempDir;

fn bundlex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bundlex"))
        .env_remove("BUNDLEX_SEED")
        .args(args)
        .output()
        .unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn example(dir: &TempDir, name: &str, k: Option<&str>) -> PathBuf {
    let out = dir.path().join(format!("{name}{}.json", k.unwrap_or("")));
    let mut args = vec!["example", name];
    if let Some(k) = k {
        args.extend(["--k", k]);
    }
    args.extend(["--out", p(&out)]);
    assert_eq!(bundlex(&args).status.code(), Some(EXIT_OK));
    out
}

fn report_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn skoda_verifies_and_report_is_well_formed() {
    let dir = TempDir::new().unwrap();
    let spec = example(&dir, "skoda", None);
    let rep = dir.path().join("r.json");
    let out = bundlex(&["verify", "--spec", p(&spec), "--samples", "200", "--report", p(&rep)]);
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&rep).unwrap();
    assert!(text.ends_with('\n'));
    let file: ReportFile = serde_json::from_str(&text).unwrap();
    assert!(file.pass && file.is_consistent());
    assert_eq!(file.samples, 200);
    assert_eq!(file.seed, 42);
    assert!(file.report.records.iter().any(|r| r.identity == "restriction" && r.pass));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let dir = TempDir::new().unwrap();
    let spec = example(&dir, "demailly", Some("2"));
    let mut reports = Vec::new();
    for name in ["a.json", "b.json"] {
        let rep = dir.path().join(name);
        let out = bundlex(&["verify", "--spec", p(&spec), "--samples", "50", "--report", p(&rep)]);
        assert_eq!(out.status.code(), Some(EXIT_OK));
        let mut v = report_json(&rep);
        v.as_object_mut().unwrap().remove("timing");
        reports.push(v);
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn seed_comes_from_flag_then_environment() {
    let dir = TempDir::new().unwrap();
    let spec = example(&dir, "skoda", None);
    let rep = dir.path().join("r.json");
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_bundlex"));
        cmd.env_remove("BUNDLEX_SEED");
        if let Some(v) = env {
            cmd.env("BUNDLEX_SEED", v);
        }
        cmd.args(["verify", "--spec", p(&spec), "--samples", "20", "--report", p(&rep)])
            .args(extra);
        let status = cmd.status().unwrap().code();
        (status, report_json(&rep)["seed"].as_u64())
    };
    assert_eq!(run(Some("7"), &[]), (Some(EXIT_OK), Some(7)));
    assert_eq!(run(Some("7"), &["--seed", "9"]), (Some(EXIT_OK), Some(9)));
    assert_eq!(run(None, &[]), (Some(EXIT_OK), Some(42)));
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bundlex"));
    cmd.env("BUNDLEX_SEED", "seven")
        .args(["verify", "--spec", p(&spec), "--report", p(&rep)]);
    assert_eq!(cmd.output().unwrap().status.code(), Some(EXIT_BAD_INPUT));
}

#[test]
fn spec_file_roundtrips_through_extend() {
    let dir = TempDir::new().unwrap();
    let spec = example(&dir, "demailly", Some("3"));
    let text = std::fs::read_to_string(&spec).unwrap();
    let file: SpecFile = serde_json::from_str(&text).unwrap();
    assert_eq!(file.word_order, "application");
    let again = serde_json::to_string_pretty(&SpecFile::from_spec(&file.clone().into_spec().unwrap())).unwrap();
    assert_eq!(again.trim_end(), text.trim_end());

    let ext = dir.path().join("ext.json");
    assert_eq!(bundlex(&["extend", "--spec", p(&spec), "--out", p(&ext)]).status.code(), Some(EXIT_OK));
    let ext: ExtensionFile = serde_json::from_str(&std::fs::read_to_string(ext).unwrap()).unwrap();
    assert_eq!(ext.bundle.restriction(), file.into_spec().unwrap().gap_words);
}

#[test]
fn layout_lists_holes_collars_and_sub_holes() {
    let dir = TempDir::new().unwrap();
    let spec = example(&dir, "demailly", Some("2"));
    let csv_path = dir.path().join("layout.csv");
    assert_eq!(bundlex(&["layout", "--spec", p(&spec), "--out", p(&csv_path)]).status.code(), Some(EXIT_OK));
    let csv = std::fs::read_to_string(csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("kind,site,sub,center_re,center_im,radius"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().all(|r| r.len() == 6));
    let count = |kind: &str| rows.iter().filter(|r| r[0] == kind).count();
    assert_eq!(count("outer_boundary"), 1);
    assert_eq!(count("hole"), 1);
    assert!(count("sub_hole") >= 2);
    // The unit hole at 0 has radius 1; its sub-holes have radius 1/4.
    let hole = rows.iter().find(|r| r[0] == "hole").unwrap();
    assert!((hole[5].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
    for r in rows.iter().filter(|r| r[0] == "sub_hole" && r[1] == hole[1]) {
        assert!((r[5].parse::<f64>().unwrap() - 0.25).abs() < 1e-12);
        assert!(r[3].parse::<f64>().unwrap().abs() < 1.0);
    }
}

#[test]
fn malformed_input_exits_with_bad_input() {
    let dir = TempDir::new().unwrap();
    let rep = dir.path().join("r.json");
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"format\": \"bundlex-spec\"").unwrap();
    let missing = dir.path().join("missing.json");

    let spec = example(&dir, "skoda", None);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&spec).unwrap()).unwrap();
    v["gap_words"].as_array_mut().unwrap().pop();
    let short = dir.path().join("short.json");
    std::fs::write(&short, v.to_string()).unwrap();
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&spec).unwrap()).unwrap();
    v["surprise"] = Value::from(1);
    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, v.to_string()).unwrap();

    for bad in [&junk, &missing, &short, &unknown] {
        let out = bundlex(&["verify", "--spec", p(bad), "--report", p(&rep)]);
        assert_eq!(out.status.code(), Some(EXIT_BAD_INPUT), "{}", bad.display());
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    }
    let cases: [&[&str]; 4] = [
        &["example", "demailly", "--k", "1", "--out", p(&rep)],
        &["example", "nope", "--out", p(&rep)],
        &["verify", "--spec", p(&spec), "--samples", "0", "--report", p(&rep)],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(bundlex(args).status.code(), Some(EXIT_BAD_INPUT), "{args:?}");
    }
}

#[test]
fn corrupted_gluing_fails_verification() {
    let dir = TempDir::new().unwrap();
    let spec = example(&dir, "skoda", None);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&spec).unwrap()).unwrap();
    let factors = v["hole_factorizations"][0].as_array_mut().unwrap();
    // Replace the over-shear factorization of hole 1 by the identity.
    factors.clear();
    std::fs::write(&spec, v.to_string()).unwrap();
    let rep = dir.path().join("r.json");
    let out = bundlex(&["verify", "--spec", p(&spec), "--samples", "50", "--report", p(&rep)]);
    assert_eq!(out.status.code(), Some(EXIT_VERIFY_FAILED));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("FAIL factorization [hole 1"), "{stderr}");
    let file: ReportFile = serde_json::from_str(&std::fs::read_to_string(&rep).unwrap()).unwrap();
    assert!(!file.pass && file.is_consistent());
}

#[test]
fn run_with_captures_diagnostics() {
    let mut err = Vec::new();
    let code = run_with(["bundlex", "example", "demailly", "--k", "0", "--out", "/nonexistent/x"], None, &mut err);
    assert_eq!(code, EXIT_BAD_INPUT);
    assert!(String::from_utf8(err).unwrap().starts_with("error:"));
    let mut out = Vec::new();
    assert_eq!(run_with(["bundlex", "--version"], None, &mut out), EXIT_OK);
}
