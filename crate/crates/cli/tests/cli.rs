use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn randgap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_randgap")).args(args).output().unwrap()
}

fn construct_into(dir: &Path) -> Output {
    randgap(&["construct", "--generators", "4", "--horizon", "64", "--out", dir.to_str().unwrap()])
}

#[test]
fn construct_writes_identical_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    assert_eq!(construct_into(&a).status.code(), Some(0));
    assert_eq!(construct_into(&b).status.code(), Some(0));
    for f in ["tower.txt", "base_names.txt", "extended_names.txt"] {
        let x = fs::read(a.join(f)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, fs::read(b.join(f)).unwrap(), "{f} differs");
    }
}

#[test]
fn zero_horizon_is_invalid() {
    let out = randgap(&["construct", "--horizon", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("horizon"));
    assert_eq!(randgap(&["search", "--epsilon", "3/2"]).status.code(), Some(2));
    assert_eq!(randgap(&["search", "--delta", "x"]).status.code(), Some(2));
}

#[test]
fn default_verify_passes() {
    let out = randgap(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(", 0 failed"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_loaded_artifacts_and_corrupted_tower() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("art");
    construct_into(&dir);
    let arts = dir.to_str().unwrap();
    assert_eq!(randgap(&["verify", "--artifacts", arts]).status.code(), Some(0));

    // |T_0(0)| = 2 breaks the cube-root bound at n = 0
    let tower = dir.join("tower.txt");
    let mut text = fs::read_to_string(&tower).unwrap();
    text.push_str("0 0..1 : 0 1\n");
    fs::write(&tower, text).unwrap();
    let out = randgap(&["verify", "--artifacts", arts]);
    assert_eq!(out.status.code(), Some(1));
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.lines().any(|l| l.starts_with("FAIL (m)(3) [T_0(0)]")), "{report}");
}

#[test]
fn verify_reports_one_record_per_sample() {
    let out = randgap(&["verify", "--generators", "4", "--horizon", "32", "--samples", "25", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tag,subject,lhs,relation,rhs,pass"));
    let samples: Vec<&str> = lines.filter(|l| l.contains(") ∧ d_")).collect();
    assert_eq!(samples.len(), 25);
    // exact values, not decimals
    assert!(samples.iter().all(|l| l.contains("/2^") || l.contains(",0,")));
}

#[test]
fn search_certifies_and_repeats() {
    let args = ["search", "--seed", "7", "--family", "40", "--epsilon", "1/4", "--format", "json"];
    let first = randgap(&args);
    assert_eq!(first.status.code(), Some(0));
    let record: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(record["agree"], true);
    assert_eq!(record["reverified"], true);
    assert_eq!(record["pipeline"]["outcome"]["status"], "certified");
    assert!(record["bruteforce"].is_array());
    assert_eq!(randgap(&args).stdout, first.stdout);
}

#[test]
fn short_horizon_is_a_staged_failure() {
    let out = randgap(&["search", "--horizon", "16"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("exhausted at eq:21"));
}

#[test]
fn violating_instance_is_invalid() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("bad.txt");
    // the whole cube meets a_0 and b_1
    fs::write(&path, "names = base 4 16\ncut = 0\ncondition 0 : gamma = 0 1 ; x = {()}\n").unwrap();
    let out = randgap(&["search", "--instance", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("condition 0"));
}

#[test]
fn config_file_with_flag_override() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("run.conf");
    let out_dir = tmp.path().join("art");
    fs::write(&config, format!("# small run\ngenerators = 3\nhorizon = 8\nout = {}\n", out_dir.display())).unwrap();
    let out = randgap(&["construct", "--config", config.to_str().unwrap(), "--horizon", "16", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let files: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(files.as_array().unwrap().len(), 3);
    let tower = fs::read_to_string(out_dir.join("tower.txt")).unwrap();
    assert!(tower.starts_with("generators = 3\nhorizon = 16\n"));

    fs::write(&config, "colour = red\n").unwrap();
    assert_eq!(randgap(&["construct", "--config", config.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn extract_mode_checks_every_pair() {
    let out = randgap(&["search", "--mode", "extract", "--family", "30", "--seed", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn report_goes_to_out_file() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("cert.txt");
    let out = randgap(&["search", "--seed", "7", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(fs::read_to_string(&path).unwrap().contains("agree = true"));
}
