use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn carm(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carm"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("CARM_OUT")
        .output()
        .unwrap()
}

fn run_json(out: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(out.join("run.json")).unwrap()).unwrap()
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let args = ["run", "--preset", "iris", "--seed", "42", "--set", "generations=20"];
    assert!(carm(&args, &a).status.success());
    assert!(carm(&args, &b).status.success());
    assert_eq!(fs::read(a.join("run.json")).unwrap(), fs::read(b.join("run.json")).unwrap());
    for name in ["rules.txt", "front.csv", "report.txt"] {
        assert!(a.join(name).is_file(), "{name}");
    }
}

#[test]
fn preset_shortcut_applies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let out = carm(
        &["run", "--preset", "iris", "--objectives", "coverage,confidence", "--set", "generations=3"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = run_json(dir.path());
    assert_eq!(run["config"]["population_size"], 200);
    assert_eq!(run["config"]["crossover_rate"], 0.8);
    assert_eq!(run["config"]["mutation_rate"], 0.2);
    assert_eq!(run["objectives"], serde_json::json!(["coverage", "confidence"]));
    let csv = fs::read_to_string(dir.path().join("front.csv")).unwrap();
    assert!(csv.starts_with("rule_id,coverage,confidence,rule\n"));
}

#[test]
fn config_file_with_overrides_last_wins() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("iris.json");
    let mut doc: Value = serde_json::from_str(&carm_core::RunConfig::preset("iris").unwrap().to_json().unwrap()).unwrap();
    doc["generations"] = 30.into();
    fs::write(&config, doc.to_string()).unwrap();
    let out_dir = dir.path().join("out");
    let out = carm(
        &["run", "--config", config.to_str().unwrap(), "--set", "generations=4", "--set", "generations=10"],
        &out_dir,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = run_json(&out_dir);
    assert_eq!(run["config"]["generations"], 10);
    assert_eq!(run["completed_generations"], 10);
    assert!(run.get("timings").is_none());
}

#[test]
fn configuration_problems_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ \"generations\": ").unwrap();
    let out_dir = dir.path().join("out");
    let cases: Vec<Vec<&str>> = vec![
        vec!["run", "--config", bad.to_str().unwrap()],
        vec!["run", "--preset", "nope"],
        vec!["run", "--preset", "iris", "--set", "no_such_key=1"],
        vec!["run", "--preset", "iris", "--set", "population_size=1"],
        vec!["run", "--config", "/does/not/exist.json"],
        vec!["run"],
        vec!["experiment", "--plan", "/does/not/exist.json"],
    ];
    for args in cases {
        let out = carm(&args, &out_dir);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
    assert!(!out_dir.join("run.json").exists());
}

#[test]
fn plan_with_unknown_dataset_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    fs::write(&plan, r#"{"datasets": ["nope"], "objective_sets": [["coverage"]]}"#).unwrap();
    let out = carm(&["experiment", "--plan", plan.to_str().unwrap()], &dir.path().join("out"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bundled_experiment_smoke() {
    let dir = tempfile::tempdir().unwrap();
    let out = carm(
        &["experiment", "--plan", "table5", "--repetitions", "1", "--set", "generations=3"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("experiment.json")).unwrap()).unwrap();
    assert_eq!(report["cells"].as_array().unwrap().len(), 9);
    let table = fs::read_to_string(dir.path().join("table.txt")).unwrap();
    for name in ["iris", "ljb", "wbc"] {
        assert!(table.contains(name));
    }
    let fronts = fs::read_to_string(dir.path().join("fronts.csv")).unwrap();
    assert!(fronts.starts_with("dataset,objectives,repetition,rule_id,"));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_carm"))
        .args(["run", "--preset", "iris", "--set", "generations=2"])
        .env("CARM_OUT", dir.path())
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(dir.path().join("run.json").is_file());
}

#[test]
fn inspect_lists_codes() {
    let out = Command::new(env!("CARGO_BIN_EXE_carm")).args(["inspect", "iris"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1=(-inf,5.5]  2=(5.5,6.8]  3=(6.8,+inf)"));
    assert!(text.contains("Iris-setosa"));
}
