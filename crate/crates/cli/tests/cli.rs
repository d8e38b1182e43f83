use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn berge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_berge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write_config(dir: &Path) -> String {
    let p = dir.join("sweep.cfg");
    fs::write(
        &p,
        "# tiny sweep\nseed = 5\ngrid = 7:3:7; 8:5:6; 9:3:6\nsamples_per_cell = 3\nexhaustive_cells = 5:3:5\n",
    )
    .unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn threshold_json() {
    let o = berge(&["threshold", "--n", "9", "--r", "5", "--k", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"regime":"main4","bound":4}"#);
    let o = berge(&["threshold", "--n", "9", "--r", "3"]);
    assert_eq!(stdout(&o).trim(), r#"{"regime":"main_a","bound":7}"#);
    let o = berge(&["threshold", "--n", "9", "--r", "5", "--k", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_writes_instance_and_sidecar() {
    let o = berge(&["gen", "--family", "h4", "--n", "13", "--r", "3", "--k", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("# meta: "));
    assert!(text.lines().nth(1) == Some("13 3"));
    assert_eq!(text.lines().count(), 2 + 30);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h1.bhg");
    let o = berge(&["gen", "--family", "h1", "--n", "9", "--r", "3", "--output", out.to_str().unwrap()]);
    assert!(o.status.success());
    let meta: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("h1.bhg.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["expected_min_degree"], 6);
    assert_eq!(meta["circumference_exact"], 5);
    assert_eq!(meta["edges"], 20);
}

#[test]
fn solve_verdicts_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let h2 = dir.path().join("h2.bhg");
    assert!(berge(&["gen", "--family", "h2", "--n", "7", "--r", "3", "--output", h2.to_str().unwrap()]).status.success());
    let o = berge(&["solve", "--input", h2.to_str().unwrap(), "--target", "ham"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "exhausted");

    let o = berge(&["solve", "--input", h2.to_str().unwrap(), "--target", "circumference"]);
    let v = json(&o);
    assert_eq!(v["verdict"], "found");
    assert_eq!(v["length"].as_u64().unwrap() as usize, v["witness"]["edge_indices"].as_array().unwrap().len());

    let h1 = dir.path().join("h1.bhg");
    assert!(berge(&["gen", "--family", "h1", "--n", "11", "--r", "3", "--output", h1.to_str().unwrap()]).status.success());
    let o = berge(&["solve", "--input", h1.to_str().unwrap(), "--target", "circumference", "--node-limit", "5"]);
    let v = json(&o);
    assert_eq!(v["verdict"], "budget_exceeded");
    assert_eq!(v["detail"], "budget_exceeded");

    let bad = dir.path().join("bad.bhg");
    fs::write(&bad, "5 3\n0 1\n").unwrap();
    let o = berge(&["solve", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let o = berge(&["solve", "--input", dir.path().join("missing.bhg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = berge(&["solve", "--input", h2.to_str().unwrap(), "--target", "k=x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn engine_reports_and_traces() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("k6.bhg");
    assert!(berge(&["gen", "--family", "complete", "--n", "6", "--r", "3", "--output", p.to_str().unwrap()]).status.success());
    let o = berge(&["engine", "--input", p.to_str().unwrap(), "--target", "ham", "--trace"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["status"], "found");
    assert_eq!(v["cycle"]["vertices"].as_array().unwrap().len(), 6);
    if let Some(trace) = v.get("trace") {
        for entry in trace.as_array().unwrap() {
            assert!(entry.get("kind").is_some() && entry.get("rank_after").is_some());
        }
    }
}

#[test]
fn verify_is_reproducible_and_resumable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path());
    let log = dir.path().join("run.ndjson");
    let args = |log: &Path| {
        vec![
            "--deterministic".to_owned(),
            "--jobs".into(),
            "2".into(),
            "verify".into(),
            "--suite".into(),
            "all".into(),
            "--config".into(),
            cfg.clone(),
            "--output".into(),
            log.to_str().unwrap().into(),
        ]
    };
    let run = |extra: &[&str], log: &Path| {
        let mut a = args(log);
        a.extend(extra.iter().map(|s| s.to_string()));
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        berge(&refs)
    };

    let first = run(&[], &log);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let report = json(&first);
    assert_eq!(report["pass"], true);
    assert!(report["sweep"].get("generated_unix").is_none());
    let full_log = fs::read_to_string(&log).unwrap();
    let n = full_log.lines().count();
    assert_eq!(report["sweep"]["records"].as_u64().unwrap() as usize, n);

    let again = run(&[], &dir.path().join("other.ndjson"));
    assert_eq!(stdout(&first), stdout(&again));

    // interrupt: keep a third of the records plus half a line
    let lines: Vec<&str> = full_log.lines().collect();
    let keep = n / 3;
    let mut partial: String = lines[..keep].iter().map(|l| format!("{l}\n")).collect();
    partial.push_str(&lines[keep][..lines[keep].len() / 2]);
    fs::write(&log, partial).unwrap();
    let resumed = run(&["--resume"], &log);
    assert_eq!(resumed.status.code(), Some(0));
    assert_eq!(stdout(&resumed), stdout(&first));
    assert_eq!(fs::read_to_string(&log).unwrap(), full_log);

    let timed = berge(&["verify", "--suite", "sharpness", "--config", &cfg]);
    assert!(json(&timed)["sweep"]["generated_unix"].is_u64());
}

#[test]
fn verify_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.cfg");
    fs::write(&p, "exhaustive_cells = 8:3:8\n").unwrap();
    let o = berge(&["verify", "--config", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    fs::write(&p, "grid = 9:5:4\n").unwrap();
    assert_eq!(berge(&["verify", "--config", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn lemmas_and_human_output() {
    let o = berge(&["lemmas", "--independent-s-max", "6", "--separated-s-max", "6", "--q-max", "3"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["all_hold"], true);
    let o = berge(&["--human", "threshold", "--n", "9", "--r", "3", "--k", "6"]);
    assert_eq!(stdout(&o).trim(), "main3_c -> 7");
    let o = berge(&["bench", "--n", "7", "--samples", "3"]);
    assert_eq!(json(&o)["samples"], 3);
}
