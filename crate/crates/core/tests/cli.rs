use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pdiffusion"))
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pdiffusion-cli-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn simulate_writes_trace_manifest_and_summary() {
    let dir = workdir("simulate");
    let out = run(
        &dir,
        &[
            "simulate", "--graph", "path:3", "--config", "0,0,0", "--steps", "2", "--out", "t.jsonl",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 1);
    assert_eq!(
        read(&dir, "t.jsonl"),
        "{\"step\":0,\"stacks\":[0,0,0]}\n{\"step\":1,\"stacks\":[0,0,0]}\n{\"step\":2,\"stacks\":[0,0,0]}\n"
    );
    let manifest: serde_json::Value = serde_json::from_str(&read(&dir, "t.jsonl.manifest.json")).unwrap();
    assert_eq!(manifest["command"], "simulate");
    assert_eq!(manifest["parameters"]["steps"], "2");
    assert_eq!(manifest["output_path"], "t.jsonl");
    assert!(manifest["wall_time"].is_number());
    assert!(manifest["artifact_version"].is_string());
}

#[test]
fn length_mismatch_is_a_one_line_domain_error() {
    let dir = workdir("mismatch");
    let out = run(
        &dir,
        &[
            "simulate", "--graph", "path:2", "--config", "0,1,2", "--steps", "1", "--out", "x",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.trim().lines().count(), 1);
    assert!(err.contains("3 stacks"), "{err}");
}

#[test]
fn period_reports() {
    let dir = workdir("period");
    let out = run(
        &dir,
        &["period", "--graph", "path:3", "--config", "0,0,0", "--out", "p.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        read(&dir, "p.json"),
        "{\"preperiod\":0,\"period\":1,\"orbit\":[[0,0,0]]}\n"
    );

    let out = run(
        &dir,
        &[
            "period",
            "--graph",
            "path:5",
            "--config",
            "0,2,0,4,1",
            "--max-steps",
            "2",
            "--out",
            "q.json",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("period-not-found"));
}

#[test]
fn negative_stacks_are_accepted() {
    let dir = workdir("negative");
    let out = run(
        &dir,
        &["period", "--graph", "path:2", "--config", "-3,0", "--out", "p.json"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        read(&dir, "p.json"),
        "{\"preperiod\":1,\"period\":2,\"orbit\":[[-2,-1],[-1,-2]]}\n"
    );
}

#[test]
fn count_methods_and_ceiling() {
    let dir = workdir("count");
    let out = run(&dir, &["count", "--n", "4", "--method", "oracle", "--out", "o.json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&read(&dir, "o.json")).unwrap();
    assert_eq!(report["count"], 26);
    assert_eq!(report["provenance"]["method"], "oracle");

    let mut values = Vec::new();
    for method in ["recurrence", "direct", "summation"] {
        let out = run(&dir, &["count", "--n", "11", "--method", method, "--out", "c.json"]);
        assert_eq!(out.status.code(), Some(0));
        let report: serde_json::Value = serde_json::from_str(&read(&dir, "c.json")).unwrap();
        values.push(report["count"].as_u64().unwrap());
        if method == "summation" {
            assert!(report["provenance"]["erratum"].is_string());
        }
    }
    assert!(values.iter().all(|&v| v == values[0]), "{values:?}");

    let out = run(&dir, &["count", "--n", "50", "--method", "oracle", "--out", "big.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_ceiling_override() {
    let dir = workdir("env");
    let out = bin()
        .current_dir(&dir)
        .env("PDIFFUSION_ORACLE_MAX_CANDIDATES", "100")
        .args(["count", "--n", "5", "--method", "oracle", "--out", "c.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_runs_give_identical_bodies() {
    let dir = workdir("determinism");
    for out in ["a.json", "b.json"] {
        let status = run(
            &dir,
            &[
                "--jobs",
                "2",
                "count",
                "--n",
                "7",
                "--method",
                "oracle",
                "--list-configurations",
                "--out",
                out,
            ],
        );
        assert_eq!(status.status.code(), Some(0));
    }
    assert_eq!(read(&dir, "a.json"), read(&dir, "b.json"));

    std::fs::write(dir.join("tri.txt"), "1 2\n2 3\n3 1\n").unwrap();
    for out in ["a.csv", "b.csv"] {
        let status = run(
            &dir,
            &[
                "conjecture",
                "--g0",
                "tri.txt",
                "--k-min",
                "4",
                "--k-max",
                "5",
                "--out",
                out,
            ],
        );
        assert_eq!(status.status.code(), Some(0));
    }
    assert_eq!(read(&dir, "a.csv"), read(&dir, "b.csv"));
}

#[test]
fn verify_filters_suites() {
    let dir = workdir("verify");
    let out = run(
        &dir,
        &["verify", "--suites", "orientation", "--max-n", "8", "--out", "v.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&read(&dir, "v.json")).unwrap();
    let outcomes = report["outcomes"].as_array().unwrap();
    assert!(!outcomes.is_empty());
    assert!(outcomes
        .iter()
        .all(|o| o["suite"] == "orientation" && o["passed"] == true));

    let out = run(&dir, &["verify", "--suites", "bogus", "--out", "w.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn conjecture_single_vertex_has_zero_residuals() {
    let dir = workdir("conjecture");
    std::fs::write(dir.join("one.txt"), "vertices 1\n").unwrap();
    let out = run(
        &dir,
        &[
            "conjecture",
            "--g0",
            "one.txt",
            "--k-min",
            "4",
            "--k-max",
            "7",
            "--out",
            "r.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = read(&dir, "r.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,vertices,count,final_window,residual,exploratory"));
    let residuals: Vec<&str> = lines
        .filter_map(|l| l.split(',').nth(4))
        .filter(|r| !r.is_empty())
        .collect();
    assert_eq!(residuals, ["0", "0", "0", "0"]);
}

#[test]
fn missing_g0_file_is_a_file_error() {
    let dir = workdir("missing");
    let out = run(&dir, &["conjecture", "--g0", "no-such-file.txt", "--out", "r.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-file.txt"));
    assert!(!dir.join("r.csv").exists());
}

#[test]
fn shipped_schemas_name_the_emitted_keys() {
    let schemas = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas");
    let dir = workdir("schemas");
    run(
        &dir,
        &["period", "--graph", "path:2", "--config", "0,1", "--out", "p.json"],
    );
    run(&dir, &["count", "--n", "3", "--method", "summation", "--out", "c.json"]);
    for (schema, output) in [
        ("period-report", "p.json"),
        ("count-report", "c.json"),
        ("run-manifest", "p.json.manifest.json"),
    ] {
        let schema: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(schemas.join(format!("{schema}.schema.json"))).unwrap())
                .unwrap();
        let value: serde_json::Value = serde_json::from_str(&read(&dir, output)).unwrap();
        let props = schema["properties"].as_object().unwrap();
        for key in schema["required"].as_array().unwrap() {
            assert!(value.get(key.as_str().unwrap()).is_some(), "{output} lacks {key}");
        }
        for key in value.as_object().unwrap().keys() {
            assert!(props.contains_key(key), "{output} emits {key} not in schema");
        }
    }
}
