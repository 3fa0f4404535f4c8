//! End-to-end CLI behavior: file formats, golden outputs, round-trip
//! stability, and the exit-code contract (0 success, 1 verification
//! failure, 2 input error, 3 budget exhaustion).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use monophilic::count::col;
use monophilic::graph::Graph;
use monophilic::ListAssignment;
use num_traits::Zero;
use serde_json::Value;

fn bin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monophilic"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn count_uniform_matches_known_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(dir.path(), &["gadget", "bipartite", "2", "3"]);
    assert_eq!(code(&out), 0, "{out:?}");

    let out = bin(
        dir.path(),
        &["count", "--graph", "bipartite.graph.json", "--uniform", "2"],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "2");

    // A single edge with one color has no proper coloring.
    bin(dir.path(), &["gadget", "path", "1"]);
    let out = bin(
        dir.path(),
        &["count", "--graph", "path.graph.json", "--uniform", "1"],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn count_reads_list_files_and_pins() {
    let dir = tempfile::tempdir().unwrap();
    bin(dir.path(), &["gadget", "cycle", "4"]);
    fs::write(
        dir.path().join("remark.json"),
        r#"{"lists": {"0": [1,2], "1": [1,2], "2": [2,3], "3": [2,3]}}"#,
    )
    .unwrap();
    let out = bin(
        dir.path(),
        &[
            "count",
            "--graph",
            "cycle.graph.json",
            "--lists",
            "remark.json",
        ],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "2");

    // Pinning vertex 0 to color 1 halves the bipartition choice.
    let out = bin(
        dir.path(),
        &[
            "count",
            "--graph",
            "cycle.graph.json",
            "--lists",
            "remark.json",
            "--pin",
            "0=1",
        ],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "1");

    // A pinned color outside the vertex's list is an input error.
    let out = bin(
        dir.path(),
        &[
            "count",
            "--graph",
            "cycle.graph.json",
            "--lists",
            "remark.json",
            "--pin",
            "0=9",
        ],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("junk.json"), "{not json").unwrap();
    let out = bin(
        dir.path(),
        &["count", "--graph", "junk.json", "--uniform", "2"],
    );
    assert_eq!(code(&out), 2);
    assert!(!output_stderr(&out).is_empty());

    bin(dir.path(), &["gadget", "path", "2"]);
    // Neither --lists nor --uniform.
    let out = bin(dir.path(), &["count", "--graph", "path.graph.json"]);
    assert_eq!(code(&out), 2);

    // Lists file covering the wrong vertex count.
    fs::write(dir.path().join("short.json"), r#"{"lists": {"0": [1]}}"#).unwrap();
    let out = bin(
        dir.path(),
        &[
            "count",
            "--graph",
            "path.graph.json",
            "--lists",
            "short.json",
        ],
    );
    assert_eq!(code(&out), 2);

    // Unknown gadget kind and wrong arity.
    assert_eq!(code(&bin(dir.path(), &["gadget", "moebius", "3"])), 2);
    assert_eq!(code(&bin(dir.path(), &["gadget", "theta", "2", "2"])), 2);
}

fn output_stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn decide_reports_the_stretched_theta() {
    let dir = tempfile::tempdir().unwrap();
    bin(dir.path(), &["gadget", "theta", "2", "2", "4"]);
    let out = bin(
        dir.path(),
        &[
            "decide",
            "--graph",
            "theta.graph.json",
            "--n",
            "2",
            "--mode",
            "monophilic",
        ],
    );
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["mode"], "monophilic");
    assert_eq!(report["verdict"], Value::Bool(false));
    assert_eq!(report["min_count"], "1");
    assert_eq!(report["uniform_count"], "2");
    assert_eq!(report["vacuous"], Value::Bool(false));
    assert!(report["witness"]["lists"].is_object());

    // The witness file format round-trips through `count` to the same value.
    fs::write(
        dir.path().join("witness.json"),
        report["witness"].to_string(),
    )
    .unwrap();
    let out = bin(
        dir.path(),
        &[
            "count",
            "--graph",
            "theta.graph.json",
            "--lists",
            "witness.json",
        ],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn decide_budget_exhaustion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    bin(dir.path(), &["gadget", "theta", "2", "2", "4"]);
    let out = bin(
        dir.path(),
        &[
            "decide",
            "--graph",
            "theta.graph.json",
            "--n",
            "2",
            "--mode",
            "minimize",
            "--budget",
            "50",
        ],
    );
    assert_eq!(code(&out), 3);
    let report: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["verdict"], "unknown");
    assert!(report["nodes_visited"].as_u64().unwrap() <= 50);

    // The same cap through the environment variable.
    let out = Command::new(env!("CARGO_BIN_EXE_monophilic"))
        .current_dir(dir.path())
        .env("MONOPHILIC_BUDGET", "50")
        .args([
            "decide",
            "--graph",
            "theta.graph.json",
            "--n",
            "2",
            "--mode",
            "minimize",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);

    // An explicit flag overrides the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_monophilic"))
        .current_dir(dir.path())
        .env("MONOPHILIC_BUDGET", "50")
        .args([
            "decide",
            "--graph",
            "theta.graph.json",
            "--n",
            "2",
            "--mode",
            "minimize",
            "--budget",
            "100000000",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn gadget_files_round_trip_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(dir.path(), &["gadget", "l0", "2"]);
    assert_eq!(code(&out), 0);

    let graph_bytes = fs::read_to_string(dir.path().join("l0.graph.json")).unwrap();
    let g = Graph::from_json_str(&graph_bytes).unwrap();
    assert_eq!(format!("{}\n", g.to_json_string()), graph_bytes);

    let lists_bytes = fs::read_to_string(dir.path().join("l0.lists.json")).unwrap();
    let lists = ListAssignment::from_json_str(&lists_bytes, g.vertex_count()).unwrap();
    assert_eq!(format!("{}\n", lists.to_json_string()), lists_bytes);

    // The emitted pair is the blocked instance: no proper coloring.
    assert!(col(&g, &lists).unwrap().is_zero());
}

#[test]
fn theta_gadget_has_the_documented_shape() {
    let dir = tempfile::tempdir().unwrap();
    bin(dir.path(), &["gadget", "theta", "2", "2", "4"]);
    let g = Graph::from_json_str(&fs::read_to_string(dir.path().join("theta.graph.json")).unwrap())
        .unwrap();
    assert_eq!(g.vertex_count(), 7);
    assert_eq!(g.edge_count(), 8);
}

#[test]
fn h_gadget_writes_layout_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(dir.path(), &["gadget", "h", "2"]);
    assert_eq!(code(&out), 0);
    let layout: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("h.layout.json")).unwrap())
            .unwrap();
    assert_eq!(layout["x"], "80");
    assert_eq!(layout["p"].as_u64(), Some(26));
    assert_eq!(layout["vertex_count"].as_u64(), Some(52));

    let g = Graph::from_json_str(&fs::read_to_string(dir.path().join("h.graph.json")).unwrap())
        .unwrap();
    assert_eq!(g.vertex_count(), 52);
    let lists = ListAssignment::from_json_str(
        &fs::read_to_string(dir.path().join("h.lists.json")).unwrap(),
        52,
    )
    .unwrap();
    assert_eq!(lists.lists().len(), 52);

    // A single base color admits no layered construction at all.
    let out = bin(dir.path(), &["gadget", "h", "1"]);
    assert_eq!(code(&out), 2);
    assert!(output_stderr(&out).contains("n >= 2"));
}

#[test]
fn verify_fast_suite_passes_and_skips_the_sweeps() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(dir.path(), &["verify", "--suite", "fast"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let reports: Vec<Value> = text
        .lines()
        .map(|line| serde_json::from_str(line).unwrap())
        .collect();
    let ids: Vec<u64> = reports
        .iter()
        .filter_map(|doc| doc["id"].as_u64())
        .collect();
    assert_eq!(ids, vec![1, 2, 3, 4, 6, 7, 8, 9, 11, 12]);
    assert!(reports.iter().all(|doc| doc["pass"] != Value::Bool(false)));
    let summary = reports.last().unwrap();
    assert_eq!(summary["suite"], "fast");
    assert_eq!(summary["failures"].as_u64(), Some(0));
}

#[test]
fn verify_surfaces_an_injected_fault() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(
        dir.path(),
        &["verify", "--only", "2", "--inject-fault", "path-constant"],
    );
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    let report: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(report["pass"], Value::Bool(false));
    assert_eq!(report["name"], "path-formulas");

    // Unknown fault names are input errors.
    let out = bin(dir.path(), &["verify", "--inject-fault", "bogus"]);
    assert_eq!(code(&out), 2);
}
