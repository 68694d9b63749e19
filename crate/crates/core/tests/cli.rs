// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use tempfile::TempDir;
use tokswap::cli::{run, EXIT_INVALID, EXIT_OK, EXIT_PARAMS};
use tokswap::model::io::InstanceDocument;
use tokswap::model::{validate, SwapSequence};

fn tokswap(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("tokswap").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "machine"];
    full.extend_from_slice(args);
    let (code, text) = tokswap(&full);
    let value = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("bad machine output {text:?}: {e}"));
    (code, value)
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

fn read_sequence(p: &Path) -> SwapSequence {
    let v: Value = serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap();
    v["swaps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_u64().unwrap() as usize, e[1].as_u64().unwrap() as usize))
        .collect()
}

#[test]
fn gen_local_opt_barrier_writes_instance_annotations_and_sequence() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "lob.json");
    let (code, report) = machine(&["gen", "local-opt-barrier", "--p", "4", "--q", "2", "--out", s(&inst)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["results"]["n"], 16);
    assert_eq!(report["results"]["constructive_length"], 16);
    let ann: Value = serde_json::from_str(&fs::read_to_string(path(&dir, "lob.annotations.json")).unwrap()).unwrap();
    assert!(ann.is_object());

    let (code, report) = machine(&["check", s(&inst), s(&path(&dir, "lob.constructive.json"))]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["results"]["reaches_target"], true);
    assert_eq!(report["results"]["locally_optimal"], false);
}

#[test]
fn gen_ratio_barrier_has_pq_vertices() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "rb.json");
    let (code, report) = machine(&["gen", "ratio-barrier", "--p", "2", "--q", "2", "--out", s(&inst)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["results"]["n"], 4);
    let doc = InstanceDocument::from_json(&fs::read_to_string(&inst).unwrap()).unwrap();
    assert_eq!(doc.instance.vertex_count(), 4);
}

#[test]
fn odd_p_is_a_parameter_error() {
    let (code, report) = machine(&["gen", "local-opt-barrier", "--p", "3", "--q", "2"]);
    assert_eq!(code, EXIT_PARAMS);
    assert!(report["results"]["error"].as_str().unwrap().contains("even"));
}

#[test]
fn set_cover_reduction_solves_to_twice_the_cover() {
    let dir = TempDir::new().unwrap();
    let source = path(&dir, "pairs.json");
    fs::write(&source, r#"{"universe_size": 4, "sets": [[0, 1], [1, 2], [2, 3]]}"#).unwrap();
    let reduced = path(&dir, "reduced.json");
    let (code, report) = machine(&["reduce", "set-cover", s(&source), "--out", s(&reduced)]);
    assert_eq!(code, EXIT_OK, "{report}");
    assert_eq!(report["results"]["n"], 11);
    assert!(path(&dir, "reduced.annotations.json").exists());

    let seq = path(&dir, "reduced.seq.json");
    let (code, report) = machine(&["solve", s(&reduced), "--mode", "exact-weighted", "--out", s(&seq)]);
    assert_eq!(code, EXIT_OK, "{report}");
    assert_eq!(report["results"]["opt_weight"], "4");
    let (code, _) = machine(&["check", s(&reduced), s(&seq)]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn label_cover_reduction_reports_vertex_count() {
    let dir = TempDir::new().unwrap();
    let source = path(&dir, "lc.json");
    fs::write(
        &source,
        r#"{"left_count": 1, "right_count": 1, "alphabet_size": 1,
            "edges": [{"left": 0, "right": 0, "constraint": [0]}]}"#,
    )
    .unwrap();
    let (code, report) = machine(&["reduce", "label-cover", s(&source), "--out", s(&path(&dir, "out.json"))]);
    assert_eq!(code, EXIT_OK, "{report}");
    assert_eq!(report["results"]["n"], 5);
}

#[test]
fn exact_bfs_on_a_single_edge() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "p2.json");
    fs::write(&inst, r#"{"n": 2, "edges": [[0, 1]], "start": [0, 1], "target": [1, 0]}"#).unwrap();
    let (code, report) = machine(&["solve", s(&inst), "--mode", "exact-bfs"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["results"]["opt_length"], 1);
}

#[test]
fn every_solver_mode_emits_a_sequence_that_checks() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "rb.json");
    machine(&["gen", "ratio-barrier", "--p", "3", "--q", "2", "--out", s(&inst)]);
    let doc = InstanceDocument::from_json(&fs::read_to_string(&inst).unwrap()).unwrap();
    for mode in ["exact-bfs", "exact-ida", "exact-weighted", "approx-cycle", "greedy"] {
        let seq = path(&dir, &format!("{mode}.seq.json"));
        let (code, report) = machine(&["solve", s(&inst), "--mode", mode, "--out", s(&seq)]);
        assert_eq!(code, EXIT_OK, "{mode}: {report}");
        assert!(validate(&doc.instance, &read_sequence(&seq)).unwrap().reaches_target, "{mode}");
        let (code, report) = machine(&["check", s(&inst), s(&seq)]);
        assert_eq!(code, EXIT_OK, "{mode}: {report}");
    }
    let (_, report) = machine(&["solve", s(&inst), "--mode", "approx-cycle"]);
    assert!(report["results"]["length"].as_u64().unwrap() >= 6);
}

#[test]
fn non_edge_swap_fails_validation() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "p3.json");
    fs::write(&inst, r#"{"n": 3, "edges": [[0, 1], [1, 2]], "start": [0, 1, 2], "target": [0, 1, 2]}"#).unwrap();
    let seq = path(&dir, "bad.json");
    fs::write(&seq, r#"{"swaps": [[0, 1], [0, 2]]}"#).unwrap();
    let (code, report) = machine(&["check", s(&inst), s(&seq)]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(report["results"]["non_edge"]["index"], 1);
}

#[test]
fn sequence_missing_the_target_fails_validation() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "p2.json");
    fs::write(&inst, r#"{"n": 2, "edges": [[0, 1]], "start": [0, 1], "target": [1, 0]}"#).unwrap();
    let seq = path(&dir, "empty.json");
    fs::write(&seq, r#"{"swaps": []}"#).unwrap();
    let (code, report) = machine(&["check", s(&inst), s(&seq)]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(report["results"]["reaches_target"], false);
}

#[test]
fn malformed_input_reports_a_line_number() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "broken.json");
    fs::write(&inst, "{\n  \"n\": 2,\n  \"edges\": [[0, 1]],\n  oops\n}").unwrap();
    let (code, report) = machine(&["solve", s(&inst), "--mode", "exact-bfs"]);
    assert_eq!(code, EXIT_PARAMS);
    assert!(report["results"]["error"].as_str().unwrap().contains("line 4"), "{report}");
}

#[test]
fn tiny_budget_exits_with_budget_code() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "lob.json");
    machine(&["gen", "local-opt-barrier", "--p", "4", "--q", "2", "--out", s(&inst)]);
    let (code, _) = machine(&["solve", s(&inst), "--mode", "exact-bfs", "--budget", "10"]);
    assert_eq!(code, tokswap::cli::EXIT_BUDGET);
}

#[test]
fn machine_output_is_deterministic_apart_from_timing() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let args = ["experiment", "approx-ratio", "--trials", "20", "--max-n", "6", "--seed", "7"];
    let (code_a, a) = machine(&args);
    let (code_b, b) = machine(&args);
    assert_eq!(code_a, EXIT_OK);
    assert_eq!(code_b, EXIT_OK);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn table_output_lists_keys() {
    let (code, text) = tokswap(&["experiment", "barrier-52", "--sizes", "2x2"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.lines().any(|l| l.starts_with("command")));
    assert!(text.lines().any(|l| l.starts_with("timing_ms")));
}

#[test]
fn small_experiments_pass() {
    for args in [
        vec!["experiment", "barrier-51", "--sizes", "4x2"],
        vec!["experiment", "setcover-equivalence", "--max-universe", "3", "--max-sets", "2"],
        vec!["experiment", "completeness", "--degrees", "2", "--alphabets", "1", "--sides", "2", "--budget", "0"],
    ] {
        let (code, report) = machine(&args);
        assert_eq!(code, EXIT_OK, "{args:?}: {report}");
    }
}
