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

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use hsfm_core::instance::Instance;
use serde_json::Value as Json;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn hsfm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsfm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn hsfm_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hsfm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().expect("stdin").write_all(input).expect("write");
    child.wait_with_output().expect("exit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Json {
    serde_json::from_slice(&o.stdout).expect("json report")
}

const GOOD: [&str; 5] = [
    "path.json",
    "cycle_distance.json",
    "triangle_modular.json",
    "exclude.json",
    "hypergraph_intersection.json",
];

#[test]
fn solve_path_all_minimal() {
    let out = hsfm(&["solve", fixture("path.json").to_str().unwrap(), "--all-minimal"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["value"], "1");
    assert_eq!(r["sets"], serde_json::json!([["a"], ["c"]]));
    assert_eq!(r["mode"], "all_minimal");
    assert!(r["oracle_calls"].as_u64().unwrap() > 0);
}

#[test]
fn solve_text_output() {
    let out = hsfm(&["solve", fixture("path.json").to_str().unwrap(), "--out", "text"]);
    let text = stdout(&out);
    assert!(
        text.starts_with("value: 1\nset: {a}\n") || text.starts_with("value: 1\nset: {c}\n"),
        "{text}"
    );
    assert!(text.contains("oracle_calls: "));
}

#[test]
fn exclude_gives_nontrivial_min_cut() {
    // path a-3-b-1-c-2-d: scan every nontrivial cut directly
    let edges = [(0, 1, 3), (1, 2, 1), (2, 3, 2)];
    let cut = |m: u32| {
        edges
            .iter()
            .filter(|&&(u, v, _)| (m >> u & 1) != (m >> v & 1))
            .map(|e| e.2)
            .sum::<i64>()
    };
    let min = (1..15).map(cut).min().unwrap();
    let out = hsfm(&["solve", fixture("exclude.json").to_str().unwrap()]);
    assert_eq!(json(&out)["value"], min.to_string());
}

#[test]
fn distance_boundary_selects_rizzi() {
    let out = hsfm(&["solve", fixture("cycle_distance.json").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["adapter"], "rizzi");
    let forced = hsfm(&[
        "solve",
        fixture("cycle_distance.json").to_str().unwrap(),
        "--adapter",
        "queyranne",
    ]);
    assert_eq!(json(&forced)["adapter"], "queyranne");
    let wrong = hsfm(&["solve", fixture("path.json").to_str().unwrap(), "--adapter", "rizzi"]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn verify_fixtures() {
    for name in GOOD {
        let out = hsfm(&["verify", fixture(name).to_str().unwrap()]);
        assert!(out.status.success(), "{name}: {}", stdout(&out));
        assert!(stdout(&out).ends_with("MATCH\n"));
    }
    let bad = hsfm(&["verify", fixture("corrupted.json").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(5));
    assert!(stdout(&bad).contains("MISMATCH"));
    assert!(stdout(&bad).contains("expected value 2 != brute force 1"));
}

#[test]
fn solve_pipes_into_verify() {
    for name in GOOD {
        let path = fixture(name);
        let path = path.to_str().unwrap();
        for extra in [None, Some("--all-minimal")] {
            let mut args = vec!["solve", path];
            args.extend(extra);
            let report = hsfm(&args);
            assert!(report.status.success());
            let check = hsfm_with_stdin(&["verify", path, "--report", "-"], &report.stdout);
            assert!(check.status.success(), "{name}: {}", stdout(&check));
        }
    }
    let path = fixture("path.json");
    let forged = br#"{"value":"1","sets":[["b"]],"mode":"optimal","adapter":"x","oracle_calls":0,"wall_ms":0}"#;
    let check = hsfm_with_stdin(&["verify", path.to_str().unwrap(), "--report", "-"], forged);
    assert_eq!(check.status.code(), Some(5));
}

#[test]
fn random_campaign() {
    let out = hsfm(&["verify", "--samples", "100", "--seed", "7"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("100/100 MATCH"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        hsfm(&["solve", fixture("infeasible.json").to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hsfm(&["solve", fixture("trivial.json").to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    let parse = hsfm(&["solve", fixture("malformed.json").to_str().unwrap()]);
    assert_eq!(parse.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("malformed.json:4:3"));
    assert_eq!(
        hsfm(&["verify", fixture("large.json").to_str().unwrap()]).status.code(),
        Some(4)
    );
    assert!(hsfm(&["solve", fixture("large.json").to_str().unwrap()])
        .status
        .success());
    assert_eq!(hsfm(&["solve", "/nonexistent.json"]).status.code(), Some(1));
}

fn bench_rows(seed: &str) -> Vec<Vec<String>> {
    let out = hsfm(&["bench", "--sizes", "2,10", "--trials", "2", "--seed", seed]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,algorithm,mean_calls,max_calls,max_calls_over_n3,mean_ms")
    );
    lines
        .map(|l| l.split(',').take(5).map(str::to_string).collect())
        .collect()
}

#[test]
fn bench_is_deterministic() {
    let rows = bench_rows("4");
    assert_eq!(rows.len(), 4);
    assert_eq!(rows, bench_rows("4"));
    for row in &rows {
        let calls: u64 = row[3].parse().unwrap();
        assert!(calls >= 1);
        let n: f64 = row[0].parse().unwrap();
        assert!(row[4].parse::<f64>().unwrap() <= 5.0 + 10.0 / n);
    }
}

#[test]
fn gen_round_trips() {
    let args = [
        "gen",
        "--function",
        "modular_offset",
        "--family",
        "partition",
        "--n",
        "7",
        "--seed",
        "11",
    ];
    let a = hsfm(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, hsfm(&args).stdout);
    let text = stdout(&a);
    assert_eq!(Instance::from_json(&text).unwrap().to_json(), text);

    let file = std::env::temp_dir().join(format!("hsfm-gen-{}.json", std::process::id()));
    let mut with_out = args.to_vec();
    with_out.extend(["--out", file.to_str().unwrap()]);
    assert!(hsfm(&with_out).status.success());
    assert_eq!(std::fs::read_to_string(&file).unwrap(), text);
    let check = hsfm(&["verify", file.to_str().unwrap()]);
    std::fs::remove_file(&file).unwrap();
    assert!(check.status.success());

    let other = hsfm(&[
        "gen",
        "--function",
        "graph_cut",
        "--family",
        "knapsack",
        "--n",
        "5",
        "--seed",
        "11",
    ]);
    assert_ne!(other.stdout, a.stdout);
    assert_eq!(hsfm(&["gen", "--n", "1"]).status.code(), Some(1));
}
