use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use quiver_hilbert::formulas::preprojective_series;
use quiver_hilbert::{parse_quiver, IntMatrix};
use serde_json::Value;
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let files = [
            ("a2.quiver", "vertices 2\narrow a 1 2\n"),
            ("a3.quiver", "# line\nvertices 3\narrow a 1 2\narrow b 2 3\n"),
            ("d4.quiver", "vertices 4\narrow a 1 2\narrow b 3 2\narrow c 2 4\n"),
            ("kronecker.quiver", "vertices 2\narrow a 1 2\narrow b 1 2\n"),
            ("wild.quiver", "vertices 2\narrow a 1 2\narrow b 1 2\narrow c 1 2\n"),
            ("cycle.quiver", "vertices 2\narrow a 1 2\narrow b 2 1\n"),
            ("broken.quiver", "vertices 2\narow a 1 2\n"),
        ];
        for (name, text) in files {
            std::fs::write(dir.path().join(name), text).unwrap();
        }
        Fixture { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        self.run_env(args, &[])
    }

    fn run_env(&self, args: &[&str], env: &[(&str, &str)]) -> Output {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qhilb"));
        for a in args {
            match a.strip_prefix('@') {
                Some(file) => cmd.arg(self.path(file)),
                None => cmd.arg(a),
            };
        }
        cmd.env_remove("QH_MONOMIAL_CAP");
        for (k, v) in env {
            cmd.env(k, v);
        }
        cmd.output().unwrap()
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn matrices(doc: &Value) -> Vec<IntMatrix> {
    doc["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| {
            let rows: Vec<Vec<i64>> = m
                .as_array()
                .unwrap()
                .iter()
                .map(|row| row.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect())
                .collect();
            IntMatrix::from_rows(&rows)
        })
        .collect()
}

fn load(path: &Path) -> quiver_hilbert::Quiver {
    parse_quiver(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn series_text_table() {
    let f = Fixture::new();
    let out = f.run(&["series", "--quiver", "@a2.quiver", "--algebra", "preproj", "--degree", "6"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], "deg 0: [[1,0],[0,1]]");
    assert_eq!(lines[1], "deg 1: [[0,1],[1,0]]");
    for l in &lines[2..] {
        assert!(l.ends_with("[[0,0],[0,0]]"), "{l}");
    }
}

#[test]
fn json_round_trips() {
    let f = Fixture::new();
    let out = f.run(&[
        "series", "--quiver", "@wild.quiver", "--algebra", "preproj", "--degree", "9", "--format", "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["r"], 2);
    assert_eq!(doc["truncation"], 9);
    let q = load(&f.path("wild.quiver"));
    assert_eq!(matrices(&doc), preprojective_series(&q, 9).into_coefficients());
}

#[test]
fn non_regular_weight_is_an_input_error() {
    let f = Fixture::new();
    let out = f.run(&["series", "--quiver", "@a2.quiver", "--algebra", "qha", "--v", "1,0", "--degree", "6"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("weight vector not regular"), "{}", stderr(&out));
}

#[test]
fn degree_required_off_dynkin() {
    let f = Fixture::new();
    let out = f.run(&["series", "--quiver", "@kronecker.quiver", "--algebra", "preproj"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--degree"));
    // Dynkin input falls back to max(2h, 12)
    let out = f.run(&["series", "--quiver", "@d4.quiver", "--algebra", "preproj", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["truncation"], 12);
}

#[test]
fn classify_and_roots() {
    let f = Fixture::new();
    let out = f.run(&["classify", "--quiver", "@kronecker.quiver"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "ExtendedDynkin"));
    let out = f.run(&["classify", "--quiver", "@wild.quiver"]);
    assert_eq!(stdout(&out).trim(), "Wild");
    let out = f.run(&["classify", "--quiver", "@a3.quiver", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["class"], "Dynkin");
    assert_eq!(doc["type"], "A3");

    let out = f.run(&["roots", "--quiver", "@d4.quiver", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["coxeter_number"], 6);
    assert_eq!(doc["positive_roots"].as_array().unwrap().len(), 12);
    assert_eq!(doc["nakayama_permutation"], serde_json::json!([1, 2, 3, 4]));
    let out = f.run(&["roots", "--quiver", "@a3.quiver"]);
    assert!(stdout(&out).contains("nakayama permutation: 3,2,1"), "{}", stdout(&out));
    let out = f.run(&["roots", "--quiver", "@kronecker.quiver"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn bad_inputs_exit_one() {
    let f = Fixture::new();
    for args in [
        vec!["classify", "--quiver", "@cycle.quiver"],
        vec!["classify", "--quiver", "@broken.quiver"],
        vec!["classify", "--quiver", "@missing.quiver"],
        vec!["series", "--quiver", "@a2.quiver", "--algebra", "nope", "--degree", "3"],
        vec!["oracle", "--quiver", "@a2.quiver", "--algebra", "preproj", "--field", "fp:4"],
        vec!["oracle", "--quiver", "@a2.quiver", "--algebra", "qha", "--field", "fp:5", "--v", "1/2,1"],
        vec!["oracle", "--quiver", "@a2.quiver", "--algebra", "dqha"],
        vec!["oracle", "--quiver", "@a2.quiver", "--algebra", "qha", "--presentation", "eta", "--v", "1,0"],
        vec!["verify", "--quiver", "@a2.quiver", "--algebra", "preproj", "--force-p", "1,1"],
    ] {
        let out = f.run(&args);
        assert_eq!(code(&out), 1, "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
    assert!(stderr(&f.run(&["classify", "--quiver", "@cycle.quiver"])).contains("cycle"));
}

#[test]
fn oracle_matches_series_output() {
    let f = Fixture::new();
    let series = f.run(&["series", "--quiver", "@kronecker.quiver", "--algebra", "qha", "--v", "1,0", "--degree", "7"]);
    let oracle = f.run(&[
        "oracle", "--quiver", "@kronecker.quiver", "--algebra", "qha", "--v", "1,0", "--degree", "7", "--field", "fp:3",
    ]);
    assert_eq!(code(&oracle), 0, "{}", stderr(&oracle));
    assert_eq!(stdout(&series), stdout(&oracle));
    let eta = f.run(&[
        "oracle", "--quiver", "@a3.quiver", "--algebra", "qha", "--v", "1,1,1", "--presentation", "eta",
    ]);
    let z = f.run(&["oracle", "--quiver", "@a3.quiver", "--algebra", "qha", "--v", "1,1,1"]);
    assert_eq!(code(&eta), 0, "{}", stderr(&eta));
    assert_eq!(stdout(&eta), stdout(&z));
}

#[test]
fn verify_reports_agreement() {
    let f = Fixture::new();
    let out = f.run(&[
        "verify", "--quiver", "@a3.quiver", "--algebra", "preproj", "--degree", "8", "--fields", "q,fp:2,fp:5",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("all coefficients match"));
    let out = f.run(&["verify", "--quiver", "@kronecker.quiver", "--algebra", "qha", "--v", "1,0", "--degree", "8"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn wrong_nakayama_is_a_mismatch() {
    let f = Fixture::new();
    let out = f.run(&["verify", "--quiver", "@a2.quiver", "--algebra", "preproj", "--force-p", "identity"]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
    assert!(stdout(&out).contains("mismatch at degree 3"), "{}", stdout(&out));
    let out = f.run(&[
        "verify", "--quiver", "@a2.quiver", "--algebra", "preproj", "--force-p", "identity", "--format", "json",
    ]);
    let doc: Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(doc["fields"][0]["degree"], 3);
    assert_eq!(doc["fields"][0]["match"], false);
    let out = f.run(&["verify", "--quiver", "@a2.quiver", "--algebra", "preproj", "--force-p", "2,1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn cap_exceeded_exits_two() {
    let f = Fixture::new();
    let args = ["oracle", "--quiver", "@wild.quiver", "--algebra", "preproj", "--degree", "8"];
    let out = f.run_env(&args, &[("QH_MONOMIAL_CAP", "100")]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    assert!(stderr(&out).contains("cap"));
    let out = f.run_env(&args, &[("QH_MONOMIAL_CAP", "lots")]);
    assert_eq!(code(&out), 1);
    assert_eq!(code(&f.run(&args)), 0);
}
