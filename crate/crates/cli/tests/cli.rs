use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const A2: &str = r#"{"vertices":["1","2"],"arrows":[{"name":"e","source":"1","target":"2"}]}"#;
const A3: &str = r#"{"vertices":["1","2","3"],"arrows":[
    {"name":"e1","source":"1","target":"2"},{"name":"e2","source":"2","target":"3"}]}"#;
const D4: &str = r#"{"vertices":["a","b","c1","c2"],"arrows":[
    {"name":"alpha","source":"c1","target":"a"},
    {"name":"beta","source":"c1","target":"b"},
    {"name":"gamma1","source":"c1","target":"c2"}]}"#;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture { dir: TempDir::new().unwrap() };
        f.write("a2.json", A2);
        f.write("a3.json", A3);
        f.write("d4.json", D4);
        f
    }

    fn write(&self, name: &str, body: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).display().to_string()
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_qtensor"))
            .args(args)
            .current_dir(self.dir.path())
            .output()
            .unwrap()
    }
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn csv_column(o: &Output, col: usize) -> Vec<String> {
    stdout(o).lines().skip(1).map(|l| l.split(',').nth(col).unwrap().to_string()).collect()
}

#[test]
fn roots_listing() {
    let f = Fixture::new();
    let a3 = f.run(&["roots", "-q", "a3.json"]);
    assert_eq!(code(&a3), 0);
    assert_eq!(json(&a3)["roots"].as_array().unwrap().len(), 6);
    let d4 = json(&f.run(&["roots", "-q", "d4.json"]));
    let roots = d4["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 12);
    assert_eq!(roots.iter().filter(|r| r["kind"].as_str().unwrap().starts_with("twin")).count(), 1);
    assert_eq!(d4["shape"], "D(4)");
    let ids: Vec<&str> = roots.iter().map(|r| r["root"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn malformed_json_is_a_parse_error() {
    let f = Fixture::new();
    f.write("bad.json", "{\"vertices\": [\"1\",\n  oops]}");
    let o = f.run(&["roots", "-q", "bad.json"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(code(&f.run(&["roots", "-q", "missing.json"])), 2);
    assert_eq!(code(&f.run(&["roots"])), 2);
}

#[test]
fn unsupported_shape_exit_code() {
    let f = Fixture::new();
    f.write(
        "cycle.json",
        r#"{"vertices":["1","2"],"arrows":[{"name":"x","source":"1","target":"2"},{"name":"y","source":"2","target":"1"}]}"#,
    );
    assert_eq!(code(&f.run(&["roots", "-q", "cycle.json"])), 3);
    f.write("m.json", r#"{"entries":{"1,0,1":1}}"#);
    assert_eq!(code(&f.run(&["decompose", "-q", "a3.json", "-m", "m.json"])), 3);
}

#[test]
fn bn_tables() {
    let f = Fixture::new();
    f.write("m.json", r#"{"entries":{"1,0,0":1,"1,1,1":1}}"#);
    let o = f.run(&["bn", "-q", "a3.json", "-m", "m.json", "--n-max", "4", "--format", "csv"]);
    assert_eq!(csv_column(&o, 1), ["2", "4", "8", "16"]);
    f.write("unit.json", r#"{"entries":{"1,1,1":1}}"#);
    let o = f.run(&["bn", "-q", "a3.json", "-m", "unit.json", "--n-max", "3", "--format", "csv"]);
    assert_eq!(csv_column(&o, 1), ["1", "1", "1"]);
    assert_eq!(csv_column(&o, 2), ["1", "7", "25"]);
    let zero = f.run(&["bn", "-q", "a3.json", "-m", "unit.json", "--n-max", "0"]);
    assert_eq!(code(&zero), 3);
}

#[test]
fn explicit_and_root_inputs_agree() {
    let f = Fixture::new();
    f.write("roots.json", r#"{"entries":{"1,1,0":2}}"#);
    f.write("explicit.json", r#"{"dims":[2,2,0],"maps":{"e1":[["1","2"],["3","4"]]}}"#);
    let by_roots = f.run(&["bn", "-q", "a3.json", "-m", "roots.json", "--n-max", "5"]);
    let explicit = f.run(&["bn", "-q", "a3.json", "-m", "explicit.json", "--n-max", "5"]);
    assert_eq!(code(&explicit), 0);
    assert_eq!(by_roots.stdout, explicit.stdout);
    let dec = json(&f.run(&["decompose", "-q", "a3.json", "-m", "explicit.json"]));
    assert_eq!(dec["decomposition"]["entries"]["1,1,0"], "2");
}

#[test]
fn twin_square_and_delta_power() {
    let f = Fixture::new();
    f.write("x.json", r#"{"entries":{"1,1,2,1":1}}"#);
    let table = json(&f.run(&["power", "-q", "d4.json", "-m", "x.json", "-n", "2"]));
    let explicit = json(&f.run(&["power", "-q", "d4.json", "-m", "x.json", "-n", "2", "--explicit"]));
    assert_eq!(table, explicit);
    assert_eq!(table["powers"][0]["decomposition"]["summands"], "4");

    f.write("unit.json", r#"{"entries":{"1,1,1":1}}"#);
    // (i, j) goes to block min(i, j); min is associative
    f.write(
        "p.json",
        r#"{"E":{"1":[["1","1"],["1","2"],["2","1"],["1","3"],["3","1"]],"2":[["2","2"],["2","3"],["3","2"]],"3":[["3","3"]]}}"#,
    );
    let d = f.run(&["power", "-q", "a3.json", "-m", "unit.json", "--n-max", "3", "-p", "p.json"]);
    assert_eq!(code(&d), 0, "{}", String::from_utf8_lossy(&d.stderr));
    let powers = json(&d)["powers"].clone();
    let totals: Vec<&str> =
        powers.as_array().unwrap().iter().map(|p| p["decomposition"]["summands"].as_str().unwrap()).collect();
    // 1 + 3^n - 3
    assert_eq!(totals, ["1", "7", "25"]);
    let ex = f.run(&["power", "-q", "a3.json", "-m", "unit.json", "--n-max", "3", "-p", "p.json", "--explicit"]);
    assert_eq!(d.stdout, ex.stdout);
}

#[test]
fn tensor_of_two_modules() {
    let f = Fixture::new();
    f.write("m.json", r#"{"entries":{"1,1,0":1}}"#);
    f.write("n.json", r#"{"entries":{"0,1,1":1}}"#);
    let o = json(&f.run(&["tensor", "-q", "a3.json", "-m", "m.json", "-m", "n.json"]));
    assert_eq!(o["decomposition"]["entries"]["0,1,0"], "1");
    assert_eq!(o["decomposition"]["summands"], "1");
}

#[test]
fn explicit_bound_is_enforced() {
    let f = Fixture::new();
    f.write("m.json", r#"{"entries":{"1,1":3}}"#);
    let o = f.run(&["power", "-q", "a2.json", "-m", "m.json", "-n", "9", "--explicit"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-dim"));
    let ok = f.run(&["power", "-q", "a2.json", "-m", "m.json", "-n", "9"]);
    assert_eq!(code(&ok), 0);
}

#[test]
fn delta_enumeration_and_validation() {
    let f = Fixture::new();
    let o = json(&f.run(&["delta-enum", "-q", "a2.json", "--all"]));
    assert_eq!(o["count"], 4);
    assert_eq!(o["candidates"], "4");
    let o = json(&f.run(&["delta-enum", "-q", "a3.json"]));
    assert_eq!(o["candidates"], "729");
    f.write("bad.json", r#"{"E":{"1":[["1","2"]],"2":[["2","1"]]}}"#);
    assert_eq!(code(&f.run(&["delta-enum", "-q", "a2.json", "-p", "bad.json"])), 3);
    f.write("good.json", r#"{"E":{"1":[["1","1"],["1","2"]],"2":[["2","1"],["2","2"]]}}"#);
    let o = json(&f.run(&["delta-enum", "-q", "a2.json", "-p", "good.json", "-n", "3"]));
    assert_eq!(o["validation"]["valid"], true);
    assert_eq!(o["left_is_partition"], true);
    f.write("unknown.json", r#"{"E":{"9":[["1","1"]]}}"#);
    assert_eq!(code(&f.run(&["delta-enum", "-q", "a2.json", "-p", "unknown.json"])), 2);
}

#[test]
fn verify_suites() {
    let f = Fixture::new();
    let d = f.run(&["verify", "--suite", "formulaD", "-q", "d4.json", "--trials", "50"]);
    assert_eq!(code(&d), 0);
    let r = json(&d);
    assert_eq!(r["passed"], true);
    let p = &r["points"][0];
    for key in ["quiver_hash", "orientation", "M", "n", "formula_value", "oracle_value", "match"] {
        assert!(p.get(key).is_some(), "{key}");
    }
    let delta = json(&f.run(&["verify", "--suite", "delta", "-q", "a2.json"]));
    assert_eq!(delta["summary"]["coassociative_specs"][0], 4);
    assert_eq!(code(&f.run(&["verify", "--suite", "chains", "-q", "a3.json", "-n", "4"])), 0);
    assert_eq!(code(&f.run(&["verify", "--suite", "formulaA", "-q", "a3.json"])), 0);
    assert_eq!(code(&f.run(&["verify", "--suite", "power-identity", "-q", "d4.json", "--trials", "3"])), 0);
    assert_eq!(code(&f.run(&["verify", "--suite", "twin-branch", "-q", "d4.json"])), 0);
    let prop = f.run(&["verify", "--suite", "twin-branch", "-q", "d4.json", "--twin-branch", "prop"]);
    assert_eq!(code(&prop), 1);
    assert!(String::from_utf8_lossy(&prop.stderr).contains("first mismatch"));
    assert_eq!(code(&f.run(&["verify", "--suite", "nope", "-q", "d4.json"])), 2);
}

#[test]
fn output_is_deterministic_with_and_without_cache() {
    let f = Fixture::new();
    f.write("x.json", r#"{"entries":{"1,1,2,1":2,"0,0,1,0":1}}"#);
    let args = ["verify", "--suite", "formulaD", "-q", "d4.json", "--trials", "5", "--seed", "9"];
    let first = f.run(&args);
    let second = f.run(&args);
    assert_eq!(first.stdout, second.stdout);

    let plain = f.run(&["bn", "-q", "d4.json", "-m", "x.json", "--n-max", "6", "--method", "table"]);
    let cache = f.path("cache");
    let miss = f.run(&["bn", "-q", "d4.json", "-m", "x.json", "--n-max", "6", "--method", "table", "--cache-dir", &cache]);
    assert!(fs::read_dir(Path::new(&cache)).unwrap().next().is_some());
    let hit = f.run(&["bn", "-q", "d4.json", "-m", "x.json", "--n-max", "6", "--method", "table", "--cache-dir", &cache]);
    assert_eq!(plain.stdout, miss.stdout);
    assert_eq!(miss.stdout, hit.stdout);
    let formula = f.run(&["bn", "-q", "d4.json", "-m", "x.json", "--n-max", "6"]);
    assert_eq!(csv_like_rows(&formula), csv_like_rows(&plain));
}

fn csv_like_rows(o: &Output) -> Value {
    json(o)["rows"].clone()
}

#[test]
fn reverse_flag_changes_orientation() {
    let f = Fixture::new();
    let plain = json(&f.run(&["roots", "-q", "a3.json"]));
    let rev = json(&f.run(&["roots", "-q", "a3.json", "--reverse", "e1"]));
    assert_ne!(plain["quiver_hash"], rev["quiver_hash"]);
    assert_eq!(code(&f.run(&["roots", "-q", "a3.json", "--reverse", "zz"])), 2);
}

#[test]
fn beta_estimates() {
    let f = Fixture::new();
    f.write("m.json", r#"{"entries":{"1,0,0":1,"1,1,1":1}}"#);
    let o = json(&f.run(&["beta", "-q", "a3.json", "-m", "m.json", "--n-max", "3", "--digits", "5"]));
    assert_eq!(o["estimates"][2]["beta_estimate"], "2.0000");
    assert_eq!(o["max_vertex_dim"], "2");
}
