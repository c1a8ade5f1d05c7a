use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use brieskorn::{GeneratorCounts, Nat};
use brieskorn_cli::{Body, Input, OutputEnvelope};
use serde_json::Value;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn brieskorn(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_brieskorn"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().expect("exited"),
    }
}

fn json(args: &[&str]) -> (Value, i32) {
    let r = brieskorn(args);
    let v = serde_json::from_str(&r.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\nstdout: {}\nstderr: {}", r.stdout, r.stderr));
    (v, r.code)
}

fn ranks(v: &Value) -> BTreeMap<i64, u64> {
    v["payload"]["ranks"]["ranks"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, r)| (k.parse().unwrap(), r.as_u64().unwrap()))
        .collect()
}

fn write_counts(dir: &Path, name: &str, counts: GeneratorCounts) -> PathBuf {
    let env = OutputEnvelope::new(Body::Sum(counts), Input::default());
    let path = dir.join(name);
    std::fs::write(&path, env.to_json()).unwrap();
    path
}

fn counts(n: u64, cutoff: i64, pairs: &[(i64, u64)]) -> GeneratorCounts {
    GeneratorCounts {
        counts: pairs.iter().map(|&(d, c)| (d, Nat::from(c))).collect(),
        cutoff,
        half_dim_n: n,
    }
}

#[test]
fn homology_examples() {
    let (v, code) = json(&["homology", "4", "2", "2", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "homology");
    assert_eq!(v["payload"]["middle_rank"], 1);
    assert_eq!(v["payload"]["torsion"], Value::Array(vec![]));

    let (v, code) = json(&["homology", "7", "7", "7", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["middle_rank"], 186);
}

#[test]
fn malformed_exponents_exit_1() {
    for args in [
        &["homology", "2", "2"][..],
        &["homology", "4", "1", "2", "2"],
        &["homology", "4", "x", "2", "2"],
        &["homology", "4", "2.5", "2", "2"],
        &["orbits", "3", "-3", "2", "2"],
        &["ch", "2", "2"],
    ] {
        let r = brieskorn(args);
        assert_eq!(r.code, 1, "{args:?}");
        assert!(r.stdout.is_empty());
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn usage_errors() {
    assert_eq!(brieskorn(&[]).code, 1);
    assert_eq!(brieskorn(&["frobnicate"]).code, 1);
    assert_eq!(
        brieskorn(&["ch", "6", "2", "2", "2", "--window", "5:1"]).code,
        1
    );
    assert_eq!(
        brieskorn(&["ch", "6", "2", "2", "2", "--window", "5"]).code,
        1
    );
    assert_eq!(
        brieskorn(&["--format", "yaml", "homology", "2", "2", "2", "2"]).code,
        1
    );
    let help = brieskorn(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("Usage"));
    assert_eq!(brieskorn(&["--version"]).code, 0);
}

#[test]
fn orbits_examples() {
    let (v, code) = json(&["orbits", "6", "2", "2", "2"]);
    assert_eq!(code, 0);
    let ms: Vec<u64> = v["payload"]["types"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["m"].as_u64().unwrap())
        .collect();
    assert_eq!(ms, [2, 6]);
    assert_eq!(v["payload"]["character"]["kind"], "Positive");

    let (v, _) = json(&["orbits", "7", "7", "7", "7"]);
    assert_eq!(v["payload"]["types"].as_array().unwrap().len(), 1);

    let (v, code) = json(&["orbits", "4", "4", "4", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["character"]["kind"], "Degenerate");
    assert_eq!(v["payload"]["types"].as_array().unwrap().len(), 1);
}

#[test]
fn ch_examples() {
    let (v, code) = json(&["ch", "6", "2", "2", "2", "--window", "0:12"]);
    assert_eq!(code, 0);
    let expected: BTreeMap<i64, u64> = [(2, 1), (4, 2), (6, 2), (8, 2), (10, 2), (12, 2)].into();
    assert_eq!(ranks(&v), expected);
    assert_eq!(v["payload"]["contributions"], Value::Array(vec![]));

    let r = brieskorn(&["ch", "4", "4", "4", "4", "--window", "0:10"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("degree-0"));

    // both spellings of a negative window
    for args in [
        &["ch", "7", "7", "7", "7", "--window", "-30:0"][..],
        &["ch", "7", "7", "7", "7", "--window=-30:0"],
    ] {
        let (v, code) = json(args);
        assert_eq!(code, 0);
        let r = ranks(&v);
        assert!(!r.is_empty());
        assert!(r.keys().all(|&d| d < 0 && d % 2 == 0));
        assert_eq!(r[&-6], 187);
    }
}

#[test]
fn ch_not_well_defined_exit_3() {
    let (v, code) = json(&["ch", "2", "3", "7", "11", "--window", "0:4"]);
    assert_eq!(code, 3);
    assert_eq!(v["payload"]["well_defined"], false);
    assert_eq!(ranks(&v)[&0], 1);
}

#[test]
fn ch_default_window_is_reported() {
    let r = brieskorn(&["ch", "6", "2", "2", "2"]);
    assert_eq!(r.code, 0);
    assert!(r.stderr.contains("window defaulted to 2:18"));
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["input"]["window"]["lo"], 2);
    assert_eq!(v["input"]["window"]["hi"], 18);
}

#[test]
fn ch_provenance_and_crosscheck() {
    let (v, code) = json(&[
        "ch",
        "6",
        "2",
        "2",
        "2",
        "--window",
        "0:12",
        "--provenance",
        "--crosscheck",
    ]);
    assert_eq!(code, 0);
    let contributions = v["payload"]["contributions"].as_array().unwrap();
    let total: u64 = contributions
        .iter()
        .map(|c| c["rank"].as_u64().unwrap())
        .sum();
    assert_eq!(total, ranks(&v).values().sum::<u64>());
    let diag = v["diagnostics"].as_array().unwrap();
    assert!(diag
        .iter()
        .any(|d| d.as_str().unwrap().starts_with("crosscheck:")));
}

#[test]
fn sum_beta_ladder() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_counts(dir.path(), "a.json", GeneratorCounts::empty(3, 20));
    let b = write_counts(dir.path(), "b.json", GeneratorCounts::empty(3, 20));
    let (v, code) = json(&[
        "sum",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--beta-n",
        "3",
        "--cutoff",
        "9",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "sum");
    let c: GeneratorCounts = serde_json::from_value(v["payload"].clone()).unwrap();
    assert_eq!(c, counts(3, 9, &[(3, 1), (5, 1), (7, 1), (9, 1)]));
}

#[test]
fn sum_repeated_sphere_file() {
    let dir = tempfile::tempdir().unwrap();
    let s = write_counts(dir.path(), "s.json", counts(5, 10, &[(6, 2)]));
    let s = s.to_str().unwrap();
    let (v, code) = json(&["sum", s, s, s, "--beta-n", "5"]);
    assert_eq!(code, 0);
    let c: GeneratorCounts = serde_json::from_value(v["payload"].clone()).unwrap();
    assert_eq!(c.count(6), 6u64);
    assert_eq!(c.count(7), 2u64);
}

#[test]
fn sum_accepts_ch_envelopes() {
    let dir = tempfile::tempdir().unwrap();
    let r = brieskorn(&["ch", "3", "5", "2", "2", "--window", "0:9"]);
    assert_eq!(r.code, 0);
    let path = dir.path().join("sphere.json");
    std::fs::write(&path, &r.stdout).unwrap();
    let p = path.to_str().unwrap();
    let (v, code) = json(&["sum", p, p, "--beta-n", "3"]);
    assert_eq!(code, 0);
    let c: GeneratorCounts = serde_json::from_value(v["payload"].clone()).unwrap();
    assert_eq!(c.count(2), 4u64);
    assert_eq!(c.count(3), 1u64);
    assert_eq!(c.cutoff, 9);
}

#[test]
fn sum_rejects_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let three = write_counts(dir.path(), "3.json", GeneratorCounts::empty(3, 9));
    let four = write_counts(dir.path(), "4.json", GeneratorCounts::empty(4, 9));
    let three = three.to_str().unwrap();
    let four = four.to_str().unwrap();

    assert_eq!(brieskorn(&["sum", three, four, "--beta-n", "3"]).code, 1);
    assert_eq!(brieskorn(&["sum", three, "--beta-n", "4"]).code, 1);

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"hello\": 1}").unwrap();
    assert_eq!(
        brieskorn(&["sum", garbage.to_str().unwrap(), "--beta-n", "3"]).code,
        1
    );

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(three).unwrap()).unwrap();
    v["schema_version"] = "2".into();
    let future = dir.path().join("future.json");
    std::fs::write(&future, v.to_string()).unwrap();
    let r = brieskorn(&["sum", future.to_str().unwrap(), "--beta-n", "3"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("schema version"));

    let h = dir.path().join("homology.json");
    std::fs::write(&h, brieskorn(&["homology", "2", "2", "2", "2"]).stdout).unwrap();
    assert_eq!(
        brieskorn(&["sum", h.to_str().unwrap(), "--beta-n", "3"]).code,
        1
    );

    let missing = dir.path().join("missing.json");
    assert_eq!(
        brieskorn(&["sum", missing.to_str().unwrap(), "--beta-n", "3"]).code,
        1
    );
}

#[test]
fn exotic_valid_tuple() {
    let (v, code) = json(&["exotic", "--primes", "3", "5", "--copies", "3"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["verdict"]["passed"], true);
    let at_low: Vec<u64> = p["sums"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["generators_2n_minus_4"].as_u64().unwrap())
        .collect();
    assert_eq!(at_low, [2, 4, 6]);
    assert_eq!(p["strictly_increasing"], true);
}

#[test]
fn exotic_single_copy_is_the_sphere() {
    let (v, code) = json(&["exotic", "--primes", "3", "5"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["sums"].as_array().unwrap().len(), 1);
    assert_eq!(p["sums"][0]["counts"], p["sphere"]);
}

#[test]
fn exotic_failing_tuple_exit_4() {
    let r = brieskorn(&["exotic", "--primes", "3", "3"]);
    assert_eq!(r.code, 4);
    assert!(r.stderr.contains("homotopy_sphere"));
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["payload"]["verdict"]["passed"], false);
    // not odd primes: input error, not a failed check
    assert_eq!(brieskorn(&["exotic", "--primes", "3", "9"]).code, 1);
    assert_eq!(
        brieskorn(&["exotic", "--primes", "3", "5", "--copies", "0"]).code,
        1
    );
}

const SAMPLES: &[&[&str]] = &[
    &["homology", "7", "7", "7", "7"],
    &["homology", "2", "3", "3", "3", "3"],
    &["orbits", "3", "5", "2", "2"],
    &["ch", "6", "2", "2", "2", "--window", "0:12", "--provenance"],
    &["ch", "7", "7", "7", "7", "--window", "-20:0"],
    &["exotic", "--primes", "3", "5", "--copies", "2"],
];

#[test]
fn envelopes_round_trip_and_are_deterministic() {
    for args in SAMPLES {
        let first = brieskorn(args).stdout;
        assert_eq!(first, brieskorn(args).stdout, "{args:?}");
        let env: OutputEnvelope = serde_json::from_str(&first).unwrap();
        assert_eq!(env.to_json(), first, "{args:?}");
        let again: OutputEnvelope = serde_json::from_str(&env.to_json()).unwrap();
        assert_eq!(again, env);
    }
}

// rows of the first table whose header starts with `first_col`
fn text_table(text: &str, first_col: &str) -> Vec<Vec<String>> {
    let mut lines = text
        .lines()
        .skip_while(|l| !l.trim_start().starts_with(first_col));
    lines.next().expect("table header");
    lines
        .take_while(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect()
}

#[test]
fn text_and_json_agree() {
    let args = ["ch", "7", "7", "7", "7", "--window", "-30:0"];
    let (v, _) = json(&args);
    let mut text_args = args.to_vec();
    text_args.extend(["--format", "text"]);
    let text = brieskorn(&text_args).stdout;
    let from_text: BTreeMap<i64, u64> = text_table(&text, "degree")
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect();
    assert_eq!(from_text, ranks(&v));
    assert!(text.contains(&format!(
        "period_shift     {}",
        v["payload"]["period_shift"]
    )));

    let args = ["orbits", "3", "5", "2", "2"];
    let (v, _) = json(&args);
    let text = brieskorn(&[&args[..], &["--format", "text"]].concat()).stdout;
    let rows = text_table(&text, "m ");
    let types = v["payload"]["types"].as_array().unwrap();
    assert_eq!(rows.len(), types.len());
    for (row, t) in rows.iter().zip(types) {
        assert_eq!(row[0], t["m"].to_string());
        assert_eq!(row[2], t["orbit_space_dim"].to_string());
        assert_eq!(row[3], t["kappa"].to_string());
    }

    let args = ["exotic", "--primes", "3", "5", "--copies", "4"];
    let (v, _) = json(&args);
    let text = brieskorn(&[&args[..], &["--format", "text"]].concat()).stdout;
    let rows = text_table(&text, "copies");
    for (row, s) in rows.iter().zip(v["payload"]["sums"].as_array().unwrap()) {
        assert_eq!(row[1], s["generators_2n_minus_4"].to_string());
        assert_eq!(row[2], s["generators_2n_minus_3"].to_string());
    }
}

#[test]
fn in_process_run_matches_binary() {
    let args = ["ch", "6", "2", "2", "2", "--window", "0:12"];
    let exec = brieskorn_cli::run(std::iter::once("brieskorn").chain(args));
    let bin = brieskorn(&args);
    assert_eq!(exec.stdout, bin.stdout);
    assert_eq!(exec.code, bin.code);
}
