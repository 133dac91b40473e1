use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use purecubic_cli::report::{Report, ResultItem, Status};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_purecubic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn report(args: &[&str]) -> (Report, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    let r: Report = serde_json::from_str(&stdout(&o)).expect("report parses");
    (r, code(&o))
}

fn cache_lines(path: &Path) -> Vec<u64> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| {
            serde_json::from_str::<Value>(l).unwrap()["p"]
                .as_u64()
                .unwrap()
        })
        .collect()
}

fn scanned(r: &Report) -> Vec<u64> {
    r.results
        .iter()
        .map(|i| match i {
            ResultItem::Scan(s) => s.p,
            other => panic!("unexpected {other:?}"),
        })
        .collect()
}

#[test]
fn scan_to_500_finds_both_table_primes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let (r, c) = report(&["scan", "--max-p", "500", "--cache", cache.to_str().unwrap()]);
    assert_eq!(c, 0);
    let ps = scanned(&r);
    assert!(ps.contains(&199) && ps.contains(&487));
    for i in &r.results {
        if let ResultItem::Scan(s) = i {
            assert_eq!(s.p % 9, 1);
            assert!(!s.three_symbol_trivial);
            let typed = s.k_type == "(9,3)";
            assert_eq!(typed, s.p == 199 || s.p == 487, "p = {}", s.p);
        }
    }
}

#[test]
fn scan_to_100_has_no_type_93() {
    let (r, c) = report(&["scan", "--max-p", "100"]);
    assert_eq!(c, 0);
    assert_eq!(scanned(&r), vec![19, 37]);
    assert!(r
        .results
        .iter()
        .all(|i| matches!(i, ResultItem::Scan(s) if s.k_type != "(9,3)")));
}

#[test]
fn rerun_reuses_cache_without_duplicates() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let c = cache.to_str().unwrap();
    let (first, _) = report(&["scan", "--max-p", "200", "--cache", c]);
    let lines = cache_lines(&cache);
    let (second, _) = report(&["scan", "--max-p", "200", "--cache", c]);
    assert_eq!(cache_lines(&cache), lines);
    assert_eq!(first.results, second.results);
    let mut sorted = lines.clone();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len(), lines.len());
}

#[test]
fn corrupted_trailing_line_is_truncated() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let c = cache.to_str().unwrap();
    report(&["scan", "--max-p", "40", "--cache", c]);
    let good = fs::read_to_string(&cache).unwrap();
    fs::write(&cache, format!("{good}{{\"p\": 10")).unwrap();
    let o = run(&["scan", "--max-p", "40", "--cache", c]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(fs::read_to_string(&cache).unwrap(), good);
}

#[test]
fn corrupted_interior_line_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let c = cache.to_str().unwrap();
    report(&["scan", "--max-p", "40", "--cache", c]);
    let good = fs::read_to_string(&cache).unwrap();
    fs::write(&cache, format!("garbage\n{good}")).unwrap();
    assert_eq!(code(&run(&["scan", "--max-p", "40", "--cache", c])), 2);
}

#[test]
fn unwritable_cache_is_an_environment_error() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("missing").join("c.jsonl");
    let o = run(&["scan", "--max-p", "40", "--cache", cache.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn table1_row_199_matches() {
    let (r, c) = report(&["table1", "--primes", "199"]);
    assert_eq!(c, 0);
    assert_eq!(r.status, Status::Ok);
    match &r.results[..] {
        [ResultItem::Table1(row)] => {
            assert_eq!(row.k_type, "(9,3)");
            assert_eq!(row.h_gamma3_divisors.as_deref(), Some(&[9][..]));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn table1_unit_index_override_breaks_the_row() {
    let (r, c) = report(&["table1", "--primes", "199", "--u", "199=3"]);
    assert_eq!(c, 1);
    assert_eq!(r.status, Status::Mismatch);
}

#[test]
fn split_of_three_over_199() {
    let o = run(&["split", "--d", "199", "--q", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("𝔓₁²𝔓₂²𝔓₃²"));
    let (r, _) = report(&["split", "--d", "199", "--q", "3"]);
    match &r.results[..] {
        [ResultItem::Split(s)] => {
            assert_eq!(s.field_kind, "second");
            assert_eq!(s.k.primes, vec![(2, 1); 3]);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn symbols_of_199() {
    let (r, c) = report(&["symbols", "--p", "199", "--c", "-3"]);
    assert_eq!(c, 0);
    match &r.results[..] {
        [ResultItem::Symbols(s)] => {
            assert_eq!(s.p_mod9, 1);
            assert!(s.three_symbol_nontrivial);
            assert!(s.zeta_is_local_norm);
            assert_eq!(s.ambiguous_order, 3);
            assert_eq!(s.extra.map(|(c, _)| c), Some(-3));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn classgroup_of_7() {
    let (r, c) = report(&["classgroup", "--d", "7"]);
    assert_eq!(c, 0);
    match &r.results[..] {
        [ResultItem::ClassGroup(g)] => assert_eq!(g.structure.as_ref().map(|s| s.h), Some(3)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn model_check_passes_and_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let (r, c) = report(&["model-check", "--out", out.to_str().unwrap()]);
    assert_eq!(c, 0);
    let written: Report = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written.results, r.results);
}

#[test]
fn relaxed_model_check_notes_enlarged_set() {
    let (r, _) = report(&["model-check", "--drop", "dihedral"]);
    assert!(
        r.notes.iter().any(|n| n.contains("enlarged")),
        "{:?}",
        r.notes
    );
}

#[test]
fn json_round_trips_and_has_schema_keys() {
    let schema: Value =
        serde_json::from_str(include_str!("../schema/report.schema.json")).expect("schema parses");
    let required: Vec<&str> = schema["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    for args in [
        &["split", "--d", "10", "--q", "5", "--json"][..],
        &["symbols", "--p", "487", "--json"],
    ] {
        let text = stdout(&run(args));
        let raw: Value = serde_json::from_str(&text).unwrap();
        for key in &required {
            assert!(raw.get(key).is_some(), "missing {key}");
        }
        let parsed: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_value(&parsed).unwrap(), raw);
    }
}

#[test]
fn csv_has_one_row_per_result() {
    let o = run(&["scan", "--max-p", "100", "--no-classgroup", "--csv"]);
    assert_eq!(code(&o), 0);
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "p"));
    assert_eq!(reader.records().count(), 2);
}

#[test]
fn invalid_arguments_exit_with_2() {
    assert_eq!(code(&run(&["scan", "--max-p", "10"])), 2);
    assert_eq!(code(&run(&["split", "--d", "8", "--q", "3"])), 2);
    assert_eq!(code(&run(&["symbols", "--p", "5"])), 2);
    assert_eq!(code(&run(&["classgroup", "--d", "7", "--budget", "0"])), 2);
    assert_eq!(
        code(&run(&["table1", "--primes", "199", "--u", "199=2"])),
        2
    );
    assert_eq!(code(&run(&["nonsense"])), 2);
    assert_eq!(code(&run(&["scan", "--max-p", "40", "--json", "--csv"])), 2);
}

#[test]
fn errors_in_json_mode_still_emit_a_report() {
    let o = run(&["symbols", "--p", "5", "--json"]);
    assert_eq!(code(&o), 2);
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.status, Status::Error);
}
