use std::path::Path;

use symspan::cache::CacheFile;
use symspan::cli::{exit, report_verification, run_args, ComputedTables};
use symspan::golden::GoldenTables;
use symspan::rank::Method;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["symspan"];
    full.extend_from_slice(args);
    let code = run_args(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn cache_arg(dir: &Path) -> String {
    dir.join("cache.json").to_string_lossy().into_owned()
}

#[test]
fn dims_exact_and_modular() {
    let dir = tempfile::tempdir().unwrap();
    let cache = cache_arg(dir.path());
    let (code, out, _) = run(&["dims", "--n-max", "7", "--method", "exact", "--cache", &cache]);
    assert_eq!(code, exit::OK);
    let last = out.lines().last().unwrap();
    assert_eq!(last.split_whitespace().collect::<Vec<_>>(), ["7", "13", "exact"]);

    let (code, out, _) = run(&["dims", "--n-max", "1", "--no-cache", "--format", "csv"]);
    assert_eq!(code, exit::OK);
    assert_eq!(out, "n,D,method,primes\n1,1,modular-consensus,1048583;1048589\n");

    let (_, out, _) = run(&["dims", "--n-max", "3", "--no-cache"]);
    assert!(out.starts_with("# method: modular-consensus  primes: 1048583,1048589\n"));
}

#[test]
fn dims_modular_matches_table_one() {
    let golden = symspan::golden::GoldenTables::embedded();
    let (code, out, _) = run(&["dims", "--n-max", "23", "--no-cache", "--format", "json"]);
    assert_eq!(code, exit::OK);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 23);
    for row in rows {
        let n = row["n"].as_u64().unwrap() as usize;
        assert_eq!(row["D"].as_u64(), golden.d(n));
        assert_eq!(row["method"], "modular-consensus");
    }
    assert_eq!(doc["primes"], serde_json::json!([1048583, 1048589]));
}

#[test]
fn cache_keeps_exact_over_modular() {
    let dir = tempfile::tempdir().unwrap();
    let cache = cache_arg(dir.path());
    assert_eq!(run(&["dims", "--n-max", "8", "--cache", &cache]).0, exit::OK);
    let c = CacheFile::load(Path::new(&cache)).unwrap();
    assert_eq!(c.get(8).unwrap().method, Method::ModularConsensus);
    assert_eq!(c.get(8).unwrap().primes, vec![1_048_583, 1_048_589]);

    assert_eq!(run(&["dims", "--n-max", "8", "--method", "exact", "--cache", &cache]).0, exit::OK);
    assert_eq!(run(&["dims", "--n-max", "9", "--cache", &cache]).0, exit::OK);
    let c = CacheFile::load(Path::new(&cache)).unwrap();
    assert!((1..=8).all(|n| c.get(n).unwrap().method == Method::Exact));
    assert_eq!(c.get(9).unwrap().method, Method::ModularConsensus);

    // Cached exact values satisfy a modular request.
    let (_, out, _) = run(&["dims", "--n-max", "9", "--cache", &cache, "--format", "csv"]);
    assert!(out.contains("\n8,19,exact,\n"));
    assert!(out.ends_with("9,23,modular-consensus,1048583;1048589\n"));
}

#[test]
fn usage_and_resource_exit_codes() {
    assert_eq!(run(&["dims"]).0, exit::USAGE);
    assert_eq!(run(&["dims", "--n-max", "0"]).0, exit::USAGE);
    assert_eq!(run(&["dims", "--n-max", "3", "--format", "xml"]).0, exit::USAGE);
    assert_eq!(run(&["dims", "--n-max", "3", "--no-cache", "--primes", "5,7"]).0, exit::USAGE);
    assert_eq!(
        run(&["dims", "--n-max", "3", "--no-cache", "--primes", "1048583,1048583"]).0,
        exit::USAGE
    );
    let (code, _, err) = run(&[
        "dims", "--n-max", "20", "--method", "exact", "--no-cache", "--memory-budget", "1",
    ]);
    assert_eq!(code, exit::RESOURCE);
    assert!(err.contains("budget"));
    assert_eq!(run(&["relations", "--n", "20", "--memory-budget", "1"]).0, exit::RESOURCE);
    assert_eq!(run(&["nu"]).0, exit::USAGE);
    assert_eq!(run(&["bounds", "--n-max", "4", "--format", "yaml"]).0, exit::USAGE);
}

#[test]
fn bounds_table_two_columns() {
    let golden = symspan::golden::GoldenTables::embedded();
    let (code, out, err) = run(&["bounds", "--n-max", "23", "--format", "csv"]);
    assert_eq!(code, exit::OK);
    assert_eq!(err, "chain violations: none\n");
    let rows = symspan::bounds::read_csv(out.as_bytes()).unwrap();
    for (row, g) in rows.iter().zip(&golden.table2) {
        assert_eq!((row.n, row.e, row.h), (g.n, g.e, g.h));
        // The one printed value that disagrees with its definition.
        if row.n == 12 {
            assert_eq!((row.g, g.g), (25, 32));
        } else {
            assert_eq!(row.g, g.g, "n = {}", row.n);
        }
        assert_eq!(row.d, None);
    }
    let mut again = Vec::new();
    symspan::bounds::write_csv_rows(&rows, &mut again).unwrap();
    assert_eq!(again, out.as_bytes());

    let (_, out, _) = run(&["bounds", "--n-max", "1", "--format", "csv"]);
    assert_eq!(out, "n,D,U,E,G,H,P,eq2\n1,,1,1,0,0,1,1\n");

    let (code, out, _) = run(&["bounds", "--n-max", "23"]);
    assert_eq!(code, exit::OK);
    assert!(out.ends_with("chain violations: none\n"));
}

#[test]
fn bounds_with_d_and_gap() {
    let (code, out, _) = run(&["bounds", "--n-max", "20", "--include-d", "--no-cache", "--format", "json"]);
    assert_eq!(code, exit::OK);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["chain_violations"], serde_json::json!([]));
    let r19 = &doc["records"][18];
    assert_eq!(r19["n"], 19);
    assert_eq!(r19["D"]["value"], 118);
    assert_eq!(r19["D"]["method"], "modular-consensus");
    assert_eq!(r19["U"], 119);
    assert_eq!(r19["gap"], 1);
    assert_eq!(doc["records"][5]["gap"], 0);
}

#[test]
fn relations_for_six_and_seven() {
    let (code, out, err) = run(&["relations", "--n", "6"]);
    assert_eq!(code, exit::OK);
    let set: symspan::rank::CertificateSet = serde_json::from_str(&out).unwrap();
    assert!(set.relations.is_empty());
    assert!(err.contains("= 0"));

    let (code, out, err) = run(&["relations", "--n", "7"]);
    assert_eq!(code, exit::OK);
    let set: symspan::rank::CertificateSet = serde_json::from_str(&out).unwrap();
    assert_eq!(set.n, 7);
    assert_eq!(set.relations.len(), 2);
    assert!(set.relations.iter().all(|r| r.verified));
    assert!(err.contains("count = P(7) - D(7) = 15 - 13 = 2"));

    // Output is byte-stable.
    assert_eq!(run(&["relations", "--n", "7"]).1, out);
}

#[test]
fn relations_check_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("known_relations.json");
    std::fs::write(
        &path,
        r#"{"n": 7, "relations": [
            {"terms": [{"partition": [2,2,1,1,1], "coeff": 4},
                       {"partition": [3,1,1,1,1], "coeff": -3},
                       {"partition": [3,2,2], "coeff": -1}]},
            {"terms": [{"partition": [3,2,1,1], "coeff": 3},
                       {"partition": [4,1,1,1], "coeff": -2},
                       {"partition": [4,3], "coeff": -1}]}
        ]}"#,
    )
    .unwrap();
    let p = path.to_string_lossy().into_owned();
    let (code, _, err) = run(&["relations", "--n", "7", "--check-file", &p]);
    assert_eq!(code, exit::OK, "{err}");
    assert_eq!(err.matches("verifies=yes in_span=yes").count(), 2);

    std::fs::write(
        &path,
        r#"{"n": 7, "relations": [{"terms": [{"partition": [7], "coeff": 1}]}]}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["relations", "--n", "7", "--check-file", &p, "--format", "table"]);
    assert_eq!(code, exit::MISMATCH);
    assert!(out.contains("verifies=no in_span=no"));

    assert_eq!(run(&["relations", "--n", "8", "--check-file", &p]).0, exit::USAGE);
}

#[test]
fn nu_command() {
    let (code, out, _) = run(&["nu", "--decompose", "26"]);
    assert_eq!(code, exit::OK);
    assert_eq!(out, "26 = C(7,2)+C(3,2)+C(2,2)+C(2,2), ν=14\n");

    let (code, out, _) = run(&["nu", "--verify", "405", "50000"]);
    assert_eq!(code, exit::OK);
    assert!(out.contains("(49596 values): 0 violations"));

    let (code, out, _) = run(&["nu", "--max-below", "405"]);
    assert_eq!(code, exit::OK);
    assert_eq!(out, "max ν = 42 at m = 404\n");

    assert_eq!(run(&["nu", "--verify", "404", "500"]).0, exit::USAGE);
}

#[test]
fn character_command() {
    let (code, out, _) = run(&["character", "--lambda", "7", "--n-max", "21"]);
    assert_eq!(code, exit::OK);
    let expected: Vec<String> = (0..=21).map(|i| ((i % 7 == 0) as u8).to_string()).collect();
    assert_eq!(out.trim_end(), expected.join(","));

    let (_, out, _) = run(&["character", "--lambda", "1,1,1", "--n-max", "3"]);
    assert_eq!(out, "1,3,6,10\n");

    let (code, out, err) = run(&["character", "--lambda", "2,3,2", "--n-max", "5", "--format", "json"]);
    assert_eq!(code, exit::OK);
    assert!(err.contains("warning"));
    assert_eq!(out, "{\"lambda\":[3,2,2],\"values\":[1,0,2,1,3,2]}\n");

    for bad in ["0,1", "-1", "a,b", ""] {
        assert_eq!(run(&["character", "--lambda", bad]).0, exit::USAGE, "{bad:?}");
    }
}

#[test]
fn character_values_satisfy_the_count_identity() {
    // 4·χ_N((2,2)-cycle) = 3·χ_N(3-cycle) + χ_N((3,2,2)-cycle) in S_7.
    let values = |lambda: &str| -> Vec<i64> {
        let (_, out, _) = run(&["character", "--lambda", lambda, "--n-max", "40", "--format", "csv"]);
        out.lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    let a = values("2,2,1,1,1");
    let b = values("3,1,1,1,1");
    let c = values("3,2,2");
    for big_n in 0..=40 {
        assert_eq!(4 * a[big_n], 3 * b[big_n] + c[big_n], "N = {big_n}");
    }
}

fn tables_from_golden(golden: &GoldenTables) -> ComputedTables {
    ComputedTables {
        d: golden.table1.iter().map(|r| r.d).collect(),
        u: golden.table1.iter().map(|r| r.u as i64).collect(),
        eq2: golden.table1.iter().map(|r| r.eq2).collect(),
        p: golden.table1.iter().map(|r| r.p).collect(),
        e: golden.table2.iter().map(|r| r.e).collect(),
        g: golden.table2.iter().map(|r| r.g).collect(),
        h: golden.table2.iter().map(|r| r.h).collect(),
    }
}

#[test]
fn corrupted_golden_entry_is_reported() {
    let golden = GoldenTables::embedded();
    let computed = tables_from_golden(&golden);

    let mut out = Vec::new();
    assert_eq!(report_verification(&golden, &computed, &mut out).unwrap(), 0);

    let mut corrupted = golden.clone();
    corrupted.table1[9].d += 1;
    let mut out = Vec::new();
    assert_eq!(report_verification(&corrupted, &computed, &mut out).unwrap(), 1);
    let text = String::from_utf8(out).unwrap();
    assert!(
        text.contains("mismatch: table 1, n = 10, column D: expected 30, computed 29"),
        "{text}"
    );
    assert!(text.contains("1 mismatch(es) in total"), "{text}");
}
