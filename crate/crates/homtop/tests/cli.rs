use std::io::Write;
use std::process::{Command, Output};

use homtop::json::{GroupDoc, GrowthDoc, OracleDoc, RankTableDoc, SeriesDoc};
use homtop_core::ranks::homotopy_ranks;
use homtop_core::series::quotient_series;
use serde_json::Value;

fn homtop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homtop"))
        .args(args)
        .env_remove("HOMTOP_BUDGET")
        .output()
        .expect("run homtop")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = homtop(&full);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn ranks_table_ends_with_pi7() {
    let o = homtop(&["ranks", "--betti", "3", "--max-degree", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last_rank = text.lines().rfind(|l| l.starts_with("pi_")).unwrap();
    assert_eq!(
        last_rank.split_whitespace().collect::<Vec<_>>(),
        ["pi_7", "55"]
    );
    assert!(text.contains("classification: hyperbolic"));
}

#[test]
fn ranks_json_round_trip() {
    let v = json(&["ranks", "--betti", "2", "--max-degree", "10"]);
    let doc: RankTableDoc = serde_json::from_value(v.clone()).unwrap();
    let table = doc.to_table().unwrap();
    assert_eq!(table, homotopy_ranks(2, 10).unwrap());
    assert!(table.ranks()[2..].iter().all(|r| r.bits() == 0));
    assert_eq!(v["classification"], "elliptic");
    assert_eq!(
        serde_json::to_value(RankTableDoc::from(&table)).unwrap()["ranks"],
        v["ranks"]
    );
}

#[test]
fn ranks_csv() {
    let o = homtop(&[
        "--format",
        "csv",
        "ranks",
        "--betti",
        "4",
        "--max-degree",
        "6",
    ]);
    assert_eq!(
        stdout(&o),
        "degree,rank\n2,4\n3,9\n4,16\n5,45\n6,144\n7,456\n"
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["ranks", "--betti", "0", "--max-degree", "5"][..],
        &["ranks"],
        &["stable", "--betti", "1", "--n", "3", "--pi1-order", "0"],
        &["series", "--kind", "cubic", "--betti", "2"],
        &["--format", "xml", "ranks", "--betti", "2"],
        &["growth", "--betti", "0"],
    ] {
        let o = homtop(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "verify",
            "--betti",
            "2",
            "--max-degree",
            "7",
            "--format",
            "json",
        ][..],
        &[
            "growth", "--betti", "4", "--probe", "40", "--format", "json",
        ],
        &[
            "ranks",
            "--betti",
            "9",
            "--max-degree",
            "40",
            "--format",
            "json",
        ],
    ] {
        assert_eq!(homtop(args).stdout, homtop(args).stdout, "{args:?}");
    }
}

#[test]
fn verify_passes() {
    for betti in ["2", "3"] {
        let max = if betti == "2" { "6" } else { "7" };
        let o = homtop(&["verify", "--betti", betti, "--max-degree", max]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert_eq!(stdout(&o).lines().last(), Some("PASS"));
    }
}

#[test]
fn verify_json_round_trip() {
    let v = json(&["verify", "--betti", "2", "--max-degree", "6"]);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["failing_checks"], Value::Array(Vec::new()));
    let oracle: OracleDoc = serde_json::from_value(v["oracle"].clone()).unwrap();
    assert_eq!(oracle.quotient_dims.len(), 7);
    let series = quotient_series(2, 6).unwrap().to_integers().unwrap();
    for (q, s) in oracle.quotient_dims.iter().zip(series) {
        assert_eq!(q.to_string(), s.to_string());
    }
    assert!(oracle
        .series_match
        .iter()
        .chain(&oracle.euler_ok)
        .all(|&b| b));
}

#[test]
fn verify_resource_limit_fails() {
    let o = homtop(&["verify", "--betti", "3", "--max-degree", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().last(), Some("FAIL"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource limit"));

    let v = json(&["verify", "--betti", "3", "--max-degree", "50"]);
    assert_eq!(v["status"], "fail");
    assert!(!v["failing_checks"].as_array().unwrap().is_empty());
}

#[test]
fn budget_flag_and_env() {
    let o = homtop(&[
        "--budget",
        "100",
        "verify",
        "--betti",
        "2",
        "--max-degree",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_homtop"))
        .args(["verify", "--betti", "2", "--max-degree", "6"])
        .env("HOMTOP_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("budget is 100"));
}

#[test]
fn stable_examples() {
    let group = |args: &[&str]| {
        let v = json(args);
        assert_eq!(v["status"], "ok");
        v["display"].as_str().unwrap().to_string()
    };
    assert_eq!(group(&["stable", "--betti", "2", "--n", "2"]), "Z^2");
    assert_eq!(
        group(&["stable", "--betti", "2", "--n", "5"]),
        "(Z/24)^2 + Z/2 + Z"
    );
    let with_pi1 = group(&["stable", "--betti", "1", "--n", "4", "--pi1-order", "2"]);
    assert!(with_pi1.contains("Z/24"), "{with_pi1}");

    let text = stdout(&homtop(&["stable", "--betti", "2", "--n", "5"]));
    assert!(text.contains("group:   (Z/24)^2 + Z/2 + Z"));
    assert!(text.contains("primary: Z/2 + (Z/8)^2 + (Z/3)^2 + Z"));
}

#[test]
fn stable_json_round_trip() {
    let v = json(&["stable", "--betti", "3", "--n", "9"]);
    let doc: GroupDoc = serde_json::from_value(v["group"].clone()).unwrap();
    assert_eq!(
        doc.to_group().unwrap().to_string(),
        v["display"].as_str().unwrap()
    );
}

#[test]
fn stable_golden_b2_2() {
    let golden = include_str!("golden/stable_b2_2.txt");
    for line in golden
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
    {
        let (n, expected) = line.split_once(':').unwrap();
        let o = homtop(&["--format", "csv", "stable", "--betti", "2", "--n", n.trim()]);
        let row = stdout(&o).lines().nth(1).unwrap().to_string();
        assert_eq!(row.split(',').nth(1), Some(expected.trim()), "n = {n}");
    }
}

#[test]
fn stable_missing_stem_fails() {
    let o = homtop(&["stable", "--betti", "2", "--n", "25"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("stem 23"));
}

#[test]
fn stems_file_override() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# test table\n0: Z\n1: Z/2\n2: Z/2\n3: Z/24\n4: 0").unwrap();
    let path = f.path().to_str().unwrap();
    let v = json(&["--stems-file", path, "stable", "--betti", "2", "--n", "5"]);
    assert_eq!(v["display"], "(Z/24)^2 + Z/2 + Z");
    assert_eq!(v["stems_source"], "test table");
    let o = homtop(&["--stems-file", path, "stable", "--betti", "2", "--n", "7"]);
    assert_eq!(o.status.code(), Some(1));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "0: Z\n1: Q/2").unwrap();
    let o = homtop(&[
        "--stems-file",
        bad.path().to_str().unwrap(),
        "stable",
        "--betti",
        "2",
        "--n",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn growth_examples() {
    let v = json(&["growth", "--betti", "3", "--probe", "60"]);
    let doc: GrowthDoc = serde_json::from_value(v).unwrap();
    assert_eq!(doc.classification, "hyperbolic");
    assert!(doc
        .growth_base
        .as_deref()
        .unwrap()
        .starts_with("2.6180339887"));
    assert_eq!(doc.precision_digits, 50);
    let residual = doc.limit_residual.unwrap();
    assert!(residual.starts_with("0.000000"), "{residual}");
    assert_eq!(doc.cumulative_bound_ok.len(), 30);

    let v = json(&["growth", "--betti", "2"]);
    assert_eq!(v["classification"], "elliptic");
    assert_eq!(v["growth_base"], Value::Null);

    let v = json(&["growth", "--betti", "5", "--probe", "30"]);
    let doc: GrowthDoc = serde_json::from_value(v).unwrap();
    assert_eq!(doc.cumulative_bound_ok, vec![true; 15]);
}

#[test]
fn series_kinds() {
    let v = json(&[
        "series", "--kind", "quotient", "--betti", "1", "--terms", "6",
    ]);
    let doc: SeriesDoc = serde_json::from_value(v).unwrap();
    assert_eq!(doc.coefficients, ["1", "1", "2", "2", "3", "3"]);
    assert_eq!(doc.to_series().unwrap(), quotient_series(1, 5).unwrap());

    let o = homtop(&[
        "--format", "csv", "series", "--kind", "tensor", "--betti", "1", "--terms", "5",
    ]);
    assert_eq!(stdout(&o), "degree,coefficient\n0,1\n1,1\n2,2\n3,3\n4,5\n");

    // pbw of the b2 = 3 ranks against 1 / (1 - 3t + t^2).
    let v = json(&["series", "--kind", "pbw", "--betti", "3", "--terms", "6"]);
    assert_eq!(
        v["coefficients"],
        serde_json::json!(["1", "3", "8", "21", "55", "144"])
    );

    let v = json(&[
        "series",
        "--kind",
        "free-comm",
        "--betti",
        "1",
        "--terms",
        "5",
    ]);
    assert_eq!(
        v["coefficients"],
        serde_json::json!(["1", "1", "1", "1", "1"])
    );
}
