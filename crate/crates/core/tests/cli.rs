use std::collections::BTreeMap;

use lah::cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn lah_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lah").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const SMALL_GRID: [&str; 8] = ["--n-max", "2", "--grid-x", "1", "--grid-z", "1,2", "--grid-k", "0,1"];

#[test]
fn table_csv_has_triangle() {
    let (code, out, _) = lah_cli(&["table", "--n-max", "4", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,k,value");
    let entries: Vec<&str> = lines[1..].iter().copied().filter(|l| !l.contains("total")).collect();
    assert_eq!(entries.len(), 10);
    let row4: Vec<&str> =
        entries.iter().filter(|l| l.starts_with("4,")).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(row4, ["24", "36", "12", "1"]);
    assert!(lines.contains(&"4,total,73"));
}

#[test]
fn table_json_totals() {
    let (code, out, _) = lah_cli(&["table", "--n-max", "3", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["totals"], serde_json::json!(["1", "3", "13"]));
    assert_eq!(v["rows"][2]["values"], serde_json::json!(["6", "6", "1"]));
}

#[test]
fn table_values_are_exact_past_u64() {
    let (code, out, _) = lah_cli(&["table", "--n-max", "30", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let expected = lah::lah(30, 1).unwrap().to_string();
    assert_eq!(v["rows"][29]["values"][0], Value::String(expected.clone()));
    assert_eq!(expected, "265252859812191058636308480000000");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(lah_cli(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(lah_cli(&["table", "--n-max", "x"]).0, EXIT_USAGE);
    assert_eq!(lah_cli(&["table", "--n-max", "0"]).0, EXIT_USAGE);
    assert_eq!(lah_cli(&["verify", "--tol", "-1"]).0, EXIT_USAGE);
    assert_eq!(lah_cli(&["verify", "--grid-x", "0"]).0, EXIT_USAGE);
    assert_eq!(lah_cli(&["series", "--k", "0", "--order", "5"]).0, EXIT_USAGE);
    assert_eq!(lah_cli(&["--help"]).0, EXIT_OK);
}

#[test]
fn verify_small_grid_passes() {
    let mut args = vec!["verify"];
    args.extend(SMALL_GRID);
    let (code, out, err) = lah_cli(&args);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(err.is_empty());
    let summary = out.lines().last().unwrap();
    assert!(summary.ends_with("0 hard failures"), "{summary}");
}

#[test]
fn verify_unreachable_tolerance_exits_two() {
    let (code, _, err) =
        lah_cli(&["verify", "--n-max", "1", "--grid-x", "1", "--grid-z", "1", "--grid-k", "0", "--tol", "1e-15"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(err.contains("hard failure") || err.contains("failed:"), "{err}");
}

#[test]
fn verify_json_and_csv_agree() {
    let mut args = vec!["verify"];
    args.extend(SMALL_GRID);
    let json_args: Vec<&str> = args.iter().copied().chain(["--format", "json"]).collect();
    let csv_args: Vec<&str> = args.iter().copied().chain(["--format", "csv"]).collect();
    let (_, json, _) = lah_cli(&json_args);
    let (_, csv_text, _) = lah_cli(&csv_args);

    let records: Vec<Value> = serde_json::from_str(&json).unwrap();
    let mut from_json = BTreeMap::new();
    for r in records.iter().filter(|r| r.get("identity_id").is_some()) {
        let key = (r["identity_id"].as_str().unwrap().to_string(), r["parameters"].to_string());
        from_json.insert(key, (r["lhs"].as_f64().unwrap(), r["rhs"]["value"].as_f64().unwrap()));
    }
    assert!(!from_json.is_empty());

    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let mut matched = 0;
    for row in reader.records() {
        let row = row.unwrap();
        if row[col("lhs")].is_empty() {
            continue;
        }
        let lhs: f64 = row[col("lhs")].parse().unwrap();
        let rhs: f64 = row[col("rhs")].parse().unwrap();
        let hit =
            from_json.iter().filter(|((id, _), _)| id == &row[col("id")]).any(|(_, (l, r))| *l == lhs && *r == rhs);
        assert!(hit, "csv row {row:?} has no JSON twin");
        matched += 1;
    }
    assert_eq!(matched, from_json.len());
}

#[test]
fn verify_output_is_deterministic() {
    let mut args = vec!["verify"];
    args.extend(SMALL_GRID);
    args.extend(["--format", "json"]);
    assert_eq!(lah_cli(&args).1, lah_cli(&args).1);
}

#[test]
fn verify_writes_to_out_path() {
    let dir = std::env::temp_dir().join(format!("lah-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let path_str = path.to_str().unwrap();
    let mut args = vec!["verify"];
    args.extend(SMALL_GRID);
    args.extend(["--format", "json", "--out", path_str]);
    let (code, out, _) = lah_cli(&args);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let written: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(!written.is_empty());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn props_defaults() {
    let (code, out, _) = lah_cli(&["props"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("violations: none; certificates: 12/12 real-distinct-nonpositive"), "{out}");
}

#[test]
fn props_json_certificates() {
    let (code, out, _) = lah_cli(&["props", "--m-max", "2", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 2);
    assert_eq!(certs[1]["root_count_negative"], 1);
    assert_eq!(certs[1]["root_count_zero"], 1);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn series_dump() {
    let (code, out, _) = lah_cli(&["series", "--k", "2", "--order", "5", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("36"), "{out}");
    let (code, alt, _) = lah_cli(&["series", "--k", "2", "--order", "5", "--alternating", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_ne!(out, alt);
}
