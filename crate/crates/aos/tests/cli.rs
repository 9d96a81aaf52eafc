use aos::ReportDocument;
use std::process::{Command, Output};

fn aos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aos")).args(args).env_remove("AOS_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn list_is_sorted_and_complete() {
    let o = aos(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let ids: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert_eq!(ids.len(), 26);
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.iter().any(|i| i == "gauss-integer"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "no-such-case"],
        vec!["verify", "gauss-integer", "--bogus"],
        vec!["verify", "gauss-integer", "--N", "0"],
        vec!["verify", "gauss-integer", "--N", "129"],
        vec!["verify", "gauss-integer", "--format", "xml"],
        vec!["verify", "gauss-integer", "--param", "beta"],
        vec!["verify", "gauss-integer", "--param", "nosuch=1"],
        vec!["verify", "--all", "--param", "q=0.3"],
        vec!["verify", "--all", "--jobs", "0"],
        vec!["frobnicate"],
        vec![],
    ] {
        assert_eq!(aos(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn gram_dump() {
    let o = aos(&["gram", "gauss-integer", "--N", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 9);
    let r12 = rows.iter().find(|r| &r[0] == "1" && &r[1] == "2").unwrap();
    assert_eq!(r12[2].parse::<f64>().unwrap(), (-0.5f64).exp());
    assert_eq!(r12[2].parse::<f64>().unwrap(), 0.6065306597126334);
}

#[test]
fn schur_table() {
    let o = aos(&["schur", "gauss-integer", "--N-list", "4,8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("| 4 |") && text.contains("| 8 |"));
    assert!(text.contains("2.506628288"));
}

#[test]
fn verify_json_round_trips_and_is_deterministic() {
    let a = aos(&["verify", "gauss-integer", "--N", "8"]);
    let b = aos(&["verify", "gauss-integer", "--N", "8"]);
    assert_eq!(a.status.code(), Some(0));
    let da = ReportDocument::from_json(&stdout(&a)).unwrap();
    let db = ReportDocument::from_json(&stdout(&b)).unwrap();
    assert_eq!(da.body_json(), db.body_json());
    assert_eq!(ReportDocument::from_json(&da.to_json()).unwrap(), da);
    assert_eq!(da.case_id, "gauss-integer");
    assert_eq!(da.n, 8);
}

#[test]
fn param_override_reaches_report() {
    let o = aos(&["verify", "qgauss-aq", "--N", "8", "--param", "q=0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let d = ReportDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(d.params.get("q"), Some(&0.3));
}

#[test]
fn other_formats() {
    let csv_out = aos(&["verify", "gauss-integer", "--N", "8", "--format", "csv"]);
    assert_eq!(csv_out.status.code(), Some(0));
    let text = stdout(&csv_out);
    assert!(text.lines().count() >= 2 && text.contains("bessel"));
    let md = aos(&["verify", "gauss-integer", "--N", "8", "--format", "md"]);
    assert_eq!(md.status.code(), Some(0));
    assert!(stdout(&md).contains("| inequality |"));
}

#[test]
fn aos_jobs_environment() {
    let bad = Command::new(env!("CARGO_BIN_EXE_aos"))
        .args(["verify", "gauss-integer", "--N", "4"])
        .env("AOS_JOBS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_aos"))
        .args(["verify", "gauss-integer", "--N", "4", "--jobs", "0"])
        .env("AOS_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn all_writes_one_file_per_case() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reports");
    let o = aos(&["verify", "--all", "--N", "4", "--jobs", "2", "--out", out.to_str().unwrap()]);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    let mut names: Vec<String> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names.len(), 26);
    assert!(names.contains(&"gauss-integer.json".to_string()));
    let d = ReportDocument::from_json(&std::fs::read_to_string(out.join("gauss-integer.json")).unwrap()).unwrap();
    assert_eq!(d.n, 4);
}
