use std::path::PathBuf;
use std::process::{Command, Output};

fn stabgate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabgate")).args(args).env_remove("STABGATE_DATA").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tuple_bound_prints_the_value() {
    let o = stabgate(&["tuples", "--d", "11,4", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "16");
    let o = stabgate(&["tuples", "--d", "11,4", "--k", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 16);
    assert_eq!(v["witness"], serde_json::json!([4, 0]));
}

#[test]
fn g2_roots_as_json() {
    let o = stabgate(&["roots", "--type", "G", "--rank", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 12);
    assert_eq!(v["roots"].as_array().unwrap().len(), 12);
}

#[test]
fn verify_exit_codes() {
    let o = stabgate(&["verify", "--quad", "A5:w2:any:4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().next().unwrap().ends_with("certified; 895 numbers checked"));
    let o = stabgate(&["verify", "--quad", "E6:w1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(stabgate(&["tuples", "--d", "3,2", "--k", "1", "--bogus"]).status.code(), Some(64));
    assert_eq!(stabgate(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(stabgate(&["roots", "--type", "Q", "--rank", "2"]).status.code(), Some(64));
    assert_eq!(stabgate(&["sweep", "--family", "C:wedge2", "--ranks", "4-x"]).status.code(), Some(64));
    assert_eq!(stabgate(&["verify", "--quad", "A9:w2:any:4"]).status.code(), Some(65));
    let o = Command::new(env!("CARGO_BIN_EXE_stabgate"))
        .args(["verify", "--quad", "A5:w2"])
        .env("STABGATE_DATA", "/nonexistent/stabgate")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn json_reports_are_stable() {
    let a = stabgate(&["verify", "--quad", "A5:w2", "--format", "json"]);
    let b = stabgate(&["verify", "--quad", "A5:w2", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"]["status"], "certified");
}

#[test]
fn weight_table_json_round_trips_through_the_loader() {
    let first = stabgate(&["weights", "--type", "E", "--rank", "6", "--lambda", "w1", "--p", "3", "--json"]);
    let table: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let dir = std::env::temp_dir().join(format!("stabgate-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for entry in std::fs::read_dir(&data).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.join(entry.file_name())).unwrap();
    }
    let file = serde_json::json!({ "tables": [table] });
    std::fs::write(dir.join("weight_tables.json"), serde_json::to_string(&file).unwrap()).unwrap();
    let second = Command::new(env!("CARGO_BIN_EXE_stabgate"))
        .args(["weights", "--type", "E", "--rank", "6", "--lambda", "w1", "--p", "3", "--json"])
        .env("STABGATE_DATA", &dir)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn net_table_formats() {
    let args = ["nets", "--type", "A", "--rank", "5", "--lambda", "0,1,0,0,0", "--psi", "1", "--p", "3", "--r", "3"];
    let plain = stdout(&stabgate(&args));
    assert!(plain.contains("c(Ψ)_ss = 4, c(Ψ)_u = 4"), "{plain}");
    let tsv = stdout(&stabgate(&[&args[..], &["--format", "tsv"]].concat()));
    assert_eq!(tsv.lines().next().unwrap(), "net\tn1\tm\tc_s\tc_u");
}

#[test]
fn tables_and_sweep_pass() {
    let o = stabgate(&["tables"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 inconsistent"));
    let o = stabgate(&["sweep", "--family", "A:sym2", "--ranks", "3..4", "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with("\t0")));
    let o = stabgate(&["sweep", "--family", "A:sym2", "--ranks", "3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_all_summarizes_and_repeats() {
    let a = stabgate(&["check-all", "--format", "tsv"]);
    assert_eq!(a.status.code(), Some(2), "{}", stdout(&a));
    let text = stdout(&a);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r[2] == "0"), "{text}");
    let b = stabgate(&["check-all", "--format", "tsv"]);
    assert_eq!(a.stdout, b.stdout);
}
