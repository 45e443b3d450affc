use std::io::Write;
use std::process::{Command, Output};

fn boxsoc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxsoc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("boxsoc-{}-{name}", std::process::id()));
    std::fs::File::create(&path)
        .and_then(|mut f| f.write_all(contents.as_bytes()))
        .expect("temp file");
    path
}

#[test]
fn analyze_fixture_text() {
    let out = boxsoc(&["analyze", "z5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("agreement proportion: 2/5"));
    assert!(text.contains("(2,3)-agreeable: yes"));
}

#[test]
fn analyze_json_schema() {
    let out = boxsoc(&["analyze", "fig38b", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "arrangement");
    assert_eq!(v["edge_count"], 17);
    assert_eq!(v["clique_number"], 3);
    assert_eq!(v["agreement_proportion"], "3/8");
    assert_eq!(v["degree_profile"]["max_degree"], 5);
    assert!(v["boxicity"].is_null());
}

#[test]
fn analyze_disagreeing_file() {
    let path = temp_file(
        "apart.json",
        r#"{"dimension": 1, "boxes": [[[0, 1]], [[2, 3]], [[4, 5]]]}"#,
    );
    let out = boxsoc(&["analyze", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(2,3)-agreeable: no"));
}

#[test]
fn analyze_graph_file_with_boxicity() {
    let path = temp_file("c5.txt", "n 5\n1 2\n2 3\n3 4\n4 5\n1 5\n");
    let out = boxsoc(&["analyze", path.to_str().unwrap(), "--boxicity", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "graph");
    assert_eq!(v["boxicity"]["exact"], 2);
}

#[test]
fn parse_errors_exit_with_two() {
    let path = temp_file("bad.txt", "n 3\n1 2\n1 2\n");
    let out = boxsoc(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(
        boxsoc(&["analyze", "no-such-fixture"]).status.code(),
        Some(2)
    );
    assert_eq!(
        boxsoc(&["analyze", "fig134", "--as-arrangement"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(boxsoc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn decide_prints_witness() {
    let out = boxsoc(&["boxicity", "fig38a", "--decide", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["decision"], "yes");
    let witness = v["witness"].as_str().unwrap();
    let arr = boxsoc::format::parse_arrangement(witness).unwrap();
    assert_eq!(
        boxsoc::geometry::intersection_graph(&arr),
        boxsoc::fixtures::fig38a_graph()
    );
    let out = boxsoc(&["boxicity", "k_partite 3", "--decide", "2"]);
    assert!(stdout(&out).contains("box <= 2: no"));
}

#[test]
fn bounds_and_eta_tables() {
    let out = boxsoc(&["bounds", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert_eq!(v[1]["gamma_lower_exact"], "(5 - √13)/6");
    assert_eq!(v[2]["main_lower"], "1/6");

    let out = boxsoc(&["search-eta", "--r", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let confirmed: Vec<_> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["confirmed"].clone())
        .collect();
    assert_eq!(
        confirmed,
        vec![
            2.into(),
            5.into(),
            8.into(),
            13.into(),
            serde_json::Value::Null
        ]
    );
    assert_eq!(v[4]["upper_bound"], 18);
    assert_eq!(v[2]["exhaustion"]["survivors"], 0);
}

#[test]
fn verify_paper_passes() {
    let out = boxsoc(&["verify-paper"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("≤18"));
    assert!(text.contains("0.167"));
}

#[test]
fn fixtures_list_and_dump_round_trip() {
    let out = boxsoc(&["fixtures", "list"]);
    assert!(stdout(&out).lines().any(|l| l == "fig134"));
    let dumped = stdout(&boxsoc(&["fixtures", "dump", "fig134"]));
    let g = boxsoc::format::parse_graph(&dumped).unwrap();
    assert_eq!(g, boxsoc::fixtures::fig134_graph());
    let dumped = stdout(&boxsoc(&["fixtures", "dump", "exposure"]));
    let arr = boxsoc::format::parse_arrangement(&dumped).unwrap();
    assert_eq!(arr.len(), 6);
}
