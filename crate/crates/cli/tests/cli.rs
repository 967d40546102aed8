use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetqsym")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

#[test]
fn gamma_strict_vee() {
    let out = run(&["gamma", &data("vee.txt")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "M_12 + 2M_111\n");
}

#[test]
fn gamma_labeling_from_file() {
    let out = run(&["gamma", &data("vee.txt"), "--labeling", "from-file"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "M_21 + M_12 + 2M_111\n");
}

#[test]
fn gamma_json_output() {
    let out = run(&["gamma", &data("vee.txt"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["gamma"], serde_json::json!({"terms": [[[1, 2], 1], [[1, 1, 1], 2]]}));
}

#[test]
fn gamma_of_pair_ends_with_linear_extensions() {
    let out = run(&["gamma", &data("pair.txt")]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("left: M_232 + 2M_2311"));
    assert!(lines[0].ends_with("+ 66M_1111111"));
    assert_eq!(lines[0].trim_start_matches("left: "), lines[1].trim_start_matches("right: "));
}

#[test]
fn compare_reports_collision() {
    let out = run(&["compare", &data("pair.txt"), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["equal_gamma"], true);
    assert_eq!(v["isomorphic"], false);
}

#[test]
fn trees_as_input() {
    let out = run(&["gamma", &data("trees.txt")]);
    assert_eq!(stdout(&out), "(()): M_11\n(()()): M_12 + 2M_111\n((())): M_111\n");
}

#[test]
fn from_file_without_labels_fails() {
    let out = run(&["gamma", &data("trees.txt"), "--labeling", "from-file"]);
    assert!(!out.status.success());
}

#[test]
fn parse_errors_carry_line_numbers() {
    let out = run(&["gamma", &data("bad.txt")]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn mul_products() {
    let out = run(&["mul", "--op", "oshuffle", "M_1 + M_2", "M_1"]);
    assert_eq!(stdout(&out), "M_3 + M_21 + M_2 + M_12 + 2M_11\n");
    let out = run(&["mul", "--op", "concat", "{\"terms\":[[[1],1]]}", "M_2", "--json"]);
    assert_eq!(stdout(&out), "{\"terms\":[[[1,2],1]]}\n");
}

#[test]
fn count_njoinfree() {
    let out = run(&["count", "njoinfree", "--nmax", "3"]);
    assert_eq!(stdout(&out), "1\t1\n2\t2\n3\t5\n");
    assert!(!run(&["count", "njoinfree", "--nmax", "9"]).status.success());
}

#[test]
fn enumerate_round_trips_through_gamma() {
    let out = run(&["enumerate", "--class", "all", "--n", "4"]);
    let text = stdout(&out);
    assert_eq!(text.matches("poset ").count(), 16);
    let recs = posetqsym::format::parse_posets(&text).unwrap();
    assert_eq!(recs.len(), 16);
}

#[test]
fn verify_counterexample_passes() {
    let out = run(&["verify", "counterexample", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_injectivity_bounds() {
    let out = run(&["verify", "injectivity", "--class", "trees", "--nmax", "8"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("n=8: 115 trees"));
    let out = run(&["verify", "injectivity", "--class", "njoinfree", "--nmax", "6"]);
    assert!(stdout(&out).contains("n=6: 121 posets"));
    assert!(!run(&["verify", "injectivity", "--class", "njoinfree", "--nmax", "8"]).status.success());
}

#[test]
fn properties_are_deterministic() {
    let args = ["verify", "properties", "--seed", "3", "--budget", "20"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("oshuffle-routes-and-polynomial-oracle: 20 instances"));
}
