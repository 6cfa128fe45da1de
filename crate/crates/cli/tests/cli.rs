use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strickland-lab"))
        .args(args)
        .env("STRICKLAND_LAB_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn reports(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn without_timing(out: &Output) -> Vec<Value> {
    reports(out)
        .into_iter()
        .map(|mut r| {
            r.as_object_mut().unwrap().remove("elapsed_ms");
            r
        })
        .collect()
}

#[test]
fn rank_report() {
    let out = run(&["verify", "rank", "--p", "2", "--k", "2", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &reports(&out)[0];
    assert_eq!(r["check"], "rank");
    assert_eq!(r["lhs"], 7);
    assert_eq!(r["rhs"], 7);
    assert_eq!(r["pass"], true);
    assert!(r["elapsed_ms"].is_u64());
}

#[test]
fn height0_report() {
    let out = run(&["verify", "height0", "--A", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &reports(&out)[0];
    assert_eq!(r["lhs"], serde_json::json!([3, 3]));
    assert_eq!(r["rhs"], serde_json::json!([3, 3]));
}

#[test]
fn appendix_reports_three_lines() {
    let out = run(&["verify", "appendix", "--p", "5", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let rs = reports(&out);
    let names: Vec<&str> = rs.iter().map(|r| r["check"].as_str().unwrap()).collect();
    assert_eq!(names, ["appendix.i_series", "appendix.stirling", "appendix.subring_rank"]);
    assert_eq!(rs[2]["lhs"], 1);
    assert!(rs.iter().all(|r| r["pass"] == true));
}

#[test]
fn missing_parameter_is_config_error() {
    let out = run(&["verify", "rank", "--p", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let r = &reports(&out)[0];
    assert_eq!(r["pass"], false);
    assert!(r["error"].as_str().unwrap().contains("--k"));
}

#[test]
fn resource_bound_exit_code() {
    let out = run(&["verify", "height0", "--A", "4", "--n", "8"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(reports(&out)[0]["error"].as_str().unwrap().contains("resource bound"));

    let out = run(&["--max-order", "10", "verify", "norm", "--A", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_grid_is_config_error() {
    let dir = std::env::temp_dir().join(format!("strickland-lab-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.toml");
    std::fs::write(&path, "[[check]]\nname = \"rank\"\nbogus = 1\nq = [\n").unwrap();
    let out = run(&["verify", "all", "--grid", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "all", "--grid", dir.join("missing.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn grid_expansion_and_serial_determinism() {
    let dir = std::env::temp_dir().join(format!("strickland-lab-grid-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("small.toml");
    std::fs::write(
        &path,
        "[[check]]\nname = \"rank\"\np = [2, 3]\nk = 1\nd = [1, 2]\n\n\
         [[check]]\nname = \"fibers\"\nm = 2\nh = 1\n\n\
         [[check]]\nname = \"components\"\np = 2\nk = 1\nh = 2\nm = [0, 3]\n",
    )
    .unwrap();
    let grid = path.to_str().unwrap();
    let first = run(&["--serial", "verify", "all", "--grid", grid]);
    let second = run(&["--serial", "verify", "all", "--grid", grid]);
    assert_eq!(first.status.code(), Some(0));
    let a = without_timing(&first);
    assert_eq!(a, without_timing(&second));
    let rank_params: Vec<(u64, u64)> = a
        .iter()
        .filter(|r| r["check"] == "rank")
        .map(|r| (r["params"]["p"].as_u64().unwrap(), r["params"]["d"].as_u64().unwrap()))
        .collect();
    assert_eq!(rank_params, [(2, 1), (2, 2), (3, 1), (3, 2)]);
    assert!(a.iter().any(|r| r["check"] == "fibers.partition"));

    let parallel = run(&["verify", "all", "--grid", grid]);
    let mut b = without_timing(&parallel);
    let mut a_sorted = a.clone();
    let key = |v: &Value| v.to_string();
    a_sorted.sort_by_key(key);
    b.sort_by_key(key);
    assert_eq!(a_sorted, b);
}

#[test]
fn table_format() {
    let out = run(&["--format", "table", "verify", "rank", "--p", "3", "--k", "1", "--d", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("rank"));
    assert!(text.contains("pass"));
    assert!(serde_json::from_str::<Value>(text.lines().next().unwrap()).is_err());
}

#[test]
fn enumerate_classes() {
    let out = run(&["enumerate", "classes", "--A", "1", "--h", "1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reports(&out).len(), 3);

    let out = run(&["enumerate", "subgroups", "--h", "2", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reports(&out).len(), 3);
}
