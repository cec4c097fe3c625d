use std::path::PathBuf;
use std::process::{Command, Output};

use nrange::cli_io::{parse_matrix, EXIT_OK, EXIT_PARSE, EXIT_USAGE};
use nrange::kippenhahn::kippenhahn_poly;
use nrange::membership::membership_test_exact;
use nrange::poly_core::rational::parse_q;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/data/{}.json", env!("CARGO_MANIFEST_DIR"), name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nrange")).args(args).env("NRANGE_THREADS", threads).output().unwrap()
}

fn report(args: &[&str]) -> Value {
    let out = run(args, "0");
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn pringle_rank_two_is_the_origin() {
    let r = report(&["compute", "--matrix", &data("pringle"), "--k", "2"]);
    assert_eq!(r["schema"], "nrange-report/1");
    let range = &r["ranges"][0];
    assert_eq!(range["dim"], 0);
    assert_eq!(range["point"]["exact"], serde_json::json!([["0", "1"], ["0", "1"]]));
    assert!(range["point"]["a"].as_str().unwrap().starts_with("0.000"));
}

#[test]
fn quartic_plot_has_nested_ranges() {
    let svg = scratch("quartic1.svg");
    let csv = scratch("quartic1.csv");
    let r = report(&[
        "compute",
        "--matrix",
        &data("quartic1"),
        "--k",
        "1",
        "--k",
        "2",
        "--svg",
        svg.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    let dims: Vec<i64> = r["ranges"].as_array().unwrap().iter().map(|x| x["dim"].as_i64().unwrap()).collect();
    assert_eq!(dims, vec![2, 2]);
    let svg = std::fs::read_to_string(svg).unwrap();
    assert_eq!(svg.matches("<polygon class=\"range\"").count(), 2);
    assert!(svg.contains("data-k=\"1\"") && svg.contains("data-k=\"2\""));
    let csv = std::fs::read_to_string(csv).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("branch,theta,x,y,residual"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() > 1000);
    for row in rows {
        let residual: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(residual <= 1e-8, "{}", row);
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = |svg: &str| {
        vec!["compute".to_string(), "--matrix".into(), data("quartic_ptangent"), "--svg".into(), scratch(svg).to_str().unwrap().into()]
    };
    let a = args("run_a.svg");
    let b = args("run_b.svg");
    let ra = run(&a.iter().map(String::as_str).collect::<Vec<_>>(), "1");
    let rb = run(&b.iter().map(String::as_str).collect::<Vec<_>>(), "3");
    assert_eq!(ra.status.code(), Some(EXIT_OK));
    assert_eq!(ra.stdout, rb.stdout);
    assert_eq!(std::fs::read(scratch("run_a.svg")).unwrap(), std::fs::read(scratch("run_b.svg")).unwrap());
}

#[test]
fn decimal_witnesses_pass_membership() {
    let tol = 1e-9;
    for name in ["quartic1", "quartic_ptangent", "circle_and_line", "weird_tritangent"] {
        let path = data(name);
        let r = report(&["compute", "--matrix", &path]);
        let kd = kippenhahn_poly(&parse_matrix(std::path::Path::new(&path)).unwrap());
        for range in r["ranges"].as_array().unwrap() {
            let k = range["k"].as_u64().unwrap() as usize;
            let mut ws: Vec<&Value> = range["representatives"].as_array().unwrap().iter().collect();
            ws.extend(range["point"].as_object().map(|_| &range["point"]));
            ws.extend(range["endpoints"].as_array().into_iter().flatten());
            for w in ws {
                let a = parse_q(w["a"].as_str().unwrap()).unwrap();
                let b = parse_q(w["b"].as_str().unwrap()).unwrap();
                let v = membership_test_exact(&kd, k, &a, &b, tol).unwrap();
                assert!(v.margin >= -2.0 * tol, "{} k={} ({}, {}): margin {:e}", name, k, w["a"], w["b"], v.margin);
            }
        }
    }
}

#[test]
fn member_and_boundary_subcommands() {
    let out = run(&["member", "--matrix", &data("pringle"), "--k", "2", "--point", "0,0"], "0");
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let m: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(m["member"], true);
    let out = run(&["member", "--matrix", &data("circle_and_line"), "--k", "2", "--point", "1,0"], "0");
    let m: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(m["member"], false);
    let out = run(&["boundary", "--matrix", &data("circle_and_line")], "0");
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let g: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(g["g"]["degree"], 4);
    assert_eq!(g["dual"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["compute", "--matrix", &data("pringle"), "--bogus"], "0").status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["curve", "--matrix", &data("pringle"), "--chart", "x=1"], "0").status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["compute", "--matrix", &data("pringle"), "--k", "9"], "0").status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["compute", "--matrix", &data("pringle")], "many").status.code(), Some(EXIT_USAGE));
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"n\": 2, \"entries\": [[[\"1\",\"1\",\"0\",\"1\"]]]}").unwrap();
    let out = run(&["compute", "--matrix", bad.to_str().unwrap()], "0");
    assert_eq!(out.status.code(), Some(EXIT_PARSE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row"));
    assert_eq!(run(&["compute", "--matrix", "/nonexistent/m.json"], "0").status.code(), Some(EXIT_PARSE));
}
