use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gpnn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpnn")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const C6: &str = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";
const TWO_C3: &str = "# two triangles\n6 6\n0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n";

#[test]
fn gen_writes_edge_lists() {
    let o = gpnn(&["gen", "cycle", "6", "--seed", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), C6);
    let a = gpnn(&["gen", "gnp", "10", "0.3", "--seed", "7"]);
    assert_eq!(stdout(&a), stdout(&gpnn(&["gen", "gnp", "10", "0.3", "--seed", "7"])));
    let rook = stdout(&gpnn(&["gen", "rook4x4"]));
    assert!(rook.starts_with("16 48\n"));
    assert_eq!(gpnn(&["gen", "random-regular", "5", "3"]).status.code(), Some(1));
}

#[test]
fn compare_and_iso() {
    let dir = tempfile::tempdir().unwrap();
    let (g, h) = (write(dir.path(), "c6.el", C6), write(dir.path(), "2c3.el", TWO_C3));
    let (g, h) = (g.to_str().unwrap(), h.to_str().unwrap());

    let o = gpnn(&["compare", g, h, "--test", "1wl", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "equivalent");
    assert!(stdout(&o).trim_start().starts_with("{\n  \"outcome\""));

    let o = gpnn(&["compare", g, h, "--test", "2fwl", "--json"]);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap()["outcome"], "distinguished");

    let o = gpnn(&["compare", g, h, "--test", "gpnn", "--scheme", "triangle", "--variant", "star"]);
    assert_eq!(stdout(&o), "distinguished at iteration 0\n");
    let o = gpnn(&["compare", g, h, "--test", "gpnn", "--scheme", "degree", "--variant", "dagger", "--d", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "distinguished");
    assert_eq!(v["config"]["variant"], "dagger");

    let o = gpnn(&["iso", g, h, "--scheme", "degree", "--json"]);
    assert_eq!(stdout(&o), "{\"gi\":false,\"pi\":false,\"ii\":false}\n");
    let o = gpnn(&["iso", g, g, "--scheme", "core", "--json"]);
    assert_eq!(stdout(&o), "{\"gi\":true,\"pi\":true,\"ii\":true}\n");
}

#[test]
fn partition_stats_and_color() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p3.el", "3 2\n0 1\n1 2\n");
    let p = p.to_str().unwrap();
    assert_eq!(stdout(&gpnn(&["partition", p, "--scheme", "degree"])), "0\t(1,0)\n1\t(2,0)\n2\t(1,0)\n");
    let v: serde_json::Value = serde_json::from_str(&stdout(&gpnn(&["partition", p, "--scheme", "degree", "--json"]))).unwrap();
    assert_eq!(v["labels"][1], serde_json::json!([2, 0]));
    let v: serde_json::Value = serde_json::from_str(&stdout(&gpnn(&["stats", p, "--scheme", "degree", "--json"]))).unwrap();
    assert_eq!(v["partitions"], 2);
    assert_eq!(v["intra_edges"], 2);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&gpnn(&["color", p, "--scheme", "degree", "--variant", "star", "--json"]))).unwrap();
    assert_eq!(v["costs"][0]["tracked"], 4);
    assert_eq!(v["costs"][0]["q"], 3);
}

#[test]
fn parse_errors_and_usage_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.el", "2 1\n0 0\n");
    let o = gpnn(&["partition", bad.to_str().unwrap(), "--scheme", "degree"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2") && err.contains("self-loop"), "{err}");

    let short = write(dir.path(), "short.el", "3 2\n0 1\n");
    let o = gpnn(&["stats", short.to_str().unwrap(), "--scheme", "core"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("end of file"));

    assert_eq!(gpnn(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gpnn(&["partition", "x.el", "--scheme", "nonsense"]).status.code(), Some(1));
    assert_eq!(gpnn(&["compare", "a", "b", "--test", "3wl"]).status.code(), Some(1));
    assert_eq!(gpnn(&["partition", "/nonexistent/x.el", "--scheme", "core"]).status.code(), Some(1));
    let help = gpnn(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("neural-check"));
}

const SUITE: &str = r#"{"pairs": [
  {"name": "c6-vs-2c3",
   "g1": {"n": 6, "edges": [[0,1],[1,2],[2,3],[3,4],[4,5],[5,0]]},
   "g2": {"n": 6, "edges": [[0,1],[1,2],[2,0],[3,4],[4,5],[5,3]]}},
  {"name": "p4-relabeled",
   "g1": {"n": 4, "edges": [[0,1],[1,2],[2,3]]},
   "g2": {"n": 4, "edges": [[3,1],[1,0],[0,2]]}}
]}"#;

#[test]
fn suite_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "suite.json", SUITE);
    let f = f.to_str().unwrap();
    let a = gpnn(&["suite", f, "--json"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let single = Command::new(env!("CARGO_BIN_EXE_gpnn"))
        .args(["suite", f, "--json"])
        .env("GPNN_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, single.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["violations"], serde_json::json!([]));
    assert_eq!(v["rows"][0]["name"], "c6-vs-2c3");
    assert_eq!(v["rows"][0]["wl1"], "equivalent");
    assert_eq!(v["rows"][0]["fwl2"], "distinguished");
    assert!(v["rows"][1]["gpnn"].as_array().unwrap().iter().all(|c| c["outcome"] == "equivalent"));

    let human = gpnn(&["suite", f, "--all", "--schemes", "degree,triangle", "--variants", "star"]);
    let text = stdout(&human);
    assert!(text.contains("c6-vs-2c3") && text.contains("violations 0"), "{text}");

    let bad_threads = Command::new(env!("CARGO_BIN_EXE_gpnn"))
        .args(["suite", f])
        .env("GPNN_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad_threads.status.code(), Some(1));

    let dup = write(dir.path(), "dup.json", &SUITE.replace("p4-relabeled", "c6-vs-2c3"));
    assert_eq!(gpnn(&["suite", dup.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn neural_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.el", "7 8\n0 1\n1 2\n2 0\n2 3\n3 4\n4 5\n5 6\n6 3\n");
    let g = g.to_str().unwrap();
    for variant in ["star", "diamond", "dagger"] {
        let o = gpnn(&[
            "neural-check", g, "--scheme", "core-onion", "--variant", variant, "--f", "6", "--layers", "3", "--seed", "4",
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("pass "));
    }
    let o = gpnn(&["neural-check", g, "--scheme", "degree", "--variant", "star", "--plugin", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
}
