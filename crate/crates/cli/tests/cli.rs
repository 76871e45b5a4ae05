use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn hitminor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hitminor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn gr(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("p tw {n} {}\n", edges.len());
    for (u, v) in edges {
        s += &format!("{} {}\n", u + 1, v + 1);
    }
    s
}

fn path_graph(n: usize) -> String {
    gr(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
}

#[test]
fn solve_p5_for_p3() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p5.gr", &path_graph(5));
    let o = hitminor(&[
        "solve",
        "--pattern",
        "p3",
        "--graph",
        g.to_str().unwrap(),
        "--mode",
        "minimize",
        "--json",
    ]);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(r["answer"], 1);
    assert_eq!(r["schema"], "hitminor.run/1");
    for field in ["input", "pattern", "mode", "wall_ms", "peak_table", "width"] {
        assert!(r.get(field).is_some(), "missing {field}");
    }
    assert!(r["verification"].is_null());
}

#[test]
fn solve_tree_for_c4_with_verification() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "tree.gr", &gr(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]));
    let o = hitminor(&[
        "solve",
        "--pattern",
        "c4",
        "--graph",
        g.to_str().unwrap(),
        "--verify",
        "--json",
    ]);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(r["answer"], 0);
    assert_eq!(r["verification"], "agree");
}

#[test]
fn decide_mode_answers_yes_or_no() {
    let dir = TempDir::new().unwrap();
    let c5 = write(dir.path(), "c5.gr", &gr(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]));
    let c5 = c5.to_str().unwrap();
    let no = hitminor(&[
        "solve",
        "--pattern",
        "p4",
        "--graph",
        c5,
        "--mode",
        "decide",
        "-k",
        "1",
        "--json",
    ]);
    let yes = hitminor(&[
        "solve",
        "--pattern",
        "p4",
        "--graph",
        c5,
        "--mode",
        "decide",
        "-k",
        "2",
        "--json",
    ]);
    assert!(stdout(&no).contains("\"answer\":false"));
    assert!(stdout(&yes).contains("\"answer\":true"));
    let missing_k = hitminor(&["solve", "--pattern", "p4", "--graph", c5, "--mode", "decide"]);
    assert_eq!(missing_k.status.code(), Some(2));
}

#[test]
fn chair_on_a_large_graph_hits_the_oracle_guard() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "big.gr", &path_graph(20));
    let o = hitminor(&["solve", "--pattern", "chair", "--graph", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn chair_on_a_small_graph_uses_the_oracle() {
    let dir = TempDir::new().unwrap();
    let k5: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
    let g = write(dir.path(), "k5.gr", &gr(5, &k5));
    let o = hitminor(&["solve", "--pattern", "chair", "--graph", g.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(r["method"], "oracle");
    assert_eq!(r["answer"], 1);
}

#[test]
fn exit_codes_for_usage_and_input_errors() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.gr", "p tw 3 2\n1 2\n");
    assert_eq!(
        hitminor(&["solve", "--pattern", "p3", "--graph", bad.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        hitminor(&["solve", "--pattern", "nope", "--graph", "x.gr"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hitminor(&["solve", "--pattern", "p3", "--graph", "/no/such/file.gr"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(hitminor(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn graph_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hitminor"))
        .args(["solve", "--pattern", "p3", "--graph", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(path_graph(5).as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("minimum 1"));
}

#[test]
fn check_with_explanations() {
    let dir = TempDir::new().unwrap();
    let c6 = write(
        dir.path(),
        "c6.gr",
        &gr(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]),
    );
    let diamond = write(
        dir.path(),
        "diamond.gr",
        &gr(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
    );
    let p5 = write(dir.path(), "p5.gr", &path_graph(5));
    let run = |p: &str, g: &Path| {
        stdout(&hitminor(&[
            "check",
            "--pattern",
            p,
            "--graph",
            g.to_str().unwrap(),
            "--explain",
        ]))
    };
    assert_eq!(run("paw", &c6).trim(), "free");
    assert!(run("c4", &diamond).contains("not-free: contains diamond"));
    assert_eq!(run("chair", &p5).trim(), "free");
}

#[test]
fn td_widths_and_parse_errors() {
    let dir = TempDir::new().unwrap();
    let tree = write(dir.path(), "tree.gr", &gr(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]));
    let k4 = write(
        dir.path(),
        "k4.gr",
        &gr(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    );
    let width = |g: &Path, extra: &[&str]| {
        let mut args = vec!["td", "--graph", g.to_str().unwrap()];
        args.extend_from_slice(extra);
        let o = hitminor(&args);
        assert!(o.status.success());
        let s = stdout(&o);
        let header = s.lines().find(|l| l.starts_with("s td")).unwrap().to_string();
        header.split_whitespace().nth(3).unwrap().parse::<usize>().unwrap() - 1
    };
    assert_eq!(width(&tree, &[]), 1);
    assert_eq!(width(&k4, &["--exact"]), 3);
    let o = hitminor(&["td", "--graph", tree.to_str().unwrap(), "--stats"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("width 1"));
    let garbage = write(dir.path(), "garbage.gr", "hello\n");
    assert_eq!(
        hitminor(&["td", "--graph", garbage.to_str().unwrap()]).status.code(),
        Some(3)
    );
    let big = write(dir.path(), "big.gr", &path_graph(30));
    assert_eq!(
        hitminor(&["td", "--graph", big.to_str().unwrap(), "--exact"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn supplied_decomposition_is_used_and_checked() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "c4.gr", &gr(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]));
    let good = write(dir.path(), "good.td", "s td 1 4 4\nb 1 1 2 3 4\n");
    let bad = write(dir.path(), "bad.td", "s td 1 3 4\nb 1 1 2 3\n");
    let ok = hitminor(&[
        "solve",
        "--pattern",
        "c4",
        "--graph",
        g.to_str().unwrap(),
        "--td",
        good.to_str().unwrap(),
    ]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("minimum 1"));
    let o = hitminor(&[
        "solve",
        "--pattern",
        "c4",
        "--graph",
        g.to_str().unwrap(),
        "--td",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

fn corpus(dir: &Path, count: usize) {
    for i in 0..count {
        let o = hitminor(&[
            "gen",
            "-o",
            dir.join(format!("g{i:02}.gr")).to_str().unwrap(),
            "gnp",
            "9",
            "0.3",
            "--seed",
            &i.to_string(),
        ]);
        assert!(o.status.success());
    }
}

#[test]
fn bench_is_deterministic_and_aggregated() {
    let dir = TempDir::new().unwrap();
    corpus(dir.path(), 10);
    let run = || {
        hitminor(&[
            "bench",
            "--corpus",
            dir.path().to_str().unwrap(),
            "--pattern",
            "paw",
            "--seed",
            "42",
            "--verify",
        ])
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<String> = stdout(&a).lines().map(String::from).collect();
    assert_eq!(lines.len(), 11);
    let names: Vec<String> = lines[..10]
        .iter()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["input"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    let agg: serde_json::Value = serde_json::from_str(&lines[10]).unwrap();
    assert_eq!(agg["schema"], "hitminor.aggregate/1");
    assert_eq!(agg["instances"], 10);
    assert_eq!(agg["bound_violations"], 0);
}

#[test]
fn bench_rejects_an_empty_corpus() {
    let dir = TempDir::new().unwrap();
    let o = hitminor(&["bench", "--corpus", dir.path().to_str().unwrap(), "--pattern", "p3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_cap_from_environment() {
    let dir = TempDir::new().unwrap();
    corpus(dir.path(), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_hitminor"))
        .args(["bench", "--corpus", dir.path().to_str().unwrap(), "--pattern", "c4"])
        .env("HITMINOR_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_hitminor"))
        .args(["bench", "--corpus", dir.path().to_str().unwrap(), "--pattern", "c4"])
        .env("HITMINOR_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_subcommand_agrees_with_the_oracle() {
    let dir = TempDir::new().unwrap();
    corpus(dir.path(), 1);
    let g = dir.path().join("g00.gr");
    for p in ["p3", "p4", "k1s:3", "c4", "paw", "banner"] {
        let o = hitminor(&["verify", "--pattern", p, "--graph", g.to_str().unwrap()]);
        assert!(o.status.success(), "{p}");
        assert!(stdout(&o).contains("oracle agree"), "{p}");
    }
}
