//! End-to-end runs of the `butterfly` binary.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use butterfly::codecs::{parse_btf, parse_pd};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn butterfly(args: &[&str], stdin: Option<&str>, out_dir: Option<&Path>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_butterfly"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .env_remove("BUTTERFLY_OUT_DIR");
    if let Some(dir) = out_dir {
        cmd.env("BUTTERFLY_OUT_DIR", dir);
    }
    let mut child = cmd.spawn().expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

#[test]
fn rational_butterfly_pipes_into_a_link() {
    let btf = butterfly(&["rational", "5", "2"], None, None);
    assert_eq!(btf.code, 0);
    let link = butterfly(&["to-link", "-"], Some(&btf.stdout), None);
    assert_eq!(link.code, 0, "{}", link.stderr);
    let d = parse_pd(&link.stdout).unwrap();
    assert_eq!((d.num_crossings(), d.num_components()), (8, 1));
    assert!(link.stderr.contains("bridges: 2"));
}

#[test]
fn reduce_writes_trace_and_result_under_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let run = butterfly(
        &["reduce", "borromean-12arc", "--trace", "trace.jsonl", "--out", "reduced.btf"],
        None,
        Some(dir.path()),
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout.trim(), "m: 12 → 3");
    let trace = std::fs::read_to_string(dir.path().join("trace.jsonl")).unwrap();
    let records: Vec<Value> = trace.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 9);
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r["kind"], "reduce");
        assert_eq!(r["m_before"], 12 - i as u64);
        assert_eq!(r["m_after"], 11 - i as u64);
    }
    let reduced = parse_btf(&std::fs::read_to_string(dir.path().join("reduced.btf")).unwrap()).unwrap();
    assert_eq!(reduced.m(), 3);
}

#[test]
fn expand_clears_e_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let run = butterfly(&["expand", "rational-3-1", "--trace", "t.jsonl"], None, Some(dir.path()));
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout.trim(), "m: 2 → 4");
    let trace = std::fs::read_to_string(dir.path().join("t.jsonl")).unwrap();
    assert!(trace.lines().all(|l| l.contains("\"kind\":\"expand\"")));
    assert_eq!(trace.lines().count(), 2);
}

#[test]
fn roundtrip_and_invariants_of_corpus_entries() {
    for name in ["trefoil-plat", "fig8-plat", "hopf", "borromean-12arc", "8_20-a"] {
        let run = butterfly(&["roundtrip", name], None, None);
        assert_eq!(run.code, 0, "{name}: {}", run.stderr);
        assert!(run.stdout.contains("fingerprint preserved"));
    }
    let inv = butterfly(&["--json", "invariant", "hopf"], None, None);
    let v: Value = serde_json::from_str(inv.stdout.trim()).unwrap();
    assert_eq!(v["components"], 2);
    assert_eq!(v["polynomials"].as_array().unwrap().len(), 4);
}

#[test]
fn validate_reports_json() {
    let run = butterfly(&["--json", "validate", "rational-3-1"], None, None);
    assert_eq!(run.code, 0);
    let v: Value = serde_json::from_str(run.stdout.trim()).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["m"], 2);
}

#[test]
fn input_format_is_sniffed_from_stdin() {
    let btf = butterfly(&["rational", "3", "1"], None, None).stdout;
    assert_eq!(butterfly(&["validate", "-"], Some(&btf), None).code, 0);
    let pd = "PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]\n";
    let run = butterfly(&["to-butterfly", "-"], Some(pd), None);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.starts_with("btf"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = butterfly(&["--json", "validate", "nope.btf"], None, None);
    assert_eq!(missing.code, 3);
    let err: Value = serde_json::from_str(missing.stderr.trim()).unwrap();
    assert_eq!(err["error"], "io");
    assert_eq!(err["exit_code"], 3);

    let bad = dir.path().join("bad.pd");
    std::fs::write(&bad, "PD[X[1,2,3").unwrap();
    assert_eq!(butterfly(&["invariant", bad.to_str().unwrap()], None, None).code, 4);

    assert_eq!(butterfly(&["frobnicate"], None, None).code, 2);
    assert_eq!(butterfly(&["rational", "4", "2"], None, None).code, 5);
}

#[test]
fn renders_are_deterministic_svg() {
    let dir = tempfile::tempdir().unwrap();
    for (i, target) in ["butterfly", "link", "butterfly-with-gamma"].iter().enumerate() {
        let a = format!("a{i}.svg");
        let b = format!("b{i}.svg");
        for out in [&a, &b] {
            let run = butterfly(&["render", "rational-3-1", "--svg", out, "--target", target], None, Some(dir.path()));
            assert_eq!(run.code, 0, "{target}: {}", run.stderr);
        }
        let (sa, sb) = (
            std::fs::read_to_string(dir.path().join(&a)).unwrap(),
            std::fs::read_to_string(dir.path().join(&b)).unwrap(),
        );
        assert!(sa.contains("<svg ") && sa.trim_end().ends_with("</svg>"));
        assert_eq!(sa, sb);
    }
}
