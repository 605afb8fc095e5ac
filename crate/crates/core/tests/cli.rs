//! The `dblcat` commands, run in-process and once through the built binary.

use std::path::{Path, PathBuf};
use std::process::Command;

use dblcat::cli::{run_command, Outcome};
use dblcat::io::{parse_document, serialize_document, Document};
use serde_json::Value;

fn scratch() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dblcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(name: &str, text: &str) -> PathBuf {
    let path = scratch().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn spec(name: &str, builder: &str, restriction: Option<&str>) -> PathBuf {
    let restriction = restriction.map(|r| format!(r#","restriction":"{r}""#)).unwrap_or_default();
    write(
        name,
        &format!(r#"{{"format_version":1,"kind":"instance_spec","payload":{{"builder":{builder}{restriction}}}}}"#),
    )
}

fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("dblcat").chain(args.iter().copied()))
}

fn run_on(command: &str, file: &Path, extra: &[&str]) -> Outcome {
    let f = file.to_str().unwrap();
    let mut args = vec![command];
    args.extend_from_slice(extra);
    args.push(f);
    run(&args)
}

fn value<'a>(out: &'a Outcome, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    out.stdout
        .lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key} in\n{}", out.stdout))
}

fn groupoid() -> PathBuf {
    spec("groupoid.json", r#"{"kind":"group_double_groupoid","order":2}"#, None)
}

#[test]
fn validate_accepts_instances_and_rejects_broken_tables() {
    let out = run_on("validate", &groupoid(), &[]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(value(&out, "report.violations"), "0");

    let tabulated = run_on("instance", &groupoid(), &[]);
    assert_eq!(tabulated.code, 0);
    let mut doc: Value = serde_json::from_str(&tabulated.stdout).unwrap();
    let hcomp = doc["payload"]["hcomp"].as_array_mut().unwrap();
    let entry = hcomp.iter_mut().find(|e| e[0] == 1 && e[1] == 1).unwrap();
    entry[2] = Value::from(1);
    let broken = write("broken.json", &doc.to_string());
    let out = run_on("validate", &broken, &[]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert_ne!(value(&out, "report.violations"), "0");
    assert!(out.stdout.contains("report.violation: "));
}

#[test]
fn instance_output_round_trips() {
    let out = run_on("instance", &groupoid(), &[]);
    let doc = parse_document(&out.stdout).unwrap();
    assert!(matches!(doc, Document::DoubleCategory(_)));
    assert_eq!(serialize_document(&doc), out.stdout);

    let target = scratch().join("written.json");
    let out = run(&["instance", "-o", target.to_str().unwrap(), groupoid().to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let again = run_on("validate", &target, &[]);
    assert_eq!((again.code, value(&again, "kind")), (0, "double_category"));
}

#[test]
fn pi2_induce_and_crossprod_on_the_groupoid() {
    let g = groupoid();
    let out = run_on("pi2", &g, &[]);
    assert_eq!((out.code, value(&out, "object.0.size")), (0, "2"));
    let out = run_on("induce", &g, &[]);
    assert_eq!((out.code, value(&out, "induced")), (0, "true"));
    let out = run_on("induce", &g, &["--direction", "indexing"]);
    assert_eq!((out.code, value(&out, "direction")), (0, "indexing"));
    let out = run_on("crossprod", &g, &[]);
    assert_eq!(out.code, 0);
    assert_eq!(value(&out, "squares"), "4");
    assert_eq!(value(&out, "length_one"), "true");
}

#[test]
fn framed_and_length_decisions() {
    let boxed = spec("box.json", r#"{"kind":"commuting_squares","category":{"name":"chain","length":2}}"#, None);
    let out = run_on("framed", &boxed, &[]);
    assert_eq!((out.code, value(&out, "framed")), (1, "false"));
    let two = spec("two.json", r#"{"kind":"length_two"}"#, None);
    let out = run_on("length", &two, &[]);
    assert_eq!(out.code, 0);
    assert_eq!(value(&out, "all_canonical"), "false");
    assert_eq!(value(&out, "gamma"), "10");
}

#[test]
fn rel_classification_on_the_command_line() {
    let rel2 = spec("rel2.json", r#"{"kind":"rel","n":2}"#, None);
    let out = run_on("framed", &rel2, &["--classify"]);
    assert_eq!((out.code, value(&out, "framed")), (0, "true"));
    assert_eq!(value(&out, "ff_equals_injective"), "true");
    assert_eq!(value(&out, "ad_equals_surjective"), "true");

    let rel3 = spec("rel3.json", r#"{"kind":"rel","n":3}"#, None);
    let out = run_on("framed", &rel3, &["--classify"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(value(&out, "framed"), "not checked (over budget)");
    assert_eq!(value(&out, "ff_equals_injective"), "true");
    assert_eq!(value(&out, "ad_equals_surjective"), "true");
    assert_eq!(out.stdout.lines().filter(|l| l.starts_with("morphism.")).count(), 56);
    assert_eq!(run_on("framed", &rel3, &[]).code, 2);
}

#[test]
fn over_budget_rel_star_is_decided_through_the_trait() {
    let star = spec("rel3star.json", r#"{"kind":"rel","n":3}"#, Some("star"));
    let out = run_on("length", &star, &[]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(value(&out, "gamma"), "23873");
    assert_eq!(value(&out, "length_one"), "true");
    let out = run_on("witness", &star, &[]);
    assert_eq!((out.code, value(&out, "witness")), (1, "false"));
    assert_eq!(value(&out, "classes"), "2576");
}

#[test]
fn evaluation_and_witness_on_the_frame_product() {
    let fw = spec("fw.json", r#"{"kind":"frame_witness"}"#, None);
    let out = run_on("evalcheck", &fw, &[]);
    assert_eq!(out.code, 0);
    assert_eq!(value(&out, "full_on_gamma"), "true");
    assert_eq!(value(&out, "injective"), "false");
    let out = run_on("witness", &fw, &[]);
    assert_eq!(out.code, 0);
    assert_eq!(value(&out, "witness"), "true");
    assert_eq!(value(&out, "replay"), "true");
    let g = run_on("witness", &groupoid(), &[]);
    assert_eq!((g.code, value(&g, "witness")), (1, "false"));
}

#[test]
fn machine_block_is_canonical_json() {
    let out = run_on("crossprod", &groupoid(), &["--machine"]);
    let (_, block) = out.stdout.split_once("--- machine\n").unwrap();
    let v: Value = serde_json::from_str(block).unwrap();
    assert_eq!(v["exit_code"], 0);
    assert_eq!(dblcat::io::canonical_json(&v), block);
    let again = run_on("crossprod", &groupoid(), &["--machine"]);
    assert_eq!(again.stdout, out.stdout);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["validate"]).code, 2);
    let missing = run(&["validate", "/nonexistent/doc.json"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.starts_with("error: "));
    let junk = write("junk.json", "{ not json");
    let out = run_on("validate", &junk, &[]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("syntax error"), "{}", out.stderr);
    let cat = write(
        "cat.json",
        r#"{"format_version":1,"kind":"category","payload":{"objects":1,"morphisms":[[0,0]],"identities":[0],"composition":[[0,0,0]]}}"#,
    );
    let wrong = run_on("pi2", &cat, &[]);
    assert_eq!(wrong.code, 2, "{}", wrong.stdout);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn binary_reports_through_exit_status() {
    let bin = env!("CARGO_BIN_EXE_dblcat");
    let ok = Command::new(bin).arg("validate").arg(groupoid()).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("report.violations: 0"));
    let bad = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
