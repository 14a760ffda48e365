mod support;

use std::path::Path;
use std::process::{Command, Output};

use serde_json::json;
use surfres::pipeline::emit::{emit, list_targets, Format, Target};
use surfres::pipeline::{log, run, verify, InputFile, PipelineConfig};
use surfres::ruled::{BinaryForm, LabeledSection, RuledSurface, Section};
use surfres::stabilization::{smooth_total_space, stabilize, StabilizationConfig};
use surfres::toric::{hj_resolve, CyclicQuotientType};

use support::input_path;

fn surfres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surfres")).args(args).output().expect("binary runs")
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn non_homogeneous_input_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.toml", "F = \"w^2 - x0\"\nD = [\"x0\"]\n");
    let out = surfres(&["resolve", &input]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("input: F not homogeneous"), "{}", text(&out.stderr));
}

#[test]
fn unreadable_and_mixed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.toml");
    assert_eq!(surfres(&["resolve", &missing.to_string_lossy()]).status.code(), Some(2));
    let mixed = write(dir.path(), "mixed.toml", "F = \"w^2 - x0*x1\"\ntwist_e = 1\n");
    assert_eq!(surfres(&["resolve", &mixed]).status.code(), Some(2));
    let unknown = write(dir.path(), "unknown.toml", "G = 1\n");
    assert_eq!(surfres(&["resolve", &unknown]).status.code(), Some(2));
}

#[test]
fn resolve_verify_and_emit_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let log_path = dir.path().join("quadric.jsonl");
    let log_arg = log_path.to_string_lossy().into_owned();
    let quadric = input_path("quadric_cone.toml");
    let out = surfres(&["resolve", &quadric.to_string_lossy(), "--out", &log_arg, "--emit-fan", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    assert!(dir.path().join("fan-0.dot").exists());

    let v = surfres(&["verify", &log_arg]);
    assert_eq!(v.status.code(), Some(0));
    assert!(text(&v.stdout).starts_with("pass"), "{}", text(&v.stdout));

    let list = surfres(&["emit", &log_arg, "--list"]);
    assert!(text(&list.stdout).contains("fan 0"));
    let svg = surfres(&["emit", &log_arg, "--fan", "0", "--format", "svg"]);
    assert!(text(&svg.stdout).starts_with("<svg"));

    let body = std::fs::read_to_string(&log_path).unwrap();
    let tampered = write(dir.path(), "tampered.jsonl", &body.replacen("\"chain\":[2]", "\"chain\":[3]", 1));
    let v = surfres(&["verify", &tampered]);
    assert_eq!(v.status.code(), Some(1));
    assert!(text(&v.stdout).contains("unimodularity"), "{}", text(&v.stdout));
}

#[test]
fn json_and_toml_inputs_give_the_same_log() {
    let toml_in = InputFile::load(&input_path("fibered_cusp.toml")).unwrap();
    let json_in = InputFile::from_str_auto(
        r#"{"twist_e": 1, "phis": ["1", "0", "-t0*t1", "0"], "marked_sections": ["0"], "seed": 1}"#,
        None,
    )
    .unwrap();
    assert_eq!(toml_in, json_in);
    let cfg = PipelineConfig::resolve(&toml_in, None, None).unwrap();
    assert_eq!(run(&toml_in, &cfg).text(), run(&json_in, &cfg).text());
}

#[test]
fn degree_cap_is_a_cap_error() {
    let input = InputFile::load(&input_path("fibered_cusp.toml")).unwrap();
    let cfg = PipelineConfig::resolve(&input, None, Some(2)).unwrap();
    let out = run(&input, &cfg);
    assert_eq!(out.exit_code(), 3, "{:?}", out.error);
    let report = verify(&out.text());
    assert!(report.divergence.is_none());
    assert!(!report.passed());
}

#[test]
fn truncated_and_reordered_logs_fail() {
    let input = InputFile::load(&input_path("quadric_cone.toml")).unwrap();
    let cfg = PipelineConfig::resolve(&input, None, None).unwrap();
    let entries = run(&input, &cfg).entries;
    assert!(!verify(&log::to_text(&entries[..entries.len() - 1])).passed());
    let mut swapped = entries.clone();
    swapped.swap(2, 3);
    assert!(!verify(&log::to_text(&swapped)).passed());
    assert!(!verify("").passed());
    assert!(!verify("{not json").passed());
}

#[test]
fn fan_dot_for_five_three_has_four_rays() {
    let (chain, fan) = hj_resolve(&CyclicQuotientType { m: 5, q: 3 }).unwrap();
    assert_eq!(chain, vec![2, 3]);
    let e = log::entry("fan_subdivision", json!({ "id": 0, "crossing": "t,l@(0, 0)", "chain": chain, "fan": fan }));
    let dot = emit(&[e], &Target::Fan("0".into()), Format::Dot).unwrap();
    assert_eq!(dot.lines().filter(|l| l.trim_start().starts_with('r') && l.contains("[label=\"(")).count(), 4);
    assert_eq!(dot.matches("det 1").count(), 3);
}

#[test]
fn tree_dot_for_four_sections() {
    let sections: Vec<LabeledSection> = ["0", "t1", "2*t1", "t0"]
        .iter()
        .enumerate()
        .map(|(i, s)| LabeledSection::new(format!("S{i}"), Section::Finite(BinaryForm::parse(s, 1).unwrap())))
        .collect();
    let fam = stabilize(RuledSurface::new(1), &sections, &StabilizationConfig::default()).unwrap();
    let smooth = smooth_total_space(&fam);
    let entries: Vec<_> = smooth.special_fibers.iter().map(|t| log::entry("chain_insertion", log::tree(t))).collect();
    let key = entries
        .iter()
        .find(|e| e["vertices"].as_array().unwrap().len() == 2)
        .map(|e| e["point"].as_str().unwrap().to_string())
        .expect("one fiber with a bubble");
    let dot = emit(&entries, &Target::Tree(key), Format::Dot).unwrap();
    assert_eq!(dot.matches("shape=box").count(), 2);
    assert_eq!(dot.matches("shape=plaintext").count(), 4);
}

#[test]
fn empty_logs_have_no_targets() {
    assert_eq!(list_targets(&[]), "no targets\n");
    assert!(emit(&[], &Target::Tree("t=0".into()), Format::Dot).is_err());
}
