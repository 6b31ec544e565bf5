use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(kind: &str, name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(kind)
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn fialg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fialg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn map_args<'a>(cmd: &'a str, poset: &'a str, ring: &'a str, map: &'a str) -> Vec<String> {
    vec![
        cmd.into(),
        "--poset".into(),
        fixture("posets", poset),
        "--ring".into(),
        fixture("rings", ring),
        "--map".into(),
        fixture("maps", map),
    ]
}

fn run(args: &[String]) -> Output {
    fialg(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn validate_poset_prints_covers() {
    let out = fialg(&["validate-poset", &fixture("posets", "chain3")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["elements"], serde_json::json!(["1", "2", "3"]));
    assert_eq!(v["relations"], serde_json::json!([["1", "2"], ["2", "3"]]));
}

#[test]
fn cyclic_relation_is_an_input_error() {
    let out = fialg(&["validate-poset", &fixture("posets", "cycle")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_file_names_path_once() {
    let out = fialg(&["validate-poset", "no/such/poset.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.matches("no/such/poset.json").count(), 1, "{err}");
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let target: PathBuf = dir.path().join("report.json");
    let mut args = map_args("decompose", "two_chains", "rationals", "two_chains_mixed");
    let stdout = run(&args).stdout;
    args.extend(["--out".into(), target.display().to_string()]);
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&target).unwrap(), stdout);
}

#[test]
fn perturbed_map_reports_witness() {
    let mut args = map_args("check-map", "chain2", "rationals", "chain2_perturbed");
    args.push("--jordan".into());
    let out = run(&args);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let witnesses: usize = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["witnesses"].as_array().unwrap().len())
        .sum();
    assert!(witnesses > 0);
}

#[test]
fn generated_map_round_trips_through_check_map() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("phi.json").display().to_string();
    let (poset, ring) = (fixture("posets", "diamond"), fixture("rings", "mod9"));
    let gen = fialg(&[
        "gen-jordan",
        "--poset",
        &poset,
        "--ring",
        &ring,
        "--seed",
        "11",
        "--out",
        &map,
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let check = fialg(&[
        "check-map",
        "--poset",
        &poset,
        "--ring",
        &ring,
        "--map",
        &map,
        "--jordan",
    ]);
    assert_eq!(check.status.code(), Some(0));
    let dec = fialg(&["decompose", "--poset", &poset, "--ring", &ring, "--map", &map]);
    assert_eq!(dec.status.code(), Some(0));
}

#[test]
fn decompose_output_lists_both_sides() {
    let out = run(&map_args("decompose", "chain2", "rationals", "chain2_reversing"));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "psi_homomorphism",
            "theta_anti_homomorphism",
            "diagonal_agreement",
            "strict_sum",
            "mutual_annihilation"
        ]
    );
    assert!(v.get("psi").is_some() && v.get("theta").is_some());
}

#[test]
fn inline_ring_names_are_accepted() {
    let poset = fixture("posets", "chain2");
    let a = fialg(&["gen-jordan", "--poset", &poset, "--ring", "modular(9)", "--seed", "2"]);
    let b = fialg(&[
        "gen-jordan",
        "--poset",
        &poset,
        "--ring",
        &fixture("rings", "mod9"),
        "--seed",
        "2",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn torsion_override_is_explicit() {
    let args = map_args("verify", "chain2", "mod6", "chain2_identity");
    let refused = run(&args);
    assert_eq!(refused.status.code(), Some(2));
    let err = String::from_utf8_lossy(&refused.stderr);
    assert!(
        err.contains("TorsionRefused") && err.contains("--ring") && err.contains("mod6.json"),
        "{err}"
    );
    let mut forced = args.clone();
    forced.push("--allow-torsion".into());
    assert_eq!(run(&forced).status.code(), Some(0));
}

#[test]
fn gen_poset_is_seeded() {
    let a = fialg(&["gen-poset", "--n", "7", "--p", "1/2", "--seed", "9"]);
    let b = fialg(&["gen-poset", "--n", "7", "--p", "1/2", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let bad = fialg(&["gen-poset", "--n", "3", "--p", "3/2", "--seed", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(fialg(&["frobnicate"]).status.code(), Some(2));
}
