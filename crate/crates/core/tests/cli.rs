// SPDX-License-Identifier: MIT OR Apache-2.0

use ssorient::cli::format::{Instance, Record};
use ssorient::cli::run;
use std::path::PathBuf;

fn golden(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(name).display().to_string()
}

fn ok(args: &[&str]) -> String {
    let mut argv = vec!["ssorient"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, 0, "{}", out.stderr);
    out.stdout
}

fn code(args: &[&str]) -> i32 {
    let mut argv = vec!["ssorient"];
    argv.extend_from_slice(args);
    run(argv).code
}

#[test]
fn orient_prints_first_solution() {
    let out = ok(&["orient-1728", "--p", "179", "--disc", "-47", "--ell", "2", "--max-solutions", "1"]);
    let r = Record::parse(&out).unwrap();
    assert_eq!(r.get("count").unwrap(), "1");
    assert_eq!(r.get("solution.0.r").unwrap(), "1");
    assert_eq!(r.get("solution.0.quat").unwrap(), "0 3/2 0 1/2");
    assert_eq!(r.get("solution.0.disc").unwrap(), "-188");
}

#[test]
fn divide_matches_golden() {
    let out = ok(&["divide-by-ell", "--instance", &golden("div3.in")]);
    let want = Record::parse(&std::fs::read_to_string(golden("div3.out")).unwrap()).unwrap();
    assert_eq!(Record::parse(&out).unwrap(), want);
}

#[test]
fn translate_output_is_a_valid_instance() {
    let f = golden("theta47.in");
    let out = ok(&["suitable-translate", "--curve", &f, "--endo", &f, "--ell", "2", "--B", "50"]);
    let inst = Instance::parse(&Record::parse(&out).unwrap()).unwrap();
    assert_eq!((inst.endo.t, inst.endo.n), (2, 48));
    assert_eq!(inst.endo.link_degrees(), vec![16, 3]);
    assert!(inst.endo.satisfies_min_poly(5, 1).unwrap());
    // and feeds back into the ascent
    let dir = std::env::temp_dir().join(format!("ssorient-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let chain = dir.join("chain.in");
    std::fs::write(&chain, &out).unwrap();
    let c = chain.display().to_string();
    let up = Record::parse(&ok(&["ascend", "--curve", &c, "--endo", &c])).unwrap();
    assert_eq!(up.get("length").unwrap(), "1");
    assert_eq!(up.get("j").unwrap(), "117 22");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["orient-1728", "--p", "179"]), 2);
    assert_eq!(code(&["divide-by-ell", "--instance", "/nonexistent/file"]), 2);
    // −188 is not 2-fundamental
    assert_eq!(code(&["orient-1728", "--p", "179", "--disc", "-188"]), 1);
    let f = golden("theta47.in");
    // θ on E₁₇₂₈ has discriminant −188, divisible by ℓ: no rim walk.
    assert_eq!(code(&["walk-rim", "--curve", &f, "--endo", &f]), 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["orient-1728", "--p", "179", "--disc", "-47", "--max-solutions", "4"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn volcano_dot() {
    let dot = ok(&["explore-volcano", "--p", "179", "--disc", "-47", "--depth", "1"]);
    assert!(dot.starts_with("graph volcano {"));
    assert_eq!(dot.matches("color=red").count(), 5);
    assert!(dot.contains("alt -1"));
}
