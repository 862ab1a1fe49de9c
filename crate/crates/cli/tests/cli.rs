use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn plink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plink"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn homology_of_circle_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("circle.scx");
    fs::write(&path, "# hollow triangle\n1 2\n2 3\n1 3\n").unwrap();
    let out = plink(&["--json", "homology", path.to_str().unwrap(), "--p", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["betti"], 1);
    assert_eq!(v["torsion"], Value::Array(vec![]));
}

#[test]
fn link_check_failure_exits_one() {
    let out = plink(&["--json", "link-check", "fig-plink-left", "--edge", "1,2"]);
    assert_eq!(code(&out), 1);
    let ok = plink(&["link-check", "fig-plink-right", "--edge", "1,2"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));
}

#[test]
fn mobius_relative_torsion() {
    let out = plink(&[
        "--json",
        "rel-homology",
        "mobius(5)",
        "--p",
        "1",
        "--mode",
        "oracle",
    ]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("torsion"), "{text}");

    let tu = plink(&["--json", "tu-check", "mobius(5)", "--p", "2"]);
    assert_eq!(code(&tu), 1);
    let v = json(&tu);
    assert_eq!(v["unimodular"], false);
    assert_eq!(v["witness"]["kind"], "circuit");
}

#[test]
fn tu_strategies_on_annulus() {
    for strategy in ["circuit", "determinant"] {
        let out = plink(&[
            "--json",
            "tu-check",
            "annulus(6)",
            "--p",
            "2",
            "--strategy",
            strategy,
        ]);
        assert_eq!(code(&out), 0);
        assert_eq!(json(&out)["unimodular"], true);
    }
}

#[test]
fn small_budget_is_inconclusive() {
    let out = plink(&[
        "--json",
        "--budget",
        "3",
        "tu-check",
        "punctured-mobius(15)",
        "--p",
        "2",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn ohcp_on_fig2() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("c.chn");
    let c =
        plink_core::fixtures::fig2_chain().map(|x| plink_core::Rational::from_integer(x.clone()));
    fs::write(&chain, plink_core::io::serialize_chn(&c)).unwrap();

    let lp = plink(&["--json", "ohcp", "fig2-K", chain.to_str().unwrap()]);
    assert_eq!(code(&lp), 0, "{}", String::from_utf8_lossy(&lp.stderr));
    let v = json(&lp);
    assert_eq!(v["status"], "optimal");
    assert_eq!(v["objective"], "17/40");
    assert!(v["certificate"].is_array());

    let ilp = plink(&[
        "--json",
        "ohcp",
        "fig2-K",
        chain.to_str().unwrap(),
        "--solve",
        "ilp",
    ]);
    assert_eq!(json(&ilp)["objective"], "9/20");

    let pushed = plink(&[
        "--json",
        "ohcp",
        "fig2-K",
        chain.to_str().unwrap(),
        "--contract",
        "1,2",
    ]);
    assert_eq!(json(&pushed)["objective"], "9/20");
}

#[test]
fn contract_then_reduce_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("k.scx");
    let log_path = dir.path().join("log.json");
    let c = plink(&[
        "contract",
        "mobius(5)",
        "--edge",
        "1,2",
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&c), 0, "{}", String::from_utf8_lossy(&c.stderr));
    assert!(fs::read_to_string(&out_path).unwrap().lines().count() > 0);

    let r = plink(&[
        "--json",
        "reduce",
        "cone(5)",
        "--gate",
        "p=1,0",
        "--log",
        log_path.to_str().unwrap(),
        "--report",
        "1",
    ]);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
    let v = json(&r);
    assert_eq!(v["report"]["dims"][0]["betti_delta"], 0);
    let log: Value = serde_json::from_str(&fs::read_to_string(&log_path).unwrap()).unwrap();
    assert!(log.is_array() || log.is_object());
}

#[test]
fn generate_is_deterministic_per_seed() {
    let a = plink(&["--seed", "7", "generate", "random(6)"]);
    let b = plink(&["--seed", "7", "generate", "random(6)"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let parsed = plink_core::io::parse_scx(&String::from_utf8(a.stdout).unwrap()).unwrap();
    assert!(!parsed.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&plink(&["frobnicate"])), 2);
    assert_eq!(
        code(&plink(&["homology", "/nonexistent.scx", "--p", "1"])),
        2
    );
    assert_eq!(code(&plink(&["contract", "mobius(5)", "--edge", "1"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scx");
    fs::write(&bad, "1 2\n3 x\n").unwrap();
    let out = plink(&["homology", bad.to_str().unwrap(), "--p", "0"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn outputs_match_schema() {
    let path =
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report-schema.json");
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("c.chn");
    let c =
        plink_core::fixtures::fig2_chain().map(|x| plink_core::Rational::from_integer(x.clone()));
    fs::write(&chain, plink_core::io::serialize_chn(&c)).unwrap();
    let chain = chain.to_str().unwrap();
    let runs: [&[&str]; 10] = [
        &["link-check", "fig-plink-left", "--edge", "1,2"],
        &["contract", "mobius(5)", "--edge", "1,2"],
        &["homology", "mobius(5)", "--p", "1"],
        &["rel-homology", "mobius(5)", "--p", "1", "--mode", "oracle"],
        &[
            "tu-check",
            "mobius(5)",
            "--p",
            "2",
            "--strategy",
            "determinant",
        ],
        &["tu-check", "punctured-mobius(9)", "--p", "2"],
        &["ohcp", "fig2-K", chain, "--solve", "both"],
        &["reduce", "mobius(7)", "--gate", "p=1", "--report", "1,2"],
        &["generate", "two-graph"],
        &["generate", "--list"],
    ];
    for args in runs {
        let out = plink(&[&["--json"], args].concat());
        let v = json(&out);
        let msgs: Vec<String> = match validator.validate(&v) {
            Ok(()) => continue,
            Err(errors) => errors
                .map(|e| format!("{e} at {}", e.instance_path))
                .collect(),
        };
        panic!("{args:?}: {msgs:?}");
    }
}
