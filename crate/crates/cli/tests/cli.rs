use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn preset(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/presets").join(file)
}

fn qsmash(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsmash")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn normalize_prints_the_metric_reduction() {
    let o = qsmash(&["normalize", path(&preset("rq3.alg")), "p+ p-"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(1/(1+q)) P^2 - (1/(q*(1+q))) p0^2");
    for s in ["leftmost-innermost", "rightmost-outermost"] {
        let o = qsmash(&["normalize", path(&preset("rq3.alg")), "p+ p-", "--strategy", s]);
        assert_eq!(stdout(&o), "(1/(1+q)) P^2 - (1/(q*(1+q))) p0^2", "{s}");
    }
}

#[test]
fn spin_commutes_with_position() {
    let o = qsmash(&["commutator", path(&preset("classical.bundle")), "J12 - x1 d2 + x2 d1", "x3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0");
    let o = qsmash(&["commutator", path(&preset("classical.bundle")), "J12", "x1"]);
    assert_ne!(stdout(&o), "0");
}

#[test]
fn verify_writes_a_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = qsmash(&[
        "verify",
        path(&preset("rq3_cross.bundle")),
        "--suite",
        "theorem2",
        "--variant",
        "paper-14",
        "--report",
        path(&report),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "theorem2");
    assert_eq!(v["variant"], "paper-14");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn failed_checks_exit_with_one() {
    let o = qsmash(&["verify", path(&preset("lambda_toy.bundle")), "--suite", "theorem3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("unbraiding-commutant: fail"), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_with_two() {
    let rq3 = preset("rq3.alg");
    assert_eq!(qsmash(&["normalize", path(&rq3), "p+ zz"]).status.code(), Some(2));
    assert_eq!(qsmash(&["normalize", path(&rq3), "p+ (("]).status.code(), Some(2));
    assert_eq!(qsmash(&["normalize", "/nonexistent/file.alg", "1"]).status.code(), Some(2));
    assert_eq!(qsmash(&["frobnicate"]).status.code(), Some(2));
    let o = qsmash(&["verify", path(&preset("rq3.bundle")), "--suite", "theorem9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn built_cross_product_passes_its_own_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cross.alg");
    let o = qsmash(&[
        "build-cross",
        path(&preset("rq3.alg")),
        path(&preset("uq_so3.alg")),
        "--action",
        path(&preset("rq3_uq.tbl")),
        "--derive-inverse",
        "p0",
        "--derive-inverse",
        "P",
        "-o",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(qsmash(&["confluence", path(&out)]).status.code(), Some(0));
    assert_eq!(qsmash(&["check-hopf", path(&out)]).status.code(), Some(0));

    let o = qsmash(&["zeta", path(&out), "--phi", path(&preset("phi_plus_eta_inv.map")), "--gen", "K"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().next(), Some("eta K Pinv p0"));

    let report = dir.path().join("out.json");
    let o = qsmash(&[
        "verify",
        path(&out),
        "--phi-plus",
        path(&preset("phi_plus_eta_inv.map")),
        "--phi-minus",
        path(&preset("phi_minus_eta_inv.map")),
        "--suite",
        "theorem2",
        "--degree",
        "2",
        "--report",
        path(&report),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(report.exists());
}

#[test]
fn braided_product_accepts_exchange_flag() {
    let o = qsmash(&[
        "build-braided",
        path(&preset("rq3.alg")),
        path(&preset("rq3_copy.alg")),
        "--exchange",
        path(&preset("trivial_exchange.tbl")),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rule y+ p+ -> p+ y+"), "{}", stdout(&o));
}

#[test]
fn json_output_is_stable_under_rule_permutation() {
    let text = std::fs::read_to_string(preset("rq3.alg")).unwrap();
    let (mut rules, rest): (Vec<&str>, Vec<&str>) = text.lines().partition(|l| l.starts_with("rule "));
    rules.reverse();
    rules.rotate_left(3);
    let dir = tempfile::tempdir().unwrap();
    let permuted = dir.path().join("rq3.alg");
    std::fs::write(&permuted, [rest, rules].concat().join("\n")).unwrap();
    for args in [vec!["confluence"], vec!["centralizer", "--subset", "p0", "--degree", "2"]] {
        let mut a: Vec<&str> = vec!["--format", "json", args[0], path(&permuted)];
        a.extend(&args[1..]);
        let permuted_out = stdout(&qsmash(&a));
        let original = preset("rq3.alg");
        a[3] = path(&original);
        let original_out = stdout(&qsmash(&a));
        assert!(!original_out.is_empty());
        assert_eq!(permuted_out, original_out, "{args:?}");
    }
}

#[test]
fn preset_names_stand_in_for_paths() {
    let o = qsmash(&["verify", "rq3", "--suite", "identities"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(qsmash(&["verify", "rq9", "--suite", "identities"]).status.code(), Some(2));
}
