use proptest::prelude::*;

use qsmash_core::presets::{embedded, list_expected_identities, load_preset, PresetBundle, PRESETS};
use qsmash_core::suites::{run_suite, suite_names, SuiteOptions, SCHEMA_VERSION};
use qsmash_core::Error;

fn opts(variant: Option<&str>) -> SuiteOptions {
    SuiteOptions {
        variant: variant.map(str::to_string),
        ..SuiteOptions::default()
    }
}

fn bundle_with(file: &str, replace: &str, text: &str) -> PresetBundle {
    PresetBundle::parse(embedded(file).unwrap(), &|f: &str| {
        Ok(if f == replace { text.to_string() } else { embedded(f).unwrap().to_string() })
    })
    .unwrap()
}

#[test]
fn every_preset_loads() {
    for (name, _) in PRESETS {
        let b = load_preset(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(&b.name, name);
    }
    assert!(matches!(load_preset("rq4"), Err(Error::UnknownPreset(n)) if n == "rq4"));
}

#[test]
fn suites_are_registered_by_name() {
    assert_eq!(suite_names(), ["identities", "theorem1", "theorem2", "theorem3"]);
    let b = load_preset("rq3").unwrap();
    assert!(run_suite("theorem4", &b, &opts(None)).is_err());
}

#[test]
fn expected_identities_expand_central_elements() {
    let b = load_preset("rq3").unwrap();
    let ids = list_expected_identities(&b);
    let central: Vec<_> = ids.iter().filter(|(_, _, t)| t == "P2central").collect();
    assert_eq!(central.len(), 6);
    assert!(central.iter().all(|(_, rhs, _)| rhs == "0"));
    assert!(ids.iter().any(|(l, r, t)| t == "metric" && l == "P^2" && r.contains("p- p+")));

    let c = load_preset("classical_so3_weyl").unwrap();
    let ids = list_expected_identities(&c);
    assert_eq!(ids.iter().filter(|(_, _, t)| t == "spin-commutes").count(), 18);
}

#[test]
fn identity_and_theorem1_suites_pass() {
    for (preset, suite) in [("rq3", "identities"), ("uq_so3", "identities"), ("classical_so3_weyl", "theorem1")] {
        let r = run_suite(suite, &load_preset(preset).unwrap(), &opts(None)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}

#[test]
fn theorem2_selects_the_charge_per_variant() {
    let b = load_preset("phi_variants").unwrap();
    for (variant, charge) in [("paper-14", "eta^2"), ("paper-13", "eta^-2")] {
        let r = run_suite("theorem2", &b, &opts(Some(variant))).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        let c = r.check("expect:charge").unwrap();
        assert_eq!(c.selected_constant.as_deref(), Some(charge));
    }
}

#[test]
fn theorem3_separates_trivial_and_q_commuting_exchange() {
    let t = run_suite("theorem3", &load_preset("trivial_braided").unwrap(), &opts(None)).unwrap();
    assert!(t.passed(), "{}", t.to_text());
    let toy = bundle_with("lambda_toy.bundle", "", "");
    let r = run_suite("theorem3", &toy, &opts(None)).unwrap();
    assert!(!r.passed());
    let failing: Vec<_> = r.checks.iter().filter(|c| !c.status.is_pass()).map(|c| c.name.as_str()).collect();
    assert_eq!(failing, ["unbraiding-commutant"]);
    let residual = &r.check("unbraiding-commutant").unwrap().residual[0].expression;
    assert_eq!(residual, "(-1+q) a1 a2");
}

#[test]
fn reports_are_deterministic_json() {
    let b = load_preset("rq3").unwrap();
    let a = run_suite("identities", &b, &opts(None)).unwrap().to_json();
    let again = run_suite("identities", &load_preset("rq3").unwrap(), &opts(None)).unwrap().to_json();
    assert_eq!(a, again);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], SCHEMA_VERSION);
    assert_eq!(v["suite"], "identities");
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn sphere_quotient_sets_radius_to_one() {
    let s = load_preset("rq3_sphere_cross").unwrap();
    let p = &s.cross.as_ref().unwrap().presentation;
    let e = qsmash_core::format::parse_expr("P^2 Pinv p+ P", p.alphabet()).unwrap();
    assert_eq!(p.format_poly(&p.normal_form(&e).unwrap()), "p+");
}

fn rq3_lines(rules: bool) -> Vec<&'static str> {
    embedded("rq3.alg").unwrap().lines().filter(|l| l.starts_with("rule ") == rules).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reports_ignore_rule_order(shuffled in Just(rq3_lines(true)).prop_shuffle()) {
        let permuted = [rq3_lines(false), shuffled].concat().join("\n");
        let base = run_suite("identities", &load_preset("rq3").unwrap(), &opts(None)).unwrap();
        let b = bundle_with("rq3.bundle", "rq3.alg", &permuted);
        let r = run_suite("identities", &b, &opts(None)).unwrap();
        prop_assert_eq!(r.to_json(), base.to_json());
    }
}
