use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use proptest::prelude::*;

use qsmash_core::actions::Actor;
use qsmash_core::decouple::{centralizer_basis, check_unbraiding, in_span, ZetaMap};
use qsmash_core::format::{parse_document, parse_expr, write_presentation};
use qsmash_core::ncpoly::{Alphabet, NCPoly, Word};
use qsmash_core::presets::{embedded, load_preset, PresetBundle, Role};
use qsmash_core::products::read_back_action;
use qsmash_core::rewrite::critical_pairs;
use qsmash_core::suites::{realize, Realized};

fn preset(name: &str) -> &'static PresetBundle {
    static CACHE: LazyLock<Mutex<HashMap<String, &'static PresetBundle>>> = LazyLock::new(Default::default);
    let mut cache = CACHE.lock().unwrap();
    cache.entry(name.to_string()).or_insert_with(|| {
        Box::leak(Box::new(load_preset(name).unwrap_or_else(|e| panic!("{name}: {e}"))))
    })
}

fn zeta_of(r: &Realized, name: &str) -> NCPoly {
    r.zetas.iter().find(|z| z.source.name() == name).unwrap().image.clone()
}

const RQ3: [&str; 6] = ["p+", "p-", "p0", "p0inv", "P", "Pinv"];
const UQ: [&str; 4] = ["E+", "E-", "K", "Kinv"];

fn words(letters: &'static [&'static str], max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(letters), 0..=max).prop_map(|w| Word::from_names(&w.join(" ")))
}

#[test]
fn cross_product_is_confluent_and_reads_back_its_action() {
    let b = preset("rq3_cross");
    let cross = b.cross.as_ref().unwrap();
    let r = critical_pairs(&cross.presentation, 3).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let back = read_back_action(cross).unwrap();
    assert_eq!(back.entries(), cross.action.entries());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    /// `w g = g_(1) (w ◁ g_(2))` for whole words, not just letters.
    #[test]
    fn cross_rules_extend_to_words(w in words(&RQ3, 3), g in prop::sample::select(&UQ[..])) {
        let b = preset("rq3_cross");
        let cross = b.cross.as_ref().unwrap();
        let p = &cross.presentation;
        let g = p.letter(g).unwrap();
        let lhs = p.normal_form(&NCPoly::word(w.concat(&Word::letter(g)))).unwrap();
        let mut actor = Actor::new(&cross.algebra, &cross.hopf, &cross.action);
        let mut rhs = NCPoly::zero();
        for ([u, v], c) in cross.hopf.coproduct_letter(g).unwrap().terms() {
            let acted = actor.act(&NCPoly::word(w.clone()), v).unwrap();
            rhs.add_scaled(&acted.mul_word_left(u), c);
        }
        prop_assert_eq!(lhs, p.normal_form(&rhs).unwrap());
    }

    /// ζ̃ images commute with arbitrary words of the algebra.
    #[test]
    fn decoupled_images_commute_with_algebra_words(w in words(&RQ3, 3)) {
        let b = preset("rq3_cross");
        let p = &b.cross.as_ref().unwrap().presentation;
        let x = NCPoly::word(w);
        for role in [Role::Plus, Role::Minus] {
            let r = realize(b, role, "paper-14").unwrap();
            for z in &r.zetas {
                prop_assert!(p.normal_form(&z.image.commutator(&x)).unwrap().is_zero());
            }
        }
    }

    /// ζ̃ of a Hopf word only depends on its normal form.
    #[test]
    fn zeta_is_well_defined_on_words(w in words(&["E+", "K", "Kinv"], 4)) {
        let b = preset("rq3_cross");
        let p = &b.cross.as_ref().unwrap().presentation;
        let r = realize(b, Role::Plus, "paper-14").unwrap();
        let h = r.hopf.base();
        let mut map = ZetaMap::new(p, r.zetas.iter().map(|z| (z.source, z.image.clone())));
        let direct = map.word(&w).unwrap();
        let via_nf = map.poly(&h.normal_form(&NCPoly::word(w)).unwrap()).unwrap();
        prop_assert_eq!(direct, via_nf);
    }
}

#[test]
fn decoupled_generators_have_closed_forms() {
    let b = preset("rq3_cross");
    let p = &b.cross.as_ref().unwrap().presentation;
    let e = |s: &str| p.normal_form(&parse_expr(s, p.alphabet()).unwrap()).unwrap();
    let plus = realize(b, Role::Plus, "paper-14").unwrap();
    let minus = realize(b, Role::Minus, "paper-14").unwrap();
    assert_eq!(zeta_of(&plus, "E+"), e("(q eta/(1-q)) Pinv p- + eta E+ Pinv p0"));
    assert_eq!(zeta_of(&minus, "E-"), e("(eta/(1-q)) Pinv p+ + eta E- Pinv p0"));
    assert_eq!(zeta_of(&plus, "K"), e("eta K Pinv p0"));
    assert_eq!(zeta_of(&plus, "Kinv"), e("eta^-1 Kinv P p0inv"));

    let c = preset("classical_so3_weyl");
    let cp = &c.cross.as_ref().unwrap().presentation;
    let full = realize(c, Role::Full, "classical").unwrap();
    for (j, want) in [
        ("J12", "J12 - x1 d2 + x2 d1"),
        ("J13", "J13 - x1 d3 + x3 d1"),
        ("J23", "J23 - x2 d3 + x3 d2"),
    ] {
        let want = cp.normal_form(&parse_expr(want, cp.alphabet()).unwrap()).unwrap();
        assert_eq!(zeta_of(&full, j), want, "{j}");
    }
}

#[test]
fn variants_differ_only_by_eta_inversion() {
    let b = preset("rq3_cross");
    let p = &b.cross.as_ref().unwrap().presentation;
    let k13 = zeta_of(&realize(b, Role::Plus, "paper-13").unwrap(), "K");
    let want = p.normal_form(&parse_expr("eta^-1 K Pinv p0", p.alphabet()).unwrap()).unwrap();
    assert_eq!(k13, want);
}

#[test]
fn classical_centralizer_in_degree_two() {
    let c = preset("classical_so3_weyl");
    let cross = c.cross.as_ref().unwrap();
    let p = &cross.presentation;
    let basis = centralizer_basis(p, &cross.algebra.letters(), 2).unwrap();
    assert_eq!(basis.len(), 4);
    let full = realize(c, Role::Full, "classical").unwrap();
    for z in &full.zetas {
        assert!(in_span(&z.image, &basis, p).unwrap());
    }
    assert!(in_span(&NCPoly::one(), &basis, p).unwrap());
}

#[test]
fn quantum_centralizer_contains_decoupled_k() {
    let b = preset("rq3_cross");
    let cross = b.cross.as_ref().unwrap();
    let p = &cross.presentation;
    let basis = centralizer_basis(p, &cross.algebra.letters(), 3).unwrap();
    let plus = realize(b, Role::Plus, "paper-14").unwrap();
    assert!(in_span(&zeta_of(&plus, "K"), &basis, p).unwrap());
    assert!(!in_span(&parse_expr("K", p.alphabet()).unwrap(), &basis, p).unwrap());
}

#[test]
fn unbraiding_holds_for_trivial_exchange_only() {
    let t = preset("trivial_braided");
    let reports = check_unbraiding(t.chi.as_ref().unwrap(), t.braided.as_ref().unwrap(), Some(2)).unwrap();
    for r in &reports {
        assert!(r.passed(), "{}", r.to_text());
    }

    let toy = PresetBundle::parse(
        embedded("lambda_toy.bundle").unwrap(),
        &|f: &str| Ok(embedded(f).unwrap().to_string()),
    )
    .unwrap();
    let reports = check_unbraiding(toy.chi.as_ref().unwrap(), toy.braided.as_ref().unwrap(), None).unwrap();
    let commutant = reports.iter().find(|r| r.check == "unbraiding-commutant").unwrap();
    assert!(!commutant.passed());
    assert_eq!(commutant.residuals.len(), 1);
}

#[test]
fn written_cross_product_is_recognised_and_checked() {
    let b = preset("rq3_cross");
    let cross = b.cross.as_ref().unwrap();
    let text = write_presentation(&cross.presentation, Some(&cross.hopf));
    let doc = parse_document(&text, &Alphabet::default()).unwrap();
    let back = PresetBundle::from_document("cross", &doc).unwrap();
    assert_eq!(back.action.as_ref().unwrap().entries(), cross.action.entries());
    assert_eq!(back.algebra.as_ref().unwrap().rules(), cross.algebra.rules());

    let tampered = text.replace("rule p+ E+ -> p0 + q E+ p+", "rule p+ E+ -> q p0 + q E+ p+");
    assert_ne!(tampered, text);
    let doc = parse_document(&tampered, &Alphabet::default()).unwrap();
    assert!(PresetBundle::from_document("cross", &doc).is_err());
}
