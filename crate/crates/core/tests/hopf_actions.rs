use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use proptest::prelude::*;

use qsmash_core::actions::{check_module_algebra, ActionTable, Actor};
use qsmash_core::coeff::Scalar;
use qsmash_core::format::parse_expr;
use qsmash_core::hopf::{check_hopf_axioms, HopfData};
use qsmash_core::ncpoly::{NCPoly, Tensor, TensorPoly, Word};
use qsmash_core::presets::{load_preset, PresetBundle};

fn preset(name: &str) -> &'static PresetBundle {
    static CACHE: LazyLock<Mutex<HashMap<String, &'static PresetBundle>>> = LazyLock::new(Default::default);
    let mut cache = CACHE.lock().unwrap();
    cache.entry(name.to_string()).or_insert_with(|| {
        Box::leak(Box::new(load_preset(name).unwrap_or_else(|e| panic!("{name}: {e}"))))
    })
}

fn with_antipode(h: &HopfData, letter: &str, image: &str) -> HopfData {
    let base = h.base().clone();
    let letters = base.letters();
    let target = base.letter(letter).unwrap();
    HopfData::new(
        base.clone(),
        letters.iter().map(|&l| (l, h.coproduct_letter(l).unwrap().clone())),
        letters.iter().map(|&l| (l, h.counit_letter(l).unwrap().clone())),
        letters.iter().map(|&l| {
            let s = if l == target {
                parse_expr(image, base.alphabet()).unwrap()
            } else {
                h.antipode_letter(l).unwrap().clone()
            };
            (l, s)
        }),
    )
    .unwrap()
}

#[test]
fn preset_hopf_algebras_satisfy_the_axioms() {
    for name in ["uq_so3", "classical_so3_weyl", "rq3_cross"] {
        let b = preset(name);
        let r = check_hopf_axioms(b.hopf.as_ref().unwrap());
        assert!(r.passed(), "{name}: {}", r.to_text());
    }
}

#[test]
fn wrong_antipode_is_detected() {
    let b = preset("uq_so3");
    let h = b.hopf.as_ref().unwrap();
    for (letter, image) in [("E+", "E+ Kinv"), ("E-", "-Kinv E-"), ("K", "K")] {
        let r = check_hopf_axioms(&with_antipode(h, letter, image));
        assert!(!r.passed(), "S({letter}) = {image} accepted");
    }
}

/// Gaussian binomial in `t`, by the Pascal recursion.
fn gauss_binomial(n: usize, k: usize, t: &Scalar) -> Scalar {
    let mut row = vec![Scalar::one()];
    for m in 1..=n {
        let mut next = vec![Scalar::one(); m + 1];
        let mut tp = Scalar::one();
        for j in 1..m {
            tp = tp.mul(t);
            // [m, j] = [m-1, j-1] + t^j [m-1, j]
            next[j] = row[j - 1].add(&tp.mul(&row[j]));
        }
        row = next;
    }
    row[k].clone()
}

#[test]
fn coproduct_of_powers_is_q_binomial() {
    let b = preset("uq_so3");
    let h = b.hopf.as_ref().unwrap();
    // with A = E+ (x) K and B = 1 (x) E+ we have B A = q^-1 A B
    let t = Scalar::q_pow(-1);
    for n in 0..=5 {
        let got = h.coproduct_word(&Word::from_names(&vec!["E+"; n].join(" "))).unwrap();
        let mut want = TensorPoly::zero();
        for k in 0..=n {
            let left = Word::from_names(&vec!["E+"; k].join(" "));
            let right = Word::from_names(&[vec!["K"; k], vec!["E+"; n - k]].concat().join(" "));
            want.add_term([left, right], gauss_binomial(n, k, &t));
        }
        assert_eq!(got, want, "n = {n}");
    }
    let k3 = h.coproduct_word(&Word::from_names("K K K")).unwrap();
    let kw = Word::from_names("K K K");
    assert_eq!(k3, Tensor::monomial(Scalar::one(), [kw.clone(), kw]));
}

#[test]
fn derived_inverse_entries_match_hand_values() {
    let b = preset("rq3_cross");
    let table = b.action.as_ref().unwrap();
    let g = |n: &str| b.alphabet.by_name(n).unwrap().letter;
    let e = |s: &str| parse_expr(s, &b.alphabet).unwrap();
    // 0 = (p0 p0inv) ◁ E+ fixes p0inv ◁ E+ = p0inv p- p0inv
    assert_eq!(table.get(g("p0inv"), g("E+")).unwrap(), &e("q^-1 p0inv^2 p-"));
    assert_eq!(table.get(g("p0inv"), g("K")).unwrap(), &e("p0inv"));
    assert_eq!(table.get(g("Pinv"), g("E-")).unwrap(), &e("0"));
}

#[test]
fn preset_actions_are_module_algebras() {
    for name in ["classical_so3_weyl", "rq3_cross"] {
        let b = preset(name);
        let r = check_module_algebra(
            b.algebra.as_ref().unwrap(),
            b.hopf.as_ref().unwrap(),
            b.action.as_ref().unwrap(),
        );
        assert!(r.passed(), "{name}: {}", r.to_text());
    }
}

#[test]
fn wrong_action_entry_is_detected() {
    let b = preset("rq3_cross");
    let a = b.algebra.as_ref().unwrap();
    let mut t: ActionTable = b.action.clone().unwrap();
    let (p_plus, e_plus) = (a.letter("p+").unwrap(), b.alphabet.by_name("E+").unwrap().letter);
    t.insert(p_plus, e_plus, parse_expr("q p0", a.alphabet()).unwrap());
    let r = check_module_algebra(a, b.hopf.as_ref().unwrap(), &t);
    assert!(!r.passed());
}

const WEYL: [&str; 6] = ["x1", "x2", "x3", "d1", "d2", "d3"];
const SO3: [&str; 3] = ["J12", "J13", "J23"];

fn orbital(j: &str) -> &'static str {
    match j {
        "J12" => "x1 d2 - x2 d1",
        "J13" => "x1 d3 - x3 d1",
        _ => "x2 d3 - x3 d2",
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Classically the right action is `a ◁ J = [a, L]` for the orbital operator `L`.
    #[test]
    fn classical_action_is_the_orbital_commutator(
        w in prop::collection::vec(prop::sample::select(&WEYL[..]), 0..=4),
        h in prop::collection::vec(prop::sample::select(&SO3[..]), 1..=2),
    ) {
        let b = preset("classical_so3_weyl");
        let a = b.algebra.as_ref().unwrap();
        let hopf = b.hopf.as_ref().unwrap();
        let mut actor = Actor::new(a, hopf, b.action.as_ref().unwrap());
        let x = NCPoly::word(Word::from_names(&w.join(" ")));
        let got = actor.act(&x, &Word::from_names(&h.join(" "))).unwrap();
        let mut want = x;
        for j in &h {
            let l = parse_expr(orbital(j), a.alphabet()).unwrap();
            want = a.normal_form(&want.commutator(&l)).unwrap();
        }
        prop_assert_eq!(got, a.normal_form(&want).unwrap());
    }
}
