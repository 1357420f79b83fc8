use proptest::prelude::*;

use qsmash_core::coeff::Scalar;
use qsmash_core::format::{parse_document, parse_expr, parse_scalar, printer, write_presentation, Span};
use qsmash_core::ncpoly::{Alphabet, NCPoly, Word};
use qsmash_core::presets::embedded;
use qsmash_core::rewrite::Presentation;
use qsmash_core::Error;

fn rq3() -> Presentation {
    parse_document(embedded("rq3.alg").unwrap(), &Alphabet::default())
        .and_then(|d| d.presentation())
        .unwrap()
}

fn scalar() -> impl Strategy<Value = Scalar> {
    let atom = prop_oneof![
        (-5i64..=5).prop_map(Scalar::from_int),
        (-3i32..=3).prop_map(Scalar::q_pow),
        (-2i32..=2).prop_map(Scalar::eta_pow),
    ];
    (atom.clone(), atom.clone(), atom).prop_filter_map("pole", |(a, b, c)| a.add(&b).div(&c.sub(&Scalar::one())).ok())
}

fn poly() -> impl Strategy<Value = NCPoly> {
    const LETTERS: [&str; 6] = ["p+", "p-", "p0", "p0inv", "P", "Pinv"];
    let word = prop::collection::vec(prop::sample::select(&LETTERS[..]), 0..=4);
    prop::collection::vec((word, scalar()), 0..=4).prop_map(|terms| {
        NCPoly::from_terms(terms.into_iter().map(|(w, c)| (Word::from_names(&w.join(" ")), c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn printed_polynomials_parse_back(e in poly()) {
        let p = rq3();
        let text = printer::poly_to_string(&e, p.order());
        let back = parse_expr(&text, p.alphabet()).unwrap();
        prop_assert_eq!(&back, &e, "{}", text);
        prop_assert_eq!(printer::poly_to_string(&back, p.order()), text);
    }

    #[test]
    fn printed_scalars_parse_back(s in scalar()) {
        prop_assert_eq!(parse_scalar(&s.to_string(), Span::new(1, 1)).unwrap(), s);
    }
}

#[test]
fn documented_parse_examples() {
    let p = rq3();
    let a = p.alphabet();
    let rel = parse_expr("p+ p- - p- p+ - (1-q^-1) p0^2", a).unwrap();
    assert_eq!(rel.len(), 3);
    let c = Scalar::one().sub(&Scalar::q_pow(-1)).neg();
    assert_eq!(rel.coefficient(&Word::from_names("p0 p0")), c);
    assert_eq!(rel.coefficient(&Word::from_names("p- p+")), Scalar::from_int(-1));
    assert_eq!(parse_expr("1", a).unwrap(), NCPoly::one());
    let q = Scalar::q();
    let want = q.div(&Scalar::one().sub(&q)).unwrap();
    assert_eq!(
        parse_expr("(q/(1-q)) p-", a).unwrap(),
        NCPoly::monomial(want, Word::from_names("p-"))
    );
    // the Eq-(8) relation holds in the presentation
    assert!(p.normal_form(&rel).unwrap().is_zero());
}

#[test]
fn syntax_errors_carry_position() {
    let text = "order cross\ngen a block=A prec=1\nrule a a -> (q a\n";
    match parse_document(text, &Alphabet::default()) {
        Err(Error::Syntax { line, column, .. }) => {
            assert_eq!(line, 3);
            assert!(column > 1, "column {column}");
        }
        other => panic!("expected a syntax error, got {other:?}"),
    }
    match parse_expr("p+ * * p0", rq3().alphabet()) {
        Err(Error::Syntax { line: 1, column, .. }) => assert!(column >= 4, "column {column}"),
        other => panic!("expected a syntax error, got {other:?}"),
    }
}

#[test]
fn unknown_identifiers_are_reported() {
    assert!(matches!(
        parse_expr("p+ zz", rq3().alphabet()),
        Err(Error::UnknownGenerator(name)) if name == "zz"
    ));
}

#[test]
fn written_presentations_reparse_identically() {
    for file in ["rq3.alg", "weyl.alg", "uq_so3.alg", "rq3_deglex.alg"] {
        let doc = parse_document(embedded(file).unwrap(), &Alphabet::default()).unwrap();
        let p = doc.presentation().unwrap();
        let hopf = doc.hopf().ok();
        let text = write_presentation(&p, hopf.as_ref());
        let again = parse_document(&text, &Alphabet::default()).unwrap();
        let p2 = again.presentation().unwrap();
        assert_eq!(p2.rules(), p.rules(), "{file}");
        assert_eq!(write_presentation(&p2, again.hopf().ok().as_ref()), text, "{file}");
    }
}
