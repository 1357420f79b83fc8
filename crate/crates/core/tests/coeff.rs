use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use qsmash_core::coeff::{canonicalize, eval_at, Exp, ParamPoly, Scalar};
use qsmash_core::Error;

/// Small rational-function expressions, evaluated two ways.
#[derive(Clone, Debug)]
enum Expr {
    Int(i64),
    Q,
    Eta,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(-3i64..=3).prop_map(Expr::Int), Just(Expr::Q), Just(Expr::Eta)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(a.into(), b.into())),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Div(a.into(), b.into())),
        ]
    })
}

fn to_scalar(e: &Expr) -> Option<Scalar> {
    Some(match e {
        Expr::Int(n) => Scalar::from_int(*n),
        Expr::Q => Scalar::q(),
        Expr::Eta => Scalar::eta(),
        Expr::Add(a, b) => to_scalar(a)?.add(&to_scalar(b)?),
        Expr::Sub(a, b) => to_scalar(a)?.sub(&to_scalar(b)?),
        Expr::Mul(a, b) => to_scalar(a)?.mul(&to_scalar(b)?),
        Expr::Div(a, b) => to_scalar(a)?.div(&to_scalar(b)?).ok()?,
    })
}

/// Direct evaluation in Q; `None` on division by zero at this point.
fn oracle(e: &Expr, q: &BigRational, eta: &BigRational) -> Option<BigRational> {
    Some(match e {
        Expr::Int(n) => BigRational::from_integer((*n).into()),
        Expr::Q => q.clone(),
        Expr::Eta => eta.clone(),
        Expr::Add(a, b) => oracle(a, q, eta)? + oracle(b, q, eta)?,
        Expr::Sub(a, b) => oracle(a, q, eta)? - oracle(b, q, eta)?,
        Expr::Mul(a, b) => oracle(a, q, eta)? * oracle(b, q, eta)?,
        Expr::Div(a, b) => {
            let d = oracle(b, q, eta)?;
            if d.is_zero() {
                return None;
            }
            oracle(a, q, eta)? / d
        }
    })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn point() -> impl Strategy<Value = (BigRational, BigRational)> {
    ((-9i64..=9, 1i64..=7), (-9i64..=9, 1i64..=7))
        .prop_map(|((a, b), (c, d))| (rat(a, b), rat(c, d)))
}

const POINTS: [((i64, i64), (i64, i64)); 5] = [
    ((2, 3), (5, 7)),
    ((-3, 2), (7, 5)),
    ((11, 4), (-2, 9)),
    ((3, 11), (13, 3)),
    ((-7, 5), (-4, 13)),
];

fn scalar() -> impl Strategy<Value = Scalar> {
    expr().prop_filter_map("zero division", |e| to_scalar(&e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn evaluation_matches_direct_arithmetic(e in expr(), (q, eta) in point()) {
        let Some(s) = to_scalar(&e) else { return Ok(()) };
        // the canonical form may remove a removable singularity, never add one
        if let Some(v) = oracle(&e, &q, &eta) {
            prop_assert_eq!(eval_at(&s, &q, &eta).unwrap(), v);
        }
    }

    #[test]
    fn field_axioms_hold_structurally(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.div(&a).unwrap().is_one());
            prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a.clone());
        }
    }

    #[test]
    fn canonicalize_is_idempotent(a in scalar()) {
        prop_assert_eq!(canonicalize(a.numer().clone(), a.denom().clone()).unwrap(), a);
    }

    #[test]
    fn canonical_equality_agrees_with_evaluation(a in scalar(), b in scalar()) {
        let agree = POINTS.iter().all(|&(q, eta)| {
            let (q, eta) = (rat(q.0, q.1), rat(eta.0, eta.1));
            match (eval_at(&a, &q, &eta), eval_at(&b, &q, &eta)) {
                (Ok(x), Ok(y)) => x == y,
                _ => true,
            }
        });
        prop_assert_eq!(a == b, agree);
    }

    #[test]
    fn canonical_denominator_has_positive_trailing_coefficient(a in scalar()) {
        let (_, c) = a.denom().trailing().expect("denominator is nonzero");
        prop_assert!(*c > 0.into());
    }
}

#[test]
fn printed_forms() {
    let q = Scalar::q();
    let one = Scalar::one();
    assert_eq!(one.sub(&Scalar::q_pow(-1)).to_string(), "-q^-1+1");
    assert_eq!(one.div(&q.mul(&one.add(&q))).unwrap().to_string(), "1/(q*(1+q))");
    assert_eq!(q.div(&one.sub(&q)).unwrap().to_string(), "q/(1-q)");
    assert_eq!(Scalar::zero().to_string(), "0");
}

fn pp(terms: &[(u32, u32, i64)]) -> ParamPoly {
    ParamPoly::from_terms(terms.iter().map(|&(a, b, c)| (Exp::new(a, b), c.into())))
}

#[test]
fn documented_arithmetic_examples() {
    let q = Scalar::q();
    let one = Scalar::one();
    let qm1 = q.sub(&one);
    let a = one.div(&qm1).unwrap().add(&one.div(&q.add(&one)).unwrap());
    let want = Scalar::from_parts(pp(&[(1, 0, 2)]), pp(&[(2, 0, 1), (0, 0, -1)])).unwrap();
    assert_eq!(a, want);
    assert!(qm1.mul(&one.div(&qm1).unwrap()).is_one());
    assert!(matches!(q.div(&Scalar::zero()), Err(Error::DivisionByZero)));
}

#[test]
fn documented_canonical_forms() {
    let s = canonicalize(pp(&[(2, 0, 1), (0, 0, -1)]), pp(&[(1, 0, 1), (0, 0, -1)])).unwrap();
    assert_eq!((s.numer(), s.denom()), (&pp(&[(1, 0, 1), (0, 0, 1)]), &ParamPoly::one()));
    let s = canonicalize(ParamPoly::zero(), ParamPoly::eta()).unwrap();
    assert_eq!((s.numer(), s.denom()), (&ParamPoly::zero(), &ParamPoly::one()));
    let s = canonicalize(pp(&[(2, 0, 2)]), pp(&[(1, 0, 2)])).unwrap();
    assert_eq!((s.numer(), s.denom()), (&ParamPoly::q(), &ParamPoly::one()));
    assert!(matches!(canonicalize(ParamPoly::one(), ParamPoly::zero()), Err(Error::ZeroDenominator)));
}

#[test]
fn documented_evaluations() {
    let one = Scalar::one();
    let q = Scalar::q();
    let inv = one.div(&q.sub(&one)).unwrap();
    assert_eq!(eval_at(&inv, &rat(3, 1), &rat(1, 1)).unwrap(), rat(1, 2));
    let s = Scalar::from_int(2).mul(&q).div(&q.mul(&q).sub(&one)).unwrap();
    assert_eq!(eval_at(&s, &rat(2, 1), &rat(1, 1)).unwrap(), rat(4, 3));
    assert!(matches!(eval_at(&inv, &rat(1, 1), &rat(1, 1)), Err(Error::Pole)));
}
