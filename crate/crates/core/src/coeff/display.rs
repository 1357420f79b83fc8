use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Exp, ParamPoly, Scalar};

fn power(name: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

fn term_string(c: &BigInt, q: i64, eta: i64, first: bool) -> String {
    let mono: Vec<String> = [power("q", q), power("eta", eta)]
        .into_iter()
        .flatten()
        .collect();
    let abs = c.abs();
    let body = if mono.is_empty() {
        abs.to_string()
    } else if abs.is_one() {
        mono.join("*")
    } else {
        format!("{abs}*{}", mono.join("*"))
    };
    match (first, c.is_negative()) {
        (true, true) => format!("-{body}"),
        (true, false) => body,
        (false, true) => format!("-{body}"),
        (false, false) => format!("+{body}"),
    }
}

/// Prints `p * q^-shift.q * eta^-shift.eta`, terms in ascending exponent order.
pub(crate) fn poly_to_string(p: &ParamPoly, shift: Exp) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(i64, i64, &BigInt)> = p
        .terms()
        .iter()
        .map(|(e, c)| (e.q as i64 - shift.q as i64, e.eta as i64 - shift.eta as i64, c))
        .collect();
    terms.sort_by_key(|t| (t.0, t.1));
    terms
        .iter()
        .enumerate()
        .map(|(i, (a, b, c))| term_string(c, *a, *b, i == 0))
        .collect()
}

fn wrap(s: String, multi: bool) -> String {
    if multi {
        format!("({s})")
    } else {
        s
    }
}

pub(crate) fn scalar_to_string(s: &Scalar) -> String {
    let (num, den) = (s.numer(), s.denom());
    if den.is_one() {
        return poly_to_string(num, Exp::ZERO);
    }
    if let [(e, c)] = den.terms() {
        if c.is_one() {
            return poly_to_string(num, *e);
        }
    }
    let content = den.content();
    let mono = den.min_exp();
    let rest = den
        .exact_div(&ParamPoly::monomial(content.clone(), mono))
        .expect("content and monomial divide the denominator");
    let mut factors = Vec::new();
    if !content.is_one() {
        factors.push((content.to_string(), false));
    }
    if mono != Exp::ZERO {
        factors.push((poly_to_string(&ParamPoly::monomial(1, mono), Exp::ZERO), false));
    }
    if !rest.is_one() {
        let multi = rest.terms().len() > 1;
        factors.push((wrap(poly_to_string(&rest, Exp::ZERO), multi), multi));
    }
    let numer = wrap(poly_to_string(num, Exp::ZERO), num.terms().len() > 1);
    let denom = if factors.len() == 1 {
        factors.pop().expect("one factor").0
    } else {
        format!(
            "({})",
            factors.into_iter().map(|f| f.0).collect::<Vec<_>>().join("*")
        )
    };
    format!("{numer}/{denom}")
}
