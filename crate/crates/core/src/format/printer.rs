use crate::coeff::Scalar;
use crate::ncpoly::{CompositeOrder, NCPoly, TensorPoly, Word};

/// Coefficients that read unambiguously without parentheses next to a word.
fn is_simple(c: &Scalar) -> bool {
    let (num, den) = (c.numer(), c.denom());
    let den_ok = den.is_one() || (den.is_monomial() && den.terms()[0].1 == 1.into());
    den_ok && num.terms().len() == 1
}

fn coefficient_prefix(c: &Scalar, unit_word: bool) -> String {
    if c.is_one() && !unit_word {
        return String::new();
    }
    let s = c.to_string();
    let s = if is_simple(c) { s } else { format!("({s})") };
    if unit_word {
        s
    } else {
        format!("{s} ")
    }
}

/// Only single-term numerators give up their sign to the separator.
fn pulls_sign(c: &Scalar) -> bool {
    c.is_negative() && c.numer().terms().len() == 1
}

fn term(c: &Scalar, w: &Word, first: bool) -> String {
    let negative = pulls_sign(c);
    let abs = if negative { c.neg() } else { c.clone() };
    let body = if w.is_unit() {
        coefficient_prefix(&abs, true)
    } else {
        format!("{}{w}", coefficient_prefix(&abs, false))
    };
    match (first, negative) {
        (true, true) => format!("-{body}"),
        (true, false) => body,
        (false, true) => format!(" - {body}"),
        (false, false) => format!(" + {body}"),
    }
}

/// Terms in ascending composite order; words the order does not know go last.
pub fn poly_to_string(p: &NCPoly, order: &CompositeOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Word, &Scalar)> = p.terms().collect();
    terms.sort_by(|a, b| match (order.sort_key(a.0), order.sort_key(b.0)) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => std::cmp::Ordering::Less,
        (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
        (Err(_), Err(_)) => a.0.cmp(b.0),
    });
    terms
        .iter()
        .enumerate()
        .map(|(i, (w, c))| term(c, w, i == 0))
        .collect()
}

/// Prints a two-slot tensor as a sum of `c u (x) v` terms.
pub fn tensor_to_string(t: &TensorPoly) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, ([u, v], c)) in t.terms().enumerate() {
        let negative = pulls_sign(c);
        let abs = if negative { c.neg() } else { c.clone() };
        let body = format!("{}{u} (x) {v}", coefficient_prefix(&abs, false));
        out.push_str(&match (i == 0, negative) {
            (true, true) => format!("-{body}"),
            (true, false) => body,
            (false, true) => format!(" - {body}"),
            (false, false) => format!(" + {body}"),
        });
    }
    out
}
