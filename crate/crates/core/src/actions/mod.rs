//! Right module-algebra actions `a ◁ g`.

use std::collections::{BTreeMap, HashMap};

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::hopf::HopfData;
use crate::ncpoly::{Alphabet, Letter, NCPoly, Word};
use crate::report::Report;
use crate::rewrite::{Presentation, Reducer};

/// Table of `a ◁ g` for algebra letters `a` and Hopf letters `g`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionTable {
    entries: BTreeMap<(Letter, Letter), NCPoly>,
}

impl ActionTable {
    pub fn new(entries: impl IntoIterator<Item = ((Letter, Letter), NCPoly)>) -> Self {
        ActionTable {
            entries: entries.into_iter().collect(),
        }
    }

    /// `a ◁ g = ε(g) a` for every pair.
    pub fn trivial(algebra: &[Letter], h: &HopfData) -> Result<Self> {
        let mut t = ActionTable::default();
        for &a in algebra {
            for g in h.base().letters() {
                let e = h.counit_letter(g)?.clone();
                t.insert(a, g, NCPoly::monomial(e, Word::letter(a)));
            }
        }
        Ok(t)
    }

    pub fn get(&self, a: Letter, g: Letter) -> Result<&NCPoly> {
        self.entries
            .get(&(a, g))
            .ok_or_else(|| Error::MissingEntry(format!("action {a} ◁ {g}")))
    }

    pub fn insert(&mut self, a: Letter, g: Letter, e: NCPoly) {
        self.entries.insert((a, g), e);
    }

    pub fn entries(&self) -> &BTreeMap<(Letter, Letter), NCPoly> {
        &self.entries
    }

    pub fn algebra_letters(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = self.entries.keys().map(|k| k.0).collect();
        v.dedup();
        v
    }

    /// Errors unless every `(a, g)` pair is present.
    pub fn check_complete(&self, algebra: &[Letter], hopf: &[Letter]) -> Result<()> {
        for &a in algebra {
            for &g in hopf {
                self.get(a, g)?;
            }
        }
        Ok(())
    }
}

/// Evaluates actions on words via `(ab)◁g = (a◁g_(1))(b◁g_(2))`, reducing in the algebra.
pub struct Actor<'a> {
    table: &'a ActionTable,
    hopf: &'a HopfData,
    red: Reducer<'a>,
    cache: HashMap<(Word, Letter), NCPoly>,
}

impl<'a> Actor<'a> {
    pub fn new(algebra: &'a Presentation, hopf: &'a HopfData, table: &'a ActionTable) -> Self {
        Actor {
            table,
            hopf,
            red: algebra.reducer(),
            cache: HashMap::new(),
        }
    }

    pub fn reducer(&mut self) -> &mut Reducer<'a> {
        &mut self.red
    }

    /// `w ◁ g` for a word of the algebra and a Hopf letter.
    pub fn word_by_letter(&mut self, w: &Word, g: Letter) -> Result<NCPoly> {
        if let Some(r) = self.cache.get(&(w.clone(), g)) {
            return Ok(r.clone());
        }
        let out = if w.is_unit() {
            NCPoly::scalar(self.hopf.counit_letter(g)?.clone())
        } else if w.len() == 1 {
            self.red.reduce(self.table.get(w[0], g)?)?
        } else {
            let head = Word::letter(w[0]);
            let tail = w.subword(1, w.len());
            let mut acc = NCPoly::zero();
            for ([u, v], c) in self.hopf.coproduct_letter(g)?.clone().terms() {
                let left = self.word_by_word(&head, u)?;
                if left.is_zero() {
                    continue;
                }
                let right = self.word_by_word(&tail, v)?;
                acc.add_scaled(&left.mul(&right), c);
            }
            self.red.reduce(&acc)?
        };
        self.cache.insert((w.clone(), g), out.clone());
        Ok(out)
    }

    /// `w ◁ h` for a Hopf word `h`, acting letter by letter.
    pub fn word_by_word(&mut self, w: &Word, h: &Word) -> Result<NCPoly> {
        let mut acc = NCPoly::word(w.clone());
        for &g in h.iter() {
            acc = self.poly_by_letter(&acc, g)?;
        }
        if h.is_empty() {
            acc = self.red.reduce(&acc)?;
        }
        Ok(acc)
    }

    pub fn poly_by_letter(&mut self, a: &NCPoly, g: Letter) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in a.terms() {
            out.add_scaled(&self.word_by_letter(w, g)?, c);
        }
        Ok(out)
    }

    pub fn act(&mut self, a: &NCPoly, h: &Word) -> Result<NCPoly> {
        let mut acc = self.red.reduce(a)?;
        for &g in h.iter() {
            acc = self.poly_by_letter(&acc, g)?;
        }
        Ok(acc)
    }

    /// `a ◁ e` for a Hopf polynomial `e`.
    pub fn act_by_poly(&mut self, a: &NCPoly, e: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (h, c) in e.terms() {
            out.add_scaled(&self.act(a, h)?, c);
        }
        Ok(out)
    }
}

pub fn act_poly(
    a: &NCPoly,
    hw: &Word,
    algebra: &Presentation,
    t: &ActionTable,
    h: &HopfData,
) -> Result<NCPoly> {
    Actor::new(algebra, h, t).act(a, hw)
}

/// Module-algebra axioms: A-rules are respected by every Hopf letter, Hopf
/// rules act consistently on every algebra letter, and the unit acts trivially.
pub fn check_module_algebra(algebra: &Presentation, h: &HopfData, t: &ActionTable) -> Report {
    let mut report = Report::new("module-algebra");
    if let Err(e) = module_algebra_into(algebra, h, t, &mut report) {
        report.fail("evaluation error", e.to_string());
    }
    report
}

fn module_algebra_into(
    algebra: &Presentation,
    h: &HopfData,
    t: &ActionTable,
    report: &mut Report,
) -> Result<()> {
    let a_letters = algebra.letters();
    let h_letters = h.base().letters();
    t.check_complete(&a_letters, &h_letters)?;
    for e in t.entries().values() {
        algebra.check_over(e)?;
    }
    let mut actor = Actor::new(algebra, h, t);
    for rule in algebra.rules() {
        let diff = NCPoly::word(rule.lhs.clone()).sub(&rule.rhs);
        for &g in &h_letters {
            let mut r = NCPoly::zero();
            for (w, c) in diff.terms() {
                r.add_scaled(&actor.word_by_letter(w, g)?, c);
            }
            if !r.is_zero() {
                report.fail(
                    format!("({}) ◁ {g}", algebra.format_rule(&rule.clone())),
                    algebra.format_poly(&r),
                );
            }
        }
    }
    for rule in h.base().rules() {
        for &a in &a_letters {
            let x = NCPoly::letter(a);
            let lhs = actor.act(&x, &rule.lhs)?;
            let rhs = actor.act_by_poly(&x, &rule.rhs)?;
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                report.fail(
                    format!("{a} ◁ ({})", h.base().format_rule(rule)),
                    algebra.format_poly(&r),
                );
            }
        }
    }
    for &a in &a_letters {
        let x = NCPoly::letter(a);
        if actor.act(&x, &Word::unit())? != algebra.normal_form(&x)? {
            report.fail(format!("{a} ◁ 1"), "unit does not act trivially");
        }
    }
    Ok(())
}

/// Inverse of `c w` when every letter of `w` has a declared inverse.
fn invert_monomial(e: &NCPoly, alphabet: &Alphabet) -> Option<NCPoly> {
    let (w, c) = e.as_monomial()?;
    let mut inv = Word::unit();
    for &l in w.iter().rev() {
        inv.push(alphabet.get(l)?.inverse_of?);
    }
    Some(NCPoly::monomial(c.inv().ok()?, inv))
}

/// Solves `(a b) ◁ g = ε(g)` for the entries `b ◁ g`, where `b = a^-1`.
///
/// Each equation is solved for the coproduct term whose second slot is `g`
/// itself, using entries already found for the remaining terms.
pub fn derive_inverse_action(
    t: &ActionTable,
    a: Letter,
    algebra: &Presentation,
    h: &HopfData,
) -> Result<Vec<(Letter, NCPoly)>> {
    let b = algebra
        .alphabet()
        .require(a)?
        .inverse_of
        .ok_or_else(|| Error::NotSolvable(format!("`{a}` has no declared inverse")))?;
    let mut work = t.clone();
    let mut solved: BTreeMap<Letter, NCPoly> = BTreeMap::new();
    let pending: Vec<Letter> = h.base().letters();
    loop {
        let mut progress = false;
        for &g in &pending {
            if solved.contains_key(&g) {
                continue;
            }
            if let Some(v) = try_solve(&work, a, b, g, algebra, h)? {
                work.insert(b, g, v.clone());
                solved.insert(g, v);
                progress = true;
            }
        }
        if solved.len() == pending.len() {
            break;
        }
        if !progress {
            let left: Vec<String> = pending
                .iter()
                .filter(|g| !solved.contains_key(g))
                .map(|g| g.to_string())
                .collect();
            return Err(Error::NotSolvable(format!(
                "action of `{b}` by {} is not determined",
                left.join(", ")
            )));
        }
    }
    Ok(solved.into_iter().collect())
}

fn try_solve(
    t: &ActionTable,
    a: Letter,
    b: Letter,
    g: Letter,
    algebra: &Presentation,
    h: &HopfData,
) -> Result<Option<NCPoly>> {
    let delta = h.coproduct_letter(g)?;
    let target = Word::letter(g);
    let mut pivot = None;
    let mut rest = NCPoly::scalar(h.counit_letter(g)?.clone());
    let mut actor = Actor::new(algebra, h, t);
    let xa = NCPoly::letter(a);
    let xb = NCPoly::letter(b);
    for ([u, v], c) in delta.terms() {
        let au = actor.act(&xa, u)?;
        if *v == target && pivot.is_none() {
            pivot = Some(au.scale(c));
            continue;
        }
        if au.is_zero() {
            continue;
        }
        let bv = match actor.act(&xb, v) {
            Ok(x) => x,
            Err(Error::MissingEntry(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        rest.add_scaled(&au.mul(&bv), &Scalar::from_int(-1));
    }
    let Some(pivot) = pivot else {
        return Ok(None);
    };
    let inv = invert_monomial(&pivot, algebra.alphabet()).ok_or_else(|| {
        Error::NotSolvable(format!(
            "coefficient {} of `{b} ◁ {g}` is not an invertible monomial",
            algebra.format_poly(&pivot)
        ))
    })?;
    Ok(Some(algebra.normal_form(&inv.mul(&rest))?))
}

/// `h ◁ g = S(g_(1)) h g_(2)` on the Hopf letters, plus the given table on
/// algebra letters; the result is checked as a module-algebra action on H.
pub fn extend_action_adjoint(
    cross: &Presentation,
    h: &HopfData,
    algebra_part: Option<&ActionTable>,
) -> Result<(ActionTable, Report)> {
    let mut t = algebra_part.cloned().unwrap_or_default();
    let mut red = cross.reducer();
    let mut h_only = ActionTable::default();
    for x in h.base().letters() {
        for g in h.base().letters() {
            let mut acc = NCPoly::zero();
            for ([u, v], c) in h.coproduct_letter(g)?.terms() {
                let s = h.antipode_free(&NCPoly::word(u.clone()))?;
                acc.add_scaled(&s.mul(&NCPoly::letter(x)).mul_word_right(v), c);
            }
            let e = red.reduce(&acc)?;
            h_only.insert(x, g, e.clone());
            t.insert(x, g, e);
        }
    }
    let report = check_module_algebra(h.base(), h, &h_only);
    Ok((t, report))
}
