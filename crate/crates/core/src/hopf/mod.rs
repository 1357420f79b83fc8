//! Coproduct, counit and antipode tables on a presentation.

use std::collections::{BTreeSet, HashMap};

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::ncpoly::{Letter, NCPoly, Tensor, TensorPoly, Word};
use crate::report::Report;
use crate::rewrite::{Presentation, Reducer};

#[derive(Clone, Debug)]
pub struct HopfData {
    base: Presentation,
    coproduct: HashMap<Letter, TensorPoly>,
    counit: HashMap<Letter, Scalar>,
    antipode: HashMap<Letter, NCPoly>,
}

fn missing(what: &str, l: Letter) -> Error {
    Error::MissingEntry(format!("{what} of `{l}`"))
}

impl HopfData {
    pub fn new(
        base: Presentation,
        coproduct: impl IntoIterator<Item = (Letter, TensorPoly)>,
        counit: impl IntoIterator<Item = (Letter, Scalar)>,
        antipode: impl IntoIterator<Item = (Letter, NCPoly)>,
    ) -> Result<Self> {
        let h = HopfData {
            base,
            coproduct: coproduct.into_iter().collect(),
            counit: counit.into_iter().collect(),
            antipode: antipode.into_iter().collect(),
        };
        for l in h.base.letters() {
            h.coproduct_letter(l)?;
            h.counit_letter(l)?;
            h.antipode_letter(l)?;
        }
        for t in h.coproduct.values() {
            for ([u, v], _) in t.terms() {
                for &l in u.iter().chain(v.iter()) {
                    h.base.alphabet().require(l)?;
                }
            }
        }
        for s in h.antipode.values() {
            h.base.check_over(s)?;
        }
        Ok(h)
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn coproduct_letter(&self, l: Letter) -> Result<&TensorPoly> {
        self.coproduct.get(&l).ok_or_else(|| missing("coproduct", l))
    }

    pub fn counit_letter(&self, l: Letter) -> Result<&Scalar> {
        self.counit.get(&l).ok_or_else(|| missing("counit", l))
    }

    pub fn antipode_letter(&self, l: Letter) -> Result<&NCPoly> {
        self.antipode.get(&l).ok_or_else(|| missing("antipode", l))
    }

    /// Coproduct of a word in the free algebra, slots not reduced.
    pub fn coproduct_free(&self, w: &Word) -> Result<TensorPoly> {
        let mut acc = TensorPoly::one();
        for &l in w.iter() {
            acc = acc.mul(self.coproduct_letter(l)?);
        }
        Ok(acc)
    }

    pub fn coproduct_word(&self, w: &Word) -> Result<TensorPoly> {
        let mut red = self.base.reducer();
        reduce_tensor(&mut red, &self.coproduct_free(w)?)
    }

    pub fn coproduct_poly(&self, e: &NCPoly) -> Result<TensorPoly> {
        let mut acc = TensorPoly::zero();
        for (w, c) in e.terms() {
            acc.add_scaled(&self.coproduct_free(w)?, c);
        }
        reduce_tensor(&mut self.base.reducer(), &acc)
    }

    pub fn counit_poly(&self, e: &NCPoly) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (w, c) in e.terms() {
            let mut t = c.clone();
            for &l in w.iter() {
                t = t.mul(self.counit_letter(l)?);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Antipode on the free algebra (reversed order), unreduced.
    pub fn antipode_free(&self, e: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in e.terms() {
            let mut acc = NCPoly::scalar(c.clone());
            for &l in w.iter().rev() {
                acc = acc.mul(self.antipode_letter(l)?);
            }
            out.add_scaled(&acc, &Scalar::one());
        }
        Ok(out)
    }

    pub fn antipode_poly(&self, e: &NCPoly) -> Result<NCPoly> {
        self.base.normal_form(&self.antipode_free(e)?)
    }

    /// Errors unless coproduct and antipode of `subset` stay inside `subset`.
    pub fn check_subalgebra(&self, subset: &[Letter]) -> Result<()> {
        let set: BTreeSet<Letter> = subset.iter().copied().collect();
        for &l in subset {
            let mut used: Vec<Letter> = Vec::new();
            for ([u, v], _) in self.coproduct_letter(l)?.terms() {
                used.extend(u.iter().chain(v.iter()).copied());
            }
            used.extend(self.antipode_letter(l)?.letters());
            if let Some(out) = used.iter().find(|x| !set.contains(x)) {
                return Err(Error::invalid(format!(
                    "Hopf tables of `{l}` leave the designated subalgebra (uses `{out}`)"
                )));
            }
        }
        Ok(())
    }

    /// Smallest letter set containing `seeds` that coproduct and antipode stay inside.
    pub fn closure(&self, seeds: &[Letter]) -> Result<Vec<Letter>> {
        let mut set: BTreeSet<Letter> = seeds.iter().copied().collect();
        let mut todo: Vec<Letter> = seeds.to_vec();
        while let Some(l) = todo.pop() {
            let mut used: Vec<Letter> = self.antipode_letter(l)?.letters().collect();
            for ([u, v], _) in self.coproduct_letter(l)?.terms() {
                used.extend(u.iter().chain(v.iter()).copied());
            }
            for x in used {
                if set.insert(x) {
                    todo.push(x);
                }
            }
        }
        Ok(set.into_iter().collect())
    }

    /// The Hopf subalgebra on `subset`: rules among its letters only.
    pub fn restrict(&self, subset: &[Letter]) -> Result<HopfData> {
        self.check_subalgebra(subset)?;
        let set: BTreeSet<Letter> = subset.iter().copied().collect();
        let gens = self
            .base
            .alphabet()
            .generators()
            .iter()
            .filter(|g| set.contains(&g.letter))
            .cloned()
            .collect();
        let rules = self
            .base
            .rules()
            .iter()
            .filter(|r| r.lhs.iter().chain(r.rhs.letters().collect::<Vec<_>>().iter()).all(|l| set.contains(l)))
            .cloned()
            .collect();
        let base = Presentation::new(
            crate::ncpoly::Alphabet::new(gens)?,
            self.base.order_kind(),
            rules,
        )?
        .with_step_limit(self.base.step_limit());
        let keep = |l: &Letter| set.contains(l);
        HopfData::new(
            base,
            self.coproduct.iter().filter(|(l, _)| keep(l)).map(|(l, t)| (*l, t.clone())),
            self.counit.iter().filter(|(l, _)| keep(l)).map(|(l, t)| (*l, t.clone())),
            self.antipode.iter().filter(|(l, _)| keep(l)).map(|(l, t)| (*l, t.clone())),
        )
    }
}

pub fn reduce_tensor<const N: usize>(red: &mut Reducer<'_>, t: &Tensor<N>) -> Result<Tensor<N>> {
    let mut out = Tensor::<N>::zero();
    for (slots, c) in t.terms() {
        let mut acc = Tensor::<N>::monomial(c.clone(), std::array::from_fn(|_| Word::unit()));
        for (i, w) in slots.iter().enumerate() {
            let nf = red.reduce_word(w)?;
            let mut next = Tensor::<N>::zero();
            for (k, d) in acc.terms() {
                for (u, e) in nf.terms() {
                    let mut key = k.clone();
                    key[i] = u.clone();
                    next.add_term(key, d.mul(e));
                }
            }
            acc = next;
        }
        out.add_scaled(&acc, &Scalar::one());
    }
    Ok(out)
}

fn tensor_residual(t: &TensorPoly) -> String {
    crate::format::printer::tensor_to_string(t)
}

/// Coassociativity, counit and antipode laws on generators; Δ, ε, S
/// compatibility with every rule.
pub fn check_hopf_axioms(h: &HopfData) -> Report {
    let mut report = Report::new("hopf-axioms");
    if let Err(e) = hopf_axioms_into(h, &mut report) {
        report.fail("evaluation error", e.to_string());
    }
    report
}

fn hopf_axioms_into(h: &HopfData, report: &mut Report) -> Result<()> {
    let p = &h.base;
    let mut red = p.reducer();
    for l in p.letters() {
        let g = NCPoly::letter(l);
        let d = reduce_tensor(&mut red, h.coproduct_letter(l)?)?;

        // (Δ ⊗ id)Δ vs (id ⊗ Δ)Δ
        let mut left = Tensor::<3>::zero();
        let mut right = Tensor::<3>::zero();
        for ([u, v], c) in d.terms() {
            for ([a, b], e) in h.coproduct_word(u)?.terms() {
                left.add_term([a.clone(), b.clone(), v.clone()], c.mul(e));
            }
            for ([a, b], e) in h.coproduct_word(v)?.terms() {
                right.add_term([u.clone(), a.clone(), b.clone()], c.mul(e));
            }
        }
        let diff = reduce_tensor(&mut red, &left.sub(&right))?;
        if !diff.is_zero() {
            report.fail(format!("coassociativity on {l}"), format!("{diff:?}"));
        }

        // counit laws
        let mut lc = NCPoly::zero();
        let mut rc = NCPoly::zero();
        for ([u, v], c) in d.terms() {
            lc.add_term(v.clone(), c.mul(&h.counit_poly(&NCPoly::word(u.clone()))?));
            rc.add_term(u.clone(), c.mul(&h.counit_poly(&NCPoly::word(v.clone()))?));
        }
        for (side, e) in [("(eps x id)", lc), ("(id x eps)", rc)] {
            let r = red.reduce(&e.sub(&g))?;
            if !r.is_zero() {
                report.fail(format!("counit law {side} on {l}"), p.format_poly(&r));
            }
        }

        // antipode laws
        let eps = NCPoly::scalar(h.counit_letter(l)?.clone());
        let mut ls = NCPoly::zero();
        let mut rs = NCPoly::zero();
        for ([u, v], c) in d.terms() {
            let (wu, wv) = (NCPoly::word(u.clone()), NCPoly::word(v.clone()));
            ls.add_scaled(&h.antipode_free(&wu)?.mul(&wv), c);
            rs.add_scaled(&wu.mul(&h.antipode_free(&wv)?), c);
        }
        for (side, e) in [("m(S x id)D", ls), ("m(id x S)D", rs)] {
            let r = red.reduce(&e.sub(&eps))?;
            if !r.is_zero() {
                report.fail(format!("antipode law {side} on {l}"), p.format_poly(&r));
            }
        }
    }
    for rule in p.rules() {
        let lhs = NCPoly::word(rule.lhs.clone());
        let diff = lhs.sub(&rule.rhs);
        let mut dt = TensorPoly::zero();
        for (w, c) in diff.terms() {
            dt.add_scaled(&h.coproduct_free(w)?, c);
        }
        let dt = reduce_tensor(&mut red, &dt)?;
        if !dt.is_zero() {
            report.fail(
                format!("coproduct on rule {}", p.format_rule(rule)),
                tensor_residual(&dt),
            );
        }
        let e = h.counit_poly(&diff)?;
        if !e.is_zero() {
            report.fail(format!("counit on rule {}", p.format_rule(rule)), e.to_string());
        }
        let s = red.reduce(&h.antipode_free(&diff)?)?;
        if !s.is_zero() {
            report.fail(
                format!("antipode on rule {}", p.format_rule(rule)),
                p.format_poly(&s),
            );
        }
    }
    Ok(())
}

pub fn coproduct_word(h: &HopfData, w: &Word) -> Result<TensorPoly> {
    h.coproduct_word(w)
}

pub fn antipode_poly(h: &HopfData, e: &NCPoly) -> Result<NCPoly> {
    h.antipode_poly(e)
}
