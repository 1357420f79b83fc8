//! Realization maps, decoupling maps and the verification checks built on them.

pub mod linalg;

use std::collections::{BTreeMap, HashMap};

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::hopf::HopfData;
use crate::ncpoly::{Letter, NCPoly, Word};
use crate::products::{BraidedPresentation, CrossPresentation};
use crate::report::Report;
use crate::rewrite::{Presentation, Reducer};

use linalg::{from_row, to_row, Echelon};

/// Upper bound on candidate words for the bounded-degree linear algebra.
pub const MAX_CANDIDATES: usize = 20_000;

/// An algebra map given on generators, e.g. `φ̃ : A ⋊ H -> A`.
#[derive(Clone, Debug)]
pub struct RealizationMap {
    pub images: BTreeMap<Letter, NCPoly>,
    pub domain: Presentation,
    pub codomain: Presentation,
    pub fixes_a: bool,
}

fn invert_unit_monomial(e: &NCPoly, p: &Presentation) -> Option<NCPoly> {
    let (w, c) = e.as_monomial()?;
    let mut inv = Word::unit();
    for &l in w.iter().rev() {
        inv.push(p.alphabet().get(l)?.inverse_of?);
    }
    Some(NCPoly::monomial(c.inv().ok()?, inv))
}

impl RealizationMap {
    /// Fills in identity images on codomain letters (when `fixes_a`) and
    /// images of inverse letters whose partner maps to a unit monomial.
    pub fn new(
        domain: Presentation,
        codomain: Presentation,
        images: impl IntoIterator<Item = (Letter, NCPoly)>,
        fixes_a: bool,
    ) -> Result<Self> {
        let mut images: BTreeMap<Letter, NCPoly> = images.into_iter().collect();
        if fixes_a {
            for l in codomain.letters() {
                if domain.alphabet().contains(l) {
                    images.entry(l).or_insert_with(|| NCPoly::letter(l));
                }
            }
        }
        for g in domain.alphabet().generators() {
            if images.contains_key(&g.letter) {
                continue;
            }
            let Some(inv) = g.inverse_of else {
                return Err(Error::MissingEntry(format!("image of `{}`", g.name())));
            };
            let partner = images
                .get(&inv)
                .ok_or_else(|| Error::MissingEntry(format!("image of `{}`", g.name())))?;
            let img = invert_unit_monomial(partner, &codomain).ok_or_else(|| {
                Error::NotSolvable(format!(
                    "image of `{inv}` is not an invertible monomial, so `{}` has no derived image",
                    g.name()
                ))
            })?;
            images.insert(g.letter, codomain.normal_form(&img)?);
        }
        for e in images.values() {
            codomain.check_over(e)?;
        }
        Ok(RealizationMap {
            images,
            domain,
            codomain,
            fixes_a,
        })
    }

    pub fn image(&self, l: Letter) -> Result<&NCPoly> {
        self.images
            .get(&l)
            .ok_or_else(|| Error::MissingEntry(format!("image of `{l}`")))
    }

    /// Multiplicative extension, unreduced.
    pub fn apply_free(&self, e: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in e.terms() {
            let mut acc = NCPoly::scalar(c.clone());
            for &l in w.iter() {
                acc = acc.mul(self.image(l)?);
            }
            out.add_scaled(&acc, &Scalar::one());
        }
        Ok(out)
    }

    pub fn apply(&self, e: &NCPoly) -> Result<NCPoly> {
        self.codomain.normal_form(&self.apply_free(e)?)
    }
}

/// Every domain rule maps to an identity of the codomain; A letters are fixed.
pub fn check_realization(phi: &RealizationMap) -> Report {
    let mut report = Report::new("realization");
    let run = |report: &mut Report| -> Result<()> {
        let mut red = phi.codomain.reducer();
        if phi.fixes_a {
            for l in phi.codomain.letters() {
                if phi.domain.alphabet().contains(l) && *phi.image(l)? != NCPoly::letter(l) {
                    report.fail(format!("φ̃({l})"), "algebra letter is not fixed");
                }
            }
        }
        for rule in phi.domain.rules() {
            let diff = NCPoly::word(rule.lhs.clone()).sub(&rule.rhs);
            let r = red.reduce(&phi.apply_free(&diff)?)?;
            if !r.is_zero() {
                report.fail(
                    format!("rule {}", phi.domain.format_rule(rule)),
                    phi.codomain.format_poly(&r),
                );
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut report) {
        report.fail("evaluation error", e.to_string());
    }
    report
}

/// `ζ̃(g)` for a Hopf letter `g`, in normal form in the cross product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoupledGenerator {
    pub source: Letter,
    pub image: NCPoly,
}

/// `ζ̃(g) = g_(1) φ̃(S g_(2))`, reduced in `cross`; the image must commute with
/// every algebra letter.
pub fn zeta(
    g: Letter,
    phi: &RealizationMap,
    h: &HopfData,
    cross: &CrossPresentation,
) -> Result<DecoupledGenerator> {
    let image = zeta_unchecked(g, phi, h, &cross.presentation)?;
    let report = check_commutant(
        std::slice::from_ref(&image),
        &cross.algebra.letters(),
        &cross.presentation,
    );
    if !report.passed() {
        return Err(Error::Validation {
            what: format!("ζ̃({g})"),
            detail: report.to_text(),
        });
    }
    Ok(DecoupledGenerator { source: g, image })
}

pub fn zeta_unchecked(
    g: Letter,
    phi: &RealizationMap,
    h: &HopfData,
    cross: &Presentation,
) -> Result<NCPoly> {
    let mut acc = NCPoly::zero();
    for ([u, v], c) in h.coproduct_letter(g)?.terms() {
        let s = h.antipode_free(&NCPoly::word(v.clone()))?;
        let img = phi.apply(&s)?;
        acc.add_scaled(&img.mul_word_left(u), c);
    }
    cross.normal_form(&acc)
}

/// `ζ̃` extended multiplicatively to Hopf words, with a cache.
pub struct ZetaMap<'p> {
    images: HashMap<Letter, NCPoly>,
    cache: HashMap<Word, NCPoly>,
    red: Reducer<'p>,
}

impl<'p> ZetaMap<'p> {
    pub fn new(cross: &'p Presentation, images: impl IntoIterator<Item = (Letter, NCPoly)>) -> Self {
        ZetaMap {
            images: images.into_iter().collect(),
            cache: HashMap::new(),
            red: cross.reducer(),
        }
    }

    pub fn reducer(&mut self) -> &mut Reducer<'p> {
        &mut self.red
    }

    pub fn word(&mut self, w: &Word) -> Result<NCPoly> {
        if w.is_unit() {
            return Ok(NCPoly::one());
        }
        if let Some(v) = self.cache.get(w) {
            return Ok(v.clone());
        }
        let head = self.word(&w.subword(0, w.len() - 1))?;
        let last = w[w.len() - 1];
        let img = self
            .images
            .get(&last)
            .ok_or_else(|| Error::MissingEntry(format!("ζ̃ image of `{last}`")))?
            .clone();
        let out = self.red.product(&head, &img)?;
        self.cache.insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn poly(&mut self, e: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in e.terms() {
            out.add_scaled(&self.word(w)?, c);
        }
        Ok(out)
    }
}

/// ζ̃ respects every rule of the Hopf algebra: `ζ̃(lhs) = ζ̃(rhs)`.
pub fn check_zeta_homomorphism(
    zetas: &[DecoupledGenerator],
    h: &Presentation,
    cross: &Presentation,
) -> Report {
    let mut report = Report::new("zeta-homomorphism");
    let mut map = ZetaMap::new(cross, zetas.iter().map(|z| (z.source, z.image.clone())));
    for rule in h.rules() {
        let known = rule
            .lhs
            .iter()
            .chain(rule.rhs.letters().collect::<Vec<_>>().iter())
            .all(|l| zetas.iter().any(|z| z.source == *l));
        if !known {
            continue;
        }
        let diff = NCPoly::word(rule.lhs.clone()).sub(&rule.rhs);
        match map.poly(&diff) {
            Ok(r) if r.is_zero() => {}
            Ok(r) => report.fail(format!("ζ̃ on rule {}", h.format_rule(rule)), cross.format_poly(&r)),
            Err(e) => report.fail(format!("ζ̃ on rule {}", h.format_rule(rule)), e.to_string()),
        }
    }
    report
}

/// All commutators `[e, g]` reduce to zero.
pub fn check_commutant(elems: &[NCPoly], others: &[Letter], p: &Presentation) -> Report {
    let mut report = Report::new("commutant");
    let mut red = p.reducer();
    for e in elems {
        for &g in others {
            match red.commutator(e, &NCPoly::letter(g)) {
                Ok(r) if r.is_zero() => {}
                Ok(r) => report.fail(
                    format!("[{}, {g}]", p.format_poly(e)),
                    p.format_poly(&r),
                ),
                Err(err) => report.fail(format!("[{}, {g}]", p.format_poly(e)), err.to_string()),
            }
        }
    }
    report
}

/// `None` if `lhs = rhs` in `p`, otherwise the reduced difference.
pub fn check_identity(lhs: &NCPoly, rhs: &NCPoly, p: &Presentation) -> Result<Option<NCPoly>> {
    let r = p.normal_form(&lhs.sub(rhs))?;
    Ok(if r.is_zero() { None } else { Some(r) })
}

pub fn check_central(e: &NCPoly, p: &Presentation) -> Report {
    let mut report = check_commutant(std::slice::from_ref(e), &p.letters(), p);
    report.check = "central".into();
    report
}

/// Normal words of `p` up to length `max_len`, ascending in the order.
pub fn normal_words(p: &Presentation, max_len: usize) -> Result<Vec<Word>> {
    let red = p.reducer();
    let letters = p.letters();
    let mut out = vec![Word::unit()];
    let mut frontier = vec![Word::unit()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                let mut x = w.clone();
                x.push(l);
                if red.is_normal(&x) {
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        if out.len() > MAX_CANDIDATES {
            return Err(Error::ResourceLimit(format!(
                "more than {MAX_CANDIDATES} normal words up to length {max_len}"
            )));
        }
        frontier = next;
    }
    Ok(out)
}

/// One factor of a decomposition: ζ̃ images on the letters it contributes.
#[derive(Clone, Debug)]
pub struct ZetaFamily {
    pub name: String,
    /// Hopf sub-presentation whose normal words are enumerated.
    pub words_of: Presentation,
    pub zetas: Vec<DecoupledGenerator>,
}

/// Checks that every normal word of `cross` of length at most `degree_bound`
/// lies in the span of `ζ̃1(u1) ζ̃2(u2) ... v` with `v` a normal word of
/// `algebra`, enumerating products by total length up to
/// `degree_bound + window`.
pub fn verify_decomposition(
    cross: &Presentation,
    algebra: &Presentation,
    families: &[ZetaFamily],
    degree_bound: usize,
    window: usize,
) -> Result<Report> {
    let mut report = Report::new("decomposition");
    let order = cross.order();
    let max_total = degree_bound + window;
    let targets = normal_words(cross, degree_bound)?;
    let a_words = normal_words(algebra, max_total)?;

    // word lists per family, skipping letters an earlier family already covers
    let mut fam_words: Vec<Vec<Word>> = Vec::new();
    let mut covered: Vec<Letter> = Vec::new();
    let mut maps: Vec<ZetaMap<'_>> = Vec::new();
    for f in families {
        let fresh: Vec<Letter> = f
            .words_of
            .letters()
            .into_iter()
            .filter(|l| !covered.contains(l))
            .collect();
        let words: Vec<Word> = normal_words(&f.words_of, max_total)?
            .into_iter()
            .filter(|w| w.iter().all(|l| fresh.contains(l)))
            .collect();
        covered.extend(fresh);
        fam_words.push(words);
        maps.push(ZetaMap::new(
            cross,
            f.zetas.iter().map(|z| (z.source, z.image.clone())),
        ));
    }

    let mut ech = Echelon::new();
    let mut red = cross.reducer();
    let target_rows: Vec<(Word, linalg::Row)> = targets
        .iter()
        .map(|w| Ok((w.clone(), to_row(&NCPoly::word(w.clone()), order)?)))
        .collect::<Result<_>>()?;
    let mut rows_used = 0usize;
    for total in 0..=max_total {
        // enumerate tuples (u1, ..., uk, v) with total length exactly `total`
        let mut stack: Vec<(usize, usize, NCPoly)> = vec![(0, 0, NCPoly::one())];
        while let Some((fi, len, prefix)) = stack.pop() {
            if fi == families.len() {
                for v in a_words.iter().filter(|v| len + v.len() == total) {
                    let row = red.reduce(&prefix.mul_word_right(v))?;
                    if !row.is_zero() {
                        ech.insert(to_row(&row, order)?);
                        rows_used += 1;
                    }
                }
                continue;
            }
            for u in fam_words[fi].iter().filter(|u| len + u.len() <= total) {
                let z = maps[fi].word(u)?;
                let next = if fi == 0 { z } else { red.product(&prefix, &z)? };
                if !next.is_zero() {
                    stack.push((fi + 1, len + u.len(), next));
                }
            }
        }
        let missing: Vec<&Word> = target_rows
            .iter()
            .filter(|(_, r)| !ech.contains(r))
            .map(|(w, _)| w)
            .collect();
        if missing.is_empty() {
            report.note(format!(
                "all {} normal words of degree <= {degree_bound} spanned at total length {total} ({rows_used} products, rank {})",
                targets.len(),
                ech.rank()
            ));
            return Ok(report);
        }
        if total == max_total {
            for w in missing {
                report.fail("not in span", w.to_string());
            }
        }
    }
    Ok(report)
}

/// Basis of `{e : [e, g] = 0 for g in subset}` among combinations of normal
/// words of length at most `degree_bound`, in reduced echelon form.
pub fn centralizer_basis(p: &Presentation, subset: &[Letter], degree_bound: usize) -> Result<Vec<NCPoly>> {
    let candidates = normal_words(p, degree_bound)?;
    let mut red = p.reducer();
    let mut ech = Echelon::new();
    let mut kernel = Vec::new();
    for w in &candidates {
        // the column of `u` in `[w, g]` is keyed by the word `g u`, unique per (g, u)
        let mut row = linalg::Row::new();
        let x = NCPoly::word(w.clone());
        for &g in subset {
            let c = red.commutator(&x, &NCPoly::letter(g))?;
            for (u, coef) in c.terms() {
                let key_word = Word::letter(g).concat(u);
                row.insert(p.order().sort_key(&key_word)?, (key_word, coef.clone()));
            }
        }
        if let Some(tag) = ech.insert_tagged(row, x) {
            kernel.push(tag);
        }
    }
    let mut basis = Echelon::new();
    for k in &kernel {
        basis.insert(to_row(k, p.order())?);
    }
    Ok(basis.reduced_rows().iter().map(from_row).collect())
}

/// Whether `e` lies in the span of `basis`.
pub fn in_span(e: &NCPoly, basis: &[NCPoly], p: &Presentation) -> Result<bool> {
    let mut ech = Echelon::new();
    for b in basis {
        ech.insert(to_row(b, p.order())?);
    }
    Ok(ech.contains(&to_row(e, p.order())?))
}

/// Theorem-3 style checks of an unbraiding table `χ` on the A2 letters.
pub fn check_unbraiding(
    chi: &BTreeMap<Letter, NCPoly>,
    br: &BraidedPresentation,
    spanning_degree: Option<usize>,
) -> Result<Vec<Report>> {
    let p = &br.presentation;
    let mut red = p.reducer();
    let apply = |e: &NCPoly| -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in e.terms() {
            let mut acc = NCPoly::scalar(c.clone());
            for &l in w.iter() {
                let img = chi
                    .get(&l)
                    .ok_or_else(|| Error::MissingEntry(format!("χ image of `{l}`")))?;
                acc = acc.mul(img);
            }
            out.add_scaled(&acc, &Scalar::one());
        }
        Ok(out)
    };
    let mut morphism = Report::new("unbraiding-morphism");
    for rule in br.factor2.rules() {
        let diff = NCPoly::word(rule.lhs.clone()).sub(&rule.rhs);
        let r = red.reduce(&apply(&diff)?)?;
        if !r.is_zero() {
            morphism.fail(format!("rule {}", br.factor2.format_rule(rule)), p.format_poly(&r));
        }
    }
    let images: Vec<NCPoly> = br
        .factor2
        .letters()
        .iter()
        .map(|l| {
            chi.get(l)
                .cloned()
                .ok_or_else(|| Error::MissingEntry(format!("χ image of `{l}`")))
        })
        .collect::<Result<_>>()?;
    let mut commutant = check_commutant(&images, &br.factor1.letters(), p);
    commutant.check = "unbraiding-commutant".into();
    let mut reports = vec![morphism, commutant];
    if let Some(d) = spanning_degree {
        let mut spanning = Report::new("unbraiding-spanning");
        let order = p.order();
        let targets = normal_words(p, d)?;
        let w1 = normal_words(&br.factor1, d)?;
        let w2 = normal_words(&br.factor2, d)?;
        let mut ech = Echelon::new();
        for v in &w1 {
            for u in &w2 {
                if v.len() + u.len() > d {
                    continue;
                }
                let row = red.reduce(&apply(&NCPoly::word(u.clone()))?.mul_word_left(v))?;
                ech.insert(to_row(&row, order)?);
            }
        }
        for t in &targets {
            if !ech.contains(&to_row(&NCPoly::word(t.clone()), order)?) {
                spanning.fail("not in span", t.to_string());
            }
        }
        reports.push(spanning);
    }
    Ok(reports)
}
