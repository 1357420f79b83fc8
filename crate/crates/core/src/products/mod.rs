//! Cross products, braided tensor products and their compositions.

use std::collections::BTreeMap;

use crate::actions::{check_module_algebra, extend_action_adjoint, ActionTable, Actor};
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::hopf::HopfData;
use crate::ncpoly::{Alphabet, Block, Generator, Letter, NCPoly, OrderKind, Word};
use crate::report::Report;
use crate::rewrite::{check_admissible, critical_pairs, Presentation, Rule};

/// Overlap bound used by the builders' confluence reports.
pub const DEFAULT_OVERLAP: usize = 3;

/// `A ⋊ H` together with the data it was built from.
#[derive(Clone, Debug)]
pub struct CrossPresentation {
    pub presentation: Presentation,
    pub algebra: Presentation,
    pub hopf: HopfData,
    pub action: ActionTable,
    /// The generated exchange rules `a g -> g_(1) (a ◁ g_(2))`.
    pub cross_rules: Vec<Rule>,
    pub reports: Vec<Report>,
}

fn first_slot_precondition(h: &HopfData) -> Result<()> {
    for g in h.base().letters() {
        for ([u, _], _) in h.coproduct_letter(g)?.terms() {
            if u.len() > 1 {
                return Err(Error::Inadmissible {
                    rule: format!("cross rules for {g}"),
                    reason: format!("coproduct term with first slot `{u}` longer than one letter"),
                });
            }
        }
    }
    Ok(())
}

/// Shifts precedences of `b` above those of `a` when they would collide.
fn disjoint_precedences(a: &Alphabet, b: &Alphabet) -> Result<Alphabet> {
    let clash = b.generators().iter().any(|g| {
        a.generators()
            .iter()
            .any(|x| x.precedence == g.precedence && x.letter != g.letter)
    });
    if !clash {
        return a.merge(b);
    }
    let top = a.generators().iter().map(|g| g.precedence).max().unwrap_or(0);
    let low = b.generators().iter().map(|g| g.precedence).min().unwrap_or(0);
    let shifted: Vec<Generator> = b
        .generators()
        .iter()
        .map(|g| {
            let mut g = g.clone();
            g.precedence += top - low + 1;
            g
        })
        .collect();
    a.merge(&Alphabet::new(shifted)?)
}

pub fn build_cross(a: &Presentation, h: &HopfData, t: &ActionTable) -> Result<CrossPresentation> {
    first_slot_precondition(h)?;
    let module = check_module_algebra(a, h, t);
    if !module.passed() {
        return Err(Error::Validation {
            what: "action table".into(),
            detail: module.to_text(),
        });
    }
    let alphabet = disjoint_precedences(h.base().alphabet(), a.alphabet())?;
    let mut actor = Actor::new(a, h, t);
    let mut cross_rules = Vec::new();
    for x in a.letters() {
        for g in h.base().letters() {
            let mut rhs = NCPoly::zero();
            for ([u, v], c) in h.coproduct_letter(g)?.terms() {
                let acted = actor.act(&NCPoly::letter(x), v)?;
                rhs.add_scaled(&acted.mul_word_left(u), c);
            }
            cross_rules.push(Rule::new(Word::from_letters([x, g]), rhs));
        }
    }
    let mut rules: Vec<Rule> = h.base().rules().to_vec();
    rules.extend(a.rules().iter().cloned());
    rules.extend(cross_rules.iter().cloned());
    let presentation = Presentation::new(alphabet, OrderKind::Cross, rules)?
        .with_step_limit(a.step_limit());
    let reports = vec![
        check_admissible(&presentation),
        critical_pairs(&presentation, DEFAULT_OVERLAP.max(presentation.max_lhs_len()))?,
    ];
    Ok(CrossPresentation {
        presentation,
        algebra: a.clone(),
        hopf: h.clone(),
        action: t.clone(),
        cross_rules,
        reports,
    })
}

/// Reads `a ◁ g` back off the cross product: the image of `nf(a g)` under
/// `h a' -> ε(h) a'`.
pub fn read_back_action(cross: &CrossPresentation) -> Result<ActionTable> {
    let mut red = cross.presentation.reducer();
    let hset: Vec<Letter> = cross.hopf.base().letters();
    let mut out = ActionTable::default();
    for x in cross.algebra.letters() {
        for &g in &hset {
            let nf = red.reduce_word(&Word::from_letters([x, g]))?;
            let mut acc = NCPoly::zero();
            for (w, c) in nf.terms() {
                let split = w.iter().position(|l| !hset.contains(l)).unwrap_or(w.len());
                let hpart = NCPoly::word(w.subword(0, split));
                let eps = cross.hopf.counit_poly(&hpart)?;
                acc.add_term(w.subword(split, w.len()), c.mul(&eps));
            }
            out.insert(x, g, acc);
        }
    }
    Ok(out)
}

/// Recovers `A`, the action and the exchange rules from a cross product
/// presentation whose Hopf letters are those of `h`, e.g. one written by
/// [`build_cross`]. Fails unless rebuilding from the recovered data gives
/// back the same rules.
pub fn split_cross(p: &Presentation, h: &HopfData) -> Result<CrossPresentation> {
    let hset = h.base().letters();
    let gens: Vec<Generator> = p
        .alphabet()
        .generators()
        .iter()
        .filter(|g| !hset.contains(&g.letter))
        .cloned()
        .collect();
    if gens.is_empty() {
        return Err(Error::invalid("presentation has no algebra letters"));
    }
    let alphabet = Alphabet::new(gens)?;
    let (own, rest): (Vec<Rule>, Vec<Rule>) = p.rules().iter().cloned().partition(|r| {
        r.lhs
            .iter()
            .chain(r.rhs.letters().collect::<Vec<_>>().iter())
            .all(|l| alphabet.contains(*l))
    });
    let algebra = Presentation::new(alphabet, p.order_kind(), own)?.with_step_limit(p.step_limit());
    let cross_rules: Vec<Rule> = rest
        .into_iter()
        .filter(|r| r.lhs.len() == 2 && algebra.alphabet().contains(r.lhs[0]) && hset.contains(&r.lhs[1]))
        .collect();
    let provisional = CrossPresentation {
        presentation: p.clone(),
        algebra: algebra.clone(),
        hopf: h.clone(),
        action: ActionTable::default(),
        cross_rules,
        reports: Vec::new(),
    };
    let action = read_back_action(&provisional)?;
    let rebuilt = build_cross(&algebra, h, &action)?;
    if rebuilt.presentation.rules() != p.rules() {
        return Err(Error::Validation {
            what: "cross product".into(),
            detail: "rules differ from those generated by the recovered action".into(),
        });
    }
    Ok(rebuilt)
}

/// Turns a relation `lhs = rhs` into rule form: the leading word of
/// `lhs - rhs` rewritten to the remaining terms.
pub fn orient_relation(p: &Presentation, lhs: &NCPoly, rhs: &NCPoly) -> Result<Rule> {
    let diff = lhs.sub(rhs);
    let mut lead: Option<(&Word, &Scalar)> = None;
    for (w, c) in diff.terms() {
        let bigger = match lead {
            None => true,
            Some((u, _)) => p.order().compare(w, u)? == std::cmp::Ordering::Greater,
        };
        if bigger {
            lead = Some((w, c));
        }
    }
    let (w, c) = lead.ok_or_else(|| Error::invalid("relation is trivially 0 = 0"))?;
    let w = w.clone();
    let scale = c.inv()?.neg();
    let mut rest = diff.clone();
    rest.add_term(w.clone(), c.neg());
    Ok(Rule::new(w, rest.scale(&scale)))
}

/// Compares the generated cross rules with hand-transcribed relations,
/// rule by rule on the left-hand sides the relations cover.
pub fn compare_cross_rules(cross: &CrossPresentation, rels: &[(NCPoly, NCPoly)]) -> Result<Report> {
    let mut report = Report::new("cross-rules-roundtrip");
    let generated: BTreeMap<Word, NCPoly> = cross
        .cross_rules
        .iter()
        .map(|r| (r.lhs.clone(), r.rhs.clone()))
        .collect();
    let p = &cross.presentation;
    for (l, r) in rels {
        let rule = orient_relation(p, l, r)?;
        match generated.get(&rule.lhs) {
            None => report.fail(p.format_rule(&rule), "no generated rule with this left-hand side"),
            Some(g) if *g != rule.rhs => report.fail(
                p.format_rule(&rule),
                format!("generated: {} -> {}", rule.lhs, p.format_poly(g)),
            ),
            Some(_) => {}
        }
    }
    let roundtrip = read_back_action(cross)?;
    for ((a, g), e) in cross.action.entries() {
        if let Ok(back) = roundtrip.get(*a, *g) {
            if cross.algebra.normal_form(e)? != *back {
                report.fail(
                    format!("{a} ◁ {g} read back"),
                    cross.algebra.format_poly(back),
                );
            }
        }
    }
    report.note(format!("{} relations compared", rels.len()));
    Ok(report)
}

/// `A1 ⊗ A2` with exchange rules `a2 a1 -> ...` ordering A1 letters first.
#[derive(Clone, Debug)]
pub struct BraidedPresentation {
    pub presentation: Presentation,
    pub factor1: Presentation,
    pub factor2: Presentation,
    pub exchange: Vec<Rule>,
    pub reports: Vec<Report>,
}

pub fn build_braided(a1: &Presentation, a2: &Presentation, exchange: &[Rule]) -> Result<BraidedPresentation> {
    let l1 = a1.letters();
    let l2 = a2.letters();
    for &y in &l2 {
        for &x in &l1 {
            let lhs = Word::from_letters([y, x]);
            if !exchange.iter().any(|r| r.lhs == lhs) {
                return Err(Error::invalid(format!("exchange table has no rule for `{lhs}`")));
            }
        }
    }
    for r in exchange {
        let ok = r.lhs.len() == 2 && l2.contains(&r.lhs[0]) && l1.contains(&r.lhs[1]);
        if !ok {
            return Err(Error::invalid(format!(
                "exchange rule `{}` is not of the form (A2-letter)(A1-letter)",
                r.lhs
            )));
        }
    }
    let alphabet = disjoint_precedences(a1.alphabet(), a2.alphabet())?;
    let mut rules = a1.rules().to_vec();
    rules.extend(a2.rules().iter().cloned());
    rules.extend(exchange.iter().cloned());
    // tiers separate the factors; the misordering key of the cross order does the work
    let presentation = Presentation::new(alphabet, OrderKind::Cross, rules)?.with_step_limit(a1.step_limit());
    let reports = vec![
        check_admissible(&presentation),
        critical_pairs(&presentation, DEFAULT_OVERLAP.max(presentation.max_lhs_len()))?,
    ];
    Ok(BraidedPresentation {
        presentation,
        factor1: a1.clone(),
        factor2: a2.clone(),
        exchange: exchange.to_vec(),
        reports,
    })
}

/// Copy of `p` with every generator moved to `block` (and its default tier).
pub fn reblock(p: &Presentation, block: Block) -> Result<Presentation> {
    let gens: Vec<Generator> = p
        .alphabet()
        .generators()
        .iter()
        .map(|g| {
            let mut g = g.clone();
            g.block = block;
            g.tier = block.default_tier();
            g
        })
        .collect();
    Ok(Presentation::new(Alphabet::new(gens)?, p.order_kind(), p.rules().to_vec())?
        .with_step_limit(p.step_limit()))
}

/// The three composite shapes of mixed products.
#[derive(Clone, Debug)]
pub enum MixedKind {
    /// `(A ⋊ H) ⊗ A2`: the exchange table moves A2 letters past A and H letters.
    CrossThenBraided {
        cross: Box<CrossPresentation>,
        a2: Presentation,
        exchange: Vec<Rule>,
    },
    /// `A1 ⊗ (A ⋊ H)`: the exchange table moves cross letters past A1 letters.
    BraidedThenCross {
        a1: Presentation,
        cross: Box<CrossPresentation>,
        exchange: Vec<Rule>,
    },
    /// `(A1 ⊗ A2) ⋊ H` with actions on both factors.
    CrossOfBraided {
        braided: Box<BraidedPresentation>,
        hopf: HopfData,
        action1: ActionTable,
        action2: ActionTable,
    },
}

/// Builds a mixed product by composing the constituent builders.
pub fn build_mixed(kind: &MixedKind) -> Result<(Presentation, Vec<Report>)> {
    match kind {
        MixedKind::CrossThenBraided { cross, a2, exchange } => {
            let left = retier(&cross.presentation, |g| if g.block == Block::H { 0 } else { 1 })?;
            let right = retier(a2, |_| 2)?;
            let b = build_braided(&left, &right, exchange)?;
            Ok((b.presentation, b.reports))
        }
        MixedKind::BraidedThenCross { a1, cross, exchange } => {
            let left = retier(a1, |_| 0)?;
            let right = retier(&cross.presentation, |g| if g.block == Block::H { 1 } else { 2 })?;
            let b = build_braided(&left, &right, exchange)?;
            Ok((b.presentation, b.reports))
        }
        MixedKind::CrossOfBraided {
            braided,
            hopf,
            action1,
            action2,
        } => {
            let mut table = action1.clone();
            for ((a, g), e) in action2.entries() {
                table.insert(*a, *g, e.clone());
            }
            let c = build_cross(&braided.presentation, hopf, &table)?;
            let mut reports = braided.reports.clone();
            reports.extend(c.reports);
            Ok((c.presentation, reports))
        }
    }
}

/// Copy of `p` with tiers reassigned; blocks are kept.
pub fn retier(p: &Presentation, tier: impl Fn(&Generator) -> i32) -> Result<Presentation> {
    let gens: Vec<Generator> = p
        .alphabet()
        .generators()
        .iter()
        .map(|g| {
            let t = tier(g);
            g.clone().with_tier(t)
        })
        .collect();
    Ok(Presentation::new(Alphabet::new(gens)?, p.order_kind(), p.rules().to_vec())?
        .with_step_limit(p.step_limit()))
}

/// Adjoint action of H on itself, for braiding H past another factor.
pub fn adjoint_table(cross: &CrossPresentation) -> Result<(ActionTable, Report)> {
    extend_action_adjoint(&cross.presentation, &cross.hopf, Some(&cross.action))
}
