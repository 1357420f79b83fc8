//! Named verification suites over a [`PresetBundle`], looked up by name.

use std::collections::{BTreeMap, HashMap};
use std::sync::LazyLock;

use serde::Serialize;

use crate::actions::ActionTable;
use crate::coeff::Scalar;
use crate::decouple::{
    centralizer_basis, check_commutant, check_realization, check_unbraiding, check_zeta_homomorphism,
    in_span, verify_decomposition, zeta_unchecked, DecoupledGenerator, RealizationMap, ZetaFamily,
};
use crate::error::{Error, Result};
use crate::format::{parse_expr_in, Span};
use crate::hopf::HopfData;
use crate::ncpoly::{Letter, NCPoly};
use crate::presets::{validate, ExpectKind, Expectation, LetDef, PresetBundle, Role};
use crate::products::{build_cross, compare_cross_rules};
use crate::report::{Report, Residual, Status};
use crate::rewrite::Presentation;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Realization variant; the bundle default when unset.
    pub variant: Option<String>,
    pub degree: usize,
    /// Extra length for decomposition products; twice the longest ζ̃ image when unset.
    pub window: Option<usize>,
    pub overlap: usize,
    /// Degree for the centralizer check; the longest ζ̃ image when unset.
    pub centralizer_degree: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            variant: None,
            degree: 2,
            window: None,
            overlap: 3,
            centralizer_degree: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residual: Vec<Residual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selected_constant: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckResult {
    fn from_report(name: impl Into<String>, r: Report) -> Self {
        CheckResult {
            name: name.into(),
            status: r.status,
            residual: r.residuals,
            selected_constant: None,
            notes: r.notes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub bundle: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status.is_pass())
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {} on {}", self.suite, self.bundle);
        if let Some(v) = &self.variant {
            s.push_str(&format!(" (variant {v})"));
        }
        s.push('\n');
        for c in &self.checks {
            s.push_str(&format!("{}: {}", c.name, c.status));
            if let Some(k) = &c.selected_constant {
                s.push_str(&format!(" [selected {k}]"));
            }
            s.push('\n');
            for n in &c.notes {
                s.push_str(&format!("  note: {n}\n"));
            }
            for r in &c.residual {
                s.push_str(&format!("  {} => {}\n", r.context, r.expression));
            }
        }
        s.push_str(if self.passed() { "result: pass\n" } else { "result: fail\n" });
        s
    }
}

pub trait Suite: Sync {
    fn name(&self) -> &'static str;
    fn run(&self, b: &PresetBundle, opts: &SuiteOptions) -> Result<SuiteReport>;
}

static REGISTRY: LazyLock<BTreeMap<&'static str, &'static dyn Suite>> = LazyLock::new(|| {
    let all: [&'static dyn Suite; 4] = [&Identities, &Theorem1, &Theorem2, &Theorem3];
    all.into_iter().map(|s| (s.name(), s)).collect()
});

pub fn suite(name: &str) -> Result<&'static dyn Suite> {
    REGISTRY
        .get(name)
        .copied()
        .ok_or_else(|| Error::invalid(format!("unknown suite `{name}` (known: {})", suite_names().join(", "))))
}

pub fn suite_names() -> Vec<&'static str> {
    REGISTRY.keys().copied().collect()
}

pub fn run_suite(name: &str, b: &PresetBundle, opts: &SuiteOptions) -> Result<SuiteReport> {
    suite(name)?.run(b, opts)
}

/// One realization map with the ζ̃ images it induces.
pub struct Realized {
    pub role: Role,
    pub hopf: HopfData,
    pub phi: RealizationMap,
    pub zetas: Vec<DecoupledGenerator>,
}

/// Builds `φ̃` for `role` on `A ⋊ H_role` and computes ζ̃ on the role's letters.
pub fn realize(b: &PresetBundle, role: Role, variant: &str) -> Result<Realized> {
    let cross = b
        .cross
        .as_ref()
        .ok_or_else(|| Error::invalid("bundle has no cross product"))?;
    let spec = b
        .phi(role, variant)
        .ok_or_else(|| Error::invalid(format!("bundle has no `{role}` map for variant `{variant}`")))?;
    let (hopf, domain) = match role {
        Role::Full => (cross.hopf.clone(), cross.presentation.clone()),
        Role::Plus | Role::Minus => {
            let letters = if role == Role::Plus { &b.plus } else { &b.minus };
            if letters.is_empty() {
                return Err(Error::invalid(format!("bundle declares no `{role}` letters")));
            }
            let h = cross.hopf.restrict(letters)?;
            let t = ActionTable::new(
                cross
                    .action
                    .entries()
                    .iter()
                    .filter(|((_, g), _)| letters.contains(g))
                    .map(|(k, v)| (*k, v.clone())),
            );
            let sub = build_cross(&cross.algebra, &h, &t)?;
            (h, sub.presentation)
        }
    };
    let phi = RealizationMap::new(domain, cross.algebra.clone(), spec.images.clone(), true)?;
    let zetas = hopf
        .base()
        .letters()
        .into_iter()
        .map(|g| {
            Ok(DecoupledGenerator {
                source: g,
                image: zeta_unchecked(g, &phi, &hopf, &cross.presentation)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Realized {
        role,
        hopf,
        phi,
        zetas,
    })
}

fn chosen_variant(b: &PresetBundle, opts: &SuiteOptions) -> Result<Option<String>> {
    let v = opts.variant.clone().or_else(|| b.default_variant.clone());
    if let Some(v) = &v {
        if !b.variants().contains(v) {
            return Err(Error::invalid(format!(
                "unknown variant `{v}` (bundle has: {})",
                b.variants().join(", ")
            )));
        }
    }
    Ok(v)
}

fn validation_checks(b: &PresetBundle, opts: &SuiteOptions, out: &mut Vec<CheckResult>) -> Result<()> {
    for r in validate(b, opts.overlap)? {
        let name = format!("validation:{}", r.check);
        out.push(CheckResult::from_report(name, r));
    }
    Ok(())
}

/// Evaluates `let` definitions and expectations in file order.
struct Agenda<'a> {
    b: &'a PresetBundle,
    p: &'a Presentation,
    env: HashMap<String, NCPoly>,
    realized: &'a [Realized],
}

impl Agenda<'_> {
    fn expr(&self, text: &str, line: usize) -> Result<NCPoly> {
        let e = parse_expr_in(text, &self.b.alphabet, &self.env, Span::new(line, 0))?;
        self.p.normal_form(&e)
    }

    fn define(&mut self, line: usize, name: &str, def: &LetDef) -> Result<()> {
        let v = match def {
            LetDef::Zeta(role, g) => {
                let r = self
                    .realized
                    .iter()
                    .find(|r| r.role == *role)
                    .ok_or_else(|| Error::invalid(format!("`{name}` needs the `{role}` realization")))?;
                r.zetas
                    .iter()
                    .find(|z| z.source == *g)
                    .map(|z| z.image.clone())
                    .ok_or_else(|| Error::invalid(format!("`{g}` is not a `{role}` letter")))?
            }
            LetDef::Expr(text) => self.expr(text, line)?,
        };
        self.env.insert(name.to_string(), v);
        Ok(())
    }

    fn check(&mut self, e: &Expectation) -> CheckResult {
        let name = format!("expect:{}", e.tag);
        match self.check_inner(e) {
            Ok(c) => CheckResult { name, ..c },
            Err(err) => {
                let mut r = Report::new(&name);
                r.fail("evaluation error", err.to_string());
                CheckResult::from_report(name, r)
            }
        }
    }

    fn check_inner(&mut self, e: &Expectation) -> Result<CheckResult> {
        let p = self.p;
        let mut r = Report::new(&e.tag);
        let mut selected = None;
        match &e.kind {
            ExpectKind::Identity { lhs, rhs } => {
                let d = self.expr(lhs, e.line)?.sub(&self.expr(rhs, e.line)?);
                let d = p.normal_form(&d)?;
                if !d.is_zero() {
                    r.fail(format!("{lhs} - ({rhs})"), p.format_poly(&d));
                }
            }
            ExpectKind::Central { expr } => {
                let x = self.expr(expr, e.line)?;
                r.absorb(check_commutant(&[x], &p.letters(), p));
            }
            ExpectKind::Commute { exprs, letters } => {
                let xs = exprs
                    .iter()
                    .map(|x| self.expr(x, e.line))
                    .collect::<Result<Vec<_>>>()?;
                r.absorb(check_commutant(&xs, letters, p));
            }
            ExpectKind::Charge { expr } => {
                let x = self.expr(expr, e.line)?;
                let candidates = [Scalar::eta_pow(2), Scalar::eta_pow(-2)];
                match x.as_scalar() {
                    Some(s) if candidates.contains(&s) => {
                        selected = Some(s.to_string());
                        r.note(format!("charge {s}"));
                        self.env.insert("s".into(), NCPoly::scalar(s));
                    }
                    Some(s) => r.fail(format!("{expr} is the scalar {s}, not eta^2 or eta^-2"), s.to_string()),
                    None => r.fail(format!("{expr} is not a scalar"), p.format_poly(&x)),
                }
            }
        }
        let mut c = CheckResult::from_report(String::new(), r);
        c.selected_constant = selected;
        Ok(c)
    }
}

/// Runs the bundle's expectations tagged `suite` (every one if `None`).
fn agenda_checks(
    b: &PresetBundle,
    suite: Option<&str>,
    variant: Option<&str>,
    realized: &[Realized],
    out: &mut Vec<CheckResult>,
) -> Result<()> {
    let p = b
        .main_presentation()
        .ok_or_else(|| Error::invalid("bundle declares no algebra"))?;
    let mut ag = Agenda {
        b,
        p,
        env: HashMap::new(),
        realized,
    };
    let wanted = |e: &Expectation| {
        suite.is_none_or(|s| e.suite == s) && e.variant.as_deref().is_none_or(|v| Some(v) == variant)
    };
    enum Item<'a> {
        Let(&'a str, &'a LetDef),
        Expect(&'a Expectation),
    }
    let mut items: Vec<(usize, Item<'_>)> = b
        .lets
        .iter()
        .map(|(n, name, d)| (*n, Item::Let(name, d)))
        .chain(b.expects.iter().filter(|e| wanted(e)).map(|e| (e.line, Item::Expect(e))))
        .collect();
    items.sort_by_key(|(n, _)| *n);
    for (line, item) in items {
        match item {
            Item::Let(name, d) => {
                // definitions that cannot be evaluated only fail the checks using them
                if let Err(err) = ag.define(line, name, d) {
                    if realized.is_empty() && matches!(d, LetDef::Zeta(..)) {
                        continue;
                    }
                    let mut r = Report::new(name);
                    r.fail(format!("let {name}"), err.to_string());
                    out.push(CheckResult::from_report(format!("let:{name}"), r));
                }
            }
            Item::Expect(e) => out.push(ag.check(e)),
        }
    }
    Ok(())
}

/// Realization, commutant, homomorphism and counit checks for one map.
fn realized_checks(b: &PresetBundle, r: &Realized, out: &mut Vec<CheckResult>) -> Result<()> {
    let cross = b.cross.as_ref().expect("realize needs a cross product");
    let cp = &cross.presentation;
    let role = r.role;
    out.push(CheckResult::from_report(format!("realization:{role}"), check_realization(&r.phi)));
    let images: Vec<NCPoly> = r.zetas.iter().map(|z| z.image.clone()).collect();
    let mut com = check_commutant(&images, &cross.algebra.letters(), cp);
    com.note(format!(
        "{} images against {} algebra letters",
        images.len(),
        cross.algebra.letters().len()
    ));
    out.push(CheckResult::from_report(format!("commutant:{role}"), com));
    out.push(CheckResult::from_report(
        format!("zeta-homomorphism:{role}"),
        check_zeta_homomorphism(&r.zetas, r.hopf.base(), cp),
    ));
    // g_(1) S(g_(2)) = ε(g), seen through φ̃
    let mut counit = Report::new("zeta-counit");
    for z in &r.zetas {
        let lhs = r.phi.apply(&z.image)?;
        let eps = NCPoly::scalar(r.hopf.counit_letter(z.source)?.clone());
        let d = cross.algebra.normal_form(&lhs.sub(&eps))?;
        if !d.is_zero() {
            counit.fail(format!("φ̃(ζ̃({})) - ε({})", z.source, z.source), cross.algebra.format_poly(&d));
        }
    }
    out.push(CheckResult::from_report(format!("zeta-counit:{role}"), counit));
    Ok(())
}

fn longest_image(realized: &[Realized]) -> usize {
    realized
        .iter()
        .flat_map(|r| r.zetas.iter())
        .map(|z| z.image.max_word_len())
        .max()
        .unwrap_or(1)
}

/// Realizations available under `variant`: the full map, or the plus/minus pair.
pub fn realize_all(b: &PresetBundle, variant: &str) -> Result<Vec<Realized>> {
    if b.phi(Role::Full, variant).is_some() {
        return Ok(vec![realize(b, Role::Full, variant)?]);
    }
    Ok(vec![realize(b, Role::Plus, variant)?, realize(b, Role::Minus, variant)?])
}

/// The decomposition check alone, under the chosen variant.
pub fn decompose(b: &PresetBundle, opts: &SuiteOptions) -> Result<(Option<String>, Report)> {
    let variant = chosen_variant(b, opts)?.ok_or_else(|| Error::invalid("bundle has no realization maps"))?;
    let realized = realize_all(b, &variant)?;
    let mut out = Vec::new();
    structure_checks(b, &realized, &SuiteOptions { centralizer_degree: Some(0), ..opts.clone() }, &mut out)?;
    let c = out.remove(0);
    let mut r = Report::new("decomposition");
    r.status = c.status;
    r.residuals = c.residual;
    r.notes = c.notes;
    Ok((Some(variant), r))
}

fn structure_checks(b: &PresetBundle, realized: &[Realized], opts: &SuiteOptions, out: &mut Vec<CheckResult>) -> Result<()> {
    let cross = b.cross.as_ref().expect("realize needs a cross product");
    let cp = &cross.presentation;
    let longest = longest_image(realized);
    let families: Vec<ZetaFamily> = realized
        .iter()
        .map(|r| ZetaFamily {
            name: r.role.to_string(),
            words_of: r.hopf.base().clone(),
            zetas: r.zetas.clone(),
        })
        .collect();
    let window = opts.window.unwrap_or(2 * longest);
    let mut dec = verify_decomposition(cp, &cross.algebra, &families, opts.degree, window)?;
    dec.note(format!("degree {} window {window}", opts.degree));
    out.push(CheckResult::from_report("decomposition", dec));

    let cdeg = opts.centralizer_degree.unwrap_or(longest);
    let basis = centralizer_basis(cp, &cross.algebra.letters(), cdeg)?;
    let mut cen = Report::new("centralizer");
    cen.note(format!("degree {cdeg}: basis of {} elements", basis.len()));
    let mut members = vec![("1".to_string(), NCPoly::one())];
    for r in realized {
        for z in &r.zetas {
            members.push((format!("ζ̃{}({})", r.role, z.source), z.image.clone()));
        }
    }
    for (what, e) in members {
        if e.max_word_len() <= cdeg && !in_span(&e, &basis, cp)? {
            cen.fail(format!("{what} not in the centralizer span"), cp.format_poly(&e));
        }
    }
    out.push(CheckResult::from_report("centralizer", cen));
    Ok(())
}

fn finish(suite: &str, b: &PresetBundle, variant: Option<String>, mut checks: Vec<CheckResult>) -> SuiteReport {
    checks.sort_by(|a, c| a.name.cmp(&c.name));
    SuiteReport {
        schema: SCHEMA_VERSION,
        suite: suite.to_string(),
        bundle: b.name.clone(),
        variant,
        checks,
    }
}

/// Validation plus every expectation in the bundle.
pub struct Identities;

impl Suite for Identities {
    fn name(&self) -> &'static str {
        "identities"
    }

    fn run(&self, b: &PresetBundle, opts: &SuiteOptions) -> Result<SuiteReport> {
        let mut out = Vec::new();
        validation_checks(b, opts, &mut out)?;
        let variant = chosen_variant(b, opts)?;
        let mut realized = Vec::new();
        if let Some(v) = &variant {
            for role in [Role::Full, Role::Plus, Role::Minus] {
                if b.phi(role, v).is_some() {
                    realized.push(realize(b, role, v)?);
                }
            }
        }
        agenda_checks(b, None, variant.as_deref(), &realized, &mut out)?;
        Ok(finish(self.name(), b, variant, out))
    }
}

/// A single realization `φ̃ : A ⋊ H -> A` decouples H.
pub struct Theorem1;

impl Suite for Theorem1 {
    fn name(&self) -> &'static str {
        "theorem1"
    }

    fn run(&self, b: &PresetBundle, opts: &SuiteOptions) -> Result<SuiteReport> {
        let variant = chosen_variant(b, opts)?
            .ok_or_else(|| Error::invalid("theorem1 needs a `phi full` map"))?;
        let mut out = Vec::new();
        validation_checks(b, opts, &mut out)?;
        let realized = vec![realize(b, Role::Full, &variant)?];
        realized_checks(b, &realized[0], &mut out)?;
        agenda_checks(b, Some(self.name()), Some(&variant), &realized, &mut out)?;
        structure_checks(b, &realized, opts, &mut out)?;
        Ok(finish(self.name(), b, Some(variant), out))
    }
}

/// Two realizations on `A ⋊ H+` and `A ⋊ H-` decouple H.
pub struct Theorem2;

impl Suite for Theorem2 {
    fn name(&self) -> &'static str {
        "theorem2"
    }

    fn run(&self, b: &PresetBundle, opts: &SuiteOptions) -> Result<SuiteReport> {
        let variant = chosen_variant(b, opts)?
            .ok_or_else(|| Error::invalid("theorem2 needs `phi plus` and `phi minus` maps"))?;
        let mut out = Vec::new();
        validation_checks(b, opts, &mut out)?;
        if let Some(cross) = &b.cross {
            if !b.rels.is_empty() {
                out.push(CheckResult::from_report("cross-rules", compare_cross_rules(cross, &b.rels)?));
            }
        }
        let realized = vec![realize(b, Role::Plus, &variant)?, realize(b, Role::Minus, &variant)?];
        for r in &realized {
            realized_checks(b, r, &mut out)?;
        }
        agenda_checks(b, Some(self.name()), Some(&variant), &realized, &mut out)?;
        structure_checks(b, &realized, opts, &mut out)?;
        Ok(finish(self.name(), b, Some(variant), out))
    }
}

/// An unbraiding table `χ` turns `A1 ⊗ A2` into a commuting product.
pub struct Theorem3;

impl Suite for Theorem3 {
    fn name(&self) -> &'static str {
        "theorem3"
    }

    fn run(&self, b: &PresetBundle, opts: &SuiteOptions) -> Result<SuiteReport> {
        let br = b
            .braided
            .as_ref()
            .ok_or_else(|| Error::invalid("theorem3 needs `factor1`, `factor2` and `exchange`"))?;
        let chi: &BTreeMap<Letter, NCPoly> = b
            .chi
            .as_ref()
            .ok_or_else(|| Error::invalid("theorem3 needs a `chi` table"))?;
        let mut out = Vec::new();
        validation_checks(b, opts, &mut out)?;
        for r in check_unbraiding(chi, br, Some(opts.degree))? {
            let name = r.check.clone();
            out.push(CheckResult::from_report(name, r));
        }
        agenda_checks(b, Some(self.name()), None, &[], &mut out)?;
        Ok(finish(self.name(), b, None, out))
    }
}
