//! Bundled presentations and the `.bundle` format that ties files together.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::actions::{check_module_algebra, derive_inverse_action, ActionTable};
use crate::error::{Error, Result};
use crate::format::{parse_document, strip_comment, Document};
use crate::hopf::{check_hopf_axioms, HopfData};
use crate::ncpoly::{Alphabet, Letter, NCPoly, OrderKind};
use crate::products::{build_braided, build_cross, split_cross, BraidedPresentation, CrossPresentation};
use crate::report::Report;
use crate::rewrite::{check_admissible, critical_pairs, Presentation, Rule};

/// Preset files compiled into the binary, by file name.
pub const FILES: &[(&str, &str)] = &[
    ("uq_so3.alg", include_str!("../../presets/uq_so3.alg")),
    ("rq3.alg", include_str!("../../presets/rq3.alg")),
    ("rq3_deglex.alg", include_str!("../../presets/rq3_deglex.alg")),
    ("rq3_copy.alg", include_str!("../../presets/rq3_copy.alg")),
    ("rq3_uq.tbl", include_str!("../../presets/rq3_uq.tbl")),
    ("trivial_exchange.tbl", include_str!("../../presets/trivial_exchange.tbl")),
    ("chi_inclusion.map", include_str!("../../presets/chi_inclusion.map")),
    ("phi_plus_eta.map", include_str!("../../presets/phi_plus_eta.map")),
    ("phi_minus_eta.map", include_str!("../../presets/phi_minus_eta.map")),
    ("phi_plus_eta_inv.map", include_str!("../../presets/phi_plus_eta_inv.map")),
    ("phi_minus_eta_inv.map", include_str!("../../presets/phi_minus_eta_inv.map")),
    ("weyl.alg", include_str!("../../presets/weyl.alg")),
    ("uso3.alg", include_str!("../../presets/uso3.alg")),
    ("weyl_uso3.tbl", include_str!("../../presets/weyl_uso3.tbl")),
    ("phi_classical.map", include_str!("../../presets/phi_classical.map")),
    ("classical.bundle", include_str!("../../presets/classical.bundle")),
    ("uq_so3.bundle", include_str!("../../presets/uq_so3.bundle")),
    ("rq3.bundle", include_str!("../../presets/rq3.bundle")),
    ("rq3_cross.bundle", include_str!("../../presets/rq3_cross.bundle")),
    ("rq3_sphere_cross.bundle", include_str!("../../presets/rq3_sphere_cross.bundle")),
    ("phi_variants.bundle", include_str!("../../presets/phi_variants.bundle")),
    ("trivial_braided.bundle", include_str!("../../presets/trivial_braided.bundle")),
    ("lambda_toy.bundle", include_str!("../../presets/lambda_toy.bundle")),
    ("lambda_a1.alg", include_str!("../../presets/lambda_a1.alg")),
    ("lambda_a2.alg", include_str!("../../presets/lambda_a2.alg")),
    ("lambda_exchange.tbl", include_str!("../../presets/lambda_exchange.tbl")),
    ("chi_lambda.map", include_str!("../../presets/chi_lambda.map")),
];

/// Preset names accepted by [`load_preset`] and their bundle files.
pub const PRESETS: &[(&str, &str)] = &[
    ("classical_so3_weyl", "classical.bundle"),
    ("uq_so3", "uq_so3.bundle"),
    ("rq3", "rq3.bundle"),
    ("rq3_cross", "rq3_cross.bundle"),
    ("rq3_sphere_cross", "rq3_sphere_cross.bundle"),
    ("phi_variants", "phi_variants.bundle"),
    ("trivial_braided", "trivial_braided.bundle"),
];

pub fn embedded(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Reads a file from disk, falling back to the embedded preset of the same
/// file name.
pub fn read_source(path: &Path) -> Result<String> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(s),
        Err(e) => path
            .file_name()
            .and_then(|n| n.to_str())
            .and_then(embedded)
            .map(str::to_string)
            .ok_or_else(|| Error::Io(format!("{}: {e}", path.display()))),
    }
}

/// Which realization map a `phi` line provides.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Full,
    Plus,
    Minus,
}

impl std::str::FromStr for Role {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Role::Full),
            "plus" => Ok(Role::Plus),
            "minus" => Ok(Role::Minus),
            other => Err(Error::invalid(format!("unknown map role `{other}`"))),
        }
    }
}

impl std::fmt::Display for Role {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Role::Full => "full",
            Role::Plus => "plus",
            Role::Minus => "minus",
        })
    }
}

#[derive(Clone, Debug)]
pub struct PhiSpec {
    pub role: Role,
    pub variant: String,
    pub images: Vec<(Letter, NCPoly)>,
}

/// A named definition usable as `@name` in later expressions.
#[derive(Clone, Debug)]
pub enum LetDef {
    Zeta(Role, Letter),
    Expr(String),
}

#[derive(Clone, Debug)]
pub enum ExpectKind {
    Identity { lhs: String, rhs: String },
    Central { expr: String },
    /// Reduces to `s * 1` with `s` among the candidates; binds `@s`.
    Charge { expr: String },
    /// Every expression commutes with every listed letter.
    Commute { exprs: Vec<String>, letters: Vec<Letter> },
}

#[derive(Clone, Debug)]
pub struct Expectation {
    pub tag: String,
    pub suite: String,
    /// Only checked under this realization variant, if set.
    pub variant: Option<String>,
    pub kind: ExpectKind,
    pub line: usize,
}

/// Everything a bundle file declares, with the composite algebras built.
#[derive(Clone, Debug, Default)]
pub struct PresetBundle {
    pub name: String,
    pub algebra: Option<Presentation>,
    pub hopf: Option<HopfData>,
    pub action: Option<ActionTable>,
    pub cross: Option<CrossPresentation>,
    pub plus: Vec<Letter>,
    pub minus: Vec<Letter>,
    pub phis: Vec<PhiSpec>,
    pub default_variant: Option<String>,
    pub rels: Vec<(NCPoly, NCPoly)>,
    /// `(line, name, definition)`, in file order.
    pub lets: Vec<(usize, String, LetDef)>,
    pub expects: Vec<Expectation>,
    pub braided: Option<BraidedPresentation>,
    pub chi: Option<BTreeMap<Letter, NCPoly>>,
    /// Union of every letter the bundle knows, for parsing user input.
    pub alphabet: Alphabet,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column: 1,
        message: message.into(),
    }
}

fn merge_docs(docs: &[Document], extra: Vec<Rule>) -> Result<Presentation> {
    let mut alphabet = Alphabet::default();
    let mut rules = Vec::new();
    let mut order = None;
    for d in docs {
        alphabet = alphabet.merge(&Alphabet::new(d.gens.clone())?)?;
        rules.extend(d.rules.iter().cloned());
        order = order.or(d.order);
    }
    rules.extend(extra);
    Presentation::new(alphabet, order.unwrap_or(OrderKind::Cross), rules)
}

fn hopf_from(doc: &Document) -> Result<HopfData> {
    HopfData::new(
        doc.presentation()?,
        doc.cop.iter().cloned(),
        doc.counit.iter().cloned(),
        doc.antipode.iter().cloned(),
    )
}

impl PresetBundle {
    /// Parses a bundle; `read` resolves the file names it mentions.
    pub fn parse(text: &str, read: &dyn Fn(&str) -> Result<String>) -> Result<PresetBundle> {
        let mut b = PresetBundle::default();
        let lines: Vec<(usize, String)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, strip_comment(l).trim().to_string()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let split = |l: &str| -> (String, String) {
            let (k, r) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            (k.to_string(), r.trim().to_string())
        };

        // pass 1: structure files
        let mut alg_docs = Vec::new();
        let mut hopf_doc = None;
        let mut f1 = None;
        let mut f2 = None;
        for (n, l) in &lines {
            let (k, r) = split(l);
            match k.as_str() {
                "name" => b.name = r,
                "algebra" => alg_docs.push(parse_document(&read(&r)?, &Alphabet::default())?),
                "hopf" => hopf_doc = Some(parse_document(&read(&r)?, &Alphabet::default())?),
                "factor1" => f1 = Some(parse_document(&read(&r)?, &Alphabet::default())?),
                "factor2" => f2 = Some(parse_document(&read(&r)?, &Alphabet::default())?),
                "default-variant" => b.default_variant = Some(r),
                "action" | "derive-inverse" | "rule" | "plus" | "minus" | "phi" | "rel" | "let"
                | "expect" | "expect-central" | "expect-charge" | "expect-commute" | "exchange" | "chi" => {}
                other => return Err(syntax(*n, format!("unknown bundle directive `{other}`"))),
            }
        }
        let mut alphabet = Alphabet::default();
        for d in alg_docs.iter().chain(hopf_doc.iter()).chain(f1.iter()).chain(f2.iter()) {
            alphabet = alphabet.merge(&Alphabet::new(d.gens.clone())?)?;
        }
        b.alphabet = alphabet.clone();

        // pass 2: everything parsed against the merged alphabet
        let mut extra_rules = Vec::new();
        let mut action_docs = Vec::new();
        let mut derive = Vec::new();
        let mut exchange = Vec::new();
        for (n, l) in &lines {
            let (k, r) = split(l);
            let letter = |s: &str| {
                alphabet
                    .by_name(s)
                    .map(|g| g.letter)
                    .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
            };
            match k.as_str() {
                "action" => action_docs.push(parse_document(&read(&r)?, &alphabet)?),
                "derive-inverse" => derive.push((letter(&r)?, *n)),
                "rule" => {
                    let doc = parse_document(&format!("rule {r}"), &alphabet)?;
                    extra_rules.extend(doc.rules);
                }
                "plus" => b.plus = r.split_whitespace().map(letter).collect::<Result<_>>()?,
                "minus" => b.minus = r.split_whitespace().map(letter).collect::<Result<_>>()?,
                "phi" => {
                    let parts: Vec<&str> = r.split_whitespace().collect();
                    let [role, variant, file] = parts[..] else {
                        return Err(syntax(*n, "expected `phi <full|plus|minus> <variant> <file>`"));
                    };
                    let doc = parse_document(&read(file)?, &alphabet)?;
                    b.phis.push(PhiSpec {
                        role: role.parse()?,
                        variant: variant.to_string(),
                        images: doc.map,
                    });
                }
                "rel" => {
                    let doc = parse_document(&format!("rel {r}"), &alphabet)?;
                    b.rels.extend(doc.rel);
                }
                "let" => {
                    let (name, body) = r
                        .split_once('=')
                        .ok_or_else(|| syntax(*n, "expected `let <name> = ...`"))?;
                    let body = body.trim();
                    let def = if let Some(inner) =
                        body.strip_prefix("zeta(").and_then(|s| s.strip_suffix(')'))
                    {
                        let (role, g) = inner
                            .split_once(',')
                            .ok_or_else(|| syntax(*n, "expected `zeta(<role>, <gen>)`"))?;
                        LetDef::Zeta(role.trim().parse()?, letter(g.trim())?)
                    } else {
                        LetDef::Expr(body.to_string())
                    };
                    b.lets.push((*n, name.trim().to_string(), def));
                }
                "expect" | "expect-central" | "expect-charge" | "expect-commute" => {
                    let (head, body) = r
                        .split_once(':')
                        .ok_or_else(|| syntax(*n, "expected `<tag> <suite> : ...`"))?;
                    let mut hp = head.split_whitespace();
                    let (Some(tag), Some(suite), variant, None) =
                        (hp.next(), hp.next(), hp.next(), hp.next())
                    else {
                        return Err(syntax(*n, "expected `<tag> <suite> [variant]` before `:`"));
                    };
                    let body = body.trim().to_string();
                    let kind = match k.as_str() {
                        "expect" => {
                            let (lhs, rhs) = body
                                .split_once("==")
                                .ok_or_else(|| syntax(*n, "expected `lhs == rhs`"))?;
                            ExpectKind::Identity {
                                lhs: lhs.trim().to_string(),
                                rhs: rhs.trim().to_string(),
                            }
                        }
                        "expect-central" => ExpectKind::Central { expr: body },
                        "expect-charge" => ExpectKind::Charge { expr: body },
                        _ => {
                            let (exprs, letters) = body
                                .split_once('|')
                                .ok_or_else(|| syntax(*n, "expected `e1 ; e2 ... | letters`"))?;
                            ExpectKind::Commute {
                                exprs: exprs.split(';').map(|e| e.trim().to_string()).collect(),
                                letters: letters.split_whitespace().map(letter).collect::<Result<_>>()?,
                            }
                        }
                    };
                    b.expects.push(Expectation {
                        tag: tag.to_string(),
                        suite: suite.to_string(),
                        variant: variant.map(str::to_string),
                        kind,
                        line: *n,
                    });
                }
                "exchange" => {
                    let doc = parse_document(&read(&r)?, &alphabet)?;
                    exchange.extend(doc.rules);
                }
                "chi" => {
                    let doc = parse_document(&read(&r)?, &alphabet)?;
                    b.chi = Some(doc.map.into_iter().collect());
                }
                _ => {}
            }
        }

        if !alg_docs.is_empty() {
            b.algebra = Some(merge_docs(&alg_docs, extra_rules)?);
        } else if !extra_rules.is_empty() {
            return Err(Error::invalid("bundle `rule` lines need an `algebra`"));
        }
        if let Some(d) = &hopf_doc {
            b.hopf = Some(hopf_from(d)?);
        }
        if !action_docs.is_empty() {
            let mut t = ActionTable::default();
            for d in &action_docs {
                for (a, g, e) in &d.act {
                    t.insert(*a, *g, e.clone());
                }
            }
            let (Some(a), Some(h)) = (&b.algebra, &b.hopf) else {
                return Err(Error::invalid("an action needs both `algebra` and `hopf`"));
            };
            for (l, _) in &derive {
                for (g, e) in derive_inverse_action(&t, *l, a, h)? {
                    let inv = a.alphabet().require(*l)?.inverse_of.expect("checked by derive");
                    t.insert(inv, g, e);
                }
            }
            b.cross = Some(build_cross(a, h, &t)?);
            b.action = Some(t);
        }
        if let (Some(d1), Some(d2)) = (&f1, &f2) {
            b.braided = Some(build_braided(&d1.presentation()?, &d2.presentation()?, &exchange)?);
        }
        Ok(b)
    }

    pub fn load_file(path: &Path) -> Result<PresetBundle> {
        let dir: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let text = read_source(path)?;
        PresetBundle::parse(&text, &|name: &str| read_source(&dir.join(name)))
    }

    /// A bundle around a single `.alg` file. Files with coproducts on some but
    /// not all letters are read as cross products `A ⋊ H`.
    pub fn from_document(name: &str, doc: &Document) -> Result<PresetBundle> {
        let p = doc.presentation()?;
        let mut b = PresetBundle {
            name: name.to_string(),
            alphabet: p.alphabet().clone(),
            ..PresetBundle::default()
        };
        if doc.cop.is_empty() {
            b.algebra = Some(p);
            return Ok(b);
        }
        let h = doc.hopf()?;
        if h.base().letters().len() == p.letters().len() {
            b.hopf = Some(h);
            return Ok(b);
        }
        let cross = split_cross(&p, &h)?;
        b.algebra = Some(cross.algebra.clone());
        b.action = Some(cross.action.clone());
        b.hopf = Some(h);
        b.cross = Some(cross);
        Ok(b)
    }

    /// Registers a realization map. For the plus and minus roles the letter
    /// set, when not declared, is the Hopf closure of the map's domain.
    pub fn add_phi(&mut self, role: Role, variant: &str, images: Vec<(Letter, NCPoly)>) -> Result<()> {
        let letters = match role {
            Role::Full => None,
            Role::Plus => Some(&mut self.plus),
            Role::Minus => Some(&mut self.minus),
        };
        if let (Some(letters), Some(h)) = (letters, self.hopf.as_ref()) {
            if letters.is_empty() {
                let seeds: Vec<Letter> = images.iter().map(|(l, _)| *l).collect();
                *letters = h.closure(&seeds)?;
            }
        }
        self.phis.push(PhiSpec {
            role,
            variant: variant.to_string(),
            images,
        });
        Ok(())
    }

    /// The presentation user expressions are evaluated in.
    pub fn main_presentation(&self) -> Option<&Presentation> {
        self.cross
            .as_ref()
            .map(|c| &c.presentation)
            .or(self.braided.as_ref().map(|b| &b.presentation))
            .or(self.algebra.as_ref())
            .or(self.hopf.as_ref().map(|h| h.base()))
    }

    pub fn variants(&self) -> Vec<String> {
        let mut v: Vec<String> = self.phis.iter().map(|p| p.variant.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn phi(&self, role: Role, variant: &str) -> Option<&PhiSpec> {
        self.phis.iter().find(|p| p.role == role && p.variant == variant)
    }
}

/// Admissibility, confluence, Hopf and module-algebra reports for every
/// structure in the bundle.
pub fn validate(b: &PresetBundle, overlap: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let mut pres: Vec<(&str, &Presentation)> = Vec::new();
    if let Some(a) = &b.algebra {
        pres.push(("algebra", a));
    }
    if let Some(h) = &b.hopf {
        pres.push(("hopf", h.base()));
    }
    if let Some(c) = &b.cross {
        pres.push(("cross", &c.presentation));
    }
    if let Some(br) = &b.braided {
        pres.push(("braided", &br.presentation));
    }
    for (what, p) in pres {
        let mut r = check_admissible(p);
        r.check = format!("admissibility:{what}");
        out.push(r);
        let mut r = critical_pairs(p, overlap.max(p.max_lhs_len()))?;
        r.check = format!("confluence:{what}");
        out.push(r);
    }
    if let Some(h) = &b.hopf {
        out.push(check_hopf_axioms(h));
    }
    if let (Some(a), Some(h), Some(t)) = (&b.algebra, &b.hopf, &b.action) {
        out.push(check_module_algebra(a, h, t));
    }
    Ok(out)
}

pub fn preset_file(name: &str) -> Result<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| *f)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

/// Loads and fully validates a bundled preset.
pub fn load_preset(name: &str) -> Result<PresetBundle> {
    let file = preset_file(name)?;
    let text = embedded(file).expect("preset files are embedded");
    let b = PresetBundle::parse(text, &|f: &str| {
        embedded(f)
            .map(str::to_string)
            .ok_or_else(|| Error::Io(format!("no embedded preset file `{f}`")))
    })?;
    for r in validate(&b, 3)? {
        if !r.passed() {
            return Err(Error::Validation {
                what: format!("preset `{name}`"),
                detail: r.to_text(),
            });
        }
    }
    Ok(b)
}

/// `(lhs, rhs, tag)` for each identity the bundle asks to verify; central
/// elements expand to one commutator per generator.
pub fn list_expected_identities(b: &PresetBundle) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    let gens: Vec<Letter> = b.main_presentation().map(|p| p.letters()).unwrap_or_default();
    for e in &b.expects {
        match &e.kind {
            ExpectKind::Identity { lhs, rhs } => out.push((lhs.clone(), rhs.clone(), e.tag.clone())),
            ExpectKind::Central { expr } => {
                for g in &gens {
                    out.push((format!("({expr}) {g} - {g} ({expr})"), "0".into(), e.tag.clone()));
                }
            }
            ExpectKind::Charge { expr } => {
                out.push((expr.clone(), "s".into(), e.tag.clone()));
            }
            ExpectKind::Commute { exprs, letters } => {
                for x in exprs {
                    for g in letters {
                        out.push((format!("{x} {g} - {g} {x}"), "0".into(), e.tag.clone()));
                    }
                }
            }
        }
    }
    out
}
