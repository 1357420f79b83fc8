use std::collections::BTreeMap;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::ncpoly::{Alphabet, Block, Generator, Letter, NCPoly, OrderKind, TensorPoly, Word};
use crate::rewrite::{Presentation, Rule};

use super::expr::{parse_expr_in, parse_scalar, parse_tensor, parse_word, Span};
use super::printer;

/// Declarations read from an `.alg`, `.tbl` or `.map` file, in file order.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub order: Option<OrderKind>,
    pub gens: Vec<Generator>,
    pub rules: Vec<Rule>,
    pub cop: Vec<(Letter, TensorPoly)>,
    pub counit: Vec<(Letter, Scalar)>,
    pub antipode: Vec<(Letter, NCPoly)>,
    pub act: Vec<(Letter, Letter, NCPoly)>,
    pub map: Vec<(Letter, NCPoly)>,
    pub rel: Vec<(NCPoly, NCPoly)>,
    /// Alphabet used to parse the expressions: `base` merged with `gens`.
    pub alphabet: Alphabet,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits `head -> body`, returning the body's column offset.
fn arrow(line_no: usize, s: &str, offset: usize) -> Result<(&str, &str, usize)> {
    let at = s
        .find("->")
        .ok_or_else(|| syntax(line_no, offset + 1, "expected `->`"))?;
    Ok((s[..at].trim(), &s[at + 2..], offset + at + 2))
}

fn gen_line(line_no: usize, rest: &str) -> Result<Generator> {
    let mut parts = rest.split_whitespace();
    let name = parts
        .next()
        .ok_or_else(|| syntax(line_no, 5, "expected a generator name"))?;
    let (mut block, mut prec, mut inv, mut tier) = (None, None, None, None);
    for kv in parts {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| syntax(line_no, 1, format!("expected key=value, found `{kv}`")))?;
        let bad = |what: &str| syntax(line_no, 1, format!("bad {what} `{v}`"));
        match k {
            "block" => block = Some(v.parse::<Block>().map_err(|_| bad("block"))?),
            "prec" => prec = Some(v.parse::<i64>().map_err(|_| bad("precedence"))?),
            "inv" => inv = Some(v.to_string()),
            "tier" => tier = Some(v.parse::<i32>().map_err(|_| bad("tier"))?),
            _ => return Err(syntax(line_no, 1, format!("unknown attribute `{k}`"))),
        }
    }
    let block = block.ok_or_else(|| syntax(line_no, 1, "missing block="))?;
    let prec = prec.ok_or_else(|| syntax(line_no, 1, "missing prec="))?;
    let mut g = Generator::new(name, block, prec);
    if let Some(inv) = inv {
        g = g.with_inverse(&inv);
    }
    if let Some(t) = tier {
        g = g.with_tier(t);
    }
    Ok(g)
}

/// Strips a `#` comment.
pub fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

/// Parses one declaration file. Expressions may use letters of `base`.
pub fn parse_document(text: &str, base: &Alphabet) -> Result<Document> {
    let mut doc = Document::default();
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    for &(n, line) in &lines {
        let t = line.trim_start();
        if let Some(rest) = t.strip_prefix("gen ") {
            doc.gens.push(gen_line(n, rest)?);
        }
    }
    let own = Alphabet::new(doc.gens.clone()).map_err(|e| syntax(1, 1, e.to_string()))?;
    doc.alphabet = base.merge(&own)?;
    let alpha = doc.alphabet.clone();
    let env = Default::default();
    for &(n, line) in &lines {
        let indent = line.len() - line.trim_start().len();
        let t = line.trim();
        let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        let off = indent + kw.len() + 1;
        let expr = |s: &str, col: usize| parse_expr_in(s, &alpha, &env, Span::new(n, col));
        let letter = |s: &str| -> Result<Letter> {
            alpha
                .by_name(s.trim())
                .map(|g| g.letter)
                .ok_or_else(|| Error::UnknownGenerator(s.trim().to_string()))
        };
        match kw {
            "gen" => {}
            "order" => doc.order = Some(rest.trim().parse()?),
            "rule" => {
                let (lhs, rhs, col) = arrow(n, rest, off)?;
                let lhs = parse_word(lhs, &alpha, Span::new(n, off))?;
                doc.rules.push(Rule::new(lhs, expr(rhs, col)?));
            }
            "cop" => {
                let (g, rhs, col) = arrow(n, rest, off)?;
                doc.cop.push((letter(g)?, parse_tensor(rhs, &alpha, Span::new(n, col))?));
            }
            "counit" => {
                let (g, rhs, col) = arrow(n, rest, off)?;
                doc.counit.push((letter(g)?, parse_scalar(rhs, Span::new(n, col))?));
            }
            "antipode" => {
                let (g, rhs, col) = arrow(n, rest, off)?;
                doc.antipode.push((letter(g)?, expr(rhs, col)?));
            }
            "act" => {
                let (pair, rhs, col) = arrow(n, rest, off)?;
                let mut it = pair.split_whitespace();
                let (a, h) = match (it.next(), it.next(), it.next()) {
                    (Some(a), Some(h), None) => (letter(a)?, letter(h)?),
                    _ => return Err(syntax(n, off, "expected `act <A-gen> <H-gen> -> ...`")),
                };
                doc.act.push((a, h, expr(rhs, col)?));
            }
            "map" => {
                let (g, rhs, col) = arrow(n, rest, off)?;
                doc.map.push((letter(g)?, expr(rhs, col)?));
            }
            "rel" => {
                let at = rest
                    .find('=')
                    .ok_or_else(|| syntax(n, off, "expected `=`"))?;
                let lhs = expr(&rest[..at], off)?;
                let rhs = expr(&rest[at + 1..], off + at + 1)?;
                doc.rel.push((lhs, rhs));
            }
            other => return Err(syntax(n, indent + 1, format!("unknown declaration `{other}`"))),
        }
    }
    Ok(doc)
}

impl Document {
    /// The presentation declared by this document's own generators and rules.
    pub fn presentation(&self) -> Result<Presentation> {
        let own = Alphabet::new(self.gens.clone())?;
        Presentation::new(own, self.order.unwrap_or(OrderKind::DegLex), self.rules.clone())
    }
}

impl Document {
    /// Hopf data on the generators that have a coproduct, with the rules among them.
    pub fn hopf(&self) -> Result<crate::hopf::HopfData> {
        let own: Vec<Generator> = self
            .gens
            .iter()
            .filter(|g| self.cop.iter().any(|(l, _)| *l == g.letter))
            .cloned()
            .collect();
        if own.is_empty() {
            return Err(Error::invalid("no coproduct declared"));
        }
        let alphabet = Alphabet::new(own)?;
        let rules = self
            .rules
            .iter()
            .filter(|r| r.lhs.iter().chain(r.rhs.letters().collect::<Vec<_>>().iter()).all(|l| alphabet.contains(*l)))
            .cloned()
            .collect();
        let base = Presentation::new(alphabet, self.order.unwrap_or(OrderKind::DegLex), rules)?;
        crate::hopf::HopfData::new(
            base,
            self.cop.iter().cloned(),
            self.counit.iter().cloned(),
            self.antipode.iter().cloned(),
        )
    }
}

fn gen_decl(g: &Generator) -> String {
    let mut s = format!("gen {} block={} prec={}", g.name(), g.block, g.precedence);
    if let Some(inv) = g.inverse_of {
        s.push_str(&format!(" inv={inv}"));
    }
    if g.tier != g.block.default_tier() {
        s.push_str(&format!(" tier={}", g.tier));
    }
    s
}

/// Serializes a presentation, optionally with Hopf tables, in `.alg` syntax.
pub fn write_presentation(p: &Presentation, hopf: Option<&crate::hopf::HopfData>) -> String {
    let mut out = format!("order {}\n", p.order_kind());
    for g in p.alphabet().sorted() {
        out.push_str(&gen_decl(g));
        out.push('\n');
    }
    for r in p.rules() {
        out.push_str(&format!("rule {}\n", p.format_rule(r)));
    }
    if let Some(h) = hopf {
        let order = p.order();
        for l in h.base().letters() {
            if let Ok(t) = h.coproduct_letter(l) {
                out.push_str(&format!("cop {l} -> {}\n", printer::tensor_to_string(t)));
            }
        }
        for l in h.base().letters() {
            if let Ok(c) = h.counit_letter(l) {
                out.push_str(&format!("counit {l} -> {c}\n"));
            }
        }
        for l in h.base().letters() {
            if let Ok(s) = h.antipode_letter(l) {
                out.push_str(&format!(
                    "antipode {l} -> {}\n",
                    printer::poly_to_string(s, order)
                ));
            }
        }
    }
    out
}

/// Serializes action entries in `.tbl` syntax, sorted by letter names.
pub fn write_action(entries: &BTreeMap<(Letter, Letter), NCPoly>, p: &Presentation) -> String {
    let mut rows: Vec<String> = entries
        .iter()
        .map(|((a, h), e)| format!("act {a} {h} -> {}", p.format_poly(e)))
        .collect();
    rows.sort();
    let mut out = rows.join("\n");
    out.push('\n');
    out
}

pub fn word_list(text: &str, alphabet: &Alphabet) -> Result<Vec<Word>> {
    text.split(',')
        .map(|w| parse_word(w.trim(), alphabet, Span::new(1, 0)))
        .collect()
}
