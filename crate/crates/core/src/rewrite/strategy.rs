use std::collections::BTreeMap;
use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::ncpoly::Word;

use super::Presentation;

/// A rule application site: rule index and start position in the word.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub rule: usize,
    pub start: usize,
}

/// Chooses which redex of a word to rewrite next.
pub trait RewriteStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn select(&self, p: &Presentation, w: &Word) -> Option<Redex>;
}

fn matches_at<'a>(p: &'a Presentation, w: &'a Word, start: usize) -> impl Iterator<Item = Redex> + 'a {
    let rest = &w[start..];
    p.rules_starting_with(w[start])
        .iter()
        .copied()
        .filter(move |&i| rest.starts_with(&p.rules()[i].lhs))
        .map(move |rule| Redex { rule, start })
}

/// The redex ending earliest; ties go to the shorter left-hand side.
pub struct LeftmostInnermost;

impl RewriteStrategy for LeftmostInnermost {
    fn name(&self) -> &'static str {
        "leftmost-innermost"
    }

    fn select(&self, p: &Presentation, w: &Word) -> Option<Redex> {
        (0..w.len())
            .flat_map(|s| matches_at(p, w, s))
            .min_by_key(|r| (r.start + p.rules()[r.rule].lhs.len(), r.start))
    }
}

/// The redex starting latest; ties go to the longer left-hand side.
pub struct RightmostOutermost;

impl RewriteStrategy for RightmostOutermost {
    fn name(&self) -> &'static str {
        "rightmost-outermost"
    }

    fn select(&self, p: &Presentation, w: &Word) -> Option<Redex> {
        (0..w.len())
            .rev()
            .find_map(|s| matches_at(p, w, s).max_by_key(|r| p.rules()[r.rule].lhs.len()))
    }
}

static REGISTRY: LazyLock<BTreeMap<&'static str, &'static dyn RewriteStrategy>> =
    LazyLock::new(|| {
        let all: [&'static dyn RewriteStrategy; 2] = [&LeftmostInnermost, &RightmostOutermost];
        all.into_iter().map(|s| (s.name(), s)).collect()
    });

pub fn default_strategy() -> &'static dyn RewriteStrategy {
    &LeftmostInnermost
}

pub fn strategy(name: &str) -> Result<&'static dyn RewriteStrategy> {
    REGISTRY
        .get(name)
        .copied()
        .ok_or_else(|| Error::invalid(format!("unknown rewrite strategy `{name}`")))
}

pub fn strategy_names() -> Vec<&'static str> {
    REGISTRY.keys().copied().collect()
}
