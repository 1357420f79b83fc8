use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::format::printer;
use crate::ncpoly::{Alphabet, Block, CompositeOrder, Letter, NCPoly, OrderKind, Word};

use super::reducer::Reducer;
use super::strategy::{self, RewriteStrategy};

/// Default bound on rewrite steps per normal-form call.
pub const DEFAULT_STEP_LIMIT: u64 = 1_000_000;

/// Step limit from `QSMASH_STEP_LIMIT`, falling back to [`DEFAULT_STEP_LIMIT`].
pub fn default_step_limit() -> u64 {
    std::env::var("QSMASH_STEP_LIMIT")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_STEP_LIMIT)
}

/// An oriented relation `lhs -> rhs`.
#[derive(Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

impl Rule {
    pub fn new(lhs: Word, rhs: NCPoly) -> Self {
        Rule { lhs, rhs }
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {:?}", self.lhs, self.rhs)
    }
}

/// Alphabet, word order and rewrite rules; doubles as the algebra object.
#[derive(Clone)]
pub struct Presentation {
    alphabet: Alphabet,
    order: CompositeOrder,
    rules: Vec<Rule>,
    by_first: HashMap<Letter, Vec<usize>>,
    step_limit: u64,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("order", &self.order.kind())
            .field("generators", &self.alphabet.len())
            .field("rules", &self.rules.len())
            .finish()
    }
}

impl Presentation {
    /// Builds a presentation, adding missing inverse-cancellation rules and
    /// rejecting rules that are not admissible under the order.
    pub fn new(alphabet: Alphabet, kind: OrderKind, rules: Vec<Rule>) -> Result<Self> {
        let p = Self::unchecked(alphabet, kind, rules)?;
        for rule in &p.rules {
            if rule.lhs.is_unit() {
                return Err(Error::Inadmissible {
                    rule: p.format_rule(rule),
                    reason: "left-hand side is the unit word".into(),
                });
            }
            for (w, _) in rule.rhs.terms() {
                if let Err(reason) = p.order.decreases_in_context(&rule.lhs, w)? {
                    return Err(Error::Inadmissible {
                        rule: p.format_rule(rule),
                        reason,
                    });
                }
            }
        }
        Ok(p)
    }

    /// Builds a presentation without the admissibility check, for diagnostics.
    pub fn unchecked(alphabet: Alphabet, kind: OrderKind, mut rules: Vec<Rule>) -> Result<Self> {
        for rule in &rules {
            for l in rule.lhs.iter().copied().chain(rule.rhs.letters()) {
                alphabet.require(l)?;
            }
        }
        for g in alphabet.generators() {
            if let Some(inv) = g.inverse_of {
                let lhs = Word::from_letters([g.letter, inv]);
                if !rules.iter().any(|r| r.lhs == lhs) {
                    rules.push(Rule::new(lhs, NCPoly::one()));
                }
            }
        }
        let order = CompositeOrder::new(kind, &alphabet);
        // canonical rule order, so results do not depend on declaration order
        rules.sort_by_cached_key(|r| order.sort_key(&r.lhs).ok());
        let mut by_first: HashMap<Letter, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            if let Some(&first) = r.lhs.first() {
                by_first.entry(first).or_default().push(i);
            }
        }
        Ok(Presentation {
            alphabet,
            order,
            rules,
            by_first,
            step_limit: default_step_limit(),
        })
    }

    pub fn with_step_limit(mut self, limit: u64) -> Self {
        self.step_limit = limit;
        self
    }

    pub fn step_limit(&self) -> u64 {
        self.step_limit
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> &CompositeOrder {
        &self.order
    }

    pub fn order_kind(&self) -> OrderKind {
        self.order.kind()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub(crate) fn rules_starting_with(&self, l: Letter) -> &[usize] {
        self.by_first.get(&l).map_or(&[], |v| v.as_slice())
    }

    pub fn max_lhs_len(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0)
    }

    /// Letters of the given block, ascending precedence.
    pub fn letters_of(&self, block: Block) -> Vec<Letter> {
        self.alphabet.letters_in(|g| g.block == block)
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.alphabet.letters_in(|_| true)
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.alphabet
            .by_name(name)
            .map(|g| g.letter)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Errors if `p` uses a letter outside the alphabet.
    pub fn check_over(&self, p: &NCPoly) -> Result<()> {
        for l in p.letters() {
            self.alphabet.require(l)?;
        }
        Ok(())
    }

    pub fn reducer(&self) -> Reducer<'_> {
        Reducer::new(self, strategy::default_strategy())
    }

    pub fn reducer_with(&self, strategy: &'static dyn RewriteStrategy) -> Reducer<'_> {
        Reducer::new(self, strategy)
    }

    pub fn normal_form(&self, e: &NCPoly) -> Result<NCPoly> {
        self.check_over(e)?;
        self.reducer().reduce(e)
    }

    /// Replaces the rule list, keeping alphabet and order.
    pub fn with_rules(&self, rules: Vec<Rule>) -> Result<Self> {
        Ok(Self::new(self.alphabet.clone(), self.order.kind(), rules)?.with_step_limit(self.step_limit))
    }

    pub fn format_poly(&self, p: &NCPoly) -> String {
        printer::poly_to_string(p, &self.order)
    }

    pub fn format_rule(&self, r: &Rule) -> String {
        format!("{} -> {}", r.lhs, self.format_poly(&r.rhs))
    }
}
