use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{Alphabet, Block, Letter, Word};

/// One component of a composite word order.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OrderKey {
    /// Number of `H`-block letters.
    HLetterCount,
    /// Number of letter pairs standing in the wrong tier order (higher tier left of lower).
    Misordering,
    Length,
    LexByPrecedence,
}

/// Named key sequences accepted by presentation files.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Cross,
    DegLex,
}

impl OrderKind {
    pub fn keys(self) -> Vec<OrderKey> {
        match self {
            OrderKind::Cross => vec![
                OrderKey::HLetterCount,
                OrderKey::Misordering,
                OrderKey::Length,
                OrderKey::LexByPrecedence,
            ],
            OrderKind::DegLex => vec![OrderKey::Length, OrderKey::LexByPrecedence],
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Cross => "cross",
            OrderKind::DegLex => "deglex",
        })
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cross" => Ok(OrderKind::Cross),
            "deglex" => Ok(OrderKind::DegLex),
            other => Err(Error::invalid(format!("unknown order `{other}`"))),
        }
    }
}

#[derive(Copy, Clone, Debug)]
struct LetterInfo {
    precedence: i64,
    tier: i32,
    is_h: bool,
}

/// Strict total order on words built from a list of keys, compared in turn.
#[derive(Clone, Debug)]
pub struct CompositeOrder {
    kind: OrderKind,
    keys: Vec<OrderKey>,
    info: HashMap<Letter, LetterInfo>,
}

/// Precomputed comparison key; `Ord` on it agrees with [`CompositeOrder::compare`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SortKey(Vec<i64>);

impl CompositeOrder {
    pub fn new(kind: OrderKind, alphabet: &Alphabet) -> Self {
        let info = alphabet
            .generators()
            .iter()
            .map(|g| {
                (
                    g.letter,
                    LetterInfo {
                        precedence: g.precedence,
                        tier: g.tier,
                        is_h: g.block == Block::H,
                    },
                )
            })
            .collect();
        CompositeOrder {
            kind,
            keys: kind.keys(),
            info,
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn keys(&self) -> &[OrderKey] {
        &self.keys
    }

    fn info(&self, l: Letter) -> Result<LetterInfo> {
        self.info
            .get(&l)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(l.name().to_string()))
    }

    fn h_count(&self, w: &Word) -> Result<i64> {
        let mut n = 0;
        for &l in w.iter() {
            if self.info(l)?.is_h {
                n += 1;
            }
        }
        Ok(n)
    }

    fn misordering(&self, w: &Word) -> Result<i64> {
        // counts of letters seen so far, per tier
        let mut seen: BTreeMap<i32, i64> = BTreeMap::new();
        let mut n = 0;
        for &l in w.iter() {
            let t = self.info(l)?.tier;
            n += seen.range(t + 1..).map(|(_, c)| c).sum::<i64>();
            *seen.entry(t).or_default() += 1;
        }
        Ok(n)
    }

    fn key_value(&self, key: OrderKey, w: &Word) -> Result<i64> {
        match key {
            OrderKey::HLetterCount => self.h_count(w),
            OrderKey::Misordering => self.misordering(w),
            OrderKey::Length => Ok(w.len() as i64),
            OrderKey::LexByPrecedence => unreachable!("lex is not a scalar key"),
        }
    }

    pub fn compare(&self, a: &Word, b: &Word) -> Result<Ordering> {
        for &key in &self.keys {
            let ord = if key == OrderKey::LexByPrecedence {
                self.lex(a, b)?
            } else {
                self.key_value(key, a)?.cmp(&self.key_value(key, b)?)
            };
            if ord != Ordering::Equal {
                return Ok(ord);
            }
        }
        // the keys end in lex, so Equal means identical words
        Ok(Ordering::Equal)
    }

    fn lex(&self, a: &Word, b: &Word) -> Result<Ordering> {
        for (x, y) in a.iter().zip(b.iter()) {
            let ord = self.info(*x)?.precedence.cmp(&self.info(*y)?.precedence);
            if ord != Ordering::Equal {
                return Ok(ord);
            }
        }
        Ok(a.len().cmp(&b.len()))
    }

    pub fn sort_key(&self, w: &Word) -> Result<SortKey> {
        let mut v = Vec::with_capacity(self.keys.len() + w.len() + 1);
        for &key in &self.keys {
            if key == OrderKey::LexByPrecedence {
                for &l in w.iter() {
                    v.push(self.info(l)?.precedence);
                }
                // terminator so prefixes sort first
                v.push(i64::MIN);
            } else {
                v.push(self.key_value(key, w)?);
            }
        }
        Ok(SortKey(v))
    }

    fn tier_counts(&self, w: &Word) -> Result<BTreeMap<i32, i64>> {
        let mut m = BTreeMap::new();
        for &l in w.iter() {
            *m.entry(self.info(l)?.tier).or_default() += 1;
        }
        Ok(m)
    }

    /// Checks that replacing `lhs` by `rhs` lowers the key of `u lhs v` for all
    /// contexts `u, v`, not only for the bare words. Returns the reason on failure.
    pub fn decreases_in_context(&self, lhs: &Word, rhs: &Word) -> Result<std::result::Result<(), String>> {
        if self.compare(rhs, lhs)? != Ordering::Less {
            return Ok(Err(format!("`{rhs}` is not below `{lhs}`")));
        }
        if !self.keys.contains(&OrderKey::Misordering) {
            return Ok(Ok(()));
        }
        if self.keys.first() == Some(&OrderKey::HLetterCount)
            && self.h_count(rhs)? < self.h_count(lhs)?
        {
            return Ok(Ok(()));
        }
        // context terms of the misordering key are sign-definite only when no tier grows
        let (lc, rc) = (self.tier_counts(lhs)?, self.tier_counts(rhs)?);
        for (tier, n) in &rc {
            if *n > lc.get(tier).copied().unwrap_or(0) {
                return Ok(Err(format!(
                    "`{rhs}` has more tier-{tier} letters than `{lhs}`; the order is not stable under concatenation"
                )));
            }
        }
        Ok(Ok(()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::Generator;

    fn alphabet() -> Alphabet {
        Alphabet::new(vec![
            Generator::new("Kinv", Block::H, 0).with_inverse("K"),
            Generator::new("K", Block::H, 1).with_inverse("Kinv"),
            Generator::new("E-", Block::H, 2),
            Generator::new("E+", Block::H, 3),
            Generator::new("p0", Block::A, 7),
            Generator::new("p-", Block::A, 8),
            Generator::new("p+", Block::A, 9),
        ])
        .unwrap()
    }

    fn w(s: &str) -> Word {
        Word::from_names(s)
    }

    #[test]
    fn spec_comparisons() {
        let order = CompositeOrder::new(OrderKind::Cross, &alphabet());
        assert_eq!(order.compare(&w("E+ K"), &w("K E+")).unwrap(), Ordering::Greater);
        assert_eq!(order.compare(&w(""), &w("p0")).unwrap(), Ordering::Less);
        assert_eq!(order.compare(&w("p0 E+"), &w("E+ p0")).unwrap(), Ordering::Greater);
    }

    #[test]
    fn unknown_letter_is_an_error() {
        let order = CompositeOrder::new(OrderKind::DegLex, &alphabet());
        assert!(matches!(
            order.compare(&w("zz"), &w("p0")),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn sort_key_agrees_with_compare() {
        let order = CompositeOrder::new(OrderKind::Cross, &alphabet());
        let words = ["", "K", "p0 E+", "E+ p0", "K K", "E+ E-", "E- E+", "p+ p-", "p0 p0 p0"];
        for a in words {
            for b in words {
                let (a, b) = (w(a), w(b));
                assert_eq!(
                    order.compare(&a, &b).unwrap(),
                    order.sort_key(&a).unwrap().cmp(&order.sort_key(&b).unwrap())
                );
            }
        }
    }

    #[test]
    fn context_stability() {
        let order = CompositeOrder::new(OrderKind::Cross, &alphabet());
        assert!(order.decreases_in_context(&w("p0 E+"), &w("E+ p0")).unwrap().is_ok());
        assert!(order.decreases_in_context(&w("p0 E+"), &w("p-")).unwrap().is_ok());
        // grows the A-letter count while keeping the H count
        assert!(order
            .decreases_in_context(&w("p0 E+"), &w("E+ p0 p0"))
            .unwrap()
            .is_err());
    }
}
