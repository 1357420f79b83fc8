use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{LazyLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An interned generator symbol.
///
/// Symbols are process-global, so words built over different alphabets can be
/// concatenated without re-indexing; alphabets decide which letters are legal.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

struct Interner {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

static INTERNER: LazyLock<RwLock<Interner>> = LazyLock::new(|| {
    RwLock::new(Interner {
        names: Vec::new(),
        ids: HashMap::new(),
    })
});

impl Letter {
    pub fn intern(name: &str) -> Letter {
        if let Some(&id) = INTERNER.read().expect("interner lock").ids.get(name) {
            return Letter(id);
        }
        let mut guard = INTERNER.write().expect("interner lock");
        if let Some(&id) = guard.ids.get(name) {
            return Letter(id);
        }
        let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
        let id = guard.names.len() as u32;
        guard.names.push(leaked);
        guard.ids.insert(leaked, id);
        Letter(id)
    }

    pub fn name(self) -> &'static str {
        INTERNER.read().expect("interner lock").names[self.0 as usize]
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Tensor factor a generator belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    H,
    A,
    A1,
    A2,
}

impl Block {
    /// Default normal-ordering tier: lower tiers sort to the left.
    pub fn default_tier(self) -> i32 {
        match self {
            Block::H => 0,
            Block::A | Block::A1 => 1,
            Block::A2 => 2,
        }
    }

    /// Every block except `H` belongs to the module-algebra family.
    pub fn is_algebra_family(self) -> bool {
        self != Block::H
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Block::H => "H",
            Block::A => "A",
            Block::A1 => "A1",
            Block::A2 => "A2",
        };
        f.write_str(s)
    }
}

impl FromStr for Block {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" => Ok(Block::H),
            "A" => Ok(Block::A),
            "A1" => Ok(Block::A1),
            "A2" => Ok(Block::A2),
            other => Err(Error::invalid(format!("unknown block `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub letter: Letter,
    pub block: Block,
    pub precedence: i64,
    /// Position in the normal ordering of blocks; see [`Block::default_tier`].
    pub tier: i32,
    pub inverse_of: Option<Letter>,
}

impl Generator {
    pub fn new(name: &str, block: Block, precedence: i64) -> Self {
        Generator {
            letter: Letter::intern(name),
            block,
            precedence,
            tier: block.default_tier(),
            inverse_of: None,
        }
    }

    pub fn with_inverse(mut self, inverse: &str) -> Self {
        self.inverse_of = Some(Letter::intern(inverse));
        self
    }

    pub fn with_tier(mut self, tier: i32) -> Self {
        self.tier = tier;
        self
    }

    pub fn name(&self) -> &'static str {
        self.letter.name()
    }
}

/// Ordered set of generators with unique names and precedences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    gens: Vec<Generator>,
    index: HashMap<Letter, usize>,
}

impl Alphabet {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        let mut alphabet = Alphabet::default();
        for g in gens {
            alphabet.push(g)?;
        }
        alphabet.validate_inverses()?;
        Ok(alphabet)
    }

    fn push(&mut self, g: Generator) -> Result<()> {
        if self.index.contains_key(&g.letter) {
            return Err(Error::invalid(format!("duplicate generator `{}`", g.name())));
        }
        if let Some(other) = self.gens.iter().find(|o| o.precedence == g.precedence) {
            return Err(Error::invalid(format!(
                "generators `{}` and `{}` share precedence {}",
                other.name(),
                g.name(),
                g.precedence
            )));
        }
        self.index.insert(g.letter, self.gens.len());
        self.gens.push(g);
        Ok(())
    }

    fn validate_inverses(&self) -> Result<()> {
        for g in &self.gens {
            if let Some(inv) = g.inverse_of {
                let partner = self.get(inv).ok_or_else(|| {
                    Error::invalid(format!("inverse `{inv}` of `{}` is not declared", g.name()))
                })?;
                if partner.inverse_of != Some(g.letter) {
                    return Err(Error::invalid(format!(
                        "inverse declaration of `{}` and `{inv}` is not symmetric",
                        g.name()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Union of two alphabets; letters present in both must agree.
    pub fn merge(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut gens = self.gens.clone();
        for g in &other.gens {
            match self.get(g.letter) {
                Some(existing) if existing == g => {}
                Some(_) => {
                    return Err(Error::invalid(format!(
                        "conflicting declarations of `{}`",
                        g.name()
                    )))
                }
                None => gens.push(g.clone()),
            }
        }
        Alphabet::new(gens)
    }

    pub fn get(&self, l: Letter) -> Option<&Generator> {
        self.index.get(&l).map(|&i| &self.gens[i])
    }

    pub fn require(&self, l: Letter) -> Result<&Generator> {
        self.get(l)
            .ok_or_else(|| Error::UnknownGenerator(l.name().to_string()))
    }

    pub fn by_name(&self, name: &str) -> Option<&Generator> {
        self.gens.iter().find(|g| g.name() == name)
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.index.contains_key(&l)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// Generators sorted by ascending precedence.
    pub fn sorted(&self) -> Vec<&Generator> {
        let mut v: Vec<&Generator> = self.gens.iter().collect();
        v.sort_by_key(|g| g.precedence);
        v
    }

    pub fn letters_in(&self, pred: impl Fn(&Generator) -> bool) -> Vec<Letter> {
        self.sorted()
            .into_iter()
            .filter(|g| pred(g))
            .map(|g| g.letter)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}
