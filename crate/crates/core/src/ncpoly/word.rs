use std::fmt;
use std::ops::Deref;

use smallvec::SmallVec;

use super::Letter;

/// A finite product of generator letters; the empty word is the unit.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(SmallVec<[Letter; 8]>);

impl Word {
    pub fn unit() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(l: Letter) -> Self {
        let mut v = SmallVec::new();
        v.push(l);
        Word(v)
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    /// Parses space-free names separated by whitespace; for tests and tables.
    pub fn from_names(names: &str) -> Self {
        Word(names.split_whitespace().map(Letter::intern).collect())
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self[..start] + middle + self[end..]`.
    pub fn splice(&self, start: usize, end: usize, middle: &[Letter]) -> Word {
        let mut v: SmallVec<[Letter; 8]> =
            SmallVec::with_capacity(self.0.len() - (end - start) + middle.len());
        v.extend_from_slice(&self.0[..start]);
        v.extend_from_slice(middle);
        v.extend_from_slice(&self.0[end..]);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].iter().copied().collect())
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Writes letters separated by spaces, compressing runs as `x^n`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if j - i > 1 {
                write!(f, "{}^{}", l, j - i)?;
            } else {
                write!(f, "{l}")?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
