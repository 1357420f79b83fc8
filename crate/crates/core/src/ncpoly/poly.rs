use std::collections::BTreeMap;

use crate::coeff::Scalar;

use super::{Letter, Word};

/// Finite linear combination of words with [`Scalar`] coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        Self::word(Word::unit())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::monomial(c, Word::unit())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(Scalar::one(), w)
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(Word::letter(l))
    }

    pub fn monomial(c: Scalar, w: Word) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The scalar value if the polynomial lives in `Q(q, eta) * 1`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::unit()).cloned(),
            _ => None,
        }
    }

    /// The single word if the polynomial is exactly `c * w`.
    pub fn as_monomial(&self) -> Option<(&Word, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.terms.keys().flat_map(|w| w.iter().copied())
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &NCPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d.mul(c));
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d.mul(c))).collect(),
        }
    }

    /// Bilinear concatenation product; no relations are applied.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.mul(b));
            }
        }
        out
    }

    /// `self * w` for a single word.
    pub fn mul_word_right(&self, w: &Word) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(u, a)| (u.concat(w), a.clone()))
                .collect(),
        }
    }

    /// `w * self` for a single word.
    pub fn mul_word_left(&self, w: &Word) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(u, a)| (w.concat(u), a.clone()))
                .collect(),
        }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &NCPoly) -> NCPoly {
        self.mul(other).sub(&other.mul(self))
    }

    /// Applies a letter substitution multiplicatively.
    pub fn substitute(&self, f: &mut impl FnMut(Letter) -> NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NCPoly::scalar(c.clone());
            for &l in w.iter() {
                acc = acc.mul(&f(l));
            }
            out.add_scaled(&acc, &Scalar::one());
        }
        out
    }
}

impl std::fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c}) {w}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
