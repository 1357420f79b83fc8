use std::collections::BTreeMap;

use crate::coeff::Scalar;

use super::{NCPoly, Word};

/// Element of the `N`-fold tensor power of the free algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor<const N: usize> {
    terms: BTreeMap<[Word; N], Scalar>,
}

/// Two-slot tensors, e.g. coproducts.
pub type TensorPoly = Tensor<2>;

impl<const N: usize> Default for Tensor<N> {
    fn default() -> Self {
        Tensor {
            terms: BTreeMap::new(),
        }
    }
}

impl<const N: usize> Tensor<N> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Scalar::one(), std::array::from_fn(|_| Word::unit()))
    }

    pub fn monomial(c: Scalar, slots: [Word; N]) -> Self {
        let mut t = Self::zero();
        t.add_term(slots, c);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Word; N], &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, slots: [Word; N], c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(slots) {
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

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        for (k, d) in &other.terms {
            self.add_term(k.clone(), d.mul(c));
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Slotwise product `(u_i) * (v_i) = (u_i v_i)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let slots: [Word; N] = std::array::from_fn(|i| a[i].concat(&b[i]));
                out.add_term(slots, ca.mul(cb));
            }
        }
        out
    }

    /// Expands `p_0 (x) p_1 (x) ...` into a tensor.
    pub fn from_factors(factors: [&NCPoly; N]) -> Self {
        let mut out = Self::one();
        for (slot, p) in factors.iter().enumerate() {
            let mut next = Self::zero();
            for (k, c) in &out.terms {
                for (w, d) in p.terms() {
                    let mut key = k.clone();
                    key[slot] = key[slot].concat(w);
                    next.add_term(key, c.mul(d));
                }
            }
            out = next;
        }
        out
    }

    /// Applies a linear map to one slot.
    pub fn map_slot(&self, slot: usize, f: &mut impl FnMut(&Word) -> NCPoly) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            for (w, d) in f(&k[slot]).terms() {
                let mut key = k.clone();
                key[slot] = w.clone();
                out.add_term(key, c.mul(d));
            }
        }
        out
    }
}

impl Tensor<2> {
    /// Multiplication map `u (x) v -> u v`.
    pub fn multiply_out(&self) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|([u, v], c)| (u.concat(v), c.clone())))
    }
}

impl<const N: usize> std::fmt::Debug for Tensor<N> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let slots: Vec<String> = k.iter().map(|w| w.to_string()).collect();
                format!("({c}) {}", slots.join("(x)"))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_names(s)
    }

    fn one() -> Scalar {
        Scalar::one()
    }

    #[test]
    fn slotwise_product() {
        let dk = TensorPoly::monomial(one(), [w("K"), w("K")]);
        assert_eq!(dk.mul(&dk), TensorPoly::monomial(one(), [w("K K"), w("K K")]));
        assert_eq!(TensorPoly::one().mul(&dk), dk);

        let mut de = TensorPoly::monomial(one(), [w("E+"), w("K")]);
        de.add_term([w(""), w("E+")], one());
        let mut expected = TensorPoly::monomial(one(), [w("E+ K"), w("K K")]);
        expected.add_term([w("K"), w("E+ K")], one());
        assert_eq!(de.mul(&dk), expected);
    }
}
