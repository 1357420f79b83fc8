use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense::{Bivariate, UPoly};

/// Exponent pair of a monomial `q^q * eta^eta`. Ordered lexicographically, `q` first.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exp {
    pub q: u32,
    pub eta: u32,
}

impl Exp {
    pub const ZERO: Exp = Exp { q: 0, eta: 0 };

    pub fn new(q: u32, eta: u32) -> Self {
        Exp { q, eta }
    }

    fn add(self, other: Exp) -> Exp {
        Exp::new(self.q + other.q, self.eta + other.eta)
    }

    fn checked_sub(self, other: Exp) -> Option<Exp> {
        Some(Exp::new(
            self.q.checked_sub(other.q)?,
            self.eta.checked_sub(other.eta)?,
        ))
    }

    fn min(self, other: Exp) -> Exp {
        Exp::new(self.q.min(other.q), self.eta.min(other.eta))
    }
}

/// Polynomial in the central parameters `q`, `eta` with integer coefficients.
///
/// Terms are kept sorted by exponent with no zero coefficients, so derived
/// equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    terms: Vec<(Exp, BigInt)>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, Exp::ZERO)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: Exp) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            ParamPoly {
                terms: vec![(exp, c)],
            }
        }
    }

    pub fn q() -> Self {
        Self::monomial(1, Exp::new(1, 0))
    }

    pub fn eta() -> Self {
        Self::monomial(1, Exp::new(0, 1))
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms(iter: impl IntoIterator<Item = (Exp, BigInt)>) -> Self {
        let mut terms: Vec<(Exp, BigInt)> = iter.into_iter().collect();
        terms.sort_by_key(|a| a.0);
        let mut out: Vec<(Exp, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        ParamPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Exp, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Exp::ZERO && self.terms[0].1.is_one()
    }

    /// Single term (including nonzero constants).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn as_constant(&self) -> Option<&BigInt> {
        match self.terms.as_slice() {
            [(e, c)] if *e == Exp::ZERO => Some(c),
            _ => None,
        }
    }

    /// Term with the smallest exponent; the normalization anchor for fractions.
    pub fn trailing(&self) -> Option<&(Exp, BigInt)> {
        self.terms.first()
    }

    pub fn leading(&self) -> Option<&(Exp, BigInt)> {
        self.terms.last()
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*ea, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        ParamPoly { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if let [(e, c)] = self.terms.as_slice() {
            return other.mul_monomial(c, *e);
        }
        if let [(e, c)] = other.terms.as_slice() {
            return self.mul_monomial(c, *e);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                prods.push((ea.add(*eb), ca * cb));
            }
        }
        Self::from_terms(prods)
    }

    fn mul_monomial(&self, c: &BigInt, e: Exp) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(te, tc)| (te.add(e), tc * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.mul_monomial(c, Exp::ZERO)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Integer content (gcd of coefficients), non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = num_integer::Integer::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exp(&self) -> Exp {
        self.terms
            .iter()
            .map(|(e, _)| *e)
            .reduce(Exp::min)
            .unwrap_or(Exp::ZERO)
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if divisor.is_one() {
            return Some(self.clone());
        }
        if let [(e, c)] = divisor.terms.as_slice() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (te, tc) in &self.terms {
                let ne = te.checked_sub(*e)?;
                let (quo, rem) = num_integer::Integer::div_rem(tc, c);
                if !rem.is_zero() {
                    return None;
                }
                terms.push((ne, quo));
            }
            return Some(ParamPoly { terms });
        }
        let (le, lc) = divisor.leading().expect("nonzero").clone();
        let mut rem = self.clone();
        let mut quo = Vec::new();
        while let Some((re, rc)) = rem.leading().cloned() {
            let e = re.checked_sub(le)?;
            let (c, r) = num_integer::Integer::div_rem(&rc, &lc);
            if !r.is_zero() {
                return None;
            }
            rem = rem.sub(&divisor.mul_monomial(&c, e));
            quo.push((e, c));
        }
        Some(Self::from_terms(quo))
    }

    /// Greatest common divisor over `Z[q, eta]`, with positive trailing coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        if self.is_monomial() || other.is_monomial() {
            let c = num_integer::Integer::gcd(&self.content(), &other.content());
            return Self::monomial(c, self.min_exp().min(other.min_exp()));
        }
        let (ma, mb) = (self.min_exp(), other.min_exp());
        let a = self.exact_div(&Self::monomial(1, ma)).expect("monomial factor");
        let b = other.exact_div(&Self::monomial(1, mb)).expect("monomial factor");
        let mono = Self::monomial(1, ma.min(mb));
        let g = if a.is_monomial() || b.is_monomial() {
            Self::constant(num_integer::Integer::gcd(&a.content(), &b.content()))
        } else {
            Self::from_dense(&super::dense::GcdDomain::gcd(&a.to_dense(), &b.to_dense()))
        };
        g.mul(&mono).normalize_sign()
    }

    /// Negates if the trailing coefficient is negative.
    pub fn normalize_sign(&self) -> Self {
        match self.trailing() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, q0: &BigRational, eta0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += BigRational::from(c.clone()) * pow_rat(q0, e.q) * pow_rat(eta0, e.eta);
        }
        acc
    }

    pub(crate) fn to_dense(&self) -> Bivariate {
        let dq = self.terms.iter().map(|(e, _)| e.q).max().unwrap_or(0) as usize;
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); dq + 1];
        for (e, c) in &self.terms {
            let row = &mut rows[e.q as usize];
            if row.len() <= e.eta as usize {
                row.resize(e.eta as usize + 1, BigInt::zero());
            }
            row[e.eta as usize] = c.clone();
        }
        UPoly::new(rows.into_iter().map(UPoly::new).collect())
    }

    pub(crate) fn from_dense(d: &Bivariate) -> Self {
        let mut terms = Vec::new();
        for (i, row) in d.coeffs.iter().enumerate() {
            for (j, c) in row.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    terms.push((Exp::new(i as u32, j as u32), c.clone()));
                }
            }
        }
        ParamPoly { terms }
    }
}

fn pow_rat(x: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::display::poly_to_string(self, Exp::ZERO))
    }
}
