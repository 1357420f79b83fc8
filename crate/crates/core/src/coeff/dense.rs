//! Dense recursive polynomials used for gcd computation.
//!
//! A bivariate polynomial in `q, eta` is viewed as `UPoly<UPoly<BigInt>>`:
//! univariate in `q` with coefficients in `Z[eta]`. The gcd is the
//! primitive polynomial remainder sequence applied at both levels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait GcdDomain: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient; `None` when `other` does not divide `self`.
    fn exact_div(&self, other: &Self) -> Option<Self>;
    /// Unit-normalized gcd.
    fn gcd(&self, other: &Self) -> Self;
    /// Sign of the leading coefficient at the innermost level.
    fn lead_sign(&self) -> i8;

    fn normalized(self) -> Self {
        if self.lead_sign() < 0 {
            self.neg()
        } else {
            self
        }
    }
}

impl GcdDomain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (quo, rem) = self.div_rem(other);
        Zero::is_zero(&rem).then_some(quo)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn lead_sign(&self) -> i8 {
        if self.is_negative() {
            -1
        } else if Zero::is_zero(self) {
            0
        } else {
            1
        }
    }
}

/// Dense univariate polynomial; `coeffs[i]` multiplies `x^i`. No trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub(crate) struct UPoly<R> {
    pub coeffs: Vec<R>,
}

impl<R: GcdDomain> UPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &R {
        self.coeffs.last().expect("nonzero polynomial")
    }

    fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    fn shift_scale(&self, shift: usize, c: &R) -> Self {
        let mut coeffs = vec![R::zero(); shift];
        coeffs.extend(self.coeffs.iter().map(|x| x.mul(c)));
        Self::new(coeffs)
    }

    pub fn content(&self) -> R {
        let mut g = R::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g == R::one() {
                break;
            }
        }
        g
    }

    fn div_coeffs(&self, c: &R) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|x| x.exact_div(c).expect("content divides every coefficient"))
                .collect(),
        )
    }

    pub fn primitive_part(&self) -> Self {
        if GcdDomain::is_zero(self) {
            return self.clone();
        }
        let c = self.content();
        self.div_coeffs(&c).normalized()
    }

    /// `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("nonzero divisor");
        let lb = b.lead().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead().clone();
            r = r.scale(&lb).sub(&b.shift_scale(dr - db, &lr));
        }
        r
    }
}

impl<R: GcdDomain> GcdDomain for UPoly<R> {
    fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        UPoly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = R::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs
                        .get(i)
                        .unwrap_or(&zero)
                        .add(other.coeffs.get(i).unwrap_or(&zero))
                })
                .collect(),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if GcdDomain::is_zero(self) || GcdDomain::is_zero(other) {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }
    fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        let db = other.degree()?;
        if GcdDomain::is_zero(self) {
            return Some(Self::zero());
        }
        let lb = other.lead().clone();
        let mut r = self.clone();
        let mut quo = vec![R::zero(); self.coeffs.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let t = r.lead().exact_div(&lb)?;
            quo[dr - db] = t.clone();
            r = r.sub(&other.shift_scale(dr - db, &t));
        }
        Some(Self::new(quo))
    }
    fn gcd(&self, other: &Self) -> Self {
        if GcdDomain::is_zero(self) {
            return other.clone().normalized();
        }
        if GcdDomain::is_zero(other) {
            return self.clone().normalized();
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.degree() == Some(0) {
                return UPoly::constant(content);
            }
            let r = a.pseudo_rem(&b);
            if GcdDomain::is_zero(&r) {
                break;
            }
            a = b;
            b = r.primitive_part();
        }
        b.scale(&content).normalized()
    }
    fn lead_sign(&self) -> i8 {
        self.coeffs.last().map_or(0, |c| c.lead_sign())
    }
}

pub(crate) type Bivariate = UPoly<UPoly<BigInt>>;
