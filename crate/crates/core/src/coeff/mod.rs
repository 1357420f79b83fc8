//! Exact arithmetic in the rational function field `Q(q, eta)`.
//!
//! A [`Scalar`] is a reduced fraction of two [`ParamPoly`]s. The
//! denominator's trailing term (smallest exponent) carries a positive
//! coefficient and numerator and denominator are coprime over `Z[q, eta]`,
//! so two scalars are equal exactly when their representations are.

mod dense;
mod display;
mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub use poly::{Exp, ParamPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: ParamPoly,
    den: ParamPoly,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to `a` and `b`; division by zero is an error.
pub fn scalar_arith(op: ArithOp, a: &Scalar, b: &Scalar) -> Result<Scalar> {
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Sub => Ok(a.sub(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.div(b),
    }
}

/// Reduces `num/den` to canonical form.
pub fn canonicalize(num: ParamPoly, den: ParamPoly) -> Result<Scalar> {
    Scalar::from_parts(num, den)
}

/// Exact value of `s` at `q = q0`, `eta = eta0`.
pub fn eval_at(s: &Scalar, q0: &BigRational, eta0: &BigRational) -> Result<BigRational> {
    s.eval(q0, eta0)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(ParamPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(ParamPoly::constant(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_poly(ParamPoly::constant(n))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        Scalar {
            num: p,
            den: ParamPoly::one(),
        }
    }

    pub fn q() -> Self {
        Self::from_poly(ParamPoly::q())
    }

    pub fn eta() -> Self {
        Self::from_poly(ParamPoly::eta())
    }

    /// `q^n` for any integer `n`.
    pub fn q_pow(n: i32) -> Self {
        Self::param_pow(Exp::new(n.unsigned_abs(), 0), n < 0)
    }

    /// `eta^n` for any integer `n`.
    pub fn eta_pow(n: i32) -> Self {
        Self::param_pow(Exp::new(0, n.unsigned_abs()), n < 0)
    }

    fn param_pow(e: Exp, negative: bool) -> Self {
        let m = ParamPoly::monomial(1, e);
        if negative {
            Scalar {
                num: ParamPoly::one(),
                den: m,
            }
        } else {
            Self::from_poly(m)
        }
    }

    pub fn from_parts(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        if den.trailing().is_some_and(|(_, c)| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        Ok(Scalar { num, den })
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True if the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        self.num.trailing().is_some_and(|(_, c)| c.is_negative())
    }

    /// Integer value, if the scalar is an integer constant.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        if other.den.is_one() {
            // gcd(a + c b, b) = gcd(a, b) = 1
            return Scalar {
                num: self.num.add(&other.num.mul(&self.den)),
                den: self.den.clone(),
            };
        }
        if self.den.is_one() {
            return other.add(self);
        }
        if self.den == other.den {
            return Self::from_parts(self.num.add(&other.num), self.den.clone())
                .expect("nonzero denominator");
        }
        Self::from_parts(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominator")
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
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        // cross-cancel: the result of (a/g1)(c/g2) / ((b/g2)(d/g1)) is already reduced
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = other.den.exact_div(&g1).expect("gcd divides");
        let c = other.num.exact_div(&g2).expect("gcd divides");
        let b = self.den.exact_div(&g2).expect("gcd divides");
        let (mut num, mut den) = (a.mul(&c), b.mul(&d));
        if den.trailing().is_some_and(|(_, c)| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.trailing().is_some_and(|(_, c)| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        Ok(Scalar { num, den })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        Ok(Scalar {
            num: base.num.pow(n.unsigned_abs()),
            den: base.den.pow(n.unsigned_abs()),
        })
    }

    pub fn eval(&self, q0: &BigRational, eta0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q0, eta0);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(q0, eta0) / d)
    }

    /// Rational number value, if the scalar does not depend on `q` or `eta`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let d = self.den.as_constant()?;
        let n = if self.num.is_zero() {
            BigInt::zero()
        } else {
            self.num.as_constant()?.clone()
        };
        Some(BigRational::new(n, d.clone()))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display::scalar_to_string(self))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn add_over_common_denominator() {
        // 1/(q-1) + 1/(q+1) = 2q/(q^2-1), by hand expansion
        let a = int(1).div(&q().sub(&int(1))).unwrap();
        let b = int(1).div(&q().add(&int(1))).unwrap();
        let expected = int(2)
            .mul(&q())
            .div(&q().mul(&q()).sub(&int(1)))
            .unwrap();
        assert_eq!(a.add(&b), expected);
    }

    #[test]
    fn cancellation_to_one() {
        let a = q().sub(&int(1));
        let b = int(1).div(&q().sub(&int(1))).unwrap();
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn canonicalize_examples() {
        let qp = ParamPoly::q;
        let one = ParamPoly::one;
        let s = canonicalize(qp().mul(&qp()).sub(&one()), qp().sub(&one())).unwrap();
        assert_eq!(s, Scalar::from_poly(qp().add(&one())));

        let z = canonicalize(ParamPoly::zero(), ParamPoly::eta()).unwrap();
        assert!(z.is_zero());
        assert!(z.denom().is_one());

        let two = ParamPoly::constant(2);
        let s = canonicalize(two.mul(&qp()).mul(&qp()), two.mul(&qp())).unwrap();
        assert_eq!(s, q());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let s = canonicalize(
            ParamPoly::constant(-6).mul(&ParamPoly::q()),
            ParamPoly::constant(4).sub(&ParamPoly::q().scale(&4.into())),
        )
        .unwrap();
        let again = canonicalize(s.numer().clone(), s.denom().clone()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn zero_denominator_and_division_errors() {
        assert_eq!(
            canonicalize(ParamPoly::one(), ParamPoly::zero()),
            Err(Error::ZeroDenominator)
        );
        assert_eq!(
            scalar_arith(ArithOp::Div, &q(), &Scalar::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn evaluation_examples() {
        let s = int(1).div(&q().sub(&int(1))).unwrap();
        assert_eq!(eval_at(&s, &rat(3, 1), &rat(1, 1)).unwrap(), rat(1, 2));
        let t = int(2)
            .mul(&q())
            .div(&q().mul(&q()).sub(&int(1)))
            .unwrap();
        assert_eq!(eval_at(&t, &rat(2, 1), &rat(1, 1)).unwrap(), rat(4, 3));
        assert_eq!(eval_at(&s, &rat(1, 1), &rat(1, 1)), Err(Error::Pole));
    }

    #[test]
    fn negative_parameter_powers() {
        assert!(Scalar::q_pow(-2).mul(&Scalar::q_pow(2)).is_one());
        assert_eq!(Scalar::eta_pow(-1).inv().unwrap(), Scalar::eta());
        assert_eq!(q().pow(-1).unwrap(), Scalar::q_pow(-1));
    }
}
