//! Exact coefficients: the field of rational functions in `v` with `v^2 = q`.
//!
//! Every [`QScalar`] is kept in a canonical form
//! `v^shift * num(v) / den(v)` where `den(0) != 0`, `num(0) != 0`,
//! `gcd(num, den) = 1` over `Z[v]` and the leading coefficient of `den` is
//! positive. Two scalars are equal iff their canonical forms are identical,
//! so `==` on the struct is field equality.

mod combinatorics;
mod parse;
pub(crate) mod modp;
pub(crate) mod poly;

pub use combinatorics::{brace, brace_binomial, brace_factorial, bracket, bracket_binomial, bracket_factorial, QCombKind};

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    shift: i32,
    num: Poly,
    den: Poly,
}

/// The four field operations, for callers that dispatch on a tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        QScalar { shift: 0, num: Poly::constant(c), den: Poly::one() }
    }

    /// `c / d` for integers, `d != 0`.
    pub fn from_ratio(c: i64, d: i64) -> Result<Self> {
        Self::from_int(c).checked_div(&Self::from_int(d))
    }

    /// The formal square root `v` of `q`.
    pub fn v() -> Self {
        Self::v_pow(1)
    }

    pub fn q() -> Self {
        Self::v_pow(2)
    }

    pub fn v_pow(e: i64) -> Self {
        let shift = i32::try_from(e).expect("exponent out of range");
        QScalar { shift, num: Poly::one(), den: Poly::one() }
    }

    pub fn q_pow(e: i64) -> Self {
        Self::v_pow(2 * e)
    }

    /// `(sign * q)^e` with `sign = ±1`.
    pub fn signed_q_pow(sign: i32, e: i64) -> Self {
        let base = Self::q_pow(e);
        if sign < 0 && e.rem_euclid(2) == 1 {
            -base
        } else {
            base
        }
    }

    /// Laurent polynomial in `v` from `(exponent, coefficient)` pairs.
    pub fn laurent_v(terms: &[(i32, i64)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, &(e, c)| acc + Self::v_pow(e as i64) * Self::from_int(c))
    }

    /// Laurent polynomial in `q` from `(exponent, coefficient)` pairs.
    pub fn laurent_q(terms: &[(i32, i64)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, &(e, c)| acc + Self::q_pow(e as i64) * Self::from_int(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the scalar is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// True when only even powers of `v` occur, i.e. the scalar lies in Q(q).
    pub fn is_in_q(&self) -> bool {
        let even = |p: &Poly, s: i32| {
            p.coeffs()
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || (i as i32 + s).rem_euclid(2) == 0)
        };
        even(&self.num, self.shift) && even(&self.den, 0)
    }

    /// Rational constant, if the scalar does not depend on `v`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.shift != 0 || self.num.degree() != Some(0) || self.den.degree() != Some(0) {
            return None;
        }
        Some(BigRational::new(self.num.coeffs()[0].clone(), self.den.coeffs()[0].clone()))
    }

    fn from_parts(shift: i32, num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let mut shift = shift;
        let nz = num.low_zeros();
        let num = num.shift_down(nz);
        shift += nz as i32;
        let dz = den.low_zeros();
        let den = den.shift_down(dz);
        shift -= dz as i32;
        let (mut num, mut den) = if den.degree() == Some(0) {
            let c = den.coeffs()[0].clone();
            let g = num_integer::Integer::gcd(&num.content(), &c);
            (num.div_exact_int(&g), den.div_exact_int(&g))
        } else {
            let cg = num_integer::Integer::gcd(&num.content(), &den.content());
            let pg = Poly::gcd_primitive(&num, &den);
            let num = num.div_exact(&pg).div_exact_int(&cg);
            let den = den.div_exact(&pg).div_exact_int(&cg);
            (num, den)
        };
        if den.lead().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        QScalar { shift, num, den }
    }

    pub fn checked_div(&self, rhs: &QScalar) -> Result<QScalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn inv(&self) -> Result<QScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_parts(-self.shift, self.den.clone(), self.num.clone()))
    }

    pub fn arith(&self, rhs: &QScalar, op: ArithOp) -> Result<QScalar> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<QScalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            n >>= 1;
        }
        Ok(acc)
    }

    /// The field endomorphism `q -> -q`, defined on Q(q).
    ///
    /// Scalars with odd powers of `v` are rejected: `q^{1/2}` has no
    /// canonical image.
    pub fn substitute_negate_q(&self) -> Result<QScalar> {
        if !self.is_in_q() {
            return Err(Error::HalfPower(self.to_string()));
        }
        Ok(self.negate_even_powers())
    }

    /// `v -> i v` applied to a scalar whose `v`-exponents are all even.
    fn negate_even_powers(&self) -> QScalar {
        let flip = |p: &Poly, s: i32| {
            Poly::from_coeffs(
                p.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        if (i as i32 + s).rem_euclid(4) == 2 {
                            -c
                        } else {
                            c.clone()
                        }
                    })
                    .collect(),
            )
        };
        Self::from_parts(self.shift, flip(&self.num, self.shift), flip(&self.den, 0))
    }

    /// Evaluates at `v = x`; `None` when the denominator vanishes there.
    pub fn eval_v(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return None;
        }
        if x.is_zero() && self.shift < 0 {
            return None;
        }
        let xs = if self.shift >= 0 {
            num_traits::pow(x.clone(), self.shift as usize)
        } else {
            num_traits::pow(x.clone(), (-self.shift) as usize).recip()
        };
        Some(self.num.eval_rational(x) * xs / d)
    }

    /// Numerator as `(v-exponent, coefficient)` pairs, lowest exponent first.
    pub fn numerator_terms(&self) -> Vec<(i32, BigInt)> {
        poly_terms(&self.num, self.shift)
    }

    pub fn denominator_terms(&self) -> Vec<(i32, BigInt)> {
        poly_terms(&self.den, 0)
    }

    /// `self * (sign * q)^e`, without going through a full multiplication.
    pub fn times_signed_q_pow(&self, sign: i32, e: i64) -> QScalar {
        if self.is_zero() {
            return QScalar::zero();
        }
        let shift = self.shift + i32::try_from(2 * e).expect("exponent out of range");
        let num = if sign < 0 && e.rem_euclid(2) == 1 { self.num.neg() } else { self.num.clone() };
        QScalar { shift, num, den: self.den.clone() }
    }

    /// Image in `Z/p` under `v -> x`; `None` if the denominator vanishes
    /// there. `p` must be below `2^63`.
    pub fn eval_mod(&self, x: u64, p: u64) -> Option<u64> {
        let d = self.den.eval_mod(x, p);
        if d == 0 || (x.is_multiple_of(p) && self.shift < 0) {
            return None;
        }
        let xs = if self.shift >= 0 {
            modp::pow(x, self.shift as u64, p)
        } else {
            modp::inv(modp::pow(x, (-self.shift) as u64, p), p)
        };
        Some(modp::mul(modp::mul(self.num.eval_mod(x, p), xs, p), modp::inv(d, p), p))
    }
}

fn poly_terms(p: &Poly, shift: i32) -> Vec<(i32, BigInt)> {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i32 + shift, c.clone()))
        .collect()
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(rhs.shift);
        let a = self.num.shift_up((self.shift - s) as usize);
        let b = rhs.num.shift_up((rhs.shift - s) as usize);
        if self.den == rhs.den {
            let num = a.add(&b);
            if self.den.is_one() {
                return QScalar::from_parts(s, num, Poly::one());
            }
            return QScalar::from_parts(s, num, self.den.clone());
        }
        let num = a.mul(&rhs.den).add(&b.mul(&self.den));
        QScalar::from_parts(s, num, self.den.mul(&rhs.den))
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        let shift = self.shift + rhs.shift;
        if self.den.is_one() && rhs.den.is_one() {
            let num = self.num.mul(&rhs.num);
            return QScalar { shift, num, den: Poly::one() };
        }
        QScalar::from_parts(shift, self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// Panicking division; use [`QScalar::checked_div`] when the divisor may be zero.
impl Div<QScalar> for QScalar {
    type Output = QScalar;
    fn div(self, rhs: QScalar) -> QScalar {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

fn fmt_laurent(f: &mut fmt::Formatter<'_>, terms: &[(i32, BigInt)], in_q: bool) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (idx, (e, c)) in terms.iter().rev().enumerate() {
        let (var, exp) = if in_q { ("q", e / 2) } else { ("v", *e) };
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        match (exp, abs.is_one()) {
            (0, _) => write!(f, "{abs}")?,
            (_, true) => write!(f, "{var}")?,
            (_, false) => write!(f, "{abs}*{var}")?,
        }
        if exp != 0 && exp != 1 {
            write!(f, "^{exp}")?;
        }
    }
    Ok(())
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let in_q = self.is_in_q();
        let num = self.numerator_terms();
        if self.den.is_one() {
            return fmt_laurent(f, &num, in_q);
        }
        if num.len() > 1 {
            write!(f, "(")?;
            fmt_laurent(f, &num, in_q)?;
            write!(f, ")")?;
        } else {
            fmt_laurent(f, &num, in_q)?;
        }
        write!(f, "/(")?;
        fmt_laurent(f, &self.denominator_terms(), in_q)?;
        write!(f, ")")
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

impl std::str::FromStr for QScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_scalar(s)
    }
}

impl Serialize for QScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
