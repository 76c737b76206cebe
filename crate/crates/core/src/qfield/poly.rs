//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored lowest degree first and the vector never carries
//! trailing zeros, so the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub(crate) Vec<BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly(coeffs);
        p.trim();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> &BigInt {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    fn trim(&mut self) {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
    }

    /// Number of leading zero coefficients, i.e. the largest `s` with `x^s | self`.
    pub fn low_zeros(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `x^s`; caller guarantees divisibility.
    pub fn shift_down(&self, s: usize) -> Poly {
        debug_assert!(self.low_zeros() >= s || self.is_zero());
        Poly(self.0.iter().skip(s).cloned().collect())
    }

    pub fn shift_up(&self, s: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); s];
        v.extend(self.0.iter().cloned());
        Poly(v)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = other.0.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(v)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(v)
    }

    /// Exact division by an integer; every coefficient must be divisible.
    pub fn div_exact_int(&self, c: &BigInt) -> Poly {
        Poly(self.0.iter().map(|a| a / c).collect())
    }

    /// gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.div_exact_int(&c)
    }

    /// Pseudo-remainder of `self` by `d`.
    fn prem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo-division by zero");
        let mut r = self.clone();
        let lc = d.lead().clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.lead().clone();
            let shift = rd - dd;
            // r = lc * r - lr * x^shift * d
            let mut v: Vec<BigInt> = r.0.iter().map(|c| c * &lc).collect();
            for (j, c) in d.0.iter().enumerate() {
                v[j + shift] -= &lr * c;
            }
            r = Poly::from_coeffs(v);
        }
        r
    }

    /// Exact division over Z; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Poly::zero();
        }
        let mut r = self.0.clone();
        let sd = self.degree().unwrap();
        assert!(sd >= dd, "inexact polynomial division");
        let mut q = vec![BigInt::zero(); sd - dd + 1];
        let lc = d.lead();
        for k in (0..=sd - dd).rev() {
            let c = &r[k + dd];
            if c.is_zero() {
                continue;
            }
            let (qc, rem) = c.div_rem(lc);
            assert!(rem.is_zero(), "inexact polynomial division");
            for (j, dc) in d.0.iter().enumerate() {
                r[k + j] -= &qc * dc;
            }
            q[k] = qc;
        }
        assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
        Poly::from_coeffs(q)
    }

    /// Primitive gcd (positive leading coefficient, content 1).
    pub fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.primitive();
        let mut b = b.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Poly::one();
            }
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    pub fn eval_rational(
        &self,
        x: &num_rational::BigRational,
    ) -> num_rational::BigRational {
        let mut acc = num_rational::BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + num_rational::BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let mut acc = 0;
        for c in self.0.iter().rev() {
            acc = super::modp::add(super::modp::mul(acc, x, p), super::modp::from_bigint(c, p), p);
        }
        acc
    }
}
