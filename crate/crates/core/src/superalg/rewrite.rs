//! The rewriting rules, applied in three ways: right multiplication of a
//! normal form by one letter at a time, and local rewriting of adjacent
//! pairs starting from the left or from the right.

use std::collections::BTreeMap;

use super::{add_into, Ctx, FreeElement, Letter, Monomial, NormalForm, Word};
use crate::error::Result;
use crate::qfield::QScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Fold letters into a normal form from left to right.
    RightMultiply,
    /// Rewrite the leftmost out-of-order adjacent pair first.
    LeftmostPair,
    /// Rewrite the rightmost out-of-order adjacent pair first.
    RightmostPair,
}

type Terms = BTreeMap<Monomial, QScalar>;

impl Ctx {
    pub fn normalize(&self, x: &FreeElement) -> NormalForm {
        self.normalize_with(x, Strategy::RightMultiply)
    }

    pub fn normalize_with(&self, x: &FreeElement, strategy: Strategy) -> NormalForm {
        let mut out = NormalForm::zero(self);
        match strategy {
            Strategy::RightMultiply => {
                for (w, c) in x.terms() {
                    let mut cur: Terms = BTreeMap::new();
                    cur.insert(Monomial::unit(self.rank()), c.clone());
                    for &l in w {
                        cur = self.rmul_terms(&cur, l, 1);
                    }
                    for (m, c) in cur {
                        add_into(&mut out.terms, m, c);
                    }
                }
            }
            Strategy::LeftmostPair | Strategy::RightmostPair => {
                let leftmost = strategy == Strategy::LeftmostPair;
                let mut work: Vec<(Word, QScalar)> =
                    x.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect();
                while let Some((w, c)) = work.pop() {
                    let pos = if leftmost {
                        (0..w.len().saturating_sub(1)).find(|&p| self.out_of_order(w[p], w[p + 1]))
                    } else {
                        (0..w.len().saturating_sub(1)).rev().find(|&p| self.out_of_order(w[p], w[p + 1]))
                    };
                    match pos {
                        None => add_into(&mut out.terms, self.word_to_monomial(&w), c),
                        Some(p) => {
                            for (mid, k) in self.rewrite_pair(w[p], w[p + 1]) {
                                let mut nw = w[..p].to_vec();
                                nw.extend(mid);
                                nw.extend_from_slice(&w[p + 2..]);
                                work.push((nw, &c * &k));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Product of two normal forms.
    pub fn mul(&self, a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
        a.check(b)?;
        if a.ctx != self.id {
            return Err(crate::error::Error::MixedContext);
        }
        let mut out = NormalForm::zero(self);
        for (m, c) in &b.terms {
            let mut cur = a.terms.clone();
            for &i in &m.f {
                cur = self.rmul_terms(&cur, Letter::F(i), 1);
            }
            for (i, &p) in m.k.iter().enumerate() {
                if p != 0 {
                    cur = self.rmul_terms(&cur, Letter::K(i as u8), p);
                }
            }
            for i in 0..self.rank() {
                if m.s >> i & 1 == 1 {
                    cur = self.rmul_terms(&cur, Letter::S(i as u8), 1);
                }
            }
            for &i in &m.e {
                cur = self.rmul_terms(&cur, Letter::E(i), 1);
            }
            for (mm, cc) in cur {
                add_into(&mut out.terms, mm, &cc * c);
            }
        }
        Ok(out)
    }

    /// Product of normal forms given as free elements; convenience for callers
    /// assembling images letter by letter.
    pub fn mul_all(&self, factors: &[&NormalForm]) -> Result<NormalForm> {
        let mut acc = NormalForm::one(self);
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `σ_i x σ_i`.
    pub fn conjugate_sigma(&self, i: u8, x: &NormalForm) -> NormalForm {
        let mut out = NormalForm::zero(self);
        for (m, c) in &x.terms {
            let flips = m.e.iter().chain(&m.f).filter(|&&j| self.sigma_negates(i, j)).count();
            add_into(&mut out.terms, m.clone(), if flips % 2 == 1 { -c } else { c.clone() });
        }
        out
    }

    /// Multiplies every term on the right by `l^p` (`p` only matters for `K`).
    fn rmul_terms(&self, terms: &Terms, l: Letter, p: i32) -> Terms {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            self.rmul(m, c, l, p, &mut out);
        }
        out
    }

    fn rmul(&self, m: &Monomial, c: &QScalar, l: Letter, p: i32, out: &mut Terms) {
        match l {
            Letter::E(j) => {
                let mut m2 = m.clone();
                m2.e.push(j);
                add_into(out, m2, c.clone());
            }
            Letter::K(i) | Letter::KInv(i) => {
                let a = if matches!(l, Letter::K(_)) { p as i64 } else { -(p as i64) };
                // e_j k_i^a = t^{-a b_ij} k_i^a e_j
                let ex: i64 = -a * m.e.iter().map(|&j| self.b(i, j)).sum::<i64>();
                let mut m2 = m.clone();
                m2.k[i as usize] += a as i32;
                add_into(out, m2, c.times_signed_q_pow(self.sign(), ex));
            }
            Letter::S(i) => {
                let flips = m.e.iter().filter(|&&j| self.sigma_negates(i, j)).count();
                let mut m2 = m.clone();
                m2.s ^= 1 << i;
                add_into(out, m2, if flips % 2 == 1 { -c } else { c.clone() });
            }
            Letter::F(j) => self.rmul_f(m, c, j, out),
        }
    }

    /// Moves `f_j` from the right end of `m` into its f-block.
    fn rmul_f(&self, m: &Monomial, c: &QScalar, j: u8, out: &mut Terms) {
        let odd_j = self.is_odd(j);
        let mut negated = false;
        for l in (0..m.e.len()).rev() {
            let ei = m.e[l];
            if ei == j {
                // e_j f_j contributes (k_j - k_j^{-1}) * cross_j in place of the pair
                let base = if negated { -c } else { c.clone() };
                let base = &base * self.cross_coefficient(j);
                let before: i64 = m.e[..l].iter().map(|&x| self.b(j, x)).sum();
                for a in [1i64, -1] {
                    let mut m2 = m.clone();
                    m2.e.remove(l);
                    m2.k[j as usize] += a as i32;
                    let coef = base.times_signed_q_pow(self.sign(), -a * before);
                    add_into(out, m2, if a < 0 { -coef } else { coef });
                }
            }
            if odd_j && self.is_odd(ei) {
                negated = !negated;
            }
        }
        let sflips = (0..self.rank()).filter(|&i| m.s >> i & 1 == 1 && self.sigma_negates(i as u8, j)).count();
        if sflips % 2 == 1 {
            negated = !negated;
        }
        // k_i^a f_j = t^{-a b_ij} f_j k_i^a
        let ex: i64 = -(0..self.rank()).map(|i| m.k[i] as i64 * self.b(i as u8, j)).sum::<i64>();
        let mut m2 = m.clone();
        m2.f.push(j);
        let coef = c.times_signed_q_pow(self.sign(), ex);
        add_into(out, m2, if negated { -coef } else { coef });
    }

    fn block(l: Letter) -> u8 {
        match l {
            Letter::F(_) => 0,
            Letter::K(_) | Letter::KInv(_) => 1,
            Letter::S(_) => 2,
            Letter::E(_) => 3,
        }
    }

    fn out_of_order(&self, a: Letter, b: Letter) -> bool {
        let (x, y) = (Self::block(a), Self::block(b));
        if x != y {
            return x > y;
        }
        match (a, b) {
            (Letter::K(i) | Letter::KInv(i), Letter::K(j) | Letter::KInv(j)) => {
                i > j || (i == j && std::mem::discriminant(&a) != std::mem::discriminant(&b))
            }
            (Letter::S(i), Letter::S(j)) => i >= j,
            _ => false,
        }
    }

    /// Replacement terms for an out-of-order adjacent pair `a b`.
    fn rewrite_pair(&self, a: Letter, b: Letter) -> Vec<(Word, QScalar)> {
        use Letter::*;
        let one = QScalar::one();
        let sgn = |neg: bool| if neg { -QScalar::one() } else { QScalar::one() };
        match (a, b) {
            (K(i), KInv(j)) | (KInv(i), K(j)) if i == j => vec![(vec![], one)],
            (K(_) | KInv(_), K(_) | KInv(_)) => vec![(vec![b, a], one)],
            (S(i), S(j)) if i == j => vec![(vec![], one)],
            (S(_), S(_)) => vec![(vec![b, a], one)],
            (S(_), K(_) | KInv(_)) => vec![(vec![b, a], one)],
            (E(j), K(i)) => vec![(vec![b, a], self.t_pow(-self.b(i, j)))],
            (E(j), KInv(i)) => vec![(vec![b, a], self.t_pow(self.b(i, j)))],
            (E(j), S(i)) => vec![(vec![b, a], sgn(self.sigma_negates(i, j)))],
            (K(i), F(j)) => vec![(vec![b, a], self.t_pow(-self.b(i, j)))],
            (KInv(i), F(j)) => vec![(vec![b, a], self.t_pow(self.b(i, j)))],
            (S(i), F(j)) => vec![(vec![b, a], sgn(self.sigma_negates(i, j)))],
            (E(i), F(j)) => {
                let mut v = vec![(vec![b, a], sgn(self.is_odd(i) && self.is_odd(j)))];
                if i == j {
                    let x = self.cross_coefficient(i).clone();
                    v.push((vec![K(i)], x.clone()));
                    v.push((vec![KInv(i)], -x));
                }
                v
            }
            _ => unreachable!("pair {a:?} {b:?} is already ordered"),
        }
    }

    fn word_to_monomial(&self, w: &[Letter]) -> Monomial {
        let mut m = Monomial::unit(self.rank());
        for &l in w {
            match l {
                Letter::F(i) => m.f.push(i),
                Letter::K(i) => m.k[i as usize] += 1,
                Letter::KInv(i) => m.k[i as usize] -= 1,
                Letter::S(i) => m.s ^= 1 << i,
                Letter::E(i) => m.e.push(i),
            }
        }
        m
    }
}
