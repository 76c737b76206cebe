//! Free superalgebra on `e_i, f_i, k_i^{±1}, σ_i`, its triangular normal
//! form in the smash product, and ideal membership for the Serre-type
//! relations.
//!
//! Node indices are positions in the fundamental system, not labels; the
//! context translates between the two for display and parsing.

mod ideal;
mod rewrite;
mod text;

pub use ideal::{ideal_member, CertTerm, Certificate, MemberOptions, Membership, WordPoly};
pub use rewrite::Strategy;

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qfield::QScalar;
use crate::rootdata::{CartanData, FundamentalSystem};

pub type Node = u8;

/// A generator. The derived order puts the blocks in normal-form order
/// `f < k < σ < e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    F(Node),
    K(Node),
    KInv(Node),
    S(Node),
    E(Node),
}

impl Letter {
    pub fn node(self) -> Node {
        match self {
            Letter::F(i) | Letter::K(i) | Letter::KInv(i) | Letter::S(i) | Letter::E(i) => i,
        }
    }
}

pub type Word = Vec<Letter>;

/// Per-node letter counts, split into `e` and `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multidegree {
    pub e: Vec<u32>,
    pub f: Vec<u32>,
}

impl Multidegree {
    pub fn zero(rank: usize) -> Self {
        Multidegree { e: vec![0; rank], f: vec![0; rank] }
    }

    pub fn of_word(rank: usize, w: &[Letter]) -> Self {
        let mut d = Self::zero(rank);
        for l in w {
            match *l {
                Letter::E(i) => d.e[i as usize] += 1,
                Letter::F(i) => d.f[i as usize] += 1,
                _ => {}
            }
        }
        d
    }

    pub fn of_monomial(rank: usize, m: &Monomial) -> Self {
        let mut d = Self::zero(rank);
        for &i in &m.e {
            d.e[i as usize] += 1;
        }
        for &i in &m.f {
            d.f[i as usize] += 1;
        }
        d
    }
}

/// An element of the free algebra: words with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeElement {
    terms: BTreeMap<Word, QScalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(QScalar::one())
    }

    pub fn scalar(c: QScalar) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(vec![l])
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, QScalar::one())
    }

    pub fn term(w: Word, c: QScalar) -> Self {
        let mut x = Self::zero();
        x.add_term(w, c);
        x
    }

    pub fn e(i: Node) -> Self {
        Self::letter(Letter::E(i))
    }

    pub fn f(i: Node) -> Self {
        Self::letter(Letter::F(i))
    }

    pub fn k(i: Node) -> Self {
        Self::letter(Letter::K(i))
    }

    pub fn k_inv(i: Node) -> Self {
        Self::letter(Letter::KInv(i))
    }

    pub fn sigma(i: Node) -> Self {
        Self::letter(Letter::S(i))
    }

    pub fn add_term(&mut self, w: Word, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, QScalar> {
        &self.terms
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

    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FreeElement { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coefficients(&self, f: impl Fn(&QScalar) -> Result<QScalar>) -> Result<Self> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Largest word length, 0 for the zero element.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// The common multidegree of all terms.
    pub fn multidegree(&self, rank: usize) -> Result<Multidegree> {
        let mut it = self.terms.keys().map(|w| Multidegree::of_word(rank, w));
        let first = it.next().unwrap_or_else(|| Multidegree::zero(rank));
        if it.any(|d| d != first) {
            return Err(Error::Inhomogeneous("terms have different multidegrees".into()));
        }
        Ok(first)
    }

    /// The common parity of all terms under `ctx`, `None` for zero.
    pub fn parity(&self, ctx: &Ctx) -> Result<Option<bool>> {
        let mut it = self.terms.keys().map(|w| ctx.word_parity(w));
        let Some(first) = it.next() else { return Ok(None) };
        if it.any(|p| p != first) {
            return Err(Error::Inhomogeneous("terms have different parities".into()));
        }
        Ok(Some(first))
    }
}

impl<'a> Add<&'a FreeElement> for &'a FreeElement {
    type Output = FreeElement;
    fn add(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Neg for &FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        FreeElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl<'a> Sub<&'a FreeElement> for &'a FreeElement {
    type Output = FreeElement;
    fn sub(self, rhs: &FreeElement) -> FreeElement {
        self + &(-rhs)
    }
}

/// Concatenation product.
impl<'a> Mul<&'a FreeElement> for &'a FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
owned_ops!(FreeElement);

impl Mul for FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: FreeElement) -> FreeElement {
        &self * &rhs
    }
}

/// `f-word | k-exponents | σ-set | e-word`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub f: Vec<Node>,
    pub k: Vec<i32>,
    /// Bit `i` set iff `σ_i` is present.
    pub s: u64,
    pub e: Vec<Node>,
}

impl Monomial {
    pub fn unit(rank: usize) -> Self {
        Monomial { f: Vec::new(), k: vec![0; rank], s: 0, e: Vec::new() }
    }

    pub fn is_unit(&self) -> bool {
        self.f.is_empty() && self.e.is_empty() && self.s == 0 && self.k.iter().all(|&a| a == 0)
    }

    /// True for a pure `k, σ` monomial.
    pub fn is_grouplike(&self) -> bool {
        self.f.is_empty() && self.e.is_empty()
    }

    /// The monomial spelled out as a word.
    pub fn to_word(&self) -> Word {
        let mut w: Word = self.f.iter().map(|&i| Letter::F(i)).collect();
        for (i, &a) in self.k.iter().enumerate() {
            let l = if a > 0 { Letter::K(i as Node) } else { Letter::KInv(i as Node) };
            w.extend(std::iter::repeat_n(l, a.unsigned_abs() as usize));
        }
        for i in 0..64 {
            if self.s >> i & 1 == 1 {
                w.push(Letter::S(i as Node));
            }
        }
        w.extend(self.e.iter().map(|&i| Letter::E(i)));
        w
    }
}

/// An element in normal form, tied to the context that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    ctx: u64,
    terms: BTreeMap<Monomial, QScalar>,
}

impl NormalForm {
    pub fn zero(ctx: &Ctx) -> Self {
        NormalForm { ctx: ctx.id, terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::monomial(ctx, Monomial::unit(ctx.rank()), QScalar::one())
    }

    pub fn scalar(ctx: &Ctx, c: QScalar) -> Self {
        Self::monomial(ctx, Monomial::unit(ctx.rank()), c)
    }

    pub fn monomial(ctx: &Ctx, m: Monomial, c: QScalar) -> Self {
        let mut x = Self::zero(ctx);
        add_into(&mut x.terms, m, c);
        x
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, QScalar> {
        &self.terms
    }

    pub fn context_id(&self) -> u64 {
        self.ctx
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

    fn check(&self, other: &NormalForm) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::MixedContext);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &NormalForm) -> Result<NormalForm> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_into(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &NormalForm) -> Result<NormalForm> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> NormalForm {
        self.scale(&-QScalar::one())
    }

    pub fn scale(&self, c: &QScalar) -> NormalForm {
        let mut out = NormalForm { ctx: self.ctx, terms: BTreeMap::new() };
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.terms.insert(m.clone(), x * c);
        }
        out
    }

    pub fn to_free(&self) -> FreeElement {
        let mut out = FreeElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.to_word(), c.clone());
        }
        out
    }

    /// Distinct multidegrees of the terms.
    pub fn multidegrees(&self, rank: usize) -> Vec<Multidegree> {
        let set: std::collections::BTreeSet<_> =
            self.terms.keys().map(|m| Multidegree::of_monomial(rank, m)).collect();
        set.into_iter().collect()
    }

    /// The single coefficient of a one-term element.
    pub fn as_single(&self) -> Option<(&Monomial, &QScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

pub(crate) fn add_into(map: &mut BTreeMap<Monomial, QScalar>, m: Monomial, c: QScalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Which letter family a one-sided element uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    E,
    F,
}

/// A normal form split as `prefix * poly` (e side) or `poly * prefix` (f side),
/// where the prefix is a single `k, σ` monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peeled {
    pub side: Side,
    pub k: Vec<i32>,
    pub s: u64,
    pub poly: WordPoly,
}

impl NormalForm {
    /// Splits off the common group-like factor of a one-sided element.
    /// Returns `None` for zero; errors if the terms mix sides or prefixes.
    pub fn peel(&self) -> Result<Option<Peeled>> {
        let mut it = self.terms.iter();
        let Some((m0, _)) = it.next() else { return Ok(None) };
        let side = match (m0.e.is_empty(), m0.f.is_empty()) {
            (_, true) => Side::E,
            (true, false) => Side::F,
            (false, false) => return Err(Error::Inhomogeneous("term mixes e and f letters".into())),
        };
        let mut poly = WordPoly::zero();
        for (m, c) in &self.terms {
            if m.k != m0.k || m.s != m0.s {
                return Err(Error::Inhomogeneous("terms carry different group-like factors".into()));
            }
            let w = match side {
                Side::E if m.f.is_empty() => m.e.clone(),
                Side::F if m.e.is_empty() => m.f.clone(),
                _ => return Err(Error::Inhomogeneous("terms mix e and f letters".into())),
            };
            poly.add_term(w, c.clone());
        }
        Ok(Some(Peeled { side, k: m0.k.clone(), s: m0.s, poly }))
    }
}

/// Everything the rewriting rules need about one presentation.
#[derive(Clone, Debug)]
pub struct Ctx {
    labels: Vec<usize>,
    b: Vec<Vec<i64>>,
    odd: Vec<bool>,
    theta: Vec<u8>,
    sign: i32,
    zero: Option<usize>,
    id: u64,
    /// `sigma_neg[i][j]`: `σ_i e_j σ_i = -e_j`.
    sigma_neg: Vec<Vec<bool>>,
    /// `1 / (t^{θ_i} - t^{-θ_i})` with `t = sign * q`.
    cross: Vec<QScalar>,
}

impl Ctx {
    /// Context for `U_t(g, Π) ♯ CG` with `t = sign * q`.
    pub fn new(sys: &FundamentalSystem, sign: i32) -> Result<Self> {
        let c = CartanData::new(sys)?;
        let zero = if sys.algebra.is_affine() { sys.position(0) } else { None };
        Self::from_data(c.labels, c.b, c.odd, c.theta, sign, zero)
    }

    pub fn from_data(
        labels: Vec<usize>,
        b: Vec<Vec<i64>>,
        odd: Vec<bool>,
        theta: Vec<u8>,
        sign: i32,
        zero: Option<usize>,
    ) -> Result<Self> {
        let r = labels.len();
        if r == 0 || r > 64 {
            return Err(Error::Invalid(format!("rank {r} out of range")));
        }
        if b.len() != r || odd.len() != r || theta.len() != r || b.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch { expected: r, got: b.len() });
        }
        if sign != 1 && sign != -1 {
            return Err(Error::Invalid(format!("sign must be ±1, got {sign}")));
        }
        let sigma_neg = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| if Some(i) == zero { i == j } else { b[i][j].rem_euclid(2) == 1 })
                    .collect()
            })
            .collect();
        let cross = theta
            .iter()
            .map(|&th| {
                let th = th as i64;
                let d = QScalar::signed_q_pow(sign, th) - QScalar::signed_q_pow(sign, -th);
                d.inv()
            })
            .collect::<Result<_>>()?;
        let mut h = DefaultHasher::new();
        (&labels, &b, &odd, &theta, sign, zero).hash(&mut h);
        Ok(Ctx { labels, b, odd, theta, sign, zero, id: h.finish(), sigma_neg, cross })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn sign(&self) -> i32 {
        self.sign
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, i: Node) -> usize {
        self.labels[i as usize]
    }

    pub fn node_of_label(&self, label: usize) -> Option<Node> {
        self.labels.iter().position(|&l| l == label).map(|p| p as Node)
    }

    pub fn b(&self, i: Node, j: Node) -> i64 {
        self.b[i as usize][j as usize]
    }

    pub fn is_odd(&self, i: Node) -> bool {
        self.odd[i as usize]
    }

    pub fn theta(&self, i: Node) -> u8 {
        self.theta[i as usize]
    }

    pub fn zero_node(&self) -> Option<Node> {
        self.zero.map(|z| z as Node)
    }

    /// `(sign * q)^e`.
    pub fn t_pow(&self, e: i64) -> QScalar {
        QScalar::signed_q_pow(self.sign, e)
    }

    /// Whether `σ_i` negates `e_j` and `f_j` under conjugation.
    pub fn sigma_negates(&self, i: Node, j: Node) -> bool {
        self.sigma_neg[i as usize][j as usize]
    }

    pub fn cross_coefficient(&self, i: Node) -> &QScalar {
        &self.cross[i as usize]
    }

    pub fn letter_odd(&self, l: Letter) -> bool {
        match l {
            Letter::E(i) | Letter::F(i) => self.odd[i as usize],
            _ => false,
        }
    }

    pub fn word_parity(&self, w: &[Letter]) -> bool {
        w.iter().filter(|&&l| self.letter_odd(l)).count() % 2 == 1
    }

    pub fn monomial_parity(&self, m: &Monomial) -> bool {
        m.e.iter().chain(&m.f).filter(|&&i| self.odd[i as usize]).count() % 2 == 1
    }

    /// Common parity of a normal form; `None` for zero.
    pub fn parity(&self, x: &NormalForm) -> Result<Option<bool>> {
        let mut it = x.terms.keys().map(|m| self.monomial_parity(m));
        let Some(first) = it.next() else { return Ok(None) };
        if it.any(|p| p != first) {
            return Err(Error::Inhomogeneous("terms have different parities".into()));
        }
        Ok(Some(first))
    }

    /// Checks that every letter of `x` names a node of this context.
    pub fn check_letters(&self, x: &FreeElement) -> Result<()> {
        for w in x.terms.keys() {
            for l in w {
                if l.node() as usize >= self.rank() {
                    return Err(Error::UnknownGenerator(format!("{l:?}")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{Algebra, AmbientSpace};

    pub(crate) fn ctx(alg: Algebra, m: usize, n: usize, order: &str, sign: i32) -> Ctx {
        let sp = AmbientSpace::parse_order(m, n, alg.is_affine(), order).unwrap();
        Ctx::new(&FundamentalSystem::new(alg, &sp).unwrap(), sign).unwrap()
    }

    #[test]
    fn unit_is_neutral() {
        let x = FreeElement::e(0) * FreeElement::f(1) + FreeElement::k(0);
        assert_eq!(&FreeElement::one() * &x, x);
        assert_eq!(&x * &FreeElement::one(), x);
    }

    #[test]
    fn free_product_is_concatenation() {
        let x = FreeElement::e(0) * FreeElement::f(0);
        assert_eq!(x, FreeElement::word(vec![Letter::E(0), Letter::F(0)]));
    }

    #[test]
    fn parity_adds() {
        let c = ctx(Algebra::OspOdd, 1, 1, "ed", 1);
        assert!(c.is_odd(0));
        let x = FreeElement::e(0) * FreeElement::f(0);
        assert_eq!(x.parity(&c).unwrap(), Some(false));
        assert_eq!(FreeElement::e(0).parity(&c).unwrap(), Some(true));
        let mixed = FreeElement::e(0) + FreeElement::one();
        assert!(mixed.parity(&c).is_err());
    }

    #[test]
    fn multidegree_counts_letters() {
        let w = FreeElement::word(vec![Letter::E(0), Letter::E(1), Letter::E(0)]);
        let d = w.multidegree(2).unwrap();
        assert_eq!(d.e, vec![2, 1]);
        assert_eq!(d.f, vec![0, 0]);
        let x = FreeElement::e(0) + FreeElement::e(1);
        assert!(matches!(x.multidegree(2), Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn mixed_contexts_rejected() {
        let a = ctx(Algebra::OspOdd, 1, 1, "ed", 1);
        let b = ctx(Algebra::OspOdd, 1, 1, "ed", -1);
        let x = NormalForm::one(&a);
        let y = NormalForm::one(&b);
        assert_eq!(x.checked_add(&y), Err(Error::MixedContext));
        assert_eq!(a.mul(&x, &y), Err(Error::MixedContext));
    }

    #[test]
    fn sigma_zero_acts_on_its_own_node_only() {
        let c = ctx(Algebra::OspAff2, 1, 1, "ed", 1);
        let z = c.zero_node().unwrap();
        for j in 0..c.rank() as Node {
            assert_eq!(c.sigma_negates(z, j), j == z);
        }
    }
}
