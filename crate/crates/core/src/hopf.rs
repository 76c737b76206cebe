//! Hopf structure maps on `U_q(g, Π) ♯ CG`: super tensor powers, the
//! standard coproduct, counit and antipode, picture changes, and the twist
//! that turns the picture-changed structure into the standard structure of
//! the partner algebra.
//!
//! A structure stores the images of the letters `e, f, k^{±1}, σ` and
//! extends them (anti-)multiplicatively with the sign rule of its grading.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correspondence::{
    build_images, CheckRecord, CorrespondencePair, Direction, ImageAssignment, Sigmas, Status, VerificationReport,
};
use crate::error::{Error, Result};
use crate::qfield::QScalar;
use crate::rootdata::FundamentalSystem;
use crate::superalg::{Ctx, FreeElement, Letter, Monomial, NormalForm, Node, Side};

/// Which `Z_2`-grading the tensor sign rule uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grading {
    /// An ordinary Hopf algebra: no signs.
    Trivial,
    /// `e_i, f_i` odd exactly for the odd simple roots.
    Standard,
    /// Parity read off conjugation by the `σ`-monomial with this mask.
    Sigma(u64),
}

impl Grading {
    pub fn letter_odd(self, ctx: &Ctx, l: Letter) -> bool {
        match (self, l) {
            (_, Letter::K(_) | Letter::KInv(_) | Letter::S(_)) | (Grading::Trivial, _) => false,
            (Grading::Standard, l) => ctx.letter_odd(l),
            (Grading::Sigma(u), Letter::E(j) | Letter::F(j)) => sigma_flips(ctx, u, j),
        }
    }

    pub fn monomial_odd(self, ctx: &Ctx, m: &Monomial) -> bool {
        match self {
            Grading::Trivial => false,
            Grading::Standard => ctx.monomial_parity(m),
            Grading::Sigma(u) => m.e.iter().chain(&m.f).filter(|&&j| sigma_flips(ctx, u, j)).count() % 2 == 1,
        }
    }
}

/// Whether conjugation by `σ^u` negates `e_j`.
fn sigma_flips(ctx: &Ctx, u: u64, j: Node) -> bool {
    (0..ctx.rank() as Node).filter(|&i| u >> i & 1 == 1 && ctx.sigma_negates(i, j)).count() % 2 == 1
}

fn sigma_monomial(ctx: &Ctx, mask: u64) -> Monomial {
    let mut m = Monomial::unit(ctx.rank());
    m.s = mask;
    m
}

/// An element of `H^{⊗2}` or `H^{⊗3}`, each factor a normal-form monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    rank: usize,
    terms: BTreeMap<Vec<Monomial>, QScalar>,
}

impl TensorElement {
    pub fn zero(rank: usize) -> Self {
        TensorElement { rank, terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx, rank: usize) -> Self {
        Self::pure(vec![Monomial::unit(ctx.rank()); rank], QScalar::one())
    }

    pub fn pure(factors: Vec<Monomial>, c: QScalar) -> Self {
        let mut t = Self::zero(factors.len());
        t.add_term(factors, c);
        t
    }

    /// `x_1 ⊗ ... ⊗ x_r`.
    pub fn tensor(factors: &[&NormalForm]) -> Self {
        let mut acc: Vec<(Vec<Monomial>, QScalar)> = vec![(Vec::new(), QScalar::one())];
        for x in factors {
            let mut next = Vec::new();
            for (ms, c) in &acc {
                for (m, d) in x.terms() {
                    let mut ms = ms.clone();
                    ms.push(m.clone());
                    next.push((ms, c * d));
                }
            }
            acc = next;
        }
        let mut t = Self::zero(factors.len());
        for (ms, c) in acc {
            t.add_term(ms, c);
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Monomial>, QScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, factors: Vec<Monomial>, c: QScalar) {
        assert_eq!(factors.len(), self.rank, "tensor rank mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(factors) {
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

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (ms, c) in &other.terms {
            out.add_term(ms.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &QScalar) -> TensorElement {
        let mut out = Self::zero(self.rank);
        for (ms, x) in &self.terms {
            out.add_term(ms.clone(), x * c);
        }
        out
    }

    /// `(a_1 ⊗ ... ⊗ a_r)(b_1 ⊗ ... ⊗ b_r) = ± a_1 b_1 ⊗ ... ⊗ a_r b_r`, the
    /// sign collecting `(-1)^{[a_i][b_j]}` for every `i > j`.
    pub fn mul(&self, other: &TensorElement, ctx: &Ctx, grading: Grading) -> Result<TensorElement> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: other.rank });
        }
        let mut cache: HashMap<(Monomial, Monomial), NormalForm> = HashMap::new();
        let mut out = Self::zero(self.rank);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut swaps = 0;
                for i in 0..self.rank {
                    if grading.monomial_odd(ctx, &a[i]) {
                        swaps += b[..i].iter().filter(|m| grading.monomial_odd(ctx, m)).count();
                    }
                }
                let mut coef = c * d;
                if swaps % 2 == 1 {
                    coef = -coef;
                }
                let mut products = Vec::with_capacity(self.rank);
                for i in 0..self.rank {
                    let key = (a[i].clone(), b[i].clone());
                    if !cache.contains_key(&key) {
                        let x = NormalForm::monomial(ctx, a[i].clone(), QScalar::one());
                        let y = NormalForm::monomial(ctx, b[i].clone(), QScalar::one());
                        cache.insert(key.clone(), ctx.mul(&x, &y)?);
                    }
                    products.push(cache[&key].clone());
                }
                let refs: Vec<&NormalForm> = products.iter().collect();
                for (ms, x) in Self::tensor(&refs).terms {
                    out.add_term(ms, &x * &coef);
                }
            }
        }
        Ok(out)
    }

    /// Appends (`back`) or prepends a unit factor.
    pub fn pad(&self, ctx: &Ctx, back: bool) -> TensorElement {
        let mut out = Self::zero(self.rank + 1);
        for (ms, c) in &self.terms {
            let mut ms = ms.clone();
            if back {
                ms.push(Monomial::unit(ctx.rank()));
            } else {
                ms.insert(0, Monomial::unit(ctx.rank()));
            }
            out.add_term(ms, c.clone());
        }
        out
    }

    pub fn format(&self, ctx: &Ctx) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(ms, c)| {
                let fs: Vec<String> = ms.iter().map(|m| format!("[{}]", ctx.format_monomial(m))).collect();
                format!("({c}) * {}", fs.join(" ⊗ "))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The letters whose images define a structure, in a fixed order.
fn letters(rank: usize) -> Vec<Letter> {
    (0..rank as Node)
        .flat_map(|i| [Letter::E(i), Letter::F(i), Letter::K(i), Letter::KInv(i), Letter::S(i)])
        .collect()
}

/// Coproduct and antipode images on the letters, together with the grading
/// used to extend them. The counit is the same for every structure built
/// here: zero on `e, f`, one on `k^{±1}, σ`.
#[derive(Clone, Debug)]
pub struct HopfStructure {
    ctx: Ctx,
    grading: Grading,
    delta: BTreeMap<Letter, TensorElement>,
    antipode: BTreeMap<Letter, NormalForm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PcMode {
    /// Ordinary Hopf algebra to superalgebra, with `u` as the parity operator.
    Pc1,
    /// Superalgebra to ordinary Hopf algebra, `g` being the parity operator.
    Pc2,
    /// `Pc2` with `g`, then `Pc1` with `u`.
    Pc,
}

impl HopfStructure {
    /// `Δ(e) = e⊗1 + k⊗e`, `Δ(f) = f⊗k⁻¹ + 1⊗f`, `k`, `σ` group-like,
    /// `S(e) = -k⁻¹e`, `S(f) = -fk`, `S(k) = k⁻¹`, `S(σ) = σ`.
    pub fn standard(ctx: &Ctx) -> Self {
        let nf = |w: Vec<Letter>| ctx.normalize(&FreeElement::word(w));
        let one = NormalForm::one(ctx);
        let mut delta = BTreeMap::new();
        let mut antipode = BTreeMap::new();
        for l in letters(ctx.rank()) {
            let x = nf(vec![l]);
            let (d, s) = match l {
                Letter::E(i) => {
                    let k = nf(vec![Letter::K(i)]);
                    let d = TensorElement::tensor(&[&x, &one]).add(&TensorElement::tensor(&[&k, &x]));
                    (d, nf(vec![Letter::KInv(i), l]).neg())
                }
                Letter::F(i) => {
                    let ki = nf(vec![Letter::KInv(i)]);
                    let d = TensorElement::tensor(&[&x, &ki]).add(&TensorElement::tensor(&[&one, &x]));
                    (d, nf(vec![l, Letter::K(i)]).neg())
                }
                Letter::K(i) => (TensorElement::tensor(&[&x, &x]), nf(vec![Letter::KInv(i)])),
                Letter::KInv(i) => (TensorElement::tensor(&[&x, &x]), nf(vec![Letter::K(i)])),
                Letter::S(_) => (TensorElement::tensor(&[&x, &x]), x.clone()),
            };
            delta.insert(l, d);
            antipode.insert(l, s);
        }
        HopfStructure { ctx: ctx.clone(), grading: Grading::Standard, delta, antipode }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn letter_coproduct(&self, l: Letter) -> Result<&TensorElement> {
        self.delta.get(&l).ok_or_else(|| Error::UnknownGenerator(format!("{l:?}")))
    }

    pub fn letter_antipode(&self, l: Letter) -> Result<&NormalForm> {
        self.antipode.get(&l).ok_or_else(|| Error::UnknownGenerator(format!("{l:?}")))
    }

    fn coproduct_word(&self, w: &[Letter]) -> Result<TensorElement> {
        let mut acc = TensorElement::one(&self.ctx, 2);
        for &l in w {
            acc = acc.mul(self.letter_coproduct(l)?, &self.ctx, self.grading)?;
        }
        Ok(acc)
    }

    pub fn coproduct(&self, x: &FreeElement) -> Result<TensorElement> {
        self.ctx.check_letters(x)?;
        let mut out = TensorElement::zero(2);
        for (w, c) in x.terms() {
            out = out.add(&self.coproduct_word(w)?.scale(c));
        }
        Ok(out)
    }

    pub fn coproduct_normal(&self, x: &NormalForm) -> Result<TensorElement> {
        self.coproduct(&x.to_free())
    }

    pub fn counit(&self, x: &FreeElement) -> Result<QScalar> {
        self.ctx.check_letters(x)?;
        let mut out = QScalar::zero();
        for (w, c) in x.terms() {
            if w.iter().all(|l| matches!(l, Letter::K(_) | Letter::KInv(_) | Letter::S(_))) {
                out = out + c;
            }
        }
        Ok(out)
    }

    fn counit_monomial(m: &Monomial) -> bool {
        m.is_grouplike()
    }

    /// `S(x_1 ... x_n) = ± S(x_n) ... S(x_1)`, the sign pairing up the odd letters.
    fn antipode_word(&self, w: &[Letter]) -> Result<NormalForm> {
        let odd = w.iter().filter(|&&l| self.grading.letter_odd(&self.ctx, l)).count();
        let mut acc = NormalForm::one(&self.ctx);
        for &l in w.iter().rev() {
            acc = self.ctx.mul(&acc, self.letter_antipode(l)?)?;
        }
        Ok(if (odd * odd.saturating_sub(1) / 2) % 2 == 1 { acc.neg() } else { acc })
    }

    pub fn antipode(&self, x: &FreeElement) -> Result<NormalForm> {
        self.ctx.check_letters(x)?;
        let mut out = NormalForm::zero(&self.ctx);
        for (w, c) in x.terms() {
            out = out.checked_add(&self.antipode_word(w)?.scale(c))?;
        }
        Ok(out)
    }

    pub fn antipode_normal(&self, x: &NormalForm) -> Result<NormalForm> {
        self.antipode(&x.to_free())
    }

    /// Applies `Δ` to factor `at` of `t`, raising the rank by one.
    pub fn coproduct_at(&self, t: &TensorElement, at: usize) -> Result<TensorElement> {
        let mut out = TensorElement::zero(t.rank() + 1);
        for (ms, c) in t.terms() {
            let d = self.coproduct_word(&ms[at].to_word())?;
            for (pair, x) in d.terms() {
                let mut v = ms[..at].to_vec();
                v.extend(pair.iter().cloned());
                v.extend_from_slice(&ms[at + 1..]);
                out.add_term(v, c * x);
            }
        }
        Ok(out)
    }

    /// Applies `ε` to factor `at` of a rank-2 element.
    pub fn counit_at(&self, t: &TensorElement, at: usize) -> NormalForm {
        let mut out = NormalForm::zero(&self.ctx);
        for (ms, c) in t.terms() {
            if Self::counit_monomial(&ms[at]) {
                let x = NormalForm::monomial(&self.ctx, ms[1 - at].clone(), c.clone());
                out = out.checked_add(&x).expect("same context");
            }
        }
        out
    }

    /// `m(S ⊗ id)(t)` if `at == 0`, `m(id ⊗ S)(t)` if `at == 1`.
    pub fn antipode_multiply(&self, t: &TensorElement, at: usize) -> Result<NormalForm> {
        let mut out = NormalForm::zero(&self.ctx);
        for (ms, c) in t.terms() {
            let s = self.antipode_word(&ms[at].to_word())?;
            let other = NormalForm::monomial(&self.ctx, ms[1 - at].clone(), c.clone());
            let p = if at == 0 { self.ctx.mul(&s, &other)? } else { self.ctx.mul(&other, &s)? };
            out = out.checked_add(&p)?;
        }
        Ok(out)
    }

    /// Whether `σ^mask` is group-like in this structure.
    pub fn is_grouplike(&self, mask: u64) -> Result<bool> {
        let s = NormalForm::monomial(&self.ctx, sigma_monomial(&self.ctx, mask), QScalar::one());
        Ok(self.coproduct_normal(&s)? == TensorElement::tensor(&[&s, &s]))
    }

    /// Whether conjugation by `σ^g` realizes the grading on every letter.
    pub fn is_parity_operator(&self, g: u64) -> bool {
        letters(self.ctx.rank())
            .into_iter()
            .all(|l| Grading::Sigma(g).letter_odd(&self.ctx, l) == self.grading.letter_odd(&self.ctx, l))
    }

    /// `Δ_u(x) = Δ_0(x) + Δ_1(x)(u⊗1)`, `S_u(x) = u^{[x]} S(x)`, where the
    /// split and `[x]` use `parity`.
    fn regrade(&self, u: u64, parity: Grading, result: Grading) -> Result<Self> {
        let ctx = &self.ctx;
        let us = sigma_monomial(ctx, u);
        let u_left = TensorElement::pure(vec![us.clone(), Monomial::unit(ctx.rank())], QScalar::one());
        let u_nf = NormalForm::monomial(ctx, us, QScalar::one());
        let mut delta = BTreeMap::new();
        let mut antipode = BTreeMap::new();
        for (&l, d) in &self.delta {
            let (mut d0, mut d1) = (TensorElement::zero(2), TensorElement::zero(2));
            for (ms, c) in d.terms() {
                if parity.monomial_odd(ctx, &ms[1]) {
                    d1.add_term(ms.clone(), c.clone());
                } else {
                    d0.add_term(ms.clone(), c.clone());
                }
            }
            delta.insert(l, d0.add(&d1.mul(&u_left, ctx, self.grading)?));
            let s = &self.antipode[&l];
            antipode.insert(l, if parity.letter_odd(ctx, l) { ctx.mul(&u_nf, s)? } else { s.clone() });
        }
        Ok(HopfStructure { ctx: ctx.clone(), grading: result, delta, antipode })
    }

    pub fn picture_change(&self, g: u64, u: u64, mode: PcMode) -> Result<Self> {
        for (name, x) in [("g", g), ("u", u)] {
            if x >> self.ctx.rank() != 0 {
                return Err(Error::Invalid(format!("{name} names σ outside the rank")));
            }
            if !self.is_grouplike(x)? {
                return Err(Error::Invalid(format!("{name} is not group-like")));
            }
        }
        match mode {
            PcMode::Pc1 => {
                if self.grading != Grading::Trivial {
                    return Err(Error::Invalid("PC1 needs an ordinary Hopf algebra".into()));
                }
                self.regrade(u, Grading::Sigma(u), Grading::Sigma(u))
            }
            PcMode::Pc2 => {
                if !self.is_parity_operator(g) {
                    return Err(Error::Invalid("g does not act as the parity operator".into()));
                }
                self.regrade(g, self.grading, Grading::Trivial)
            }
            PcMode::Pc => self.picture_change(g, u, PcMode::Pc2)?.picture_change(g, u, PcMode::Pc1),
        }
    }

    /// Checks the twist conditions for `j` and its self-inverse property.
    pub fn twist_conditions(&self, j: &TwistElement) -> Result<Vec<(String, bool, String)>> {
        let ctx = &self.ctx;
        let jv = &j.value;
        let lhs = self.coproduct_at(jv, 0)?.mul(&jv.pad(ctx, true), ctx, self.grading)?;
        let rhs = self.coproduct_at(jv, 1)?.mul(&jv.pad(ctx, false), ctx, self.grading)?;
        let one = NormalForm::one(ctx);
        let left = self.counit_at(jv, 0);
        let right = self.counit_at(jv, 1);
        let sq = jv.mul(jv, ctx, self.grading)?;
        let detail = |a: String, b: String| format!("lhs = {a}; rhs = {b}");
        Ok(vec![
            ("cocycle".into(), lhs == rhs, detail(lhs.format(ctx), rhs.format(ctx))),
            ("counit-left".into(), left == one, ctx.format_normal(&left)),
            ("counit-right".into(), right == one, ctx.format_normal(&right)),
            ("self-inverse".into(), sq == TensorElement::one(ctx, 2), sq.format(ctx)),
        ])
    }

    /// `𝒢 = m(S ⊗ id)(J)`.
    pub fn twist_corrector(&self, j: &TwistElement) -> Result<NormalForm> {
        self.antipode_multiply(&j.value, 0)
    }

    /// `Δ^J(x) = J⁻¹Δ(x)J`, `S^J(x) = 𝒢⁻¹S(x)𝒢`. Fails with the first failing
    /// twist condition; `J` must be its own inverse.
    pub fn twist(&self, j: &TwistElement) -> Result<Self> {
        for (name, ok, detail) in self.twist_conditions(j)? {
            if !ok {
                return Err(Error::TwistCondition(format!("{name}: {detail}")));
            }
        }
        let ctx = &self.ctx;
        let g = self.twist_corrector(j)?;
        let g_inv = group_algebra_inverse(ctx, &g)?;
        let mut delta = BTreeMap::new();
        let mut antipode = BTreeMap::new();
        for (&l, d) in &self.delta {
            let conj = j.value.mul(d, ctx, self.grading)?.mul(&j.value, ctx, self.grading)?;
            delta.insert(l, conj);
            antipode.insert(l, ctx.mul_all(&[&g_inv, &self.antipode[&l], &g])?);
        }
        Ok(HopfStructure { ctx: ctx.clone(), grading: self.grading, delta, antipode })
    }
}

/// Inverse of an element of `CG` by its character values.
pub fn group_algebra_inverse(ctx: &Ctx, x: &NormalForm) -> Result<NormalForm> {
    let r = ctx.rank();
    let mut support: Vec<(u64, QScalar)> = Vec::new();
    for (m, c) in x.terms() {
        if !m.is_grouplike() || m.k.iter().any(|&a| a != 0) {
            return Err(Error::Invalid("not an element of the σ group algebra".into()));
        }
        support.push((m.s, c.clone()));
    }
    let size = 1u64 << r;
    let chi = |a: u64, s: u64| (a & s).count_ones() % 2 == 1;
    let mut values = Vec::with_capacity(size as usize);
    for a in 0..size {
        let v = support.iter().fold(QScalar::zero(), |acc, (s, c)| if chi(a, *s) { acc - c } else { acc + c });
        values.push(v.inv().map_err(|_| Error::Invalid("group algebra element is not invertible".into()))?);
    }
    let norm = QScalar::from_ratio(1, size as i64)?;
    let mut out = NormalForm::zero(ctx);
    for s in 0..size {
        let c = (0..size).fold(QScalar::zero(), |acc, a| {
            let v = &values[a as usize];
            if chi(a, s) {
                acc - v
            } else {
                acc + v
            }
        });
        let term = NormalForm::monomial(ctx, sigma_monomial(ctx, s), &c * &norm);
        out = out.checked_add(&term)?;
    }
    Ok(out)
}

/// `u_1 = ∏_{i∈τ} Φ̃_1 Φ̃_{i+1}` and `u_2 = Φ̃_1 u_1`, as masks over positions.
pub fn parity_elements(sys: &FundamentalSystem) -> (u64, u64) {
    let sg = Sigmas::new(sys);
    let u1 = sg.tau_product();
    (u1, u1 ^ sg.phi_tilde(1))
}

/// A twist built from `σ`'s only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistElement {
    pub value: TensorElement,
}

impl TwistElement {
    /// `J = 2^{-|Π|} ∏_i ((1 + Φ̃_1Φ̃_{i+1}) ⊗ 1 + (1 - Φ̃_1Φ̃_{i+1}) ⊗ X_i)` over all
    /// nodes, with `X_i = Φ_{i+1}` for even `α_i` and `Φ̃_{i+2}` for odd.
    /// The affine node contributes the scalar factor 2.
    pub fn for_system(sys: &FundamentalSystem, ctx: &Ctx) -> Result<Self> {
        let sg = Sigmas::new(sys);
        let mut value = TensorElement::one(ctx, 2);
        let one = Monomial::unit(ctx.rank());
        for node in &sys.nodes {
            let i = node.label;
            let a = if i == 0 { 0 } else { sg.phi_tilde(1) ^ sg.phi_tilde(i + 1) };
            let x = if node.odd { sg.phi_tilde(i + 2) } else { sg.phi(i + 1) };
            let (am, xm) = (sigma_monomial(ctx, a), sigma_monomial(ctx, x));
            let mut factor = TensorElement::zero(2);
            factor.add_term(vec![one.clone(), one.clone()], QScalar::one());
            factor.add_term(vec![am.clone(), one.clone()], QScalar::one());
            factor.add_term(vec![one.clone(), xm.clone()], QScalar::one());
            factor.add_term(vec![am, xm], -QScalar::one());
            value = value.mul(&factor, ctx, Grading::Trivial)?;
        }
        let half = QScalar::from_ratio(1, 2)?;
        let scale = half.pow(sys.len() as i64)?;
        Ok(TwistElement { value: value.scale(&scale) })
    }
}

/// Source structure after the picture change with `u_1, u_2`.
pub fn picture_changed(sys: &FundamentalSystem, ctx: &Ctx) -> Result<HopfStructure> {
    let (u1, u2) = parity_elements(sys);
    HopfStructure::standard(ctx).picture_change(u1, u2, PcMode::Pc)
}

fn record(check: &str, side: Option<Side>, nodes: Vec<usize>, ok: bool, detail: String) -> CheckRecord {
    CheckRecord {
        check: check.into(),
        direction: None,
        side,
        nodes,
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
        certificate: None,
    }
}

fn letter_side(l: Letter) -> Option<Side> {
    match l {
        Letter::E(_) => Some(Side::E),
        Letter::F(_) => Some(Side::F),
        _ => None,
    }
}

fn compare<T: PartialEq>(gen: &str, lhs: &T, rhs: &T, show: impl Fn(&T) -> String) -> (bool, String) {
    if lhs == rhs {
        (true, gen.to_string())
    } else {
        (false, format!("{gen}: lhs = {}; rhs = {}", show(lhs), show(rhs)))
    }
}

/// Coassociativity, counit and antipode axioms on every letter.
pub fn hopf_axiom_checks(h: &HopfStructure) -> Result<Vec<CheckRecord>> {
    let ctx = h.ctx();
    let per_letter = |l: Letter| -> Result<Vec<CheckRecord>> {
        let gen = ctx.format_letter(l);
        let nodes = vec![ctx.label(l.node())];
        let side = letter_side(l);
        let x = ctx.normalize(&FreeElement::letter(l));
        let d = h.letter_coproduct(l)?;
        let tf = |t: &TensorElement| t.format(ctx);
        let nf = |t: &NormalForm| ctx.format_normal(t);
        let eps = NormalForm::scalar(ctx, h.counit(&FreeElement::letter(l))?);
        let checks = [
            ("coassociativity", compare(&gen, &h.coproduct_at(d, 0)?, &h.coproduct_at(d, 1)?, tf)),
            ("counit-left", compare(&gen, &h.counit_at(d, 0), &x, nf)),
            ("counit-right", compare(&gen, &h.counit_at(d, 1), &x, nf)),
            ("antipode-left", compare(&gen, &h.antipode_multiply(d, 0)?, &eps, nf)),
            ("antipode-right", compare(&gen, &h.antipode_multiply(d, 1)?, &eps, nf)),
        ];
        Ok(checks.into_iter().map(|(c, (ok, detail))| record(c, side, nodes.clone(), ok, detail)).collect())
    };
    let out: Vec<Vec<CheckRecord>> = letters(ctx.rank()).into_par_iter().map(per_letter).collect::<Result<_>>()?;
    Ok(out.into_iter().flatten().collect())
}

pub fn verify_hopf_axioms(h: &HopfStructure, subject: String) -> Result<VerificationReport> {
    let start = Instant::now();
    Ok(VerificationReport::new("hopf-axioms", subject, hopf_axiom_checks(h)?, start))
}

/// Twist conditions for `J` against the picture-changed structure of `sys`,
/// plus invertibility of the antipode corrector and its commuting with the
/// group-likes.
pub fn twist_checks(sys: &FundamentalSystem) -> Result<Vec<CheckRecord>> {
    let ctx = Ctx::new(sys, 1)?;
    let h = picture_changed(sys, &ctx)?;
    let j = TwistElement::for_system(sys, &ctx)?;
    let mut out: Vec<CheckRecord> = h
        .twist_conditions(&j)?
        .into_iter()
        .map(|(name, ok, detail)| record(&format!("twist-{name}"), None, vec![], ok, if ok { String::new() } else { detail }))
        .collect();
    let g = h.twist_corrector(&j)?;
    let inv = group_algebra_inverse(&ctx, &g);
    let commutes = (0..ctx.rank() as Node).all(|i| {
        [Letter::K(i), Letter::S(i)].iter().all(|&l| {
            let x = ctx.normalize(&FreeElement::letter(l));
            ctx.mul(&g, &x).ok() == ctx.mul(&x, &g).ok()
        })
    });
    let ok = inv.is_ok() && commutes;
    out.push(record("twist-corrector", None, vec![], ok, ctx.format_normal(&g)));
    Ok(out)
}

pub fn verify_twist(sys: &FundamentalSystem) -> Result<VerificationReport> {
    let start = Instant::now();
    let subject = format!("{} ({})", sys.name(), sys.space.order_code());
    Ok(VerificationReport::new("verify-twist", subject, twist_checks(sys)?, start))
}

/// Checks that the twisted, picture-changed structure of the source carries
/// the standard structure of the partner through the forward images, and
/// that the images have the partner's parities under the `u_2`-grading.
pub fn hopf_correspondence_checks(pair: &CorrespondencePair) -> Result<Vec<CheckRecord>> {
    let sys = &pair.source;
    let ctx = Ctx::new(sys, 1)?;
    let h = picture_changed(sys, &ctx)?;
    let j = TwistElement::for_system(sys, &ctx)?;
    let tw = h.twist(&j)?;
    let images = build_images(pair, Direction::Forward);
    let target = Ctx::new(&pair.partner, -1)?;
    let (_, u2) = parity_elements(sys);
    let per_node = |p: Node| -> Result<Vec<CheckRecord>> {
        node_checks(&tw, &images, &target, u2, p)
    };
    let out: Vec<Vec<CheckRecord>> =
        (0..ctx.rank() as Node).into_par_iter().map(per_node).collect::<Result<_>>()?;
    let mut out: Vec<CheckRecord> = out.into_iter().flatten().collect();
    for r in &mut out {
        r.direction = Some(Direction::Forward);
    }
    Ok(out)
}

fn node_checks(tw: &HopfStructure, images: &ImageAssignment, target: &Ctx, u2: u64, p: Node) -> Result<Vec<CheckRecord>> {
    let ctx = tw.ctx();
    let img = |l: Letter| images.apply(ctx, &FreeElement::letter(l));
    let (e, f, k, ki, s) =
        (img(Letter::E(p))?, img(Letter::F(p))?, img(Letter::K(p))?, img(Letter::KInv(p))?, img(Letter::S(p))?);
    let one = NormalForm::one(ctx);
    let label = target.label(p);
    let tf = |t: &TensorElement| t.format(ctx);
    let nf = |t: &NormalForm| ctx.format_normal(t);
    let mut out = Vec::new();
    let mut push = |check: &str, side: Option<Side>, (ok, detail): (bool, String)| {
        out.push(record(check, side, vec![label], ok, detail));
    };

    let want_odd = target.is_odd(p);
    for (side, x) in [(Side::E, &e), (Side::F, &f)] {
        let odd: Vec<bool> = x.terms().keys().map(|m| Grading::Sigma(u2).monomial_odd(ctx, m)).collect();
        let ok = odd.iter().all(|&o| o == want_odd);
        push("parity", Some(side), (ok, format!("{} odd: {want_odd}", nf(x))));
    }

    let de = TensorElement::tensor(&[&e, &one]).add(&TensorElement::tensor(&[&k, &e]));
    push("coproduct", Some(Side::E), compare("E", &tw.coproduct_normal(&e)?, &de, tf));
    let df = TensorElement::tensor(&[&f, &ki]).add(&TensorElement::tensor(&[&one, &f]));
    push("coproduct", Some(Side::F), compare("F", &tw.coproduct_normal(&f)?, &df, tf));
    push("coproduct", None, compare("K", &tw.coproduct_normal(&k)?, &TensorElement::tensor(&[&k, &k]), tf));
    push("coproduct", None, compare("K^-1", &tw.coproduct_normal(&ki)?, &TensorElement::tensor(&[&ki, &ki]), tf));
    push("coproduct", None, compare("s", &tw.coproduct_normal(&s)?, &TensorElement::tensor(&[&s, &s]), tf));

    let se = ctx.mul(&ki, &e)?.neg();
    push("antipode", Some(Side::E), compare("E", &tw.antipode_normal(&e)?, &se, nf));
    let sf = ctx.mul(&f, &k)?.neg();
    push("antipode", Some(Side::F), compare("F", &tw.antipode_normal(&f)?, &sf, nf));
    push("antipode", None, compare("K", &tw.antipode_normal(&k)?, &ki, nf));
    push("antipode", None, compare("K^-1", &tw.antipode_normal(&ki)?, &k, nf));
    push("antipode", None, compare("s", &tw.antipode_normal(&s)?, &s, nf));

    for (name, x, want) in [("E", &e, 0), ("F", &f, 0), ("K", &k, 1), ("s", &s, 1)] {
        let c = tw.counit(&x.to_free())?;
        push("counit", None, (c == QScalar::from_int(want), format!("{name}: {c}")));
    }
    Ok(out)
}

/// Hopf axioms for both presentations, the twist conditions, and the
/// generator-by-generator match of the twisted structure with the partner's.
pub fn verify_hopf_correspondence(pair: &CorrespondencePair) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (sys, sign) in [(&pair.source, 1), (&pair.partner, -1)] {
        let h = HopfStructure::standard(&Ctx::new(sys, sign)?);
        let mut c = hopf_axiom_checks(&h)?;
        for r in &mut c {
            r.check = format!("{}-{}", if sign == 1 { "source" } else { "partner" }, r.check);
        }
        checks.extend(c);
    }
    checks.extend(twist_checks(&pair.source)?);
    checks.extend(hopf_correspondence_checks(pair)?);
    Ok(VerificationReport::new("verify-hopf", pair.describe(), checks, start))
}
