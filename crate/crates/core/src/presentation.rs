//! Defining relations of `U_t(g, Π) ♯ CG` for `t = ±q`.
//!
//! Relation elements are free-algebra elements asserted to vanish. The
//! one-sided families (isotropic squares, Serre, higher Serre) contain only
//! `e` letters or only `f` letters: `k`-conjugations inside `Ad` are folded
//! into `t`-power coefficients as they are produced.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::qfield::QScalar;
use crate::rootdata::{CartanData, FundamentalSystem};
use crate::superalg::{Ctx, FreeElement, Letter, Node, Side, WordPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pattern {
    A,
    B,
    C,
    D,
    E,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Torus,
    Ef,
    IsotropicSquare,
    Serre,
    HigherSerre(Pattern),
}

impl Family {
    pub fn tag(self) -> String {
        match self {
            Family::Torus => "torus".into(),
            Family::Ef => "ef".into(),
            Family::IsotropicSquare => "isotropic-square".into(),
            Family::Serre => "serre".into(),
            Family::HigherSerre(p) => format!("higher-serre-{p:?}"),
        }
    }

    pub fn is_one_sided(self) -> bool {
        matches!(self, Family::IsotropicSquare | Family::Serre | Family::HigherSerre(_))
    }
}

/// A matched sub-diagram. `nodes` follows the pattern's own numbering
/// `s-1, s, s+1 (, s+2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternMatch {
    pub pattern: Pattern,
    pub nodes: Vec<Node>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub family: Family,
    pub side: Option<Side>,
    /// Nodes the relation is attached to, in positions.
    pub nodes: Vec<Node>,
    pub element: FreeElement,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub system: FundamentalSystem,
    pub cartan: CartanData,
    pub ctx: Ctx,
    pub relations: Vec<Relation>,
}

fn side_letter(side: Side, i: Node) -> Letter {
    match side {
        Side::E => Letter::E(i),
        Side::F => Letter::F(i),
    }
}

fn gen(side: Side, i: Node) -> FreeElement {
    FreeElement::letter(side_letter(side, i))
}

/// `Ad_{e_i}(x) = e_i x - (-1)^{[e_i][x]} k_i x k_i^{-1} e_i`, and on the
/// `f` side `f_i x - (-1)^{[f_i][x]} k_i^{-1} x k_i f_i`, for `x` built from
/// letters of the same side. The conjugation contributes `t^{(α_i, wt x)}`
/// on both sides.
pub fn ad(ctx: &Ctx, side: Side, i: Node, x: &FreeElement) -> Result<FreeElement> {
    let Some(px) = x.parity(ctx)? else { return Ok(FreeElement::zero()) };
    let sign = if ctx.is_odd(i) && px { -1 } else { 1 };
    let mut out = FreeElement::zero();
    for (w, c) in x.terms() {
        let mut weight = 0i64;
        for &l in w {
            match (side, l) {
                (Side::E, Letter::E(j)) | (Side::F, Letter::F(j)) => weight += ctx.b(i, j),
                _ => return Err(Error::Inhomogeneous(format!("Ad argument has letter {l:?}"))),
            }
        }
        let mut left = vec![side_letter(side, i)];
        left.extend_from_slice(w);
        out.add_term(left, c.clone());
        let mut right = w.clone();
        right.push(side_letter(side, i));
        let coef = c * &ctx.t_pow(weight);
        out.add_term(right, if sign == 1 { -coef } else { coef });
    }
    Ok(out)
}

/// `[x, y]_v = xy - (-1)^{[x][y]} v yx` for parity-homogeneous `x, y`.
pub fn bracket(ctx: &Ctx, x: &FreeElement, y: &FreeElement, v: &QScalar) -> Result<FreeElement> {
    let (Some(px), Some(py)) = (x.parity(ctx)?, y.parity(ctx)?) else { return Ok(FreeElement::zero()) };
    let v = if px && py { -v } else { v.clone() };
    Ok(x * y - (y * x).scale(&v))
}

fn ad_chain(ctx: &Ctx, side: Side, ops: &[Node], target: Node) -> Result<FreeElement> {
    let mut x = gen(side, target);
    for &i in ops.iter().rev() {
        x = ad(ctx, side, i, &x)?;
    }
    Ok(x)
}

fn adjacent(c: &CartanData, i: usize, j: usize) -> bool {
    c.a[i][j] != 0 || c.a[j][i] != 0
}

fn single_edge(c: &CartanData, i: usize, j: usize) -> bool {
    c.a[i][j].abs().max(c.a[j][i].abs()) == 1
}

fn black(c: &CartanData, i: usize) -> bool {
    c.odd[i] && !c.isotropic(i)
}

/// Finds the higher-order Serre sub-diagrams, keyed on Cartan and Gram data.
/// A `×` end may be any node kind; bonds drawn single must be single.
/// Symmetric shapes are reported once, oriented by increasing position.
pub fn higher_serre_scan(c: &CartanData) -> Vec<PatternMatch> {
    let r = c.len();
    let mut out = Vec::new();
    let nodes = |v: &[usize]| v.iter().map(|&x| x as Node).collect::<Vec<_>>();
    for s in (0..r).filter(|&s| c.isotropic(s)) {
        for i in 0..r {
            for j in 0..r {
                if i == s || j == s || i == j || adjacent(c, i, j) {
                    continue;
                }
                if !adjacent(c, i, s) || !adjacent(c, s, j) {
                    continue;
                }
                // A: × - ⊗ - × with opposite pairings against α_s.
                if i < j && single_edge(c, i, s) && single_edge(c, s, j) && c.b[s][i] == -c.b[s][j] {
                    out.push(PatternMatch { pattern: Pattern::A, nodes: nodes(&[i, s, j]) });
                }
                // B, C: × - ⊗ ⇒ ○ / ●.
                if single_edge(c, i, s) && c.a[j][s].abs() == 2 && c.a[s][j].abs() == 1 {
                    let p = if black(c, j) {
                        Pattern::C
                    } else if !c.odd[j] {
                        Pattern::B
                    } else {
                        continue;
                    };
                    out.push(PatternMatch { pattern: p, nodes: nodes(&[i, s, j]) });
                }
                // D, E: ○ ⇐ ⊗ ⇒ ⊗, and ○ ⇐ ⊗ ⇒ ○ - ×.
                let long_left = !c.odd[i]
                    && c.a[i][s] == -1
                    && c.a[s][i].abs() == 2
                    && c.a[s][j] == -c.a[s][i] / 2;
                if long_left && c.isotropic(j) {
                    out.push(PatternMatch { pattern: Pattern::D, nodes: nodes(&[i, s, j]) });
                }
                if long_left && !c.odd[j] && c.a[j][s] == -1 {
                    for k in 0..r {
                        if k != i && k != s && k != j && adjacent(c, j, k) && !adjacent(c, k, i) && !adjacent(c, k, s) {
                            out.push(PatternMatch { pattern: Pattern::E, nodes: nodes(&[i, s, j, k]) });
                        }
                    }
                }
            }
        }
        // F: triangle × , ⊗_s , ⊗_{s'} with a double tie between the ⊗'s.
        for t in (s + 1..r).filter(|&t| c.isotropic(t) && c.b[s][t].abs() == 2) {
            for i in 0..r {
                if i != s && i != t && adjacent(c, i, s) && adjacent(c, i, t) {
                    out.push(PatternMatch { pattern: Pattern::F, nodes: nodes(&[i, s, t]) });
                }
            }
        }
    }
    out.sort();
    out
}

/// The relation element attached to a matched pattern.
pub fn higher_serre_element(ctx: &Ctx, side: Side, m: &PatternMatch) -> Result<FreeElement> {
    let n = &m.nodes;
    match m.pattern {
        Pattern::A | Pattern::B | Pattern::C => ad_chain(ctx, side, &[n[1], n[0], n[1]], n[2]),
        Pattern::D | Pattern::E => {
            let (sm, s, sp) = (n[0], n[1], n[2]);
            let x = ad(ctx, side, sp, &gen(side, s))?;
            let y = ad(ctx, side, s, &gen(side, sm))?;
            let b = ctx.b(s, sp);
            let inner = bracket(ctx, &x, &y, &ctx.t_pow(-b))?;
            if m.pattern == Pattern::D {
                bracket(ctx, &x, &inner, &ctx.t_pow(b))
            } else {
                let z = ad(ctx, side, n[3], &x)?;
                bracket(ctx, &z, &inner, &QScalar::one())
            }
        }
        Pattern::F => {
            let (i, s, t) = (n[0], n[1], n[2]);
            Ok(ad_chain(ctx, side, &[s, t], i)? - ad_chain(ctx, side, &[t, s], i)?)
        }
    }
}

impl Presentation {
    /// Builds every defining relation over `t = sign * q`.
    pub fn new(sys: &FundamentalSystem, sign: i32) -> Result<Self> {
        let cartan = CartanData::new(sys)?;
        let ctx = Ctx::new(sys, sign)?;
        let r = ctx.rank() as Node;
        let mut rels = Vec::new();
        let mut push = |family, side, nodes: Vec<Node>, element: FreeElement| {
            rels.push(Relation { family, side, nodes, element });
        };
        let one = FreeElement::one();
        let (e, f, k, ki, s) = (FreeElement::e, FreeElement::f, FreeElement::k, FreeElement::k_inv, FreeElement::sigma);
        for i in 0..r {
            push(Family::Torus, None, vec![i], k(i) * ki(i) - one.clone());
            push(Family::Torus, None, vec![i], ki(i) * k(i) - one.clone());
            push(Family::Torus, None, vec![i], s(i) * s(i) - one.clone());
            for j in 0..r {
                if i < j {
                    push(Family::Torus, None, vec![i, j], k(i) * k(j) - k(j) * k(i));
                    push(Family::Torus, None, vec![i, j], s(i) * s(j) - s(j) * s(i));
                }
                if i != j {
                    push(Family::Torus, None, vec![i, j], s(i) * k(j) - k(j) * s(i));
                }
                push(Family::Torus, None, vec![i, j], s(i) * k(i) - k(i) * s(i));
                let tb = ctx.t_pow(ctx.b(i, j));
                let tb_inv = ctx.t_pow(-ctx.b(i, j));
                push(Family::Torus, None, vec![i, j], k(i) * e(j) * ki(i) - e(j).scale(&tb));
                push(Family::Torus, None, vec![i, j], k(i) * f(j) * ki(i) - f(j).scale(&tb_inv));
                let sg = if ctx.sigma_negates(i, j) { -QScalar::one() } else { QScalar::one() };
                push(Family::Torus, None, vec![i, j], s(i) * e(j) * s(i) - e(j).scale(&sg));
                push(Family::Torus, None, vec![i, j], s(i) * f(j) * s(i) - f(j).scale(&sg));
            }
        }
        for i in 0..r {
            for j in 0..r {
                let sg = if ctx.is_odd(i) && ctx.is_odd(j) { -QScalar::one() } else { QScalar::one() };
                let mut x = e(i) * f(j) - (f(j) * e(i)).scale(&sg);
                if i == j {
                    x = x - (k(i) - ki(i)).scale(ctx.cross_coefficient(i));
                }
                push(Family::Ef, None, vec![i, j], x);
            }
        }
        let patterns = higher_serre_scan(&cartan);
        for side in [Side::E, Side::F] {
            for i in 0..r {
                let iu = i as usize;
                if cartan.isotropic(iu) {
                    push(Family::IsotropicSquare, Some(side), vec![i], gen(side, i) * gen(side, i));
                    continue;
                }
                for j in (0..r).filter(|&j| j != i) {
                    let a = cartan.a[iu][j as usize];
                    if a > 0 {
                        return Err(Error::Invalid(format!("positive Cartan entry a[{i}][{j}] = {a}")));
                    }
                    let ops = vec![i; (1 - a) as usize];
                    push(Family::Serre, Some(side), vec![i, j], ad_chain(&ctx, side, &ops, j)?);
                }
            }
            for m in &patterns {
                push(Family::HigherSerre(m.pattern), Some(side), m.nodes.clone(), higher_serre_element(&ctx, side, m)?);
            }
        }
        for rel in &rels {
            for c in rel.element.terms().values() {
                if !c.is_in_q() {
                    return Err(Error::HalfPower(format!("{} relation on {:?}: {c}", rel.family.tag(), rel.nodes)));
                }
            }
        }
        Ok(Presentation { system: sys.clone(), cartan, ctx, relations: rels })
    }

    pub fn sign(&self) -> i32 {
        self.ctx.sign()
    }

    pub fn patterns(&self) -> Vec<PatternMatch> {
        higher_serre_scan(&self.cartan)
    }

    pub fn one_sided(&self, side: Side) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(move |r| r.side == Some(side))
    }

    /// The one-sided relations of `side` as word polynomials in node indices.
    pub fn ideal_generators(&self, side: Side) -> Vec<WordPoly> {
        self.one_sided(side).map(|r| word_poly(&r.element)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ctx = &self.ctx;
        let label = |v: &[Node]| v.iter().map(|&i| ctx.label(i)).collect::<Vec<_>>();
        let mut generators = Vec::new();
        for i in 0..ctx.rank() as Node {
            let parity = if ctx.is_odd(i) { "odd" } else { "even" };
            for l in [Letter::E(i), Letter::F(i)] {
                generators.push(json!({ "name": ctx.format_letter(l), "parity": parity }));
            }
            for l in [Letter::K(i), Letter::KInv(i), Letter::S(i)] {
                generators.push(json!({ "name": ctx.format_letter(l), "parity": "even" }));
            }
        }
        let relations: Vec<_> = self
            .relations
            .iter()
            .map(|r| {
                json!({
                    "family": r.family.tag(),
                    "side": r.side,
                    "nodes": label(&r.nodes),
                    "element": ctx.format_free(&r.element),
                })
            })
            .collect();
        json!({
            "algebra": self.system.algebra.tag(),
            "name": self.system.name(),
            "order": self.system.space.order_code(),
            "sign": if self.sign() == 1 { "+q" } else { "-q" },
            "cartan": self.cartan.to_json(),
            "generators": generators,
            "patterns": self.patterns().iter().map(|m| json!({
                "pattern": m.pattern,
                "nodes": label(&m.nodes),
            })).collect::<Vec<_>>(),
            "relations": relations,
        })
    }
}

/// Reads a one-sided free element as a polynomial in node words.
pub fn word_poly(x: &FreeElement) -> WordPoly {
    let mut p = WordPoly::zero();
    for (w, c) in x.terms() {
        let nodes = w
            .iter()
            .map(|l| match *l {
                Letter::E(i) | Letter::F(i) => i,
                _ => unreachable!("one-sided relation with group-like letter"),
            })
            .collect();
        p.add_term(nodes, c.clone());
    }
    p
}
