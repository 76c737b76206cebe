//! The `q <-> -q` correspondences: generator images and their verification.
//!
//! For a source system `Π` of `g` the partner is `Π' = φ(Π)` of `g'`. The
//! forward map sends the generators of `U_{-q}(g', Π') ♯ CG'` to elements of
//! `U_q(g, Π) ♯ CG`; the reverse map goes the other way with the primed
//! formulas. Every image is a `σ`-monomial times one generator.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::presentation::{Presentation, Relation};
use crate::rootdata::{Algebra, Basis, FundamentalSystem, Partner};
use crate::superalg::{ideal_member, Ctx, FreeElement, Letter, MemberOptions, NormalForm, Node, Side, WordPoly};

/// Diagram type of the pair, which fixes the node-0 images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Row {
    /// `osp(2m+1|2n)`: type 1 when the last root is odd, type 2 otherwise.
    Classical(u8),
    /// `sl(2m+1|2n)^(2)` against `osp(2n+1|2m)^(1)`, by the kinds of `E_1, E_2`.
    Twisted(u8),
    /// `osp(2m+2|2n)^(2)` against `osp(2n+2|2m)^(2)`, by the kind of `E_1`.
    OspTwisted(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Generators of `U_{-q}(g', Π')` into `U_q(g, Π)`.
    Forward,
    /// Generators of `U_q(g, Π)` into `U_{-q}(g', Π')`.
    Reverse,
}

#[derive(Clone, Debug)]
pub struct CorrespondencePair {
    pub source: FundamentalSystem,
    pub partner: FundamentalSystem,
    pub row: Row,
}

impl CorrespondencePair {
    pub fn new(source: &FundamentalSystem) -> Result<Self> {
        let (partner, kind) = source.phi_system()?;
        if kind != Partner::Correspondence || !Algebra::correspondence_sources().contains(&source.algebra) {
            return Err(Error::Unsupported(format!(
                "{} is not the source side of a verified correspondence",
                source.name()
            )));
        }
        let sp = &source.space;
        let is_eps = |k: usize| matches!(sp.order.get(k), Some(Basis::Eps(_)));
        let row = match source.algebra {
            Algebra::OspOdd => Row::Classical(if source.nodes.last().is_some_and(|n| n.odd) { 1 } else { 2 }),
            Algebra::SlOddAff2 if sp.order.len() < 2 => Row::Twisted(1),
            Algebra::SlOddAff2 => Row::Twisted(match (is_eps(0), is_eps(1)) {
                (true, true) => 1,
                (true, false) => 2,
                (false, false) => 3,
                (false, true) => 4,
            }),
            Algebra::OspAff2 => Row::OspTwisted(if is_eps(0) { 1 } else { 2 }),
            _ => unreachable!(),
        };
        Ok(CorrespondencePair { source: source.clone(), partner, row })
    }

    /// The system whose algebra receives the images, and its sign.
    pub fn holder(&self, dir: Direction) -> (&FundamentalSystem, i32) {
        match dir {
            Direction::Forward => (&self.source, 1),
            Direction::Reverse => (&self.partner, -1),
        }
    }

    /// The system whose relations are checked, and its sign.
    pub fn target(&self, dir: Direction) -> (&FundamentalSystem, i32) {
        match dir {
            Direction::Forward => (&self.partner, -1),
            Direction::Reverse => (&self.source, 1),
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "{} ({}) <-> {} ({}), {:?}",
            self.source.name(),
            self.source.space.order_code(),
            self.partner.name(),
            self.partner.space.order_code(),
            self.row
        )
    }
}

/// `σ`-masks of the images: generator `x_p` of the target goes to
/// `σ^{mask} x_p` in the holder, and `σ'_p` goes to `σ_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageAssignment {
    pub direction: Direction,
    pub e: Vec<u64>,
    pub f: Vec<u64>,
    pub k: Vec<u64>,
}

/// `Φ_i`, `Φ̃_i` and `∏_{j∈τ} Φ̃_1 Φ̃_{j+1}` as masks over positions of `sys`.
pub(crate) struct Sigmas<'a> {
    sys: &'a FundamentalSystem,
    top: usize,
}

impl<'a> Sigmas<'a> {
    pub(crate) fn new(sys: &'a FundamentalSystem) -> Self {
        Sigmas { sys, top: sys.space.m + sys.space.n }
    }

    pub(crate) fn sigma(&self, label: usize) -> u64 {
        if label == 0 || label > self.top {
            return 0;
        }
        1 << self.sys.position(label).expect("label in range")
    }

    pub(crate) fn phi(&self, i: usize) -> u64 {
        (i.max(1)..=self.top).fold(0, |acc, k| acc ^ self.sigma(k))
    }

    pub(crate) fn phi_tilde(&self, i: usize) -> u64 {
        (i..=self.top).step_by(2).fold(0, |acc, k| acc ^ self.sigma(k))
    }

    pub(crate) fn tau_product(&self) -> u64 {
        self.sys.tau().iter().fold(0, |acc, &j| acc ^ self.phi_tilde(1) ^ self.phi_tilde(j + 1))
    }
}

/// Node-0 images of the reverse map for the self-dual `osp(2m+2|2n)^(2)` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroRule {
    /// Forward formulas of `Π'` read as a source system in its own row.
    PartnerRow,
    /// The primed formulas as printed alongside the forward ones; these fail
    /// the `e_0 f_0` relation and the round trip.
    Printed,
}

pub fn build_images(pair: &CorrespondencePair, dir: Direction) -> ImageAssignment {
    build_images_with(pair, dir, ZeroRule::PartnerRow)
}

pub fn build_images_with(pair: &CorrespondencePair, dir: Direction, rule: ZeroRule) -> ImageAssignment {
    let (sys, _) = pair.holder(dir);
    let row = match (pair.row, dir, rule) {
        (Row::OspTwisted(_), Direction::Reverse, ZeroRule::PartnerRow) => {
            Row::OspTwisted(if matches!(sys.space.order.first(), Some(Basis::Eps(_))) { 1 } else { 2 })
        }
        _ => pair.row,
    };
    let dir_formula = if rule == ZeroRule::PartnerRow { Direction::Forward } else { dir };
    let r = sys.len();
    let sg = Sigmas::new(sys);
    let tau = sys.tau();
    let (mut e, mut f, mut k) = (vec![0; r], vec![0; r], vec![0; r]);
    for (p, node) in sys.nodes.iter().enumerate() {
        let i = node.label;
        if i == 0 {
            let prod = sg.tau_product();
            (e[p], f[p], k[p]) = match (row, dir_formula) {
                (Row::Twisted(1 | 2), _) => (0, 0, 0),
                (Row::Twisted(3), _) => (sg.phi(2), sg.phi(1), sg.sigma(1)),
                (Row::Twisted(_), _) => (sg.phi_tilde(3), sg.phi_tilde(1), sg.sigma(1)),
                (Row::OspTwisted(1), _) => (sg.phi_tilde(2) ^ prod, sg.phi_tilde(1) ^ prod, sg.phi(1)),
                (Row::OspTwisted(_), Direction::Forward) => (sg.phi(1) ^ prod, prod, sg.phi(1)),
                (Row::OspTwisted(_), Direction::Reverse) => (sg.phi_tilde(1) ^ prod, prod, sg.phi(1)),
                (Row::Classical(_), _) => unreachable!("classical systems have no node 0"),
            };
            continue;
        }
        if tau.contains(&i) {
            e[p] = sg.phi_tilde(i + 2);
            f[p] = sg.phi_tilde(i);
        } else {
            e[p] = sg.phi(i + 1);
            f[p] = sg.phi(i);
        }
        k[p] = sg.sigma(i);
    }
    ImageAssignment { direction: dir, e, f, k }
}

fn sigma_word(mask: u64) -> Vec<Letter> {
    (0..64).filter(|&i| mask >> i & 1 == 1).map(|i| Letter::S(i as Node)).collect()
}

impl ImageAssignment {
    /// Image of a target letter as a free element of the holder.
    pub fn letter_image(&self, l: Letter) -> FreeElement {
        let mut w = Vec::new();
        match l {
            Letter::E(p) => {
                w = sigma_word(self.e[p as usize]);
                w.push(l);
            }
            Letter::F(p) => {
                w = sigma_word(self.f[p as usize]);
                w.push(l);
            }
            Letter::K(p) => {
                w = sigma_word(self.k[p as usize]);
                w.push(l);
            }
            Letter::KInv(p) => {
                w.push(l);
                w.extend(sigma_word(self.k[p as usize]));
            }
            Letter::S(_) => w.push(l),
        }
        FreeElement::word(w)
    }

    /// Substitutes the images into a target element and normalizes in `holder`.
    pub fn apply(&self, holder: &Ctx, x: &FreeElement) -> Result<NormalForm> {
        let r = holder.rank() as Node;
        let mut cache = std::collections::HashMap::new();
        for i in 0..r {
            for l in [Letter::E(i), Letter::F(i), Letter::K(i), Letter::KInv(i), Letter::S(i)] {
                cache.insert(l, holder.normalize(&self.letter_image(l)));
            }
        }
        let mut out = NormalForm::zero(holder);
        for (w, c) in x.terms() {
            let mut acc = NormalForm::scalar(holder, c.clone());
            for l in w {
                let img = cache.get(l).ok_or_else(|| Error::UnknownGenerator(format!("{l:?}")))?;
                acc = holder.mul(&acc, img)?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The residue is not in the ideal at its own multidegree.
    InconclusiveAtDegree,
}

/// One ideal-membership certificate term: `(coef, left labels, generator, right labels)`.
pub type CertificateTerm = (String, Vec<usize>, String, Vec<usize>);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub direction: Option<Direction>,
    pub side: Option<Side>,
    /// Node labels.
    pub nodes: Vec<usize>,
    pub status: Status,
    /// The substituted, normalized element, or the failure witness.
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<CertificateTerm>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: String,
    pub subject: String,
    pub checks: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    /// Wall time; left out of JSON so that reports are reproducible.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn new(kind: &str, subject: String, mut checks: Vec<CheckRecord>, start: Instant) -> Self {
        checks.sort_by(|a, b| {
            (a.direction, &a.check, a.side, &a.nodes).cmp(&(b.direction, &b.check, b.side, &b.nodes))
        });
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        VerificationReport {
            kind: kind.into(),
            subject,
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            inconclusive: count(Status::InconclusiveAtDegree),
            checks,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && self.inconclusive == 0
    }

    pub fn merge(kind: &str, subject: String, reports: Vec<VerificationReport>) -> Self {
        let elapsed = reports.iter().map(|r| r.elapsed_ms).sum();
        let checks = reports.into_iter().flat_map(|r| r.checks).collect();
        let mut out = Self::new(kind, subject, checks, Instant::now());
        out.elapsed_ms = elapsed;
        out
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{} {}: {} passed, {} failed, {} inconclusive",
            self.kind, self.subject, self.passed, self.failed, self.inconclusive
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap_or_else(|e| json!({ "error": e.to_string() }))
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status != Status::Pass)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub prescreen: Option<u64>,
}

fn labels(ctx: &Ctx, v: &[Node]) -> Vec<usize> {
    v.iter().map(|&i| ctx.label(i)).collect()
}

fn check_relation(
    rel: &Relation,
    images: &ImageAssignment,
    holder: &Presentation,
    target: &Presentation,
    gens: &[WordPoly],
    opts: &VerifyOptions,
) -> CheckRecord {
    let hc = &holder.ctx;
    let mut rec = CheckRecord {
        check: rel.family.tag(),
        direction: Some(images.direction),
        side: rel.side,
        nodes: labels(&target.ctx, &rel.nodes),
        status: Status::Pass,
        detail: String::new(),
        certificate: None,
    };
    let img = match images.apply(hc, &rel.element) {
        Ok(x) => x,
        Err(e) => {
            rec.status = Status::Fail;
            rec.detail = e.to_string();
            return rec;
        }
    };
    rec.detail = hc.format_normal(&img);
    if img.is_zero() {
        return rec;
    }
    if !rel.family.is_one_sided() {
        rec.status = Status::Fail;
        return rec;
    }
    let peeled = match img.peel() {
        Ok(Some(p)) if Some(p.side) == rel.side => p,
        Ok(_) => {
            rec.status = Status::Fail;
            return rec;
        }
        Err(e) => {
            rec.status = Status::Fail;
            rec.detail = format!("{e}: {}", rec.detail);
            return rec;
        }
    };
    match ideal_member(&peeled.poly, gens, hc.rank(), &MemberOptions { prescreen: opts.prescreen }) {
        Ok(m) if m.member => {
            let gen_names: Vec<String> = holder
                .one_sided(peeled.side)
                .map(|r| format!("{}{:?}", r.family.tag(), labels(hc, &r.nodes)))
                .collect();
            rec.certificate = m.certificate.map(|c| {
                c.terms
                    .iter()
                    .map(|t| (t.coef.to_string(), labels(hc, &t.left), gen_names[t.generator].clone(), labels(hc, &t.right)))
                    .collect()
            });
        }
        Ok(_) => rec.status = Status::InconclusiveAtDegree,
        Err(e) => {
            rec.status = Status::Fail;
            rec.detail = format!("{e}: {}", rec.detail);
        }
    }
    rec
}

fn verify_direction(pair: &CorrespondencePair, images: &ImageAssignment, opts: &VerifyOptions) -> Result<Vec<CheckRecord>> {
    let dir = images.direction;
    let (hs, hsign) = pair.holder(dir);
    let (ts, tsign) = pair.target(dir);
    let holder = Presentation::new(hs, hsign)?;
    let target = Presentation::new(ts, tsign)?;
    let gens_e = holder.ideal_generators(Side::E);
    let gens_f = holder.ideal_generators(Side::F);
    let mut out: Vec<CheckRecord> = target
        .relations
        .par_iter()
        .map(|rel| {
            let gens = if rel.side == Some(Side::F) { &gens_f } else { &gens_e };
            check_relation(rel, images, &holder, &target, gens, opts)
        })
        .collect();
    out.extend(sigma_equivariance(images, &holder.ctx, &target.ctx)?);
    Ok(out)
}

/// `σ_i E_j σ_i` must equal `E_j` times the sign by which `σ'_i` acts on `e'_j`.
fn sigma_equivariance(images: &ImageAssignment, holder: &Ctx, target: &Ctx) -> Result<Vec<CheckRecord>> {
    let r = target.rank() as Node;
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for side in [Side::E, Side::F] {
                let l = if side == Side::E { Letter::E(j) } else { Letter::F(j) };
                let x = images.apply(holder, &FreeElement::letter(l))?;
                let conj = holder.conjugate_sigma(i, &x);
                let want = if target.sigma_negates(i, j) { x.neg() } else { x.clone() };
                let ok = conj == want;
                out.push(CheckRecord {
                    check: "sigma-equivariance".into(),
                    direction: Some(images.direction),
                    side: Some(side),
                    nodes: vec![target.label(i), target.label(j)],
                    status: if ok { Status::Pass } else { Status::Fail },
                    detail: if ok { String::new() } else { holder.format_normal(&conj.checked_sub(&want)?) },
                    certificate: None,
                });
            }
        }
    }
    Ok(out)
}

/// Composing the two maps must fix every generator on both sides.
pub fn round_trip(pair: &CorrespondencePair, rule: ZeroRule) -> Result<Vec<CheckRecord>> {
    let fwd = build_images(pair, Direction::Forward);
    let rev = build_images_with(pair, Direction::Reverse, rule);
    let mut out = Vec::new();
    for (start, outer, inner) in [(Direction::Forward, &fwd, &rev), (Direction::Reverse, &rev, &fwd)] {
        // `inner` maps start generators into the other algebra; `outer` maps back.
        let (home, sign) = pair.holder(start);
        let ctx = Ctx::new(home, sign)?;
        for p in 0..ctx.rank() as Node {
            for l in [Letter::E(p), Letter::F(p), Letter::K(p), Letter::KInv(p), Letter::S(p)] {
                let there = inner.letter_image(l);
                let back = outer.apply(&ctx, &there)?;
                let want = ctx.normalize(&FreeElement::letter(l));
                let ok = back == want;
                out.push(CheckRecord {
                    check: "round-trip".into(),
                    direction: Some(start),
                    side: None,
                    nodes: vec![ctx.label(p)],
                    status: if ok { Status::Pass } else { Status::Fail },
                    detail: format!("{} -> {}", ctx.format_letter(l), ctx.format_normal(&back)),
                    certificate: None,
                });
            }
        }
    }
    Ok(out)
}

/// Checks both maps against all defining relations, the `σ`-actions and the
/// round trip.
pub fn verify_isomorphism(pair: &CorrespondencePair, opts: &VerifyOptions) -> Result<VerificationReport> {
    verify_isomorphism_with(pair, opts, ZeroRule::PartnerRow)
}

pub fn verify_isomorphism_with(
    pair: &CorrespondencePair,
    opts: &VerifyOptions,
    rule: ZeroRule,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut checks = verify_direction(pair, &build_images(pair, Direction::Forward), opts)?;
    checks.extend(verify_direction(pair, &build_images_with(pair, Direction::Reverse, rule), opts)?);
    checks.extend(round_trip(pair, rule)?);
    Ok(VerificationReport::new("verify-iso", pair.describe(), checks, start))
}
