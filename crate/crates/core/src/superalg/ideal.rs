//! Membership in a two-sided ideal of the free algebra on one letter
//! family, decided exactly at a single multidegree.
//!
//! The candidate `x` of multidegree `D` lies in the ideal generated by
//! `g_1..g_r` at degree `D` iff it is a linear combination of the products
//! `w1 * g * w2` of that multidegree. That is a finite linear system over
//! Q(q), solved by fraction-field Gaussian elimination.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Node;
use crate::error::{Error, Result};
use crate::qfield::modp::{self, PRIME};
use crate::qfield::QScalar;

/// A noncommutative polynomial in one letter family (all `e` or all `f`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WordPoly {
    terms: BTreeMap<Vec<Node>, QScalar>,
}

impl WordPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Vec<Node>) -> Self {
        let mut p = Self::zero();
        p.add_term(w, QScalar::one());
        p
    }

    pub fn add_term(&mut self, w: Vec<Node>, c: QScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Node>, QScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &WordPoly) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WordPoly) -> Self {
        self.add(&other.scale(&-QScalar::one()))
    }

    /// `left * self * right`.
    pub fn sandwich(&self, left: &[Node], right: &[Node]) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut nw = left.to_vec();
            nw.extend_from_slice(w);
            nw.extend_from_slice(right);
            out.add_term(nw, c.clone());
        }
        out
    }

    /// Letter counts per node, or an error if the terms disagree.
    pub fn degree(&self, rank: usize) -> Result<Vec<u32>> {
        let count = |w: &Vec<Node>| {
            let mut d = vec![0u32; rank];
            for &i in w {
                d[i as usize] += 1;
            }
            d
        };
        let mut it = self.terms.keys().map(count);
        let first = it.next().unwrap_or_else(|| vec![0; rank]);
        if it.any(|d| d != first) {
            return Err(Error::Inhomogeneous("word polynomial is not multidegree-homogeneous".into()));
        }
        Ok(first)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MemberOptions {
    /// Seed for the modular column screen; `None` runs pure exact elimination.
    pub prescreen: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertTerm {
    pub left: Vec<Node>,
    pub generator: usize,
    pub right: Vec<Node>,
    pub coef: QScalar,
}

/// `x = Σ coef * left * gens[generator] * right`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub terms: Vec<CertTerm>,
}

impl Certificate {
    /// Re-multiplies the certificate.
    pub fn replay(&self, gens: &[WordPoly]) -> Result<WordPoly> {
        let mut acc = WordPoly::zero();
        for t in &self.terms {
            let g = gens
                .get(t.generator)
                .ok_or_else(|| Error::Invalid(format!("certificate names generator {}", t.generator)))?;
            acc = acc.add(&g.sandwich(&t.left, &t.right).scale(&t.coef));
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    /// Number of words of the multidegree.
    pub rows: usize,
    /// Number of spanning products considered.
    pub cols: usize,
    pub rank: usize,
    pub certificate: Option<Certificate>,
}

struct Column {
    left: Vec<Node>,
    generator: usize,
    right: Vec<Node>,
    entries: Vec<(usize, QScalar)>,
}

/// Decides `x ∈ (gens)` at the multidegree of `x`.
pub fn ideal_member(x: &WordPoly, gens: &[WordPoly], rank: usize, opts: &MemberOptions) -> Result<Membership> {
    let d = x.degree(rank)?;
    let gdeg = gens.iter().map(|g| g.degree(rank)).collect::<Result<Vec<_>>>()?;
    let words = words_of(&d);
    let row_of: BTreeMap<&Vec<Node>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let to_entries = |p: &WordPoly| -> Vec<(usize, QScalar)> {
        p.terms().iter().map(|(w, c)| (row_of[w], c.clone())).collect()
    };

    let mut cols = Vec::new();
    for (gi, (g, gd)) in gens.iter().zip(&gdeg).enumerate() {
        if g.is_zero() || gd.iter().zip(&d).any(|(a, b)| a > b) {
            continue;
        }
        let rest: Vec<u32> = d.iter().zip(gd).map(|(a, b)| a - b).collect();
        for w in words_of(&rest) {
            for k in 0..=w.len() {
                let (l, r) = w.split_at(k);
                let p = g.sandwich(l, r);
                cols.push(Column { left: l.to_vec(), generator: gi, right: r.to_vec(), entries: to_entries(&p) });
            }
        }
    }
    let target = to_entries(x);
    let ncols = cols.len();
    if x.is_zero() {
        return Ok(Membership {
            member: true,
            rows: words.len(),
            cols: ncols,
            rank: 0,
            certificate: Some(Certificate::default()),
        });
    }

    if let Some(seed) = opts.prescreen {
        let (chosen, in_span) = modular_screen(&cols, &target, words.len(), seed);
        if in_span {
            let sub: Vec<&Column> = chosen.iter().map(|&i| &cols[i]).collect();
            let (rank, coeffs) = exact_solve(&sub, &target, words.len());
            if let Some(coeffs) = coeffs {
                let certificate = certificate_from(&sub, coeffs);
                return Ok(Membership { member: true, rows: words.len(), cols: ncols, rank, certificate: Some(certificate) });
            }
        }
    }
    let all: Vec<&Column> = cols.iter().collect();
    let (rank, coeffs) = exact_solve(&all, &target, words.len());
    Ok(Membership {
        member: coeffs.is_some(),
        rows: words.len(),
        cols: ncols,
        rank,
        certificate: coeffs.map(|c| certificate_from(&all, c)),
    })
}

fn certificate_from(cols: &[&Column], coeffs: BTreeMap<usize, QScalar>) -> Certificate {
    Certificate {
        terms: coeffs
            .into_iter()
            .map(|(i, coef)| CertTerm {
                left: cols[i].left.clone(),
                generator: cols[i].generator,
                right: cols[i].right.clone(),
                coef,
            })
            .collect(),
    }
}

/// All words with the given letter counts, in lexicographic order.
fn words_of(counts: &[u32]) -> Vec<Vec<Node>> {
    fn rec(counts: &mut [u32], cur: &mut Vec<Node>, out: &mut Vec<Vec<Node>>) {
        if counts.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(i as Node);
                rec(counts, cur, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut counts.to_vec(), &mut Vec::new(), &mut out);
    out
}

struct Basis {
    pivot: usize,
    vec: BTreeMap<usize, QScalar>,
    /// Expression of `vec` in the original columns.
    combo: BTreeMap<usize, QScalar>,
}

fn axpy(dst: &mut BTreeMap<usize, QScalar>, a: &QScalar, src: &BTreeMap<usize, QScalar>) {
    for (k, v) in src {
        let e = dst.entry(*k).or_default();
        *e = &*e + &(a * v);
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

/// Incremental elimination over Q(q). Returns the rank of the columns and,
/// if the target is in their span, its coefficients.
fn exact_solve(
    cols: &[&Column],
    target: &[(usize, QScalar)],
    nrows: usize,
) -> (usize, Option<BTreeMap<usize, QScalar>>) {
    let mut basis: Vec<Basis> = Vec::new();
    let reduce = |basis: &[Basis], v: &mut BTreeMap<usize, QScalar>| -> Vec<(usize, QScalar)> {
        let mut used = Vec::new();
        for (bi, b) in basis.iter().enumerate() {
            if let Some(c) = v.get(&b.pivot).cloned() {
                axpy(v, &-&c, &b.vec);
                used.push((bi, c));
            }
        }
        used
    };
    for (ci, col) in cols.iter().enumerate() {
        if basis.len() == nrows {
            break;
        }
        let mut v: BTreeMap<usize, QScalar> = col.entries.iter().cloned().collect();
        let used = reduce(&basis, &mut v);
        let Some((&pivot, pv)) = v.iter().next() else { continue };
        let inv = pv.inv().expect("nonzero pivot");
        let mut combo = BTreeMap::new();
        combo.insert(ci, QScalar::one());
        for (bi, c) in &used {
            axpy(&mut combo, &-c, &basis[*bi].combo);
        }
        let vec = v.iter().map(|(k, x)| (*k, x * &inv)).collect();
        let combo = combo.iter().map(|(k, x)| (*k, x * &inv)).collect();
        basis.push(Basis { pivot, vec, combo });
    }
    let rank = basis.len();
    let mut v: BTreeMap<usize, QScalar> = target.iter().cloned().collect();
    let used = reduce(&basis, &mut v);
    if !v.is_empty() {
        return (rank, None);
    }
    let mut coeffs = BTreeMap::new();
    for (bi, c) in &used {
        axpy(&mut coeffs, c, &basis[*bi].combo);
    }
    (rank, Some(coeffs))
}

/// Picks a set of columns independent at a random point `v = x` mod p, and
/// reports whether the target looked to be in their span there.
fn modular_screen(cols: &[Column], target: &[(usize, QScalar)], nrows: usize, seed: u64) -> (Vec<usize>, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = PRIME;
    'point: loop {
        let x: u64 = rng.gen_range(2..p - 1);
        let eval = |entries: &[(usize, QScalar)]| -> Option<Vec<u64>> {
            let mut v = vec![0u64; nrows];
            for (r, c) in entries {
                v[*r] = c.eval_mod(x, p)?;
            }
            Some(v)
        };
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut chosen = Vec::new();
        let reduce = |pivots: &[(usize, Vec<u64>)], v: &mut Vec<u64>| {
            for (pr, b) in pivots {
                let c = v[*pr];
                if c != 0 {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi = modp::sub(*vi, modp::mul(c, *bi, p), p);
                    }
                }
            }
        };
        for (ci, col) in cols.iter().enumerate() {
            if pivots.len() == nrows {
                break;
            }
            let Some(mut v) = eval(&col.entries) else { continue 'point };
            reduce(&pivots, &mut v);
            if let Some(pr) = v.iter().position(|&a| a != 0) {
                let inv = modp::inv(v[pr], p);
                for a in v.iter_mut() {
                    *a = modp::mul(*a, inv, p);
                }
                pivots.push((pr, v));
                chosen.push(ci);
            }
        }
        let Some(mut t) = eval(target) else { continue 'point };
        reduce(&pivots, &mut t);
        return (chosen, t.iter().all(|&a| a == 0));
    }
}
