use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AmbientSpace, Basis, RootVector};
use crate::error::{Error, Result};

/// The classical and affine series. `(m, n)` always refers to the ambient
/// space `E(m|n)` or `E_δ(m|n)`, so e.g. `OspOdd` with `(m, n)` is `osp(2m+1|2n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algebra {
    Sl,
    OspOdd,
    OspEven,
    SlAff1,
    OspOddAff1,
    OspEvenAff1,
    SlOddAff2,
    SlEvenAff2,
    OspAff2,
    SlAff4,
}

/// How `φ(Π)` relates to the source algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Partner {
    /// A genuinely different partner with a `q <-> -q` correspondence.
    Correspondence,
    /// The partner is the same algebra; nothing to verify.
    SameAlgebra,
}

impl Algebra {
    pub const ALL: [Algebra; 10] = [
        Algebra::Sl,
        Algebra::OspOdd,
        Algebra::OspEven,
        Algebra::SlAff1,
        Algebra::OspOddAff1,
        Algebra::OspEvenAff1,
        Algebra::SlOddAff2,
        Algebra::SlEvenAff2,
        Algebra::OspAff2,
        Algebra::SlAff4,
    ];

    pub fn is_affine(self) -> bool {
        !matches!(self, Algebra::Sl | Algebra::OspOdd | Algebra::OspEven)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Algebra::Sl => "sl",
            Algebra::OspOdd => "osp-odd",
            Algebra::OspEven => "osp-even",
            Algebra::SlAff1 => "sl-aff1",
            Algebra::OspOddAff1 => "osp-odd-aff1",
            Algebra::OspEvenAff1 => "osp-even-aff1",
            Algebra::SlOddAff2 => "sl-odd-aff2",
            Algebra::SlEvenAff2 => "sl-even-aff2",
            Algebra::OspAff2 => "osp-aff2",
            Algebra::SlAff4 => "sl-aff4",
        }
    }

    /// Conventional name with the superdimension filled in, e.g. `osp(3|2)`.
    pub fn name(self, m: usize, n: usize) -> String {
        match self {
            Algebra::Sl => format!("sl({m}|{n})"),
            Algebra::OspOdd => format!("osp({}|{})", 2 * m + 1, 2 * n),
            Algebra::OspEven => format!("osp({}|{})", 2 * m, 2 * n),
            Algebra::SlAff1 => format!("sl({m}|{n})^(1)"),
            Algebra::OspOddAff1 => format!("osp({}|{})^(1)", 2 * m + 1, 2 * n),
            Algebra::OspEvenAff1 => format!("osp({}|{})^(1)", 2 * m, 2 * n),
            Algebra::SlOddAff2 => format!("sl({}|{})^(2)", 2 * m + 1, 2 * n),
            Algebra::SlEvenAff2 => format!("sl({}|{})^(2)", 2 * m, 2 * n),
            Algebra::OspAff2 => format!("osp({}|{})^(2)", 2 * m + 2, 2 * n),
            Algebra::SlAff4 => format!("sl({}|{})^(4)", 2 * m + 1, 2 * n + 1),
        }
    }

    /// Partner under `φ`, or `None` when `φ(Π)` is not a fundamental system
    /// of any tabulated algebra.
    pub fn partner(self) -> Option<(Algebra, Partner)> {
        use Algebra::*;
        match self {
            OspOdd => Some((OspOdd, Partner::Correspondence)),
            SlOddAff2 => Some((OspOddAff1, Partner::Correspondence)),
            OspOddAff1 => Some((SlOddAff2, Partner::Correspondence)),
            OspAff2 => Some((OspAff2, Partner::Correspondence)),
            Sl | SlAff1 | SlEvenAff2 | SlAff4 => Some((self, Partner::SameAlgebra)),
            OspEven | OspEvenAff1 => None,
        }
    }

    /// The three source families that carry a correspondence.
    pub fn correspondence_sources() -> [Algebra; 3] {
        [Algebra::OspOdd, Algebra::SlOddAff2, Algebra::OspAff2]
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algebra::ALL
            .iter()
            .copied()
            .find(|a| a.tag() == s)
            .ok_or_else(|| Error::Unsupported(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootNode {
    pub label: usize,
    pub root: RootVector,
    pub odd: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalSystem {
    pub algebra: Algebra,
    pub space: AmbientSpace,
    /// `α_0` first in the affine case, then `α_1 .. α_{m+n}`.
    pub nodes: Vec<RootNode>,
}

impl FundamentalSystem {
    /// Builds `Π` from the tabulated simple roots of the algebra in the given ordered basis.
    pub fn new(algebra: Algebra, space: &AmbientSpace) -> Result<Self> {
        if algebra.is_affine() != space.affine {
            return Err(Error::Unsupported(format!(
                "{} needs an {} ambient space",
                algebra,
                if algebra.is_affine() { "affine" } else { "classical" }
            )));
        }
        let r = space.m + space.n;
        let e = |a: usize| space.e(a);
        let last_is_eps = matches!(space.order[r - 1], Basis::Eps(_));
        let first_is_eps = matches!(space.order[0], Basis::Eps(_));
        let need = |ok: bool, what: &str| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::Unsupported(format!(
                    "{} with order {} has no {what}",
                    algebra.name(space.m, space.n),
                    space.order_code()
                )))
            }
        };

        let mut roots: Vec<RootVector> = (1..r).map(|i| e(i).sub(&e(i + 1))).collect();
        use Algebra::*;
        match algebra {
            Sl | SlAff1 => need(r >= 2, "simple roots")?,
            OspOdd | OspOddAff1 | SlOddAff2 | OspAff2 | SlAff4 => roots.push(e(r)),
            OspEven | OspEvenAff1 | SlEvenAff2 => {
                if last_is_eps {
                    need(r >= 2, "root E_{m+n-1} + E_{m+n}")?;
                    roots.push(e(r - 1).add(&e(r)));
                } else {
                    roots.push(e(r).scale(2));
                }
            }
        }
        if algebra.is_affine() {
            let d = space.imaginary();
            let two_e1 = d.sub(&e(1).scale(2));
            let e1_e2 = || -> Result<RootVector> {
                need(r >= 2, "root E_0 - E_1 - E_2")?;
                Ok(d.sub(&e(1)).sub(&e(2)))
            };
            let a0 = match algebra {
                SlAff1 => d.sub(&e(1)).add(&e(r)),
                OspOddAff1 | OspEvenAff1 => {
                    if first_is_eps {
                        e1_e2()?
                    } else {
                        two_e1
                    }
                }
                SlOddAff2 | SlEvenAff2 => {
                    if first_is_eps {
                        two_e1
                    } else {
                        e1_e2()?
                    }
                }
                OspAff2 | SlAff4 => d.sub(&e(1)),
                Sl | OspOdd | OspEven => unreachable!(),
            };
            roots.insert(0, a0);
        }
        let first_label = usize::from(!algebra.is_affine());
        let nodes = roots
            .into_iter()
            .enumerate()
            .map(|(p, root)| RootNode {
                label: p + first_label,
                odd: parity_of(algebra, space, &root),
                root,
            })
            .collect();
        Ok(FundamentalSystem { algebra, space: space.clone(), nodes })
    }

    pub fn rank(&self) -> usize {
        self.space.m + self.space.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn name(&self) -> String {
        self.algebra.name(self.space.m, self.space.n)
    }

    pub fn labels(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.label).collect()
    }

    /// Position of node `label` in `nodes`.
    pub fn position(&self, label: usize) -> Option<usize> {
        self.nodes.iter().position(|n| n.label == label)
    }

    /// Labels of the odd simple roots.
    pub fn tau(&self) -> BTreeSet<usize> {
        self.nodes.iter().filter(|n| n.odd).map(|n| n.label).collect()
    }

    pub fn root(&self, label: usize) -> Option<&RootVector> {
        self.position(label).map(|p| &self.nodes[p].root)
    }

    /// `φ(Π)` as a fundamental system of the partner algebra.
    ///
    /// For correspondence pairs the image is checked against the partner's
    /// tabulated roots; a mismatch is reported as an error.
    pub fn phi_system(&self) -> Result<(FundamentalSystem, Partner)> {
        let (partner, kind) = self
            .algebra
            .partner()
            .ok_or_else(|| Error::Unsupported(format!("{} has no φ partner", self.name())))?;
        let space = self.space.phi_space();
        let nodes: Vec<RootNode> = self
            .nodes
            .iter()
            .map(|nd| {
                let root = self.space.phi_vector(&nd.root);
                RootNode { label: nd.label, odd: parity_of(partner, &space, &root), root }
            })
            .collect();
        let image = FundamentalSystem { algebra: partner, space: space.clone(), nodes };
        if kind == Partner::Correspondence {
            let tabulated = FundamentalSystem::new(partner, &space)?;
            if tabulated != image {
                return Err(Error::Invalid(format!(
                    "φ image of {} ({}) is not the tabulated system of {}",
                    self.name(),
                    self.space.order_code(),
                    image.name()
                )));
            }
        }
        Ok((image, kind))
    }

    pub fn describe(&self) -> Vec<String> {
        self.nodes
            .iter()
            .map(|nd| {
                format!(
                    "alpha{} = {}{}",
                    nd.label,
                    self.space.format_vector(&nd.root),
                    if nd.odd { " (odd)" } else { "" }
                )
            })
            .collect()
    }
}

/// Parity via `χ`, with the imaginary coefficient counted only for the
/// fourth-order twisted series.
fn parity_of(algebra: Algebra, space: &AmbientSpace, v: &RootVector) -> bool {
    let mut chi = space.chi(v);
    if algebra == Algebra::SlAff4 {
        chi += v.coeffs[0];
    }
    chi.rem_euclid(2) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::enumerate_orders;

    fn sys(alg: Algebra, m: usize, n: usize, order: &str) -> FundamentalSystem {
        let sp = AmbientSpace::parse_order(m, n, alg.is_affine(), order).unwrap();
        FundamentalSystem::new(alg, &sp).unwrap()
    }

    #[test]
    fn osp_3_2_roots() {
        let s = sys(Algebra::OspOdd, 1, 1, "ed");
        let sp = &s.space;
        let (e1, d1) = (sp.basis_vector(Basis::Eps(1)), sp.basis_vector(Basis::Del(1)));
        assert_eq!(s.nodes[0].root, e1.sub(&d1));
        assert_eq!(s.nodes[1].root, d1);
        assert!(s.nodes[0].odd && s.nodes[1].odd);
        assert_eq!(sp.bilinear(&s.nodes[0].root, &s.nodes[0].root).unwrap(), 0);
        assert_eq!(sp.bilinear(&s.nodes[1].root, &s.nodes[1].root).unwrap(), -1);
        assert_eq!(s.name(), "osp(3|2)");
    }

    #[test]
    fn osp_aff2_zero_node() {
        for sp in enumerate_orders(2, 1, true).unwrap() {
            let s = FundamentalSystem::new(Algebra::OspAff2, &sp).unwrap();
            assert_eq!(s.nodes[0].label, 0);
            assert_eq!(s.nodes[0].root, sp.imaginary().sub(&sp.e(1)));
            assert_eq!(s.nodes[3].root, sp.e(3));
        }
    }

    #[test]
    fn fourth_order_twisted_zero_node_parity() {
        // α_0 = δ - ε_1 is odd only because the imaginary direction counts.
        let s = sys(Algebra::SlAff4, 1, 1, "ed");
        assert!(s.nodes[0].odd);
        assert_eq!(s.space.chi(&s.nodes[0].root), 0);
        let t = sys(Algebra::SlAff4, 1, 1, "de");
        assert!(!t.nodes[0].odd);
    }

    #[test]
    fn unrealizable_cases_error() {
        let sp = AmbientSpace::parse_order(1, 0, true, "e").unwrap();
        assert!(FundamentalSystem::new(Algebra::SlOddAff2, &sp).is_ok());
        assert!(FundamentalSystem::new(Algebra::OspOddAff1, &sp).is_err());
        let sp = AmbientSpace::parse_order(1, 0, false, "e").unwrap();
        assert!(FundamentalSystem::new(Algebra::OspEven, &sp).is_err());
        assert!(FundamentalSystem::new(Algebra::Sl, &sp).is_err());
        assert!(FundamentalSystem::new(Algebra::SlAff1, &sp).is_err());
    }

    #[test]
    fn phi_of_correspondence_sources_is_tabulated() {
        for alg in Algebra::correspondence_sources() {
            for (m, n) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
                for sp in enumerate_orders(m, n, alg.is_affine()).unwrap() {
                    let Ok(s) = FundamentalSystem::new(alg, &sp) else { continue };
                    let (t, kind) = s.phi_system().unwrap();
                    assert_eq!(kind, Partner::Correspondence);
                    // isotropy is preserved and the form is preserved
                    for i in 0..s.len() {
                        for j in 0..s.len() {
                            let b = sp.bilinear(&s.nodes[i].root, &s.nodes[j].root).unwrap();
                            let b2 = t.space.bilinear(&t.nodes[i].root, &t.nodes[j].root).unwrap();
                            assert_eq!(b, b2);
                        }
                    }
                    // and back
                    let (u, _) = t.phi_system().unwrap();
                    assert_eq!(u, s);
                }
            }
        }
    }

    #[test]
    fn only_the_short_root_changes_parity() {
        for sp in enumerate_orders(2, 2, false).unwrap() {
            let s = FundamentalSystem::new(Algebra::OspOdd, &sp).unwrap();
            let (t, _) = s.phi_system().unwrap();
            for (a, b) in s.nodes.iter().zip(&t.nodes) {
                assert_eq!(a.odd != b.odd, a.label == 4, "node {}", a.label);
            }
        }
    }

    #[test]
    fn tag_round_trip() {
        for a in Algebra::ALL {
            assert_eq!(a.tag().parse::<Algebra>().unwrap(), a);
        }
        assert!("e8".parse::<Algebra>().is_err());
    }
}
