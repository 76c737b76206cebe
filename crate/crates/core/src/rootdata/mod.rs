//! Root data for the classical and affine series: ambient spaces with their
//! bilinear forms, tabulated fundamental systems, Cartan data, Dynkin
//! diagrams and the `ε <-> δ` exchange map.

mod algebra;
mod cartan;
mod dynkin;

pub use algebra::{Algebra, FundamentalSystem, Partner, RootNode};
pub use cartan::CartanData;
pub use dynkin::{DynkinDiagram, DynkinEdge, NodeKind};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One basis direction of `E(m|n)`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    Eps(usize),
    Del(usize),
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Eps(i) => write!(f, "eps{i}"),
            Basis::Del(i) => write!(f, "del{i}"),
        }
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad basis label {s:?}"));
        if let Some(r) = s.strip_prefix("eps") {
            Ok(Basis::Eps(r.parse().map_err(|_| bad())?))
        } else if let Some(r) = s.strip_prefix("del") {
            Ok(Basis::Del(r.parse().map_err(|_| bad())?))
        } else {
            Err(bad())
        }
    }
}

/// `E(m|n)` or `E_δ(m|n)` with an admissible ordered basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmbientSpace {
    pub m: usize,
    pub n: usize,
    pub affine: bool,
    pub order: Vec<Basis>,
    pub theta: u8,
}

/// Integer coordinates: slot 0 is the imaginary direction, slots `1..=m`
/// are `ε_1..ε_m`, slots `m+1..=m+n` are `δ_1..δ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector {
    pub coeffs: Vec<i64>,
}

impl RootVector {
    pub fn zero(dim: usize) -> Self {
        RootVector { coeffs: vec![0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: i64) -> RootVector {
        RootVector { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        self.add(&other.scale(-1))
    }
}

impl AmbientSpace {
    /// Builds the space, checking admissibility and fixing `θ` from `(E_1, E_1) = 1`.
    pub fn new(m: usize, n: usize, affine: bool, order: Vec<Basis>) -> Result<Self> {
        if m + n == 0 {
            return Err(Error::Invalid("ambient space needs m + n > 0".into()));
        }
        if order.len() != m + n {
            return Err(Error::DimensionMismatch { expected: m + n, got: order.len() });
        }
        let (mut ne, mut nd) = (0, 0);
        for b in &order {
            match *b {
                Basis::Eps(i) if i == ne + 1 && i <= m => ne += 1,
                Basis::Del(i) if i == nd + 1 && i <= n => nd += 1,
                _ => return Err(Error::Invalid(format!("order {order:?} is not admissible"))),
            }
        }
        let theta = match order[0] {
            Basis::Eps(_) => 0,
            Basis::Del(_) => 1,
        };
        Ok(AmbientSpace { m, n, affine, order, theta })
    }

    /// Parses a compact order string such as `"eps1,del1,eps2"` or `"ede"`.
    pub fn parse_order(m: usize, n: usize, affine: bool, s: &str) -> Result<Self> {
        let order = if s.contains(',') || s.starts_with("eps") || s.starts_with("del") {
            s.split(',').map(|t| t.trim().parse()).collect::<Result<Vec<_>>>()?
        } else {
            let (mut i, mut j) = (0, 0);
            s.chars()
                .map(|c| match c {
                    'e' => {
                        i += 1;
                        Ok(Basis::Eps(i))
                    }
                    'd' => {
                        j += 1;
                        Ok(Basis::Del(j))
                    }
                    _ => Err(Error::Parse(format!("bad order character {c:?}"))),
                })
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(m, n, affine, order)
    }

    /// Compact form: one `e`/`d` per basis vector.
    pub fn order_code(&self) -> String {
        self.order
            .iter()
            .map(|b| match b {
                Basis::Eps(_) => 'e',
                Basis::Del(_) => 'd',
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        1 + self.m + self.n
    }

    pub fn slot(&self, b: Basis) -> usize {
        match b {
            Basis::Eps(i) => i,
            Basis::Del(j) => self.m + j,
        }
    }

    pub fn basis_vector(&self, b: Basis) -> RootVector {
        let mut v = RootVector::zero(self.dim());
        v.coeffs[self.slot(b)] = 1;
        v
    }

    /// `E_a` of the ordered basis, `1 <= a <= m + n`.
    pub fn e(&self, a: usize) -> RootVector {
        self.basis_vector(self.order[a - 1])
    }

    /// The imaginary direction `E_0 = δ`.
    pub fn imaginary(&self) -> RootVector {
        let mut v = RootVector::zero(self.dim());
        v.coeffs[0] = 1;
        v
    }

    fn slot_norm(&self, slot: usize) -> i64 {
        let sign = if self.theta == 0 { 1 } else { -1 };
        if slot == 0 {
            0
        } else if slot <= self.m {
            sign
        } else {
            -sign
        }
    }

    /// `(ε_i, ε_j) = (-1)^θ δ_ij`, `(δ_μ, δ_ν) = -(-1)^θ δ_μν`, imaginary direction null.
    pub fn bilinear(&self, u: &RootVector, v: &RootVector) -> Result<i64> {
        for w in [u, v] {
            if w.dim() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), got: w.dim() });
            }
        }
        Ok((1..self.dim()).map(|s| self.slot_norm(s) * u.coeffs[s] * v.coeffs[s]).sum())
    }

    /// Sum of the `δ_ν` coordinates.
    pub fn chi(&self, v: &RootVector) -> i64 {
        v.coeffs[self.m + 1..].iter().sum()
    }

    /// The exchange `ε_i -> δ'_i`, `δ_j -> ε'_j`, `δ -> δ'` into `E_δ(n|m)`.
    pub fn phi_vector(&self, v: &RootVector) -> RootVector {
        let mut w = RootVector::zero(self.dim());
        w.coeffs[0] = v.coeffs[0];
        for i in 1..=self.m {
            w.coeffs[self.n + i] = v.coeffs[i];
        }
        for j in 1..=self.n {
            w.coeffs[j] = v.coeffs[self.m + j];
        }
        w
    }

    /// Inverse of [`phi_vector`](Self::phi_vector), read on the image space.
    pub fn phi_inverse_vector(&self, w: &RootVector) -> RootVector {
        let mut v = RootVector::zero(self.dim());
        v.coeffs[0] = w.coeffs[0];
        for i in 1..=self.m {
            v.coeffs[i] = w.coeffs[self.n + i];
        }
        for j in 1..=self.n {
            v.coeffs[self.m + j] = w.coeffs[j];
        }
        v
    }

    /// Image space `E(n|m)` with the exchanged ordered basis.
    pub fn phi_space(&self) -> AmbientSpace {
        let order = self
            .order
            .iter()
            .map(|b| match *b {
                Basis::Eps(i) => Basis::Del(i),
                Basis::Del(j) => Basis::Eps(j),
            })
            .collect();
        AmbientSpace::new(self.n, self.m, self.affine, order).expect("exchange preserves admissibility")
    }

    pub fn format_vector(&self, v: &RootVector) -> String {
        let mut parts = Vec::new();
        let mut push = |c: i64, name: String| {
            if c == 0 {
                return;
            }
            let sign = if c < 0 { "-" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            parts.push(format!("{sign}{mag}{name}"));
        };
        push(v.coeffs[0], "delta".into());
        for i in 1..=self.m {
            push(v.coeffs[i], format!("eps{i}"));
        }
        for j in 1..=self.n {
            push(v.coeffs[self.m + j], format!("del{j}"));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let s = parts.join(" ");
        s.strip_prefix('+').unwrap_or(&s).to_string()
    }
}

/// All admissible orders of `E(m|n)`: every shuffle of the `ε` and `δ`
/// sequences, `ε` tried first at each position.
pub fn enumerate_orders(m: usize, n: usize, affine: bool) -> Result<Vec<AmbientSpace>> {
    if m + n == 0 {
        return Err(Error::Invalid("enumerate_orders needs m + n > 0".into()));
    }
    fn rec(i: usize, j: usize, m: usize, n: usize, cur: &mut Vec<Basis>, out: &mut Vec<Vec<Basis>>) {
        if i == m && j == n {
            out.push(cur.clone());
            return;
        }
        if i < m {
            cur.push(Basis::Eps(i + 1));
            rec(i + 1, j, m, n, cur, out);
            cur.pop();
        }
        if j < n {
            cur.push(Basis::Del(j + 1));
            rec(i, j + 1, m, n, cur, out);
            cur.pop();
        }
    }
    let mut orders = Vec::new();
    rec(0, 0, m, n, &mut Vec::new(), &mut orders);
    orders.into_iter().map(|o| AmbientSpace::new(m, n, affine, o)).collect()
}
