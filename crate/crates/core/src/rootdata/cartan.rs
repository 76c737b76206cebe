use serde::{Deserialize, Serialize};

use super::FundamentalSystem;
use crate::error::{Error, Result};
use crate::qfield::QScalar;

/// Gram matrix, Cartan matrix and per-node data, indexed by position in
/// [`FundamentalSystem::nodes`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    pub labels: Vec<usize>,
    pub odd: Vec<bool>,
    pub b: Vec<Vec<i64>>,
    pub a: Vec<Vec<i64>>,
    /// `θ_i ∈ {1, 2}`.
    pub theta: Vec<u8>,
}

impl CartanData {
    pub fn new(sys: &FundamentalSystem) -> Result<Self> {
        let sp = &sys.space;
        let r = sys.len();
        let mut b = vec![vec![0; r]; r];
        for i in 0..r {
            for j in 0..r {
                b[i][j] = sp.bilinear(&sys.nodes[i].root, &sys.nodes[j].root)?;
            }
        }
        let mut a = vec![vec![0; r]; r];
        for i in 0..r {
            for j in 0..r {
                a[i][j] = if b[i][i] == 0 {
                    b[i][j]
                } else if (2 * b[i][j]) % b[i][i] == 0 {
                    2 * b[i][j] / b[i][i]
                } else {
                    return Err(Error::Invalid(format!("non-integral Cartan entry at ({i}, {j})")));
                };
            }
        }
        let theta = (0..r)
            .map(|i| match b[i][i].abs() {
                1 | 2 => Ok(1),
                0 | 4 => Ok(2),
                x => Err(Error::Invalid(format!("unexpected root length {x}"))),
            })
            .collect::<Result<_>>()?;
        Ok(CartanData {
            labels: sys.labels(),
            odd: sys.nodes.iter().map(|n| n.odd).collect(),
            b,
            a,
            theta,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn isotropic(&self, i: usize) -> bool {
        self.b[i][i] == 0
    }

    /// `q_i = q^{(α_i, α_i)/2}`, or `q` for an isotropic node.
    pub fn q_i(&self, i: usize) -> QScalar {
        if self.isotropic(i) {
            QScalar::q()
        } else {
            QScalar::v_pow(self.b[i][i])
        }
    }

    /// `(α_i, α_i)/2` rendered exactly, e.g. `"1/2"`.
    pub fn q_exponent(&self, i: usize) -> String {
        let x = if self.isotropic(i) { 2 } else { self.b[i][i] };
        if x % 2 == 0 {
            (x / 2).to_string()
        } else {
            format!("{x}/2")
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "labels": self.labels,
            "odd": self.odd,
            "b": self.b,
            "a": self.a,
            "q_exponents": (0..self.len()).map(|i| self.q_exponent(i)).collect::<Vec<_>>(),
            "theta": self.theta,
        })
    }
}
