//! q-numbers, q-factorials and q-binomials in both the symmetric form
//! `[k]_z = (z^k - z^-k) / (z - z^-1)` and the twisted form
//! `{k}_z = (z^k - (-z)^-k) / (z + z^-1)`.

use super::QScalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QCombKind {
    Bracket,
    Brace,
    BracketBinomial,
    BraceBinomial,
}

impl QCombKind {
    /// Dispatches on the kind. `n` is ignored for the plain q-numbers.
    pub fn eval(self, n: i64, k: i64, z: &QScalar) -> Result<QScalar> {
        match self {
            QCombKind::Bracket => bracket(k, z),
            QCombKind::Brace => brace(k, z),
            QCombKind::BracketBinomial => bracket_binomial(n, k, z),
            QCombKind::BraceBinomial => brace_binomial(n, k, z),
        }
    }
}

fn check_nonzero(z: &QScalar) -> Result<()> {
    if z.is_zero() {
        Err(Error::Domain("q-number base must be nonzero".into()))
    } else {
        Ok(())
    }
}

pub fn bracket(k: i64, z: &QScalar) -> Result<QScalar> {
    check_nonzero(z)?;
    let zi = z.inv()?;
    let den = z - &zi;
    if den.is_zero() {
        return Err(Error::Domain(format!("[k]_z undefined at z = {z}")));
    }
    let num = z.pow(k)? - zi.pow(k)?;
    num.checked_div(&den)
}

pub fn brace(k: i64, z: &QScalar) -> Result<QScalar> {
    check_nonzero(z)?;
    let zi = z.inv()?;
    let den = z + &zi;
    if den.is_zero() {
        return Err(Error::Domain(format!("{{k}}_z undefined at z = {z}")));
    }
    let num = z.pow(k)? - (-z).pow(-k)?;
    num.checked_div(&den)
}

fn factorial_with(n: i64, z: &QScalar, f: fn(i64, &QScalar) -> Result<QScalar>) -> Result<QScalar> {
    if n < 0 {
        return Err(Error::Domain(format!("factorial of negative {n}")));
    }
    (1..=n).try_fold(QScalar::one(), |acc, i| Ok(acc * f(i, z)?))
}

pub fn bracket_factorial(n: i64, z: &QScalar) -> Result<QScalar> {
    factorial_with(n, z, bracket)
}

pub fn brace_factorial(n: i64, z: &QScalar) -> Result<QScalar> {
    factorial_with(n, z, brace)
}

fn binomial_with(n: i64, k: i64, z: &QScalar, fact: fn(i64, &QScalar) -> Result<QScalar>) -> Result<QScalar> {
    if k < 0 || k > n {
        return Err(Error::Domain(format!("binomial needs 0 <= k <= N, got N={n}, k={k}")));
    }
    let top = fact(n, z)?;
    let bottom = fact(k, z)? * fact(n - k, z)?;
    top.checked_div(&bottom)
}

pub fn bracket_binomial(n: i64, k: i64, z: &QScalar) -> Result<QScalar> {
    binomial_with(n, k, z, bracket_factorial)
}

pub fn brace_binomial(n: i64, k: i64, z: &QScalar) -> Result<QScalar> {
    binomial_with(n, k, z, brace_factorial)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Synthetic division of `z^{2k} - 1` by `z^2 - 1` on plain integer
    /// vectors, then shifted by `z^{-(k-1)}`. Independent of `QScalar`.
    fn bracket_oracle(k: usize) -> Vec<(i32, i64)> {
        let mut num = vec![0i64; 2 * k + 1];
        num[0] = -1;
        num[2 * k] = 1;
        let mut quot = vec![0i64; 2 * k - 1];
        // divide by x^2 - 1 from the top
        for d in (2..=2 * k).rev() {
            let c = num[d];
            quot[d - 2] = c;
            num[d] -= c;
            num[d - 2] += c;
        }
        assert!(num.iter().all(|&c| c == 0));
        quot.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i as i32 - (k as i32 - 1), c))
            .collect()
    }

    #[test]
    fn bracket_one_is_one() {
        for z in [QScalar::q(), QScalar::v(), QScalar::from_int(3)] {
            assert!(bracket(1, &z).unwrap().is_one());
            assert!(brace(1, &z).unwrap().is_one());
        }
    }

    #[test]
    fn bracket_three_matches_division_oracle() {
        let expected = QScalar::laurent_v(&bracket_oracle(3));
        // oracle is in z; with z = q the exponents double
        let oracle_q = QScalar::laurent_q(&bracket_oracle(3));
        assert_eq!(bracket(3, &QScalar::v()).unwrap(), expected);
        assert_eq!(bracket(3, &QScalar::q()).unwrap(), oracle_q);
        assert_eq!(oracle_q, QScalar::laurent_q(&[(2, 1), (0, 1), (-2, 1)]));
    }

    #[test]
    fn brackets_are_laurent() {
        for k in -4..=6 {
            assert!(bracket(k, &QScalar::q()).unwrap().is_laurent());
            assert!(brace(k, &QScalar::q()).unwrap().is_laurent());
        }
    }

    #[test]
    fn undefined_points_are_domain_errors() {
        assert!(matches!(bracket(2, &QScalar::one()), Err(Error::Domain(_))));
        assert!(matches!(bracket(2, &QScalar::from_int(-1)), Err(Error::Domain(_))));
        assert!(matches!(bracket(2, &QScalar::zero()), Err(Error::Domain(_))));
        assert!(matches!(bracket_binomial(2, 3, &QScalar::q()), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_times_factorials_is_factorial() {
        for z in [QScalar::q(), QScalar::v()] {
            for n in 0..=8 {
                for k in 0..=n {
                    let lhs = bracket_binomial(n, k, &z).unwrap()
                        * bracket_factorial(k, &z).unwrap()
                        * bracket_factorial(n - k, &z).unwrap();
                    assert_eq!(lhs, bracket_factorial(n, &z).unwrap());
                    let lhs = brace_binomial(n, k, &z).unwrap()
                        * brace_factorial(k, &z).unwrap()
                        * brace_factorial(n - k, &z).unwrap();
                    assert_eq!(lhs, brace_factorial(n, &z).unwrap());
                }
            }
        }
    }

    #[test]
    fn negating_q_turns_brackets_into_braces() {
        // At base v = q^{1/2}, [N k] has v-parity k(N-k), so q -> -q applies
        // exactly when that is even.
        let v = QScalar::v();
        for n in 0..=8i64 {
            for k in 0..=n {
                let b = bracket_binomial(n, k, &v).unwrap();
                if k * (n - k) % 2 == 1 {
                    assert!(b.substitute_negate_q().is_err());
                    continue;
                }
                let sign = if k * (n - k) / 2 % 2 == 1 { -1 } else { 1 };
                let want = brace_binomial(n, k, &v).unwrap() * QScalar::from_int(sign);
                assert_eq!(b.substitute_negate_q().unwrap(), want, "N={n} k={k}");
            }
        }
    }

    #[test]
    fn kind_dispatch() {
        let z = QScalar::q();
        assert_eq!(QCombKind::Bracket.eval(0, 3, &z).unwrap(), bracket(3, &z).unwrap());
        assert_eq!(
            QCombKind::BraceBinomial.eval(4, 2, &z).unwrap(),
            brace_binomial(4, 2, &z).unwrap()
        );
    }
}
