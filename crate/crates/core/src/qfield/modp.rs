//! Arithmetic modulo a word-sized prime, used for fast rank screening.

pub const PRIME: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    add(a, p - b % p, p)
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b, p);
        }
        b = mul(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse by Fermat; `a` must be nonzero mod the prime `p`.
pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

pub fn from_bigint(c: &num_bigint::BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let r = c % num_bigint::BigInt::from(p);
    let r = if r < num_bigint::BigInt::from(0) { r + p } else { r };
    r.to_u64().expect("reduced residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        for a in [1u64, 2, 12345, PRIME - 1] {
            assert_eq!(mul(a, inv(a, PRIME), PRIME), 1);
        }
        assert_eq!(sub(3, 5, 7), 5);
    }
}
