//! Word-level modular arithmetic on `u128` residues.
//!
//! Moduli are kept below `2^126` so sums of two residues never overflow.

const WIDE_LIMIT: u128 = 1 << 126;

/// `p^e`, panicking if it leaves the supported residue range.
#[inline]
pub fn ppow(p: u64, e: u32) -> u128 {
    match (p as u128).checked_pow(e) {
        Some(m) if m <= WIDE_LIMIT => m,
        _ => panic!("{p}^{e} exceeds the 126-bit residue range"),
    }
}

/// `true` when `p^e` is a usable modulus.
pub fn fits(p: u64, e: u32) -> bool {
    matches!((p as u128).checked_pow(e), Some(m) if m <= WIDE_LIMIT)
}

#[inline]
pub fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

#[inline]
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        (a * b) % m
    } else {
        mul_mod_wide(a % m, b % m, m)
    }
}

fn mul_mod_wide(mut a: u128, mut b: u128, m: u128) -> u128 {
    let mut r = 0;
    while b > 0 {
        if b & 1 == 1 {
            r = add_mod(r, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    r
}

pub fn pow_mod(mut base: u128, mut e: u64, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    base %= m;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, or `None` if they share a factor.
pub fn inv_mod(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(if t0 < 0 { (t0 + m as i128) as u128 } else { t0 as u128 })
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn from_signed(n: i128, m: u128) -> u128 {
    let r = n.rem_euclid(m as i128);
    r as u128
}

/// Splits `n = p^v · u` with `p ∤ u`; `n` must be nonzero.
#[inline]
pub fn split_power(mut n: u128, p: u64) -> (u32, u128) {
    debug_assert!(n != 0);
    let p = p as u128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_multiplication_matches_narrow() {
        let m = 1_000_003u128 * 1_000_033;
        for a in [0u128, 1, 12345, m - 1, m / 2] {
            for b in [0u128, 7, m - 2, 999_999] {
                assert_eq!(mul_mod_wide(a, b, m), (a * b) % m);
            }
        }
    }

    #[test]
    fn wide_modulus() {
        let m = ppow(2003, 11);
        let a = m - 1;
        // (-1)(-1) = 1
        assert_eq!(mul_mod(a, a, m), 1);
        assert_eq!(mul_mod(inv_mod(12345, m).unwrap(), 12345, m), 1);
    }

    #[test]
    fn inverse() {
        assert_eq!(inv_mod(6, 25), Some(21));
        assert_eq!(inv_mod(3, 25), Some(17));
        assert_eq!(inv_mod(5, 25), None);
    }
}
