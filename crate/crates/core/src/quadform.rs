//! Primes `p ≡ 1 (mod 3)` as `x² + 3y²`, and the correction term `R₃(p)`.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::exact::binomial;
use crate::padic::arith::{from_signed, mul_mod, pow_mod, ppow};
use crate::padic::{reduce_rational, FactorialTable, PadicValue};
use crate::{Error, ExactRational, Result};

/// `p = x² + 3y²` with `x, y > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadRep {
    pub p: u64,
    pub x: u64,
    pub y: u64,
}

impl QuadRep {
    pub fn x_squared(&self) -> u64 {
        self.x * self.x
    }
}

/// `R₃(p)` reduced modulo `p²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct R3Value {
    pub p: u64,
    pub residue: u128,
}

/// Square root of `a` modulo the odd prime `p` (Tonelli–Shanks); returns the
/// smaller of the two roots.
pub fn sqrt_mod(a: i64, p: u64) -> Result<u64> {
    let m = p as u128;
    let a_red = from_signed(a as i128, m);
    if a_red == 0 {
        return Ok(0);
    }
    if pow_mod(a_red, (p - 1) / 2, m) != 1 {
        return Err(Error::NoRoot { value: a, prime: p });
    }
    // p - 1 = q · 2^s with q odd
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u128;
    while pow_mod(z, (p - 1) / 2, m) != m - 1 {
        z += 1;
    }
    let mut c = pow_mod(z, q, m);
    let mut r = pow_mod(a_red, (q + 1) / 2, m);
    let mut t = pow_mod(a_red, q, m);
    let mut s_cur = s;
    while t != 1 {
        // least i with t^(2^i) = 1
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, m);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (s_cur - i - 1), m);
        r = mul_mod(r, b, m);
        c = mul_mod(b, b, m);
        t = mul_mod(t, c, m);
        s_cur = i;
    }
    let r = r as u64;
    Ok(r.min(p - r))
}

/// The representation `p = x² + 3y²` by Cornacchia's descent on
/// `(p, √-3 mod p)`.
pub fn represent(p: u64) -> Result<QuadRep> {
    if p <= 3 || p % 3 != 1 {
        return Err(Error::WrongResidueClass { prime: p, expected: 1 });
    }
    let mut r0 = sqrt_mod(-3, p)?;
    if 2 * r0 < p {
        r0 = p - r0;
    }
    let bound = p.isqrt();
    let (mut a, mut b) = (p, r0);
    while b > bound {
        (a, b) = (b, a % b);
    }
    let x = b;
    let rest = p - x * x;
    if rest % 3 == 0 {
        let y = (rest / 3).isqrt();
        if y * y == rest / 3 && y > 0 {
            return Ok(QuadRep { p, x, y });
        }
    }
    // Only reachable for composite input.
    Err(Error::Precondition(format!("{p} has no primitive representation x^2 + 3y^2")))
}

/// `R₃(p)` over exact rationals, then reduced modulo `p²`.
pub fn r3(p: u64) -> Result<R3Value> {
    if p <= 3 {
        return Err(Error::Precondition(format!("R3(p) needs p > 3, got {p}")));
    }
    let value = r3_exact(p);
    let residue = reduce_rational(&value, p, 2)?.residue(2)?;
    Ok(R3Value { p, residue })
}

/// `(1 + 2p + (4/3)(2^{p-1}-1) - (3/2)(3^{p-1}-1)) · C((p-1)/2, ⌊p/6⌋)²` exactly.
pub fn r3_exact(p: u64) -> ExactRational {
    let big = |n: BigInt| ExactRational::from_integer(n);
    let two = BigInt::from(2).pow((p - 1) as u32) - BigInt::one();
    let three = BigInt::from(3).pow((p - 1) as u32) - BigInt::one();
    let front = big(BigInt::from(1 + 2 * p)) + ExactRational::new(4.into(), 3.into()) * big(two)
        - ExactRational::new(3.into(), 2.into()) * big(three);
    let c = binomial::<BigInt>((p - 1) / 2, (p / 6) as i64);
    front * big(&c * &c)
}

/// `R₃(p) mod p²` using only truncated p-adic arithmetic.
pub fn r3_fast(p: u64) -> Result<R3Value> {
    if p <= 3 {
        return Err(Error::Precondition(format!("R3(p) needs p > 3, got {p}")));
    }
    let prec = 3;
    let v = |n: i64| PadicValue::from_i64(n, p, prec);
    let m = ppow(p, prec);
    let two_pow = PadicValue::from_residue(pow_mod(2, p - 1, m), p, prec);
    let three_pow = PadicValue::from_residue(pow_mod(3, p - 1, m), p, prec);
    let front = v(1 + 2 * p as i64) + v(4).checked_div(&v(3))? * (two_pow - v(1))
        - v(3).checked_div(&v(2))? * (three_pow - v(1));
    let c = FactorialTable::new(p, prec, p).binomial((p - 1) / 2, (p / 6) as i64);
    let value = front * c.clone() * c;
    Ok(R3Value { p, residue: value.residue(2)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod(4, 7).unwrap(), 2);
        assert_eq!(sqrt_mod(-3, 7).unwrap(), 2);
        assert!(matches!(sqrt_mod(-3, 5), Err(Error::NoRoot { .. })));
        // p ≡ 1 mod 8 exercises the Tonelli–Shanks loop
        let r = sqrt_mod(-3, 97).unwrap();
        assert_eq!((r * r + 3) % 97, 0);
    }

    #[test]
    fn represent_examples() {
        let rep = |p| {
            let q = represent(p).unwrap();
            (q.x, q.y)
        };
        assert_eq!(rep(7), (2, 1));
        assert_eq!(rep(13), (1, 2));
        assert_eq!(rep(31), (2, 3));
        assert!(matches!(represent(11), Err(Error::WrongResidueClass { .. })));
    }

    #[test]
    fn r3_examples() {
        assert_eq!(r3_exact(5), ExactRational::from_integer((-89).into()));
        assert_eq!(r3(5).unwrap().residue, 11);
        for p in [5u64, 7, 11, 13, 17, 101] {
            assert_eq!(r3(p).unwrap(), r3_fast(p).unwrap());
        }
    }
}
