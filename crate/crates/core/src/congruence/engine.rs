//! The two evaluation domains behind every congruence check.
//!
//! A check is written once against [`Engine`] and runs unchanged over exact
//! rationals ([`ExactEngine`]) or truncated p-adic residues ([`FastEngine`]).
//! Both engines must agree on every residue they report; the sweep's `both`
//! mode enforces that.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{bernoulli_cached, bernoulli_poly, bernoulli_table, binomial, domb_cached, harmonic_cached};
use crate::padic::arith::{from_signed, inv_mod, mul_mod, pow_mod, ppow};
use crate::padic::{self, reduce_rational, FactorialTable, PadicValue};
use crate::quadform::r3_exact;
use crate::{Error, ExactRational, Result};

/// Arithmetic a congruence check needs, for one fixed prime.
pub trait Engine: Send + Sync {
    type Value: Clone
        + Send
        + Add<Output = Self::Value>
        + Sub<Output = Self::Value>
        + Mul<Output = Self::Value>
        + Neg<Output = Self::Value>;

    fn prime(&self) -> u64;
    fn int(&self, n: i64) -> Self::Value;
    fn big(&self, n: &BigInt) -> Self::Value;
    /// `a / b`; fails when the quotient is not a p-adic integer.
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn binomial(&self, n: u64, k: i64) -> Self::Value;
    /// `H_n^{(order)}`, `order ∈ {1, 2}`.
    fn harmonic(&self, n: u64, order: u32) -> Result<Self::Value>;
    fn domb(&self, n: u64) -> Self::Value;
    /// `B_n`; the fast engine only knows it modulo `p`.
    fn bernoulli(&self, n: u64) -> Result<Self::Value>;
    /// `B_{p-2}(1/3)`; the fast engine only knows it modulo `p`.
    fn bernoulli_poly_third(&self) -> Result<Self::Value>;
    fn fermat_quotient(&self, a: i64) -> Result<Self::Value>;
    fn r3(&self) -> Result<Self::Value>;
    /// `base^e` for `base` coprime to `p`.
    fn pow_int(&self, base: i64, e: u64) -> Self::Value;
    /// The value modulo `p^k`, as an integer in `[0, p^k)`.
    fn residue(&self, v: &Self::Value, k: u32) -> Result<u128>;

    fn zero(&self) -> Self::Value {
        self.int(0)
    }

    fn frac(&self, n: i64, d: i64) -> Result<Self::Value> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        self.div(&self.int(n), &self.int(d))
    }

    /// `C(-1/2, k) = (-1)^k C(2k,k) / 4^k`.
    fn neg_half_binomial(&self, k: u64) -> Result<Self::Value> {
        let c = self.div(&self.binomial(2 * k, k as i64), &self.pow_int(4, k))?;
        Ok(if k % 2 == 0 { c } else { -c })
    }
}

/// Exact rational evaluation, reduced only when a residue is requested.
#[derive(Debug, Clone, Copy)]
pub struct ExactEngine {
    p: u64,
}

impl ExactEngine {
    pub fn new(p: u64) -> Self {
        Self { p }
    }
}

fn rat(n: BigInt) -> ExactRational {
    ExactRational::from_integer(n)
}

impl Engine for ExactEngine {
    type Value = ExactRational;

    fn prime(&self) -> u64 {
        self.p
    }

    fn int(&self, n: i64) -> ExactRational {
        rat(n.into())
    }

    fn big(&self, n: &BigInt) -> ExactRational {
        rat(n.clone())
    }

    fn div(&self, a: &ExactRational, b: &ExactRational) -> Result<ExactRational> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a / b)
    }

    fn binomial(&self, n: u64, k: i64) -> ExactRational {
        rat(binomial::<BigInt>(n, k))
    }

    fn harmonic(&self, n: u64, order: u32) -> Result<ExactRational> {
        Ok(harmonic_cached(n, order))
    }

    fn domb(&self, n: u64) -> ExactRational {
        rat(domb_cached(n))
    }

    fn bernoulli(&self, n: u64) -> Result<ExactRational> {
        Ok(bernoulli_cached(n))
    }

    fn bernoulli_poly_third(&self) -> Result<ExactRational> {
        let n = self.p - 2;
        Ok(bernoulli_poly(n, &ExactRational::new(1.into(), 3.into()), &bernoulli_table(n)))
    }

    fn fermat_quotient(&self, a: i64) -> Result<ExactRational> {
        if a.rem_euclid(self.p as i64) == 0 {
            return Err(Error::NotCoprime { value: a, prime: self.p });
        }
        let pow = rat(BigInt::from(a).pow((self.p - 1) as u32));
        Ok((pow - ExactRational::one()) / self.int(self.p as i64))
    }

    fn r3(&self) -> Result<ExactRational> {
        Ok(r3_exact(self.p))
    }

    fn pow_int(&self, base: i64, e: u64) -> ExactRational {
        rat(BigInt::from(base).pow(e as u32))
    }

    fn residue(&self, v: &ExactRational, k: u32) -> Result<u128> {
        reduce_rational(v, self.p, k)?.residue(k)
    }
}

/// Truncated p-adic evaluation with `w` digits of relative precision on
/// every primitive quantity.
///
/// Residues are certified to the absolute precision the arithmetic tracks;
/// asking for more digits than survived fails with
/// [`Error::InsufficientPrecision`] instead of returning garbage.
pub struct FastEngine {
    p: u64,
    w: u32,
    modulus: u128,
    table: FactorialTable,
    domb: OnceLock<Vec<u128>>,
    harmonic: [OnceLock<Vec<u128>>; 2],
}

impl FastEngine {
    /// Binomials `C(n, ·)` with `n ≤ 3p` come from a factorial table; larger
    /// ones fall back to a running product.
    pub fn new(p: u64, w: u32) -> Self {
        Self {
            p,
            w,
            modulus: ppow(p, w),
            table: FactorialTable::new(p, w, 3 * p),
            domb: OnceLock::new(),
            harmonic: [OnceLock::new(), OnceLock::new()],
        }
    }

    pub fn precision(&self) -> u32 {
        self.w
    }

    fn known(&self, r: u128) -> PadicValue {
        PadicValue::from_residue(r, self.p, self.w)
    }

    /// `D_0..D_{p-1}` modulo `p^w` from
    /// `(n+1)³ D_{n+1} = 2(2n+1)(5n²+5n+2) D_n - 64 n³ D_{n-1}`;
    /// `(n+1)³` is a unit below `p`.
    fn domb_table(&self) -> &[u128] {
        self.domb.get_or_init(|| {
            let m = self.modulus;
            let mut d = vec![1 % m];
            for n in 0..self.p.saturating_sub(1) as u128 {
                let prev = if n == 0 { 0 } else { d[n as usize - 1] };
                let a = mul_mod(2 * (2 * n + 1) * (5 * n * n + 5 * n + 2) % m, d[n as usize], m);
                let b = mul_mod(64 * n * n * n % m, prev, m);
                let num = (a + m - b) % m;
                let inv = inv_mod((n + 1).pow(3) % m, m).expect("n + 1 < p");
                d.push(mul_mod(num, inv, m));
            }
            d
        })
    }

    fn harmonic_table(&self, order: u32) -> &[u128] {
        self.harmonic[order as usize - 1].get_or_init(|| {
            let m = self.modulus;
            let mut h = Vec::with_capacity(self.p as usize);
            h.push(0);
            for k in 1..self.p as u128 {
                let inv = inv_mod(pow_mod(k, order as u64, m), m).expect("k < p");
                h.push((h[k as usize - 1] + inv) % m);
            }
            h
        })
    }
}

impl Engine for FastEngine {
    type Value = PadicValue;

    fn prime(&self) -> u64 {
        self.p
    }

    fn int(&self, n: i64) -> PadicValue {
        PadicValue::from_i64(n, self.p, self.w)
    }

    fn big(&self, n: &BigInt) -> PadicValue {
        PadicValue::from_bigint(n, self.p, self.w)
    }

    fn div(&self, a: &PadicValue, b: &PadicValue) -> Result<PadicValue> {
        a.checked_div(b)
    }

    fn binomial(&self, n: u64, k: i64) -> PadicValue {
        if n <= self.table.limit() || k < 0 || k as u64 > n {
            return self.table.binomial(n, k);
        }
        // C(n, i+1) = C(n, i) (n-i) / (i+1); every step is an integer, so
        // valuations never go negative.
        let k = (k as u64).min(n - k as u64);
        let mut acc = self.int(1);
        for i in 0..k {
            acc = (acc * PadicValue::from_i128((n - i) as i128, self.p, self.w))
                .checked_div(&self.int(i as i64 + 1))
                .expect("running binomial is integral");
        }
        acc
    }

    fn harmonic(&self, n: u64, order: u32) -> Result<PadicValue> {
        if !(1..=2).contains(&order) {
            return Err(Error::Precondition(format!("harmonic order {order} not tabulated")));
        }
        if n >= self.p {
            // 1/p would be needed.
            return Err(Error::NegativeValuation { prime: self.p, valuation: -(order as i64) });
        }
        Ok(self.known(self.harmonic_table(order)[n as usize]))
    }

    fn domb(&self, n: u64) -> PadicValue {
        if n < self.p {
            return self.known(self.domb_table()[n as usize]);
        }
        (0..=n).fold(PadicValue::zero(self.p), |acc, k| {
            let b = self.binomial(n, k as i64);
            acc + b.clone() * b * self.binomial(2 * k, k as i64) * self.binomial(2 * (n - k), (n - k) as i64)
        })
    }

    fn bernoulli(&self, n: u64) -> Result<PadicValue> {
        Ok(PadicValue::from_residue(padic::bernoulli_mod(n, self.p)? as u128, self.p, 1))
    }

    fn bernoulli_poly_third(&self) -> Result<PadicValue> {
        Ok(PadicValue::from_residue(padic::bernoulli_poly_third(self.p)? as u128, self.p, 1))
    }

    fn fermat_quotient(&self, a: i64) -> Result<PadicValue> {
        padic::fermat_quotient(a, self.p, self.w)
    }

    fn r3(&self) -> Result<PadicValue> {
        let p = self.p;
        let two = self.known(pow_mod(2, p - 1, self.modulus)) - self.int(1);
        let three = self.known(pow_mod(3, p - 1, self.modulus)) - self.int(1);
        let front = self.int(1 + 2 * p as i64) + self.frac(4, 3)? * two - self.frac(3, 2)? * three;
        let c = self.binomial((p - 1) / 2, (p / 6) as i64);
        Ok(front * c.clone() * c)
    }

    fn pow_int(&self, base: i64, e: u64) -> PadicValue {
        let b = from_signed(base as i128, self.modulus);
        if b % self.p as u128 != 0 {
            self.known(pow_mod(b, e, self.modulus))
        } else {
            self.int(base).pow(e)
        }
    }

    fn residue(&self, v: &PadicValue, k: u32) -> Result<u128> {
        v.residue(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitives_agree() {
        for p in [5u64, 7, 11, 13, 31] {
            let ex = ExactEngine::new(p);
            let fa = FastEngine::new(p, 4);
            let same = |a: &ExactRational, b: &PadicValue, k: u32| {
                assert_eq!(ex.residue(a, k).unwrap(), fa.residue(b, k).unwrap(), "p={p}");
            };
            for n in 0..p {
                same(&ex.domb(n), &fa.domb(n), 4);
                same(&ex.harmonic(n, 1).unwrap(), &fa.harmonic(n, 1).unwrap(), 4);
                same(&ex.harmonic(n, 2).unwrap(), &fa.harmonic(n, 2).unwrap(), 4);
            }
            for n in [p, p + 1, 2 * p + 3] {
                same(&ex.domb(n), &fa.domb(n), 4);
            }
            for (n, k) in [(p * p + 3, (p - 1) / 2), (4 * p, 2 * p), (7 * p, p + 1)] {
                same(&ex.binomial(n, k as i64), &fa.binomial(n, k as i64), 4);
            }
            same(&ex.r3().unwrap(), &fa.r3().unwrap(), 4);
            same(&ex.fermat_quotient(2).unwrap(), &fa.fermat_quotient(2).unwrap(), 3);
            same(&ex.bernoulli(p - 3).unwrap(), &fa.bernoulli(p - 3).unwrap(), 1);
            same(&ex.bernoulli_poly_third().unwrap(), &fa.bernoulli_poly_third().unwrap(), 1);
            same(&ex.neg_half_binomial(p - 2).unwrap(), &fa.neg_half_binomial(p - 2).unwrap(), 4);
            same(&ex.pow_int(-3, 17), &fa.pow_int(-3, 17), 4);
        }
    }

    #[test]
    fn fast_harmonic_past_p_is_refused() {
        let fa = FastEngine::new(7, 3);
        assert!(matches!(fa.harmonic(7, 1), Err(Error::NegativeValuation { .. })));
    }
}
