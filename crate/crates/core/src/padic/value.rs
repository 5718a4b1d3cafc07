use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::arith::{add_mod, from_signed, inv_mod, mul_mod, ppow, split_power};
use crate::{Error, Result};

/// Marker for the infinite valuation/precision of an exact zero.
pub const INFINITE: u32 = u32::MAX;

/// A p-adic integer truncated to finite precision.
///
/// The represented value is `p^valuation · unit`, known modulo
/// `p^precision` (absolute precision). For nonzero values `unit` is coprime to
/// `p` and lies in `[0, p^(precision - valuation))`. A value that is zero to
/// the available precision has `valuation == precision` and `unit == 0`; the
/// exact zero has both set to [`INFINITE`].
///
/// Arithmetic follows the usual fixed-relative-precision rules: products and
/// quotients keep the smaller relative precision, sums keep the smaller
/// absolute precision, and cancellation lowers the relative precision. The
/// arithmetic operators panic when the operands belong to different primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicValue {
    prime: u64,
    valuation: u32,
    precision: u32,
    unit: u128,
}

impl PadicValue {
    /// The exact zero.
    pub fn zero(prime: u64) -> Self {
        Self { prime, valuation: INFINITE, precision: INFINITE, unit: 0 }
    }

    /// A value that is zero modulo `p^precision`.
    pub fn zero_mod(prime: u64, precision: u32) -> Self {
        Self { prime, valuation: precision, precision, unit: 0 }
    }

    /// `p^valuation · unit`, keeping `relative` digits of the unit.
    pub fn from_parts(prime: u64, valuation: u32, unit: u128, relative: u32) -> Self {
        let m = ppow(prime, relative);
        let unit = unit % m;
        if relative == 0 {
            return Self::zero_mod(prime, valuation);
        }
        debug_assert!(unit % prime as u128 != 0, "unit must be coprime to p");
        Self { prime, valuation, precision: valuation + relative, unit }
    }

    pub fn from_i128(n: i128, prime: u64, relative: u32) -> Self {
        if n == 0 {
            return Self::zero(prime);
        }
        let (v, u) = split_power(n.unsigned_abs(), prime);
        let m = ppow(prime, relative);
        let u = if n < 0 { from_signed(-((u % m) as i128), m) } else { u % m };
        Self::from_parts(prime, v, u, relative)
    }

    pub fn from_i64(n: i64, prime: u64, relative: u32) -> Self {
        Self::from_i128(n as i128, prime, relative)
    }

    pub fn from_bigint(n: &BigInt, prime: u64, relative: u32) -> Self {
        if n.is_zero() {
            return Self::zero(prime);
        }
        let p = BigInt::from(prime);
        let mut v = 0;
        let mut rest = n.clone();
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            v += 1;
        }
        let m = BigInt::from(ppow(prime, relative));
        let u = rest.mod_floor(&m).to_u128().expect("reduced residue fits u128");
        Self::from_parts(prime, v, u, relative)
    }

    /// The integer residue `r`, known modulo `p^precision`.
    pub fn from_residue(r: u128, prime: u64, precision: u32) -> Self {
        let r = r % ppow(prime, precision);
        if r == 0 {
            return Self::zero_mod(prime, precision);
        }
        let (v, u) = split_power(r, prime);
        Self::from_parts(prime, v, u, precision - v)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `true` when the value is zero to the available precision.
    pub fn is_zero(&self) -> bool {
        self.valuation >= self.precision
    }

    pub fn is_exact_zero(&self) -> bool {
        self.precision == INFINITE
    }

    /// Valuation; for a value zero to precision `N` this is `N`, and
    /// [`INFINITE`] for the exact zero.
    pub fn valuation(&self) -> u32 {
        self.valuation
    }

    pub fn unit(&self) -> u128 {
        self.unit
    }

    /// Number of known p-adic digits of the unit.
    pub fn relative_precision(&self) -> u32 {
        if self.is_zero() {
            0
        } else {
            self.precision - self.valuation
        }
    }

    /// `None` for the exact zero.
    pub fn absolute_precision(&self) -> Option<u32> {
        (self.precision != INFINITE).then_some(self.precision)
    }

    /// The value as an integer in `[0, p^k)`.
    ///
    /// Fails with [`Error::InsufficientPrecision`] when the value is not
    /// known modulo `p^k`.
    pub fn residue(&self, k: u32) -> Result<u128> {
        if self.precision < k {
            return Err(Error::InsufficientPrecision { available: self.precision, required: k });
        }
        if self.valuation >= k {
            return Ok(0);
        }
        let m = ppow(self.prime, k - self.valuation);
        Ok((self.unit % m) * ppow(self.prime, self.valuation))
    }

    /// Quotient `self / rhs`; the result must be a p-adic integer.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.check_prime(rhs)?;
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_exact_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return if self.precision >= rhs.valuation {
                Ok(Self::zero_mod(self.prime, self.precision - rhs.valuation))
            } else {
                Err(Error::InsufficientPrecision { available: self.precision, required: rhs.valuation })
            };
        }
        if self.valuation < rhs.valuation {
            return Err(Error::NegativeValuation {
                prime: self.prime,
                valuation: self.valuation as i64 - rhs.valuation as i64,
            });
        }
        let rel = self.relative_precision().min(rhs.relative_precision());
        let m = ppow(self.prime, rel);
        let inv = inv_mod(rhs.unit % m, m).expect("unit is invertible");
        Ok(Self::from_parts(self.prime, self.valuation - rhs.valuation, mul_mod(self.unit % m, inv, m), rel))
    }

    /// Multiplicative inverse; only units are invertible.
    pub fn inverse(&self) -> Result<Self> {
        let one = Self::from_parts(self.prime, 0, 1, self.relative_precision().max(1));
        one.checked_div(self)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => &a * &base,
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        // x^0 = 1, exact to the base's relative precision.
        acc.unwrap_or_else(|| Self::from_parts(self.prime, 0, 1, self.relative_precision().max(1)))
    }

    /// Converts to a (truncated) signed integer representative, mainly for
    /// tests and diagnostics.
    pub fn to_bigint(&self) -> Option<BigInt> {
        let n = self.absolute_precision()?;
        Some(BigInt::from(self.residue(n).ok()?))
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.prime, other.prime))
        }
    }

    fn assert_prime(&self, other: &Self) {
        if let Err(e) = self.check_prime(other) {
            panic!("{e}");
        }
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        self.assert_prime(rhs);
        if self.is_exact_zero() {
            return rhs.clone();
        }
        if rhs.is_exact_zero() {
            return self.clone();
        }
        let p = self.prime;
        let n = self.precision.min(rhs.precision);
        let v = self.valuation.min(rhs.valuation);
        if v >= n {
            return Self::zero_mod(p, n);
        }
        let m = ppow(p, n - v);
        let shifted = |x: &Self| -> u128 {
            if x.valuation >= n {
                0
            } else {
                let u = x.unit % ppow(p, n - x.valuation);
                mul_mod(u, ppow(p, x.valuation - v), m)
            }
        };
        let s = add_mod(shifted(self), shifted(rhs), m);
        if s == 0 {
            return Self::zero_mod(p, n);
        }
        let (dv, u) = split_power(s, p);
        Self { prime: p, valuation: v + dv, precision: n, unit: u }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        self.assert_prime(rhs);
        let p = self.prime;
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return Self::zero(p);
        }
        let n = self.valuation.saturating_add(rhs.precision).min(rhs.valuation.saturating_add(self.precision));
        let v = self.valuation.saturating_add(rhs.valuation);
        if v >= n {
            return Self::zero_mod(p, n);
        }
        let m = ppow(p, n - v);
        Self { prime: p, valuation: v, precision: n, unit: mul_mod(self.unit % m, rhs.unit % m, m) }
    }

    fn neg_impl(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m = ppow(self.prime, self.relative_precision());
        Self { unit: m - self.unit, ..self.clone() }
    }
}

impl fmt::Display for PadicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact_zero() {
            write!(f, "0")
        } else if self.is_zero() {
            write!(f, "O({}^{})", self.prime, self.precision)
        } else {
            write!(f, "{}^{}·{} + O({}^{})", self.prime, self.valuation, self.unit, self.prime, self.precision)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait for PadicValue {
            type Output = PadicValue;
            fn $method(self, rhs: PadicValue) -> PadicValue {
                self.$imp(&rhs)
            }
        }
        impl<'a> $trait<&'a PadicValue> for &'a PadicValue {
            type Output = PadicValue;
            fn $method(self, rhs: &'a PadicValue) -> PadicValue {
                self.$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Mul, mul, mul_impl);

impl PadicValue {
    fn sub_impl(&self, rhs: &Self) -> Self {
        self.add_impl(&rhs.neg_impl())
    }
}

forward_binop!(Sub, sub, sub_impl);

impl Neg for PadicValue {
    type Output = PadicValue;
    fn neg(self) -> PadicValue {
        self.neg_impl()
    }
}

impl Neg for &PadicValue {
    type Output = PadicValue;
    fn neg(self) -> PadicValue {
        self.neg_impl()
    }
}

/// Signed representative helper used by [`PadicValue::from_bigint`] callers.
pub(crate) fn bigint_residue(n: &BigInt, m: u128) -> u128 {
    let m = BigInt::from(m);
    let r = n.mod_floor(&m);
    debug_assert!(!r.is_negative());
    r.to_u128().expect("residue fits u128")
}
