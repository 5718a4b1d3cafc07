//! Truncated p-adic arithmetic: residues modulo `p^K` with explicit valuation.

pub mod arith;
pub mod bernoulli;
pub mod crosscheck;
pub mod factorial;
mod value;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use bernoulli::{bernoulli_mod, bernoulli_poly_third, bernoulli_table_mod};
pub use factorial::{factorial_valuation, FactoredFactorial, FactorialTable};
pub use value::{PadicValue, INFINITE};

use crate::{Error, ExactRational, Result};
use arith::{from_signed, inv_mod, mul_mod, pow_mod, ppow};

fn split_big(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return (v, rest);
        }
        rest = q;
        v += 1;
    }
}

/// Reduces an exact rational to a p-adic integer with `k` digits of unit.
///
/// Fails with [`Error::NegativeValuation`] when `p` divides the denominator
/// more often than the numerator.
pub fn reduce_rational(r: &ExactRational, p: u64, k: u32) -> Result<PadicValue> {
    if r.numer().is_zero() {
        return Ok(PadicValue::zero(p));
    }
    let pb = BigInt::from(p);
    let (vn, un) = split_big(r.numer(), &pb);
    let (vd, ud) = split_big(r.denom(), &pb);
    if vd > vn {
        return Err(Error::NegativeValuation { prime: p, valuation: vn as i64 - vd as i64 });
    }
    let m = ppow(p, k);
    let un = value::bigint_residue(&un, m);
    let ud = value::bigint_residue(&ud, m);
    let inv = inv_mod(ud, m).expect("denominator unit is invertible");
    Ok(PadicValue::from_parts(p, vn - vd, mul_mod(un, inv, m), k))
}

/// `C(n, k)` with exact valuation and `k_prec` digits of unit.
pub fn binomial_mod(n: u64, k: i64, p: u64, k_prec: u32) -> PadicValue {
    FactorialTable::new(p, k_prec, n).binomial(n, k)
}

/// Fermat quotient `q_p(a) = (a^{p-1} - 1)/p` modulo `p^k`, computed from
/// `a^{p-1} mod p^{k+1}`.
pub fn fermat_quotient(a: i64, p: u64, k: u32) -> Result<PadicValue> {
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::NotCoprime { value: a, prime: p });
    }
    let m = ppow(p, k + 1);
    let power = pow_mod(from_signed(a as i128, m), p - 1, m);
    let q = (power + m - 1) % m / p as u128;
    Ok(PadicValue::from_residue(q, p, k))
}

/// Legendre symbol `(a/q)` by Euler's criterion.
pub fn legendre(a: i64, q: u64) -> i8 {
    let m = q as u128;
    let a = from_signed(a as i128, m);
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (q - 1) / 2, m) == 1 {
        1
    } else {
        -1
    }
}

/// Convenience: the exact rational `num/den` as a p-adic value.
pub fn reduce_fraction(num: i64, den: i64, p: u64, k: u32) -> Result<PadicValue> {
    if den == 0 {
        return Err(Error::DivisionByZero);
    }
    let r = ExactRational::new(num.into(), den.into());
    reduce_rational(&r, p, k)
}

/// `true` if `r` is a p-adic integer.
pub fn is_padic_integer(r: &ExactRational, p: u64) -> bool {
    r.is_zero() || !r.denom().abs().is_multiple_of(&BigInt::from(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    #[test]
    fn reduce_rational_examples() {
        let a = reduce_rational(&r(1, 6), 5, 2).unwrap();
        assert_eq!((a.valuation(), a.unit()), (0, 21));
        let b = reduce_rational(&r(10, 3), 5, 2).unwrap();
        // 10/3 = 5 · (2/3), and 2/3 ≡ 9 (mod 25)
        assert_eq!((b.valuation(), b.unit()), (1, 9));
        assert!(matches!(reduce_rational(&r(1, 5), 5, 2), Err(Error::NegativeValuation { .. })));
    }

    #[test]
    fn binomial_mod_examples() {
        let w = binomial_mod(10, 5, 5, 3);
        assert_eq!((w.valuation(), w.unit()), (0, 2));
        for p in [5u64, 7, 11, 13] {
            let b = binomial_mod(p, 1, p, 3);
            assert_eq!((b.valuation(), b.unit()), (1, 1));
        }
        let c = binomial_mod(4, 2, 7, 2);
        assert_eq!((c.valuation(), c.unit()), (0, 6));
    }

    #[test]
    fn fermat_quotient_examples() {
        assert!(fermat_quotient(1, 7, 3).unwrap().is_zero());
        assert_eq!(fermat_quotient(2, 3, 1).unwrap().residue(1).unwrap(), 1);
        assert_eq!(fermat_quotient(2, 5, 1).unwrap().residue(1).unwrap(), 3);
        assert!(matches!(fermat_quotient(10, 5, 1), Err(Error::NotCoprime { .. })));
        // 2^4 = 16, q_5(2) = 3 exactly, so mod 25 it is still 3.
        assert_eq!(fermat_quotient(2, 5, 2).unwrap().residue(2).unwrap(), 3);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(3, 3), 0);
        assert_eq!(legendre(2, 7), 1);
        for p in [7i64, 13, 19, 31, 37] {
            assert_eq!(legendre(p, 3), 1);
        }
        assert_eq!(legendre(-3, 5), -1);
    }

    proptest! {
        #[test]
        fn binomial_mod_agrees_with_exact(pi in 0usize..8, n_frac in 0u64..=400, kk in 0u64..=400, prec in 1u32..4) {
            let p = [3u64, 5, 7, 11, 13, 17, 19, 23][pi];
            let n = n_frac * 4 * p / 400;
            let k = kk * n / 400;
            let fast = binomial_mod(n, k as i64, p, prec);
            let exact = reduce_rational(&ExactRational::from_integer(binomial::<BigInt>(n, k as i64)), p, prec).unwrap();
            prop_assert_eq!(fast, exact);
        }

        #[test]
        fn fermat_quotient_is_logarithmic(pi in 0usize..10, a in 1i64..500, b in 1i64..500) {
            let p = [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37][pi];
            prop_assume!(a % p as i64 != 0 && b % p as i64 != 0);
            let qa = fermat_quotient(a, p, 1).unwrap().residue(1).unwrap();
            let qb = fermat_quotient(b, p, 1).unwrap().residue(1).unwrap();
            let qab = fermat_quotient(a * b, p, 1).unwrap().residue(1).unwrap();
            prop_assert_eq!(qab, (qa + qb) % p as u128);
        }

        #[test]
        fn legendre_matches_euler(pi in 0usize..10, a in -1000i64..1000) {
            let q = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31][pi];
            let e = pow_mod(from_signed(a as i128, q as u128), (q - 1) / 2, q as u128);
            let l = legendre(a, q);
            prop_assert_eq!(from_signed(l as i128, q as u128), e);
        }
    }
}
