use super::arith::{inv_mod, mul_mod, ppow};
use super::value::PadicValue;

/// `n! = p^valuation · unit` with `unit` taken modulo `p^K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactoredFactorial {
    pub n: u64,
    pub valuation: u64,
    pub unit: u128,
}

/// Legendre's formula `Σ_{i≥1} ⌊n/p^i⌋`.
pub fn factorial_valuation(mut n: u64, p: u64) -> u64 {
    let mut e = 0;
    while n > 0 {
        n /= p;
        e += n;
    }
    e
}

/// Per-prime table of p-free factorial parts modulo `p^K`.
///
/// `prefix[n] = Π_{i ≤ n, p ∤ i} i mod p^K`, so the unit part of `n!` is
/// `prefix[n] · unit(⌊n/p⌋!)`, recursively: each block of `p` consecutive
/// integers contributes its `p - 1` unit residues and one multiple of `p`
/// whose cofactor feeds the recursion. Inverses are tabulated as well so
/// binomials cost a handful of multiplications.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    prime: u64,
    precision: u32,
    modulus: u128,
    prefix: Vec<u128>,
    inv_prefix: Vec<u128>,
}

impl FactorialTable {
    /// Table covering `0..=limit` with units modulo `p^precision`.
    pub fn new(prime: u64, precision: u32, limit: u64) -> Self {
        assert!(precision >= 1);
        let modulus = ppow(prime, precision);
        let len = limit as usize + 1;
        let mut prefix = Vec::with_capacity(len);
        prefix.push(1 % modulus);
        for i in 1..=limit {
            let last = prefix[i as usize - 1];
            prefix.push(if i % prime == 0 { last } else { mul_mod(last, i as u128 % modulus, modulus) });
        }
        // One inversion, then walk back down.
        let mut inv_prefix = vec![0; len];
        inv_prefix[len - 1] = inv_mod(prefix[len - 1], modulus).expect("prefix product is a unit");
        for i in (1..=limit).rev() {
            let cur = inv_prefix[i as usize];
            inv_prefix[i as usize - 1] = if i % prime == 0 { cur } else { mul_mod(cur, i as u128 % modulus, modulus) };
        }
        Self { prime, precision, modulus, prefix, inv_prefix }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn limit(&self) -> u64 {
        self.prefix.len() as u64 - 1
    }

    /// Unit part of `n!` (or its inverse) modulo `p^K`.
    fn unit_part(&self, n: u64, inverse: bool) -> u128 {
        if n > self.limit() {
            let u = self.unit_part_direct(n);
            return if inverse { inv_mod(u, self.modulus).expect("unit") } else { u };
        }
        let table = if inverse { &self.inv_prefix } else { &self.prefix };
        let mut acc = 1 % self.modulus;
        let mut m = n;
        while m > 1 {
            acc = mul_mod(acc, table[m as usize], self.modulus);
            m /= self.prime;
        }
        acc
    }

    fn unit_part_direct(&self, n: u64) -> u128 {
        let mut acc = 1 % self.modulus;
        let mut m = n;
        while m > 1 {
            for i in 1..=m {
                if i % self.prime != 0 {
                    acc = mul_mod(acc, i as u128 % self.modulus, self.modulus);
                }
            }
            m /= self.prime;
        }
        acc
    }

    pub fn factorial(&self, n: u64) -> FactoredFactorial {
        FactoredFactorial { n, valuation: factorial_valuation(n, self.prime), unit: self.unit_part(n, false) }
    }

    /// `C(n, k)` with exact valuation and unit modulo `p^K`.
    pub fn binomial(&self, n: u64, k: i64) -> PadicValue {
        if k < 0 || k as u64 > n {
            return PadicValue::zero(self.prime);
        }
        let k = k as u64;
        let p = self.prime;
        let v = factorial_valuation(n, p) - factorial_valuation(k, p) - factorial_valuation(n - k, p);
        let u = mul_mod(
            self.unit_part(n, false),
            mul_mod(self.unit_part(k, true), self.unit_part(n - k, true), self.modulus),
            self.modulus,
        );
        PadicValue::from_parts(p, v as u32, u, self.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;
    use num_bigint::BigInt;

    #[test]
    fn legendre_formula() {
        assert_eq!(factorial_valuation(10, 5), 2);
        assert_eq!(factorial_valuation(125, 5), 31);
        assert_eq!(factorial_valuation(4, 5), 0);
    }

    #[test]
    fn binomials_match_exact_values() {
        for p in [3u64, 5, 7, 11] {
            let t = FactorialTable::new(p, 3, 60);
            for n in 0..=70u64 {
                for k in 0..=n {
                    let exact = binomial::<BigInt>(n, k as i64);
                    let fast = t.binomial(n, k as i64);
                    assert_eq!(fast, PadicValue::from_bigint(&exact, p, 3), "C({n},{k}) p={p}");
                }
            }
        }
    }

    #[test]
    fn factorial_unit() {
        let t = FactorialTable::new(5, 2, 20);
        // 10! = 3628800 = 5^2 · 145152, 145152 mod 25 = 2
        let f = t.factorial(10);
        assert_eq!(f.valuation, 2);
        assert_eq!(f.unit, 145152 % 25);
    }
}
