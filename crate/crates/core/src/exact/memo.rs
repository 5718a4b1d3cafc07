//! Growable, thread-safe memo tables for the `BigInt` sequences reused across
//! every prime of a sweep.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::next_bernoulli;

struct Table<T> {
    values: RwLock<Vec<T>>,
}

impl<T: Clone> Table<T> {
    const fn new() -> Self {
        Self { values: RwLock::new(Vec::new()) }
    }

    fn get(&self, n: usize, extend: impl FnOnce(&mut Vec<T>, usize)) -> T {
        if let Some(v) = self.values.read().expect("memo table poisoned").get(n) {
            return v.clone();
        }
        let mut values = self.values.write().expect("memo table poisoned");
        if values.len() <= n {
            extend(&mut values, n);
        }
        values[n].clone()
    }
}

static CENTRAL: Table<BigInt> = Table::new();
static DOMB: Table<BigInt> = Table::new();
static HARMONIC_1: Table<BigRational> = Table::new();
static HARMONIC_2: Table<BigRational> = Table::new();
static BERNOULLI: Table<BigRational> = Table::new();

/// `C(2n, n)`.
pub fn central_binomial_cached(n: u64) -> BigInt {
    CENTRAL.get(n as usize, |values, n| {
        if values.is_empty() {
            values.push(BigInt::one());
        }
        while values.len() <= n {
            let m = values.len() as u64;
            // C(2m,m) = C(2m-2,m-1) * 2(2m-1) / m
            let next = values[m as usize - 1].clone() * BigInt::from(2 * (2 * m - 1)) / BigInt::from(m);
            values.push(next);
        }
    })
}

/// `D_n`, extended with the defining sum over a running binomial row.
pub fn domb_cached(n: u64) -> BigInt {
    if let Some(v) = DOMB.values.read().expect("memo table poisoned").get(n as usize) {
        return v.clone();
    }
    // Central binomials must be in place before taking the Domb lock.
    central_binomial_cached(n);
    let central = CENTRAL.values.read().expect("memo table poisoned").clone();
    DOMB.get(n as usize, |values, n| {
        while values.len() <= n {
            let m = values.len() as u64;
            let mut row = BigInt::one();
            let mut acc = BigInt::zero();
            for k in 0..=m {
                acc += &row * &row * &central[k as usize] * &central[(m - k) as usize];
                row = row * BigInt::from(m - k) / BigInt::from(k + 1);
            }
            values.push(acc);
        }
    })
}

/// `H_n^{(order)}`; orders 1 and 2 are memoized, others computed directly.
pub fn harmonic_cached(n: u64, order: u32) -> BigRational {
    let table = match order {
        1 => &HARMONIC_1,
        2 => &HARMONIC_2,
        _ => return super::harmonic::<BigInt>(n, order),
    };
    table.get(n as usize, |values, n| {
        if values.is_empty() {
            values.push(BigRational::zero());
        }
        while values.len() <= n {
            let k = values.len() as u64;
            let step = BigRational::new(BigInt::one(), BigInt::from(k).pow(order));
            let next = &values[k as usize - 1] + step;
            values.push(next);
        }
    })
}

/// Exact `B_n` (with `B_1 = -1/2`). Cost grows quadratically in `n`.
pub fn bernoulli_cached(n: u64) -> BigRational {
    BERNOULLI.get(n as usize, |values, n| {
        while values.len() <= n {
            let m = values.len() as u64;
            let next = next_bernoulli(values, m);
            values.push(next);
        }
    })
}

/// `B_0..=B_n` as a fresh vector (cloned from the memo).
pub fn bernoulli_table(n: u64) -> Vec<BigRational> {
    bernoulli_cached(n);
    BERNOULLI.values.read().expect("memo table poisoned")[..=n as usize].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{bernoulli_numbers, binomial, domb, harmonic};

    #[test]
    fn cached_tables_match_direct_definitions() {
        for n in (0..60).rev() {
            assert_eq!(domb_cached(n), domb::<BigInt>(n));
            assert_eq!(central_binomial_cached(n), binomial::<BigInt>(2 * n, n as i64));
            assert_eq!(harmonic_cached(n, 1), harmonic::<BigInt>(n, 1));
            assert_eq!(harmonic_cached(n, 2), harmonic::<BigInt>(n, 2));
        }
        assert_eq!(bernoulli_table(30), bernoulli_numbers::<BigInt>(30));
    }

    #[test]
    fn concurrent_readers_see_consistent_values() {
        let handles: Vec<_> = (0..8).map(|t| std::thread::spawn(move || domb_cached(40 + t))).collect();
        for (t, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), domb::<BigInt>(40 + t as u64));
        }
    }
}
