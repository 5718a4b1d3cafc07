//! Exact integer and rational sequences.
//!
//! Every function here is generic over the integer type `T` so the same code
//! runs on `BigInt` (production) and on fixed-width integers such as `i128`
//! (cheap cross-checks for small arguments). The memoized `BigInt` tables used
//! by sweeps live in [`memo`].

pub mod memo;

use std::fmt::Debug;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

pub use memo::{bernoulli_cached, bernoulli_table, central_binomial_cached, domb_cached, harmonic_cached};

/// Integer types usable as the exact scalar.
pub trait ExactInt: Integer + Signed + Clone + FromPrimitive + Send + Sync + Debug {}

impl<T> ExactInt for T where T: Integer + Signed + Clone + FromPrimitive + Send + Sync + Debug {}

#[inline]
pub(crate) fn int<T: ExactInt>(n: u64) -> T {
    T::from_u64(n).expect("integer does not fit the scalar type")
}

#[inline]
pub(crate) fn sint<T: ExactInt>(n: i64) -> T {
    T::from_i64(n).expect("integer does not fit the scalar type")
}

/// Sign selector for [`liu_sum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiuSign {
    Plus,
    Minus,
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial<T: ExactInt>(n: u64, k: i64) -> T {
    if k < 0 || k as u64 > n {
        return T::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = T::one();
    for i in 0..k {
        // acc = C(n, i) here, so the division is exact.
        acc = acc * int::<T>(n - i) / int::<T>(i + 1);
    }
    acc
}

/// `a (a-1) ... (a-k+1) / k!` for rational `a`.
pub fn gen_binomial<T: ExactInt>(a: &Ratio<T>, k: u64) -> Ratio<T> {
    let mut acc = Ratio::one();
    for i in 0..k {
        acc = acc * (a.clone() - Ratio::from_integer(int::<T>(i))) / Ratio::from_integer(int::<T>(i + 1));
    }
    acc
}

/// Shifted factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub fn rising_factorial<T: ExactInt>(a: &Ratio<T>, n: u64) -> Ratio<T> {
    (0..n).fold(Ratio::one(), |acc, j| acc * (a.clone() + Ratio::from_integer(int::<T>(j))))
}

/// `Σ_{k=1}^{n} 1/k^order`.
pub fn harmonic<T: ExactInt>(n: u64, order: u32) -> Ratio<T> {
    (1..=n).fold(Ratio::zero(), |acc, k| acc + Ratio::new(T::one(), num_traits::pow(int::<T>(k), order as usize)))
}

/// Domb number by its defining sum.
pub fn domb<T: ExactInt>(n: u64) -> T {
    (0..=n).fold(T::zero(), |acc, k| {
        let b = binomial::<T>(n, k as i64);
        acc + b.clone() * b * binomial::<T>(2 * k, k as i64) * binomial::<T>(2 * (n - k), (n - k) as i64)
    })
}

/// `Σ_{k=0}^{n} (-1)^k C(n+2k,3k) C(2k,k)² C(3k,k) 16^{n-k}`.
pub fn domb_rhs_16<T: ExactInt>(n: u64) -> T {
    (0..=n).fold(T::zero(), |acc, k| {
        let c = binomial::<T>(2 * k, k as i64);
        let term = binomial::<T>(n + 2 * k, 3 * k as i64)
            * c.clone()
            * c
            * binomial::<T>(3 * k, k as i64)
            * num_traits::pow(int::<T>(16), (n - k) as usize);
        if k % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// `Σ_{k=0}^{⌊n/2⌋} C(n+k,3k) C(2k,k)² C(3k,k) 4^{n-2k}`.
pub fn domb_rhs_4<T: ExactInt>(n: u64) -> T {
    (0..=n / 2).fold(T::zero(), |acc, k| {
        let c = binomial::<T>(2 * k, k as i64);
        acc + binomial::<T>(n + k, 3 * k as i64)
            * c.clone()
            * c
            * binomial::<T>(3 * k, k as i64)
            * num_traits::pow(int::<T>(4), (n - 2 * k) as usize)
    })
}

/// `D_0..D_{n-1}` from
/// `(m+1)³ D_{m+1} = 2(2m+1)(5m²+5m+2) D_m - 64 m³ D_{m-1}`, where every
/// division is exact. Linear in `n`, unlike the defining sum.
pub fn domb_sequence<T: ExactInt>(n: u64) -> Vec<T> {
    let mut d: Vec<T> = Vec::with_capacity(n as usize);
    for m in 0..n {
        let next = match m {
            0 => T::one(),
            1 => int::<T>(4),
            _ => {
                let k = m - 1;
                let a = int::<T>(2 * (2 * k + 1) * (5 * k * k + 5 * k + 2)) * d[k as usize].clone();
                let b = int::<T>(64 * k * k * k) * d[k as usize - 1].clone();
                (a - b) / int::<T>(m * m * m)
            }
        };
        d.push(next);
    }
    d
}

/// `(1/n) Σ_{k=0}^{n-1} (2k+1) D_k (±8)^{n-1-k}` for `n ≥ 1`.
///
/// Returned as a rational so callers can observe that the denominator is 1.
pub fn liu_sum<T: ExactInt>(n: u64, sign: LiuSign) -> Ratio<T> {
    assert!(n >= 1, "liu_sum is defined for n >= 1");
    let base = match sign {
        LiuSign::Plus => sint::<T>(8),
        LiuSign::Minus => sint::<T>(-8),
    };
    // Horner in the base: ((a_0 b + a_1) b + ...) + a_{n-1}
    let total = domb_sequence::<T>(n)
        .into_iter()
        .enumerate()
        .fold(T::zero(), |acc, (k, d)| acc * base.clone() + int::<T>(2 * k as u64 + 1) * d);
    Ratio::new(total, int::<T>(n))
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`, from
/// `Σ_{k=0}^{m-1} C(m,k) B_k = 0` for `m ≥ 2`.
pub fn bernoulli_numbers<T: ExactInt>(n: u64) -> Vec<Ratio<T>> {
    let mut table: Vec<Ratio<T>> = Vec::with_capacity(n as usize + 1);
    for m in 0..=n {
        table.push(next_bernoulli(&table, m));
    }
    table
}

/// Computes `B_m` given `B_0..B_{m-1}`.
pub(crate) fn next_bernoulli<T: ExactInt>(prev: &[Ratio<T>], m: u64) -> Ratio<T> {
    debug_assert_eq!(prev.len() as u64, m);
    if m == 0 {
        return Ratio::one();
    }
    if m >= 3 && m % 2 == 1 {
        return Ratio::zero();
    }
    // (m+1) B_m = -Σ_{k<m} C(m+1,k) B_k
    let mut row = T::one();
    let mut acc = Ratio::zero();
    for (k, b) in prev.iter().enumerate() {
        let k = k as u64;
        if !b.is_zero() {
            acc = acc + b.clone() * Ratio::from_integer(row.clone());
        }
        row = row * int::<T>(m + 1 - k) / int::<T>(k + 1);
    }
    -acc / Ratio::from_integer(int::<T>(m + 1))
}

/// `B_n(x) = Σ_k C(n,k) B_k x^{n-k}` given a table holding at least `B_0..=B_n`.
pub fn bernoulli_poly<T: ExactInt>(n: u64, x: &Ratio<T>, bernoulli: &[Ratio<T>]) -> Ratio<T> {
    assert!(bernoulli.len() as u64 > n, "Bernoulli table too short");
    // Horner in x: Σ_k C(n,k) B_k x^{n-k}
    let mut acc = Ratio::zero();
    for k in 0..=n {
        let coeff = bernoulli[k as usize].clone() * Ratio::from_integer(binomial::<T>(n, k as i64));
        acc = acc * x.clone() + coeff;
    }
    acc
}
