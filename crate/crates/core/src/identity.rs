//! Exact verification of the finite combinatorial identities behind the
//! congruences: the Pfaff–Saalschütz specialization, the harmonic-weighted
//! companion sum, the two telescoped cubic sums, the `C(-1/2, ·)` shift
//! identities, and the two Domb transformation formulas.
//!
//! Everything here is computed over exact rationals; these results are the
//! trusted base the congruence checks lean on.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{binomial, domb_cached, domb_rhs_16, domb_rhs_4, gen_binomial, harmonic_cached, rising_factorial};
use crate::{Error, ExactRational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityId {
    Pfaff,
    Harmonic,
    Sigma1,
    Sigma3,
    AuxBinom,
    Transforms,
}

impl IdentityId {
    pub const ALL: [IdentityId; 6] = [
        IdentityId::Pfaff,
        IdentityId::Harmonic,
        IdentityId::Sigma1,
        IdentityId::Sigma3,
        IdentityId::AuxBinom,
        IdentityId::Transforms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Pfaff => "pfaff",
            IdentityId::Harmonic => "harmonic",
            IdentityId::Sigma1 => "sigma1",
            IdentityId::Sigma3 => "sigma3",
            IdentityId::AuxBinom => "auxbinom",
            IdentityId::Transforms => "transforms",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown identity id '{s}'")))
    }
}

/// One exact identity evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity_id: String,
    pub params: Vec<(&'static str, i64)>,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(
        identity_id: impl Into<String>,
        params: Vec<(&'static str, i64)>,
        lhs: ExactRational,
        rhs: ExactRational,
    ) -> Self {
        let pass = lhs == rhs;
        Self { identity_id: identity_id.into(), params, lhs, rhs, pass }
    }
}

/// Parameter ranges for [`run_identities`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityConfig {
    pub pfaff_nmax: u64,
    pub harmonic_nmax: u64,
    pub sigma_nmax: u64,
    pub aux_pmax: u64,
    pub transforms_nmax: u64,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        Self { pfaff_nmax: 100, harmonic_nmax: 100, sigma_nmax: 60, aux_pmax: 200, transforms_nmax: 100 }
    }
}

impl IdentityConfig {
    /// Same upper bound for every family.
    pub fn uniform(nmax: u64) -> Self {
        Self { pfaff_nmax: nmax, harmonic_nmax: nmax, sigma_nmax: nmax, aux_pmax: nmax, transforms_nmax: nmax }
    }
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}

fn qi(n: BigInt) -> ExactRational {
    ExactRational::from_integer(n)
}

fn b(n: u64, k: i64) -> BigInt {
    binomial::<BigInt>(n, k)
}

/// The cubic-in-`n` numerators of the two telescoped sums.
pub struct SigmaPolynomials;

impl SigmaPolynomials {
    /// `j(j+1)(j+3) + n(2-j²)(3j+1) - n²(j+2)(3j+1)(3j+2) + n³(j+1)(3j+1)(3j+2)`
    pub fn sigma1(n: i64, j: i64) -> BigInt {
        let (n, j) = (BigInt::from(n), BigInt::from(j));
        let a = &j * (&j + 1) * (&j + 3);
        let c = 3 * &j + 1;
        let d = 3 * &j + 2;
        a + &n * (2 - &j * &j) * &c - &n * &n * (&j + 2) * &c * &d + &n * &n * &n * (&j + 1) * &c * &d
    }

    /// `j(1+2j) + 2n(j+1)(3j+1) - 2n²(3j+1)(3j+2) + n³(3j+1)(3j+2)`
    pub fn sigma3(n: i64, j: i64) -> BigInt {
        let (n, j) = (BigInt::from(n), BigInt::from(j));
        let c = 3 * &j + 1;
        let d = 3 * &j + 2;
        &j * (1 + 2 * &j) + 2 * &n * (&j + 1) * &c - 2 * &n * &n * &c * &d + &n * &n * &n * &c * &d
    }

    /// `Σ₁(p, j)` with the `p³` term dropped.
    pub fn sigma2(p: i64, j: i64) -> BigInt {
        let (p, j) = (BigInt::from(p), BigInt::from(j));
        &j * (&j + 1) * (&j + 3) + &p * (2 - &j * &j) * (3 * &j + 1) - &p * &p * (&j + 2) * (3 * &j + 1) * (3 * &j + 2)
    }
}

/// `Σ_{k=0}^n C(n,k)C(n+k,k)(-1)^k/(3k+4) = -Π_{k=1}^n (3k-1)/(3k-2) / ((3n-1)(3n+1)(3n+4))`.
pub fn check_pfaff_saalschutz(n: u64) -> IdentityCheck {
    let lhs = (0..=n).fold(ExactRational::zero(), |acc, k| {
        let term = qi(b(n, k as i64) * b(n + k, k as i64)) / q(3 * k as i64 + 4, 1);
        if k % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    let n_i = n as i64;
    let prod = (1..=n as i64).fold(ExactRational::one(), |acc, k| acc * q(3 * k - 1, 3 * k - 2));
    let rhs = -prod / q((3 * n_i - 1) * (3 * n_i + 1) * (3 * n_i + 4), 1);
    IdentityCheck::new("pfaff", vec![("n", n_i)], lhs, rhs)
}

/// Harmonic-weighted companion of [`check_pfaff_saalschutz`]:
/// `Σ_j C(n,j)C(n+j,j)(-1)^j (H_{2j}-H_j)/(3j+4)
///   = -9(2n+1)/(10(3n-1)(3n+4))
///     + (2/3)_n/((3n-1)(3n+1)(3n+4)(1/3)_n) · (9/10 + Σ_{k=1}^n (1/3)_k/(k(2/3)_k))`.
pub fn check_harmonic_id(n: u64) -> IdentityCheck {
    let lhs = (0..=n).fold(ExactRational::zero(), |acc, j| {
        let h = harmonic_cached(2 * j, 1) - harmonic_cached(j, 1);
        let term = qi(b(n, j as i64) * b(n + j, j as i64)) * h / q(3 * j as i64 + 4, 1);
        if j % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    let n_i = n as i64;
    let third = q(1, 3);
    let two_thirds = q(2, 3);
    let mut inner = q(9, 10);
    let (mut a, mut c) = (ExactRational::one(), ExactRational::one());
    for k in 1..=n {
        a *= &third + q(k as i64 - 1, 1);
        c *= &two_thirds + q(k as i64 - 1, 1);
        inner += &a / (&c * q(k as i64, 1));
    }
    let lead = q(-9 * (2 * n_i + 1), 10 * (3 * n_i - 1) * (3 * n_i + 4));
    let ratio = rising_factorial(&two_thirds, n)
        / (rising_factorial(&third, n) * q((3 * n_i - 1) * (3 * n_i + 1) * (3 * n_i + 4), 1));
    let rhs = lead + ratio * inner;
    IdentityCheck::new("harmonic", vec![("n", n_i)], lhs, rhs)
}

/// `Σ_{k=2j}^{n-1} k³ C(k+j,3j) = Σ₁/((j+1)(3j+2)(3j+4)) · C(n+j,3j+1)`.
pub fn check_sigma1(n: u64, j: u64) -> Result<IdentityCheck> {
    if n == 0 || 2 * j > n - 1 {
        return Err(Error::Precondition(format!("sigma1 needs 0 <= 2j <= n-1, got n={n}, j={j}")));
    }
    let lhs: BigInt = (2 * j..n).map(|k| BigInt::from(k).pow(3) * b(k + j, 3 * j as i64)).sum();
    let (ni, ji) = (n as i64, j as i64);
    let rhs =
        qi(SigmaPolynomials::sigma1(ni, ji)) / q((ji + 1) * (3 * ji + 2) * (3 * ji + 4), 1) * qi(b(n + j, 3 * ji + 1));
    Ok(IdentityCheck::new("sigma1", vec![("n", ni), ("j", ji)], qi(lhs), rhs))
}

/// `Σ_{k=j}^{n-1} k³ C(k+2j,3j) = Σ₃/((3j+2)(3j+4)) · C(n+2j,3j+1)`.
pub fn check_sigma3(n: u64, j: u64) -> Result<IdentityCheck> {
    if n == 0 || j > n - 1 {
        return Err(Error::Precondition(format!("sigma3 needs 0 <= j <= n-1, got n={n}, j={j}")));
    }
    let lhs: BigInt = (j..n).map(|k| BigInt::from(k).pow(3) * b(k + 2 * j, 3 * j as i64)).sum();
    let (ni, ji) = (n as i64, j as i64);
    let rhs = qi(SigmaPolynomials::sigma3(ni, ji)) / q((3 * ji + 2) * (3 * ji + 4), 1) * qi(b(n + 2 * j, 3 * ji + 1));
    Ok(IdentityCheck::new("sigma3", vec![("n", ni), ("j", ji)], qi(lhs), rhs))
}

/// The two shift identities relating index `(p-4)/3` to `(p-1)/3`:
/// `C(-1/2,(p-4)/3)² = 4(p-1)²/(2p-5)² · C(-1/2,(p-1)/3)²` and
/// `C(h,(p-4)/3)C(h+(p-4)/3,(p-4)/3) = 4(p-1)/(5(p+5)) · C(h,(p-1)/3)C(h+(p-1)/3,(p-1)/3)`
/// with `h = (p-1)/2`. `p` only needs to be `≡ 1 (mod 3)`, odd, and `> 5`.
pub fn check_aux_binomial_ids(p: u64) -> Result<[IdentityCheck; 2]> {
    if p <= 5 || p % 3 != 1 || p % 2 == 0 {
        return Err(Error::Precondition(format!("auxbinom needs odd p = 1 mod 3 and p > 5, got {p}")));
    }
    let (a, c) = ((p - 4) / 3, (p - 1) / 3);
    let h = (p - 1) / 2;
    let pi = p as i64;
    let neg_half = q(-1, 2);
    let ga = gen_binomial(&neg_half, a);
    let gc = gen_binomial(&neg_half, c);
    let first = IdentityCheck::new(
        "auxbinom.neg_half",
        vec![("p", pi)],
        &ga * &ga,
        q(4 * (pi - 1) * (pi - 1), (2 * pi - 5) * (2 * pi - 5)) * &gc * &gc,
    );
    let second = IdentityCheck::new(
        "auxbinom.product",
        vec![("p", pi)],
        qi(b(h, a as i64) * b(h + a, a as i64)),
        q(4 * (pi - 1), 5 * (pi + 5)) * qi(b(h, c as i64) * b(h + c, c as i64)),
    );
    Ok([first, second])
}

/// `D_n` against both transformed representations.
pub fn check_transforms(n: u64) -> [IdentityCheck; 2] {
    let d = qi(domb_cached(n));
    let ni = n as i64;
    [
        IdentityCheck::new("transforms.16", vec![("n", ni)], d.clone(), qi(domb_rhs_16::<BigInt>(n))),
        IdentityCheck::new("transforms.4", vec![("n", ni)], d, qi(domb_rhs_4::<BigInt>(n))),
    ]
}

/// Every check of the requested families over the configured ranges, in a
/// deterministic order (family, then parameters ascending).
pub fn run_identities(ids: &[IdentityId], config: &IdentityConfig) -> Vec<IdentityCheck> {
    let mut ids = ids.to_vec();
    ids.sort();
    ids.dedup();
    ids.into_iter()
        .flat_map(|id| -> Vec<IdentityCheck> {
            match id {
                IdentityId::Pfaff => (0..=config.pfaff_nmax).into_par_iter().map(check_pfaff_saalschutz).collect(),
                IdentityId::Harmonic => (0..=config.harmonic_nmax).into_par_iter().map(check_harmonic_id).collect(),
                IdentityId::Sigma1 => (1..=config.sigma_nmax)
                    .into_par_iter()
                    .flat_map_iter(|n| (0..=(n - 1) / 2).map(move |j| check_sigma1(n, j).expect("admissible")))
                    .collect(),
                IdentityId::Sigma3 => (1..=config.sigma_nmax)
                    .into_par_iter()
                    .flat_map_iter(|n| (0..n).map(move |j| check_sigma3(n, j).expect("admissible")))
                    .collect(),
                IdentityId::AuxBinom => (7..=config.aux_pmax)
                    .into_par_iter()
                    .filter(|p| p % 6 == 1)
                    .flat_map_iter(|p| check_aux_binomial_ids(p).expect("admissible"))
                    .collect(),
                IdentityId::Transforms => {
                    (0..=config.transforms_nmax).into_par_iter().flat_map_iter(check_transforms).collect()
                }
            }
        })
        .collect()
}
