//! Bernoulli numbers modulo a prime, via `Σ_{k<m} C(m,k) B_k = 0`.
//!
//! Each table costs `O(p²)` word operations and is built once per prime, then
//! shared read-only. When `DOMB_CACHE_DIR` is set, tables are also persisted
//! there as `bernoulli_<p>.txt` (one residue per line).

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use super::arith::{inv_mod, mul_mod, pow_mod};
use crate::{Error, Result};

/// Environment variable naming the optional on-disk cache directory.
pub const CACHE_DIR_VAR: &str = "DOMB_CACHE_DIR";

fn registry() -> &'static RwLock<HashMap<u64, Arc<Vec<u64>>>> {
    static REGISTRY: OnceLock<RwLock<HashMap<u64, Arc<Vec<u64>>>>> = OnceLock::new();
    REGISTRY.get_or_init(Default::default)
}

/// `B_0..=B_{p-2}` reduced mod `p` (all denominators are coprime to `p`
/// in that range). Requires `p ≥ 3`.
pub fn bernoulli_table_mod(p: u64) -> Arc<Vec<u64>> {
    if let Some(t) = registry().read().expect("bernoulli registry poisoned").get(&p) {
        return t.clone();
    }
    let dir = std::env::var_os(CACHE_DIR_VAR).map(PathBuf::from);
    let table = dir.as_deref().and_then(|d| load(d, p)).unwrap_or_else(|| {
        let t = compute_table(p);
        if let Some(d) = dir.as_deref() {
            // Best effort: a cache write failure only costs recomputation.
            let _ = store(d, p, &t);
        }
        t
    });
    let table = Arc::new(table);
    registry().write().expect("bernoulli registry poisoned").entry(p).or_insert(table).clone()
}

/// Builds the table without touching the caches.
pub fn compute_table(p: u64) -> Vec<u64> {
    assert!(p >= 3, "Bernoulli table needs an odd prime");
    let m = p as u128;
    let top = (p - 2) as usize;
    // Factorials and inverse factorials mod p up to p-1.
    let mut fact = vec![1u128; p as usize];
    for i in 1..p as usize {
        fact[i] = mul_mod(fact[i - 1], i as u128, m);
    }
    let mut inv_fact = vec![1u128; p as usize];
    inv_fact[p as usize - 1] = inv_mod(fact[p as usize - 1], m).expect("(p-1)! is a unit");
    for i in (1..p as usize).rev() {
        inv_fact[i - 1] = mul_mod(inv_fact[i], i as u128, m);
    }
    let binom = |n: usize, k: usize| mul_mod(fact[n], mul_mod(inv_fact[k], inv_fact[n - k], m), m);

    let mut b = vec![0u128; top + 1];
    b[0] = 1;
    for n in 1..=top {
        if n >= 3 && n % 2 == 1 {
            continue;
        }
        // (n+1) B_n = -Σ_{k<n} C(n+1,k) B_k, with n+1 ≤ p-1 a unit.
        let mut acc = 0u128;
        for (k, bk) in b.iter().enumerate().take(n) {
            if *bk != 0 {
                acc = (acc + mul_mod(binom(n + 1, k), *bk, m)) % m;
            }
        }
        let inv = inv_mod((n + 1) as u128, m).expect("n+1 < p");
        b[n] = (m - mul_mod(acc, inv, m)) % m;
    }
    b.into_iter().map(|x| x as u64).collect()
}

fn cache_path(dir: &Path, p: u64) -> PathBuf {
    dir.join(format!("bernoulli_{p}.txt"))
}

fn load(dir: &Path, p: u64) -> Option<Vec<u64>> {
    let text = std::fs::read_to_string(cache_path(dir, p)).ok()?;
    let values: Vec<u64> = text.lines().map(|l| l.trim().parse().ok()).collect::<Option<_>>()?;
    (values.len() as u64 == p - 1 && values.iter().all(|&v| v < p)).then_some(values)
}

fn store(dir: &Path, p: u64, table: &[u64]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let body: String = table.iter().map(|v| format!("{v}\n")).collect();
    let tmp = dir.join(format!(".bernoulli_{p}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, body)?;
    std::fs::rename(tmp, cache_path(dir, p))
}

/// `B_m mod p` for `m ≤ p - 3`.
pub fn bernoulli_mod(m: u64, p: u64) -> Result<u64> {
    if p < 3 || m + 3 > p {
        return Err(Error::IndexOutOfRange { index: m, max: p.saturating_sub(3) });
    }
    Ok(bernoulli_table_mod(p)[m as usize])
}

/// `B_{p-2}(1/3) mod p` from `B_n(x) = Σ_k C(n,k) B_k x^{n-k}`.
pub fn bernoulli_poly_third(p: u64) -> Result<u64> {
    if p <= 3 {
        return Err(Error::Precondition(format!("B_(p-2)(1/3) needs p > 3, got {p}")));
    }
    let table = bernoulli_table_mod(p);
    let m = p as u128;
    let n = p - 2;
    let third = inv_mod(3, m).expect("p > 3");
    // Σ_k C(n,k) B_k 3^{-(n-k)}, walking C(n,k) along the row.
    let mut row = 1u128;
    let mut acc = 0u128;
    for k in 0..=n {
        let bk = table[k as usize] as u128;
        if bk != 0 {
            let term = mul_mod(mul_mod(row, bk, m), pow_mod(third, n - k, m), m);
            acc = (acc + term) % m;
        }
        if k < n {
            row = mul_mod(mul_mod(row, (n - k) as u128, m), inv_mod((k + 1) as u128, m).expect("k+1 < p"), m);
        }
    }
    Ok(acc as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(bernoulli_mod(0, 7).unwrap(), 1);
        assert_eq!(bernoulli_mod(1, 5).unwrap(), 2);
        assert_eq!(bernoulli_mod(2, 5).unwrap(), 1);
        assert!(matches!(bernoulli_mod(3, 5), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(bernoulli_poly_third(5).unwrap(), 3);
    }

    #[test]
    fn persisted_table_is_reused() {
        let dir = tempfile::tempdir().unwrap();
        let t = compute_table(101);
        store(dir.path(), 101, &t).unwrap();
        assert_eq!(load(dir.path(), 101).unwrap(), t);
        // Corrupt files are ignored rather than trusted.
        std::fs::write(cache_path(dir.path(), 103), "1\n2\n").unwrap();
        assert!(load(dir.path(), 103).is_none());
    }
}
