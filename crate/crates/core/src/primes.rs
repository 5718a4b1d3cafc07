//! Prime enumeration for sweeps.

/// Primes in `[lo, hi]` by a plain sieve of Eratosthenes.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        if i as u64 >= lo {
            out.push(i as u64);
        }
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges() {
        assert_eq!(primes_in_range(5, 30), vec![5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(primes_in_range(100, 5).is_empty());
        assert_eq!(primes_in_range(0, 2), vec![2]);
        assert_eq!(primes_in_range(1, 2000).len(), 303);
        assert!(primes_in_range(1, 500).iter().all(|&p| is_prime(p)));
    }
}
