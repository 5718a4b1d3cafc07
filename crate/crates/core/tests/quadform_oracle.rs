#![allow(clippy::manual_is_multiple_of)]

use domb_core::primes::primes_in_range;
use domb_core::quadform::{r3, r3_fast, represent, sqrt_mod};
use domb_core::Error;
use proptest::prelude::*;

/// Every `(x, y)` with `x, y > 0` and `x² + 3y² = p`, by brute force.
fn all_reps(p: u64) -> Vec<(u64, u64)> {
    (1..)
        .take_while(|x| x * x < p)
        .filter_map(|x| {
            let rest = p - x * x;
            if rest % 3 != 0 {
                return None;
            }
            let y = (1..).take_while(|y| 3 * y * y <= rest).find(|y| 3 * y * y == rest)?;
            Some((x, y))
        })
        .collect()
}

#[test]
fn representation_is_the_unique_one() {
    for p in primes_in_range(5, 20_000).into_iter().filter(|p| p % 3 == 1) {
        let rep = represent(p).unwrap();
        assert_eq!(rep.x * rep.x + 3 * rep.y * rep.y, p);
        assert_eq!(all_reps(p), vec![(rep.x, rep.y)], "p={p}");
    }
}

#[test]
fn minus_three_is_a_square_exactly_for_one_mod_three() {
    for p in primes_in_range(5, 20_000) {
        match sqrt_mod(-3, p) {
            Ok(r) => {
                assert_eq!(p % 3, 1, "p={p}");
                assert_eq!((r as u128 * r as u128 + 3) % p as u128, 0);
            }
            Err(Error::NoRoot { .. }) => assert_eq!(p % 3, 2, "p={p}"),
            Err(e) => panic!("p={p}: {e}"),
        }
    }
}

#[test]
fn r3_engines_agree() {
    for p in primes_in_range(5, 400) {
        assert_eq!(r3(p).unwrap(), r3_fast(p).unwrap(), "p={p}");
    }
}

proptest! {
    #[test]
    fn sqrt_mod_squares_back(i in 0usize..200, a in -10_000i64..10_000) {
        let primes = primes_in_range(3, 2000);
        let p = primes[i % primes.len()];
        if let Ok(r) = sqrt_mod(a, p) {
            prop_assert!(2 * r <= p);
            let lhs = (r as u128 * r as u128) % p as u128;
            prop_assert_eq!(lhs, a.rem_euclid(p as i64) as u128);
        }
    }
}
