//! Randomized agreement check between [`PadicValue`] arithmetic and exact
//! rational arithmetic.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{reduce_rational, PadicValue};
use crate::ExactRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inverse,
}

/// One disagreement found by [`arith_crosscheck`].
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub op: ArithOp,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub fast: PadicValue,
}

#[derive(Debug, Clone, Default)]
pub struct CrosscheckOutcome {
    pub samples: usize,
    /// Samples skipped because the exact result is not a p-adic integer.
    pub skipped: usize,
    pub mismatches: Vec<Mismatch>,
}

fn random_padic_integer(rng: &mut ChaCha8Rng, p: u64) -> ExactRational {
    let num: i64 = rng.gen_range(-1_000_000..=1_000_000);
    let num = if rng.gen_bool(0.3) { num * p as i64 } else { num };
    let den = loop {
        let d: i64 = rng.gen_range(1..=10_000);
        if d % p as i64 != 0 {
            break d;
        }
    };
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

/// Runs `samples` random operations at `precision` digits and compares the
/// truncated result with the exact one modulo the precision the fast path
/// claims.
pub fn arith_crosscheck(p: u64, precision: u32, samples: usize, seed: u64) -> CrosscheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.rotate_left(17));
    let mut out = CrosscheckOutcome::default();
    let ops = [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div, ArithOp::Inverse];
    for _ in 0..samples {
        let op = ops[rng.gen_range(0..ops.len())];
        let a = random_padic_integer(&mut rng, p);
        let b = random_padic_integer(&mut rng, p);
        let fa = reduce_rational(&a, p, precision).expect("sample is a p-adic integer");
        let fb = reduce_rational(&b, p, precision).expect("sample is a p-adic integer");
        let (exact, fast) = match op {
            ArithOp::Add => (&a + &b, Ok(&fa + &fb)),
            ArithOp::Sub => (&a - &b, Ok(&fa - &fb)),
            ArithOp::Mul => (&a * &b, Ok(&fa * &fb)),
            ArithOp::Div if num_traits::Zero::is_zero(&b) => continue,
            ArithOp::Div => (&a / &b, fa.checked_div(&fb)),
            ArithOp::Inverse if num_traits::Zero::is_zero(&a) => continue,
            ArithOp::Inverse => (num_traits::Inv::inv(a.clone()), fa.inverse()),
        };
        out.samples += 1;
        let exact_red = match reduce_rational(&exact, p, precision + 1) {
            Ok(v) => v,
            Err(_) => {
                // Not a p-adic integer: the fast path must refuse as well.
                match fast {
                    Ok(fast) => out.mismatches.push(Mismatch { op, lhs: a, rhs: b, fast }),
                    Err(_) => out.skipped += 1,
                }
                continue;
            }
        };
        let agrees = match &fast {
            Ok(f) => match f.absolute_precision() {
                None => exact_red.is_exact_zero(),
                Some(n) => exact_red.residue(n).ok() == f.residue(n).ok(),
            },
            Err(_) => false,
        };
        if !agrees {
            out.mismatches.push(Mismatch { op, lhs: a, rhs: b, fast: fast.unwrap_or_else(|_| PadicValue::zero(p)) });
        }
    }
    out
}
