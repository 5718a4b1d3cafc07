//! Verification machinery for supercongruences involving the Domb numbers
//! `D_n = Σ_k C(n,k)² C(2k,k) C(2n-2k,n-k)`.
//!
//! Two independent value domains are provided:
//!
//! * [`exact`]: arbitrary-precision integers and reduced rationals, generic
//!   over the integer type. This is the oracle.
//! * [`padic`]: residues modulo `p^K` carried as `(valuation, unit)` with
//!   tracked precision. This is the fast path used for large sweeps.
//!
//! On top of these sit [`quadform`] (`p = x² + 3y²`, `R₃(p)`),
//! [`identity`] (finite combinatorial identities checked exactly),
//! [`congruence`] (per-prime congruence checks, generic over both domains)
//! and [`report`] (sweep reports in JSON and CSV).

// Residue-class tests read better as `p % 3 == 1` than as method calls.
#![allow(clippy::manual_is_multiple_of, clippy::manual_div_ceil)]

pub mod congruence;
pub mod error;
pub mod exact;
pub mod identity;
pub mod padic;
pub mod primes;
pub mod quadform;
pub mod report;

pub use error::{Error, Result};
pub use padic::PadicValue;

/// Arbitrary-precision signed integer used by the exact engine.
pub type ExactInteger = num_bigint::BigInt;

/// Reduced fraction of [`ExactInteger`]s with a positive denominator.
pub type ExactRational = num_rational::BigRational;

/// Version string echoed into every report.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
