//! Per-prime congruence checks and the sweep that runs them over a range.
//!
//! Each check family is evaluated by [`ExactEngine`], [`FastEngine`], or
//! both. In `both` mode the two record lists are paired up and any residue
//! disagreement turns the record into a failure.

mod checks;
pub mod engine;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::padic::arith::fits;
use crate::padic::crosscheck::arith_crosscheck;
use crate::primes::primes_in_range;
use crate::report::{Report, SweepConfig};
use crate::{Error, Result};

pub use engine::{Engine, ExactEngine, FastEngine};

use checks::Recorder;

/// A family of congruences. Records carry `"family"` or `"family.sub"` as
/// their `check_id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    Theorem4,
    Theorem16,
    LemmaHarmonic,
    LemmaBinomPj,
    LemmaMpt,
    Lemma3k4,
    LemmaFuzhu,
    LemmaP2j,
    LemmaH2jhj,
    Aux,
    DombPMinus1,
    MuSun,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::Theorem4,
        CheckId::Theorem16,
        CheckId::LemmaHarmonic,
        CheckId::LemmaBinomPj,
        CheckId::LemmaMpt,
        CheckId::Lemma3k4,
        CheckId::LemmaFuzhu,
        CheckId::LemmaP2j,
        CheckId::LemmaH2jhj,
        CheckId::Aux,
        CheckId::DombPMinus1,
        CheckId::MuSun,
    ];

    pub const THEOREMS: [CheckId; 2] = [CheckId::Theorem4, CheckId::Theorem16];

    pub const LEMMAS: [CheckId; 7] = [
        CheckId::LemmaHarmonic,
        CheckId::LemmaBinomPj,
        CheckId::LemmaMpt,
        CheckId::Lemma3k4,
        CheckId::LemmaFuzhu,
        CheckId::LemmaP2j,
        CheckId::LemmaH2jhj,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Theorem4 => "theorem4",
            CheckId::Theorem16 => "theorem16",
            CheckId::LemmaHarmonic => "lemma_harmonic",
            CheckId::LemmaBinomPj => "lemma_binom_pj",
            CheckId::LemmaMpt => "lemma_mpt",
            CheckId::Lemma3k4 => "lemma_3k4",
            CheckId::LemmaFuzhu => "lemma_fuzhu",
            CheckId::LemmaP2j => "lemma_p2j",
            CheckId::LemmaH2jhj => "lemma_h2jhj",
            CheckId::Aux => "aux",
            CheckId::DombPMinus1 => "domb_p_minus_1",
            CheckId::MuSun => "mu_sun",
        }
    }

    /// Largest modulus power `K` any sub-check of the family uses.
    pub fn max_power(self) -> u32 {
        match self {
            CheckId::LemmaHarmonic | CheckId::LemmaMpt | CheckId::LemmaH2jhj => 2,
            CheckId::DombPMinus1 => 4,
            CheckId::MuSun => 5,
            _ => 3,
        }
    }

    /// Whether a sweep visits `p` at all. Primes just outside a lemma's
    /// range (`p = 5` for the `p > 5` statements) are visited and produce
    /// excluded records; primes of the wrong residue class are skipped.
    pub fn visits(self, p: u64) -> bool {
        if p <= 3 {
            return false;
        }
        match self {
            CheckId::LemmaMpt | CheckId::Lemma3k4 | CheckId::LemmaFuzhu | CheckId::LemmaH2jhj => p % 3 == 1,
            _ => true,
        }
    }

    /// The statement's own precondition, enforced by [`verify`].
    fn precondition(self, p: u64) -> Result<()> {
        if p <= 3 {
            return Err(Error::Precondition(format!("{} needs p > 3, got {p}", self.name())));
        }
        match self {
            CheckId::LemmaHarmonic | CheckId::LemmaP2j if p == 5 => {
                Err(Error::Precondition(format!("{} is stated for p > 5", self.name())))
            }
            CheckId::LemmaMpt | CheckId::Lemma3k4 | CheckId::LemmaFuzhu | CheckId::LemmaH2jhj if p % 3 != 1 => {
                Err(Error::WrongResidueClass { prime: p, expected: 1 })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown check id '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    #[default]
    Exact,
    Fast,
    Both,
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(EngineKind::Exact),
            "fast" => Ok(EngineKind::Fast),
            "both" => Ok(EngineKind::Both),
            _ => Err(Error::Precondition(format!("unknown engine '{s}'"))),
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::Exact => "exact",
            EngineKind::Fast => "fast",
            EngineKind::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SumOrder {
    #[default]
    Forward,
    Backward,
    Pairwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CheckOptions {
    /// Replace one constant on the right-hand side of each major family by a
    /// wrong value. Used only as a negative control.
    pub perturb: bool,
    pub sum_order: SumOrder,
}

/// Outcome of one congruence at one prime (and one parameter value).
///
/// Residues are decimal strings in `[0, p^K)`; `pass` is `None` for
/// excluded cases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub check_id: String,
    pub prime: u64,
    pub modulus_power: u32,
    pub modulus: String,
    pub case_label: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub pass: Option<bool>,
    pub elapsed_ms: f64,
    pub note: Option<String>,
}

impl VerificationRecord {
    pub fn is_excluded(&self) -> bool {
        self.pass.is_none()
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }
}

fn run_with<E: Engine>(e: &E, check: CheckId, opts: &CheckOptions) -> Vec<VerificationRecord> {
    let mut r = Recorder::new(e, opts);
    match check {
        CheckId::Theorem4 => checks::theorem4(&mut r),
        CheckId::Theorem16 => checks::theorem16(&mut r),
        CheckId::LemmaHarmonic => checks::lemma_harmonic(&mut r),
        CheckId::LemmaBinomPj => checks::lemma_binom_pj(&mut r),
        CheckId::LemmaMpt => checks::lemma_mpt(&mut r),
        CheckId::Lemma3k4 => checks::lemma_3k4(&mut r),
        CheckId::LemmaFuzhu => checks::lemma_fuzhu(&mut r),
        CheckId::LemmaP2j => checks::lemma_p2j(&mut r),
        CheckId::LemmaH2jhj => checks::lemma_h2jhj(&mut r),
        CheckId::Aux => checks::aux(&mut r),
        CheckId::DombPMinus1 => checks::domb_p_minus_1(&mut r),
        CheckId::MuSun => checks::mu_sun(&mut r),
    }
    r.records
}

/// Working precision of the fast engine: two guard digits above the largest
/// modulus the family reduces to.
pub fn fast_precision(check: CheckId) -> u32 {
    check.max_power() + 2
}

fn run_fast(p: u64, check: CheckId, opts: &CheckOptions) -> Vec<VerificationRecord> {
    let w = fast_precision(check);
    if !fits(p, w) {
        return vec![failure(check, p, format!("p^{w} exceeds the 128-bit fast path"))];
    }
    run_with(&FastEngine::new(p, w), check, opts)
}

fn failure(check: CheckId, p: u64, note: String) -> VerificationRecord {
    VerificationRecord {
        check_id: check.name().to_string(),
        prime: p,
        modulus_power: check.max_power(),
        modulus: String::new(),
        case_label: "error".to_string(),
        lhs: None,
        rhs: None,
        pass: Some(false),
        elapsed_ms: 0.0,
        note: Some(note),
    }
}

/// Pairs exact and fast records; any residue disagreement is a failure.
fn merge(
    check: CheckId,
    p: u64,
    exact: Vec<VerificationRecord>,
    fast: Vec<VerificationRecord>,
) -> Vec<VerificationRecord> {
    if exact.len() != fast.len() {
        return vec![failure(
            check,
            p,
            format!("engines produced {} exact vs {} fast records", exact.len(), fast.len()),
        )];
    }
    exact
        .into_iter()
        .zip(fast)
        .map(|(mut ex, fa)| {
            ex.elapsed_ms += fa.elapsed_ms;
            if (&ex.lhs, &ex.rhs) != (&fa.lhs, &fa.rhs) || ex.check_id != fa.check_id {
                let detail = format!(
                    "fast engine disagrees: lhs={}, rhs={}{}",
                    fa.lhs.as_deref().unwrap_or("-"),
                    fa.rhs.as_deref().unwrap_or("-"),
                    fa.note.map(|n| format!(" ({n})")).unwrap_or_default()
                );
                ex.pass = Some(false);
                ex.note = Some(match ex.note {
                    Some(n) => format!("{n}; {detail}"),
                    None => detail,
                });
            }
            ex
        })
        .collect()
}

/// Runs one family at one prime without enforcing the statement's range:
/// just-out-of-range primes yield excluded records with residuals.
pub fn run_check(check: CheckId, p: u64, engine: EngineKind, opts: &CheckOptions) -> Vec<VerificationRecord> {
    match engine {
        EngineKind::Exact => run_with(&ExactEngine::new(p), check, opts),
        EngineKind::Fast => run_fast(p, check, opts),
        EngineKind::Both => {
            let (ex, fa) = rayon::join(|| run_with(&ExactEngine::new(p), check, opts), || run_fast(p, check, opts));
            merge(check, p, ex, fa)
        }
    }
}

/// Runs one family at one prime, rejecting primes outside its statement.
pub fn verify(check: CheckId, p: u64, engine: EngineKind, opts: &CheckOptions) -> Result<Vec<VerificationRecord>> {
    check.precondition(p)?;
    Ok(run_check(check, p, engine, opts))
}

macro_rules! named_checks {
    ($($(#[$doc:meta])* $name:ident => $id:expr;)*) => {$(
        $(#[$doc])*
        pub fn $name(p: u64, engine: EngineKind) -> Result<Vec<VerificationRecord>> {
            verify($id, p, engine, &CheckOptions::default())
        }
    )*};
}

named_checks! {
    /// `Σ_{k<p} k³ D_k / 4^k`, modulo `p³` or `p²` by residue class.
    verify_theorem_4 => CheckId::Theorem4;
    /// `Σ_{k<p} k³ D_k / 16^k`, modulo `p³` or `p²` by residue class.
    verify_theorem_16 => CheckId::Theorem16;
    verify_lemma_harmonic => CheckId::LemmaHarmonic;
    verify_lemma_binom_pj => CheckId::LemmaBinomPj;
    verify_lemma_mpt => CheckId::LemmaMpt;
    verify_lemma_3k4 => CheckId::Lemma3k4;
    verify_lemma_fuzhu => CheckId::LemmaFuzhu;
    verify_lemma_p2j => CheckId::LemmaP2j;
    verify_lemma_h2jhj => CheckId::LemmaH2jhj;
    verify_aux_congruences => CheckId::Aux;
    /// `D_{p-1} ≡ 64^{p-1} - (p³/6) B_{p-3} (mod p⁴)`.
    verify_domb_p_minus_1 => CheckId::DombPMinus1;
    /// `Σ_{k<p} (3k²+k) D_k / 16^k ≡ -4p⁴ q_p(2) (mod p⁵)`.
    verify_mu_sun => CheckId::MuSun;
}

/// Records for every (prime, family) pair of the configured sweep, sorted by
/// `(prime, check_id)`. Per-check errors become failed records.
pub fn sweep_records(config: &SweepConfig) -> Result<Vec<VerificationRecord>> {
    if config.pmin > config.pmax {
        return Err(Error::Precondition(format!("pmin {} exceeds pmax {}", config.pmin, config.pmax)));
    }
    let mut checks = config.checks.clone();
    checks.sort();
    checks.dedup();
    let primes = primes_in_range(config.pmin, config.pmax);
    let work: Vec<(u64, CheckId)> =
        primes.iter().flat_map(|&p| checks.iter().filter(move |c| c.visits(p)).map(move |&c| (p, c))).collect();
    let opts = config.options;
    let engine = config.engine;
    let seed = config.seed;
    let body = move || {
        let mut records: Vec<VerificationRecord> =
            work.par_iter().flat_map_iter(|&(p, c)| run_check(c, p, engine, &opts)).collect();
        if let Some(seed) = seed {
            records.par_extend(primes.par_iter().filter(|&&p| p > 2).map(|&p| crosscheck_record(p, seed)));
        }
        records
    };
    let mut records = match config.jobs {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?
            .install(body),
        _ => body(),
    };
    records.sort_by(|a, b| (a.prime, &a.check_id).cmp(&(b.prime, &b.check_id)));
    if !config.timing {
        for r in &mut records {
            r.elapsed_ms = 0.0;
        }
    }
    Ok(records)
}

const CROSSCHECK_SAMPLES: usize = 200;
const CROSSCHECK_PRECISION: u32 = 3;

fn crosscheck_record(p: u64, seed: u64) -> VerificationRecord {
    let start = Instant::now();
    let out = arith_crosscheck(p, CROSSCHECK_PRECISION, CROSSCHECK_SAMPLES, seed);
    VerificationRecord {
        check_id: "padic_crosscheck".to_string(),
        prime: p,
        modulus_power: CROSSCHECK_PRECISION,
        modulus: crate::padic::arith::ppow(p, CROSSCHECK_PRECISION).to_string(),
        case_label: format!("seed={seed}"),
        lhs: None,
        rhs: None,
        pass: Some(out.mismatches.is_empty()),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        note: Some(format!("{} samples, {} skipped, {} mismatches", out.samples, out.skipped, out.mismatches.len())),
    }
}

/// Runs the configured sweep and assembles its report.
pub fn sweep(config: &SweepConfig) -> Result<Report> {
    let start = Instant::now();
    let records = sweep_records(config)?;
    let elapsed = if config.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
    Ok(Report::new(config.clone(), records, elapsed))
}
