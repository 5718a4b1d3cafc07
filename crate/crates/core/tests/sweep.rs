use domb_core::congruence::{
    run_check, sweep, sweep_records, verify_theorem_16, CheckId, CheckOptions, EngineKind, SumOrder, VerificationRecord,
};
use domb_core::exact::domb;
use domb_core::padic::reduce_rational;
use domb_core::primes::primes_in_range;
use domb_core::quadform::r3_exact;
use domb_core::report::SweepConfig;
use domb_core::ExactRational;
use num_bigint::BigInt;

fn records(
    checks: &[CheckId],
    pmin: u64,
    pmax: u64,
    engine: EngineKind,
    opts: CheckOptions,
) -> Vec<VerificationRecord> {
    let mut cfg = SweepConfig::new(checks.to_vec(), pmin, pmax, engine);
    cfg.options = opts;
    cfg.timing = false;
    sweep_records(&cfg).unwrap()
}

fn key(r: &VerificationRecord) -> (String, u64, String, Option<String>, Option<String>) {
    (r.check_id.clone(), r.prime, r.case_label.clone(), r.lhs.clone(), r.rhs.clone())
}

#[test]
fn engines_agree_on_every_record_up_to_200() {
    let ex = records(&CheckId::ALL, 2, 200, EngineKind::Exact, CheckOptions::default());
    let fa = records(&CheckId::ALL, 2, 200, EngineKind::Fast, CheckOptions::default());
    assert_eq!(ex.len(), fa.len());
    for (a, b) in ex.iter().zip(&fa) {
        assert_eq!(key(a), key(b));
        assert!(a.lhs.is_some() || a.is_excluded(), "{a:?}");
    }
}

#[test]
fn the_only_failure_up_to_150_is_the_16k_sum_at_five() {
    let recs = records(&CheckId::ALL, 2, 150, EngineKind::Both, CheckOptions::default());
    let failed: Vec<_> = recs.iter().filter(|r| r.failed()).map(|r| (r.check_id.as_str(), r.prime)).collect();
    assert_eq!(failed, vec![("theorem16", 5)]);
}

#[test]
fn sixteen_k_sum_at_five_matches_independent_arithmetic() {
    // Σ_{k<5} k³ D_k / 16^k = 1399/256 and -(4/9) R₃(5) = 356/9, reduced mod 25.
    let lhs: ExactRational = (0..5u64)
        .map(|k| ExactRational::new(BigInt::from(k.pow(3)) * domb::<BigInt>(k), BigInt::from(16).pow(k as u32)))
        .sum();
    assert_eq!(lhs, ExactRational::new(1399.into(), 256.into()));
    let rhs = ExactRational::new((-4).into(), 9.into()) * r3_exact(5);
    assert_eq!(rhs, ExactRational::new(356.into(), 9.into()));
    let (l, r) = (reduce_rational(&lhs, 5, 2).unwrap(), reduce_rational(&rhs, 5, 2).unwrap());
    assert_eq!((l.residue(2).unwrap(), r.residue(2).unwrap()), (4, 9));
    // Still congruent modulo 5 itself.
    assert_eq!(l.residue(1).unwrap(), r.residue(1).unwrap());

    let rec = &verify_theorem_16(5, EngineKind::Both).unwrap()[0];
    assert_eq!((rec.lhs.as_deref(), rec.rhs.as_deref(), rec.pass), (Some("4"), Some("9"), Some(false)));
}

#[test]
fn summation_order_does_not_change_residues() {
    let sums =
        [CheckId::Theorem4, CheckId::Theorem16, CheckId::Lemma3k4, CheckId::LemmaH2jhj, CheckId::Aux, CheckId::MuSun];
    for engine in [EngineKind::Exact, EngineKind::Fast] {
        let base = records(&sums, 5, 120, engine, CheckOptions::default());
        for order in [SumOrder::Backward, SumOrder::Pairwise] {
            let other = records(&sums, 5, 120, engine, CheckOptions { perturb: false, sum_order: order });
            let a: Vec<_> = base.iter().map(key).collect();
            let b: Vec<_> = other.iter().map(key).collect();
            assert_eq!(a, b, "{engine} {order:?}");
        }
    }
}

#[test]
fn perturbed_constants_are_caught() {
    let perturbed = CheckOptions { perturb: true, sum_order: SumOrder::Forward };
    for check in [CheckId::Theorem4, CheckId::Theorem16, CheckId::Lemma3k4, CheckId::DombPMinus1, CheckId::MuSun] {
        let primes: Vec<u64> = primes_in_range(5, 500)
            .into_iter()
            .filter(|&p| {
                let recs = run_check(check, p, EngineKind::Exact, &CheckOptions::default());
                check.visits(p) && recs.iter().any(|r| !r.is_excluded())
            })
            .take(10)
            .collect();
        assert_eq!(primes.len(), 10);
        let caught = primes
            .iter()
            .filter(|&&p| run_check(check, p, EngineKind::Fast, &perturbed).iter().any(|r| r.failed()))
            .count();
        assert!(caught >= 9, "{check}: only {caught} of 10");
    }
}

#[test]
fn excluded_records_carry_residuals_and_no_verdict() {
    let recs = records(
        &[CheckId::Theorem4, CheckId::LemmaHarmonic, CheckId::LemmaP2j],
        5,
        5,
        EngineKind::Both,
        CheckOptions::default(),
    );
    assert!(!recs.is_empty());
    for r in &recs {
        assert_eq!(r.case_label, "excluded", "{r:?}");
        assert_eq!(r.pass, None);
        assert!(r.lhs.is_some() && r.rhs.is_some(), "{r:?}");
    }
}

#[test]
fn class_restricted_families_skip_other_primes() {
    let recs = records(
        &[CheckId::LemmaMpt, CheckId::Lemma3k4, CheckId::LemmaFuzhu, CheckId::LemmaH2jhj],
        2,
        60,
        EngineKind::Exact,
        CheckOptions::default(),
    );
    assert!(recs.iter().all(|r| r.prime % 3 == 1));
    assert!(recs.iter().all(|r| r.pass == Some(true)));
}

#[test]
fn hazard_cases_are_exercised() {
    let recs = records(
        &[CheckId::LemmaBinomPj, CheckId::LemmaP2j, CheckId::Lemma3k4],
        5,
        60,
        EngineKind::Both,
        CheckOptions::default(),
    );
    let hazards: Vec<_> = recs.iter().filter(|r| r.case_label.contains("=p")).collect();
    assert!(hazards.iter().any(|r| r.check_id == "lemma_binom_pj" && r.prime == 13 && r.case_label == "j=4 (3j+1=p)"));
    assert!(hazards.iter().any(|r| r.check_id == "lemma_3k4" && r.prime == 31));
    assert!(recs.iter().any(|r| r.case_label.contains("3j+1=2p")));
    assert!(hazards.iter().all(|r| r.pass == Some(true)));
}

#[test]
fn empty_check_list_gives_empty_report() {
    let report = sweep(&SweepConfig::new(vec![], 5, 1000, EngineKind::Both)).unwrap();
    assert!(report.records.is_empty());
    assert_eq!(report.summary.total.passed + report.summary.total.failed + report.summary.total.excluded, 0);
}

#[test]
fn inverted_range_is_rejected() {
    assert!(sweep(&SweepConfig::new(CheckId::ALL.to_vec(), 100, 5, EngineKind::Exact)).is_err());
}

#[test]
fn order_and_content_do_not_depend_on_worker_count() {
    let mut cfg = SweepConfig::new(CheckId::ALL.to_vec(), 5, 80, EngineKind::Fast);
    cfg.timing = false;
    cfg.seed = Some(7);
    cfg.jobs = Some(1);
    let one = sweep_records(&cfg).unwrap();
    cfg.jobs = Some(3);
    let three = sweep_records(&cfg).unwrap();
    assert_eq!(one, three);
    assert!(one.windows(2).all(|w| (w[0].prime, &w[0].check_id) <= (w[1].prime, &w[1].check_id)));
    assert!(one.iter().any(|r| r.check_id == "padic_crosscheck" && r.pass == Some(true)));
}
