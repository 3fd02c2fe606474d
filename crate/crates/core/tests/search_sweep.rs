use pelltrib::pell::PellSign;
use pelltrib::search::{expected_exceptions, trivial_case_sweep, verify_theorem, RecordStatus, SearchConfig};
use pelltrib::tribonacci::BinetConstants;

#[test]
fn sweep_is_verified_and_deterministic() {
    let config = SearchConfig::default();
    let consts = BinetConstants::new(config.policy).unwrap();
    let report = trivial_case_sweep(&config, &consts).unwrap();
    assert_eq!(report.instances, 200);
    for r in &report.records {
        assert_eq!(r.status, RecordStatus::Verified, "X1 = {} ({})", r.x1, r.epsilon);
    }
    let parallel = trivial_case_sweep(&SearchConfig { jobs: 4, ..config }, &consts).unwrap();
    let key = |r: &pelltrib::search::SweepReport| {
        r.records.iter().map(|x| (x.epsilon, x.x1.clone(), x.pairs.clone())).collect::<Vec<_>>()
    };
    assert_eq!(key(&report), key(&parallel));
    let skipped: Vec<_> = report.skipped.iter().map(|s| (s.epsilon, s.m1)).collect();
    assert_eq!(skipped, vec![(PellSign::Plus, 1), (PellSign::Plus, 2)]);
    // T_1 = T_2 = 1 share one record for epsilon = -1
    assert_eq!(report.records.len(), 197);
}

#[test]
fn theorem_report() {
    let report = verify_theorem(&SearchConfig { jobs: 4, ..Default::default() }).unwrap();
    assert!(report.matches_theorem, "{:?}", report.exceptional);
    assert_eq!(report.exceptional, expected_exceptions());
    assert_eq!(report.certificates.len(), 2);
    let wider = verify_theorem(&SearchConfig { jobs: 4, m2_check_max: 120, ..Default::default() }).unwrap();
    assert_eq!(wider.exceptional, report.exceptional);
}
