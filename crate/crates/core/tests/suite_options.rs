use funcrowd::suite::{corrupted_band, run_suite, SuiteOptions, CRITERIA};

#[test]
fn filter_by_group_and_id() {
    let opts = SuiteOptions { filter: Some("crowds".into()), ..Default::default() };
    let ids: Vec<u8> = CRITERIA.iter().filter(|c| opts.selects(c)).map(|c| c.id).collect();
    assert_eq!(ids, [1, 2, 3, 7, 8]);
    let opts = SuiteOptions { filter: Some("4, polygons".into()), ..Default::default() };
    let ids: Vec<u8> = CRITERIA.iter().filter(|c| opts.selects(c)).map(|c| c.id).collect();
    assert_eq!(ids, [4, 9]);
}

#[test]
fn unknown_filter_is_rejected() {
    let opts = SuiteOptions { filter: Some("everything".into()), ..Default::default() };
    assert!(run_suite(&opts).is_err());
    let opts = SuiteOptions { jobs: Some(0), ..Default::default() };
    assert!(run_suite(&opts).is_err());
}

#[test]
fn corrupted_krasner_table_fails_named_criteria() {
    let bad = corrupted_band("krasner:1*1=0").unwrap();
    let opts = SuiteOptions { filter: Some("1,2,3".into()), overrides: vec![bad], ..Default::default() };
    let report = run_suite(&opts).unwrap();
    assert!(!report.passed);
    let failed: Vec<&str> = report.failed().iter().map(|c| c.name.as_str()).collect();
    assert_eq!(failed, ["sl2-krasner", "sl3-krasner-inverse"]);
    assert!(report.criteria[1].line().starts_with("FAIL  2 sl2-krasner"));
}

#[test]
fn corruption_spec_errors() {
    assert!(corrupted_band("krasner").is_err());
    assert!(corrupted_band("tropical:1*1=0").is_err());
    assert!(corrupted_band("krasner:1*2=0").is_err());
    assert!(corrupted_band("nope:1*1=0").is_err());
}

#[test]
fn filtered_determinism_run() {
    let opts = SuiteOptions { filter: Some("1,8,12".into()), jobs: Some(1), ..Default::default() };
    let report = run_suite(&opts).unwrap();
    assert_eq!(report.criteria.iter().map(|c| c.id).collect::<Vec<_>>(), [1, 8, 12]);
    assert!(report.passed, "{}", report.to_text());
}
