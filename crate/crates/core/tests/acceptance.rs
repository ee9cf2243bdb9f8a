use std::io::Write;

use funcrowd::suite::{run_suite, SuiteOptions, CRITERIA};

#[test]
fn acceptance_criteria() {
    let report = run_suite(&SuiteOptions::default()).expect("suite runs");
    assert_eq!(report.criteria.len(), CRITERIA.len());
    let mut out = std::io::stdout().lock();
    for c in &report.criteria {
        writeln!(out, "{}", c.line()).unwrap();
    }
    for c in report.failed() {
        for k in c.checks.iter().filter(|k| !k.passed) {
            writeln!(out, "  {} / {}: {}", c.name, k.name, k.detail).unwrap();
        }
    }
    out.flush().unwrap();
    assert!(report.passed, "{} criteria failed", report.failed().len());
}
