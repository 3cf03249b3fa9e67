use tambara_core::{run_criterion, Status, SuiteConfig, CRITERIA};

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let mut failed = Vec::new();
    for k in 1..=CRITERIA.len() {
        let r = run_criterion(k, &cfg);
        let mark = if r.status == Status::Pass { "PASS" } else { "FAIL" };
        println!(
            "[{mark}] {k:>2} {:<28} count={:<6} {:>7}ms {}{}",
            r.name,
            r.count.unwrap_or(0),
            r.millis,
            r.detail.as_deref().unwrap_or(""),
            r.witness.as_deref().map(|w| format!(" witness: {w}")).unwrap_or_default()
        );
        if r.status != Status::Pass {
            failed.push(r.name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
