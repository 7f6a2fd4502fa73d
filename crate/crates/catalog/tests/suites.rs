use hsx_catalog::harness::{precheck, run_catalog, verdict_table, Corpus, ALL, CROSS_CHECKS};
use hsx_catalog::table2::run_only;

#[test]
fn corrupted_structure_constant_stops_before_the_suites() {
    let corpus = Corpus::with_equations("rh_3", "(0,0,12,34)");
    let pre = precheck(&corpus);
    let failures: Vec<_> = pre.failures().map(|c| c.name.clone()).collect();
    assert_eq!(failures, vec!["rh_3: Jacobi".to_string()]);
    let run = run_catalog(&corpus, ALL, true);
    assert!(!run.passed());
    assert!(run.outcomes.is_empty());
    assert!(run.to_string().starts_with("precheck failed"));
}

#[test]
fn builtin_corpus_passes_precheck() {
    let pre = precheck(&Corpus::builtin());
    assert!(pre.passed(), "{pre}");
    assert!(pre.checks.len() > 40);
}

#[test]
fn cross_checks_pass() {
    for (name, f) in CROSS_CHECKS {
        let r = f();
        assert!(r.passed(), "{name}\n{r}");
    }
}

#[test]
fn d42_in_isolation() {
    let r = run_only("d_4,2").expect("positive row");
    assert!(r.passed(), "{r}");
    assert!(r.checks.iter().any(|c| c.name.contains("family")), "{r}");
    assert!(run_only("no such row").is_none());
}

#[test]
fn selected_criteria_only() {
    let run = run_catalog(&Corpus::builtin(), &[3, 6], false);
    let numbers: Vec<_> = run.outcomes.iter().map(|o| o.number).collect();
    assert_eq!(numbers, vec![Some(3), Some(6)]);
    assert!(run.passed());
    let json = run.to_json();
    assert_eq!(json["suites"][0]["criterion"], 3);
}

#[test]
fn verdict_table_marks() {
    let t = verdict_table();
    let row = |l: &str| t.lines().find(|x| x.split_whitespace().next() == Some(l)).map(|x| x.split_whitespace().skip(1).collect::<Vec<_>>());
    assert_eq!(row("rh_3"), Some(vec!["✓", "✓"]));
    assert_eq!(row("d_4,1/2"), Some(vec!["✗", "✓"]));
    assert_eq!(row("d_4,2"), Some(vec!["✓", "✓"]));
}
