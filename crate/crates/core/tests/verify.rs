use agroupoid::enumerate::{census, ClassFilter, EnumerationSpec, Strategy};
use agroupoid::fixtures;
use agroupoid::verify::{catalog, check_instance, run_all, Mutation, Status, Universe, VerifyConfig};
use agroupoid::{CompletelyInverse, Congruence};

#[test]
fn full_suite_passes_at_order_five() {
    let report = run_all(&VerifyConfig::new(5)).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.checks.len(), catalog().len());
}

#[test]
fn report_is_in_catalog_order() {
    let report = run_all(&VerifyConfig::new(2)).unwrap();
    let ids: Vec<&str> = report.checks.iter().map(|c| c.id).collect();
    let expected: Vec<&str> = catalog().iter().map(|c| c.id).collect();
    assert_eq!(ids, expected);
    assert_eq!(report.to_string(), run_all(&VerifyConfig::new(2)).unwrap().to_string());
}

#[test]
fn corrupted_mu_reports_a_table() {
    let config = VerifyConfig::new(3)
        .only("thm-mu-least-semilattice")
        .with_mutation(Mutation::CorruptMu);
    let report = run_all(&config).unwrap();
    assert!(!report.passed());
    let text = report.to_string();
    assert!(text.starts_with("FAIL thm-mu-least-semilattice"), "{text}");
    // the counterexample is printed as an indented .mag block
    assert!(text.lines().nth(1).unwrap().starts_with("    "), "{text}");
}

#[test]
fn every_ci_check_passes_on_named_fixtures() {
    for (name, g) in fixtures::all() {
        if CompletelyInverse::new(&g).is_err() {
            continue;
        }
        for spec in catalog().iter().filter(|c| c.universe == Universe::CompletelyInverse) {
            let status = check_instance(spec.id, &g).unwrap();
            assert_eq!(status, Status::Pass, "{} on {name}", spec.id);
        }
    }
}

#[test]
fn f1_kernel_operators() {
    let g = fixtures::f1();
    let ci = CompletelyInverse::new(&g).unwrap();
    let rho = Congruence::parse(&g, "a e | b | f").unwrap();
    assert_eq!(ci.tau().to_string(), "a b | e f");
    assert_eq!(ci.tau_of(&rho), rho);
    assert!(ci.tau().meet(&ci.tau_of(&rho)).relation().is_identity());
    assert_eq!(check_instance("thm-kappa-not-monotone", &g).unwrap(), Status::Pass);
}

#[test]
fn census_agreement() {
    let expected = [1, 2, 6, 20];
    for (n, want) in (1..=4).zip(expected) {
        for s in [Strategy::Filter, Strategy::Synthesis] {
            let spec = EnumerationSpec::new(n, ClassFilter::CompletelyInverse).with_strategy(s);
            assert_eq!(census(&spec).unwrap(), want, "order {n} by {s}");
        }
    }
}
