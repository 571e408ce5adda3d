use tspace_core::lab::{run_timed, CheckKind, LabParams, Registry, VerificationReport};

fn run(id: &str, params: &LabParams) -> VerificationReport {
    let registry = Registry::default();
    let suite = registry
        .get(id)
        .unwrap_or_else(|| panic!("no suite `{id}`"));
    let report = run_timed(suite, params).unwrap();
    for c in report.failed_checks() {
        eprintln!(
            "[{id}] FAILED {:?} `{}`: expected {}, observed {}",
            c.kind, c.name, c.expected, c.observed
        );
    }
    eprintln!(
        "[{id}] p={} {} checks in {:?} ms",
        params.p,
        report.checks.len(),
        report.duration_ms
    );
    report
}

fn assert_suite(id: &str, p: u32) -> VerificationReport {
    let report = run(
        id,
        &LabParams {
            p,
            ..LabParams::default()
        },
    );
    assert!(report.passed, "suite {id} failed at p={p}");
    assert!(
        report.checks.iter().any(|c| c.kind == CheckKind::Control),
        "suite {id} has no control"
    );
    report
}

#[test]
fn registry_ids_are_unique_and_known() {
    let ids = Registry::default().ids();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
    assert_eq!(ids.len(), 10);
    assert!(Registry::default().get("no-such-suite").is_none());
}

#[test]
fn power_identity_suite() {
    assert_suite("power-identity", 3);
}

#[test]
fn central_family_suite() {
    let r = assert_suite("central-w", 3);
    let witness = r
        .check("w1 witness is a central top-degree element")
        .unwrap();
    assert_eq!(witness.observed, "2*e1*e2*e3*e4*e5*e6*e7*e8*e9*e10");
}

#[test]
fn basis_dimension_suite() {
    let r = assert_suite("bss-basis", 3);
    assert_eq!(r.parameters["words"], 1092);
}

#[test]
fn commutator_support_suite() {
    assert_suite("spss-containment", 3);
}

#[test]
fn family_outside_suite() {
    assert_suite("w-outside", 3);
}

#[test]
fn kappa_sum_suite_at_three_and_five() {
    for p in [3, 5] {
        assert_suite("kappa-sum", p);
    }
}

#[test]
fn kappa_sum_coefficient_at_three() {
    let r = assert_suite("kappa-sum", 3);
    assert_eq!(r.parameters["coefficients"], serde_json::json!([1, 1]));
}

#[test]
fn kappa_product_suite_at_three_and_five() {
    for p in [3, 5] {
        assert_suite("kappa-product", p);
    }
}

#[test]
fn additivity_suite() {
    let r = assert_suite("w-additive", 3);
    assert_eq!(
        r.checks
            .iter()
            .filter(|c| c.kind == CheckKind::Claim)
            .count(),
        2
    );
}

#[test]
fn chain_suite() {
    assert_suite("chain", 3);
}

#[test]
fn unitary_suite() {
    let r = assert_suite("unitary", 3);
    let printed = r
        .checks
        .iter()
        .find(|c| c.name.contains("as_printed"))
        .unwrap();
    assert!(
        printed.observed.ends_with("residual x1^3*x2^3"),
        "{}",
        printed.observed
    );
}

#[test]
fn reports_are_reproducible() {
    let params = LabParams::default();
    let registry = Registry::default();
    let suite = registry.get("power-identity").unwrap();
    let a = serde_json::to_string(&suite.run(&params).unwrap()).unwrap();
    let b = serde_json::to_string(&suite.run(&params).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(!a.contains("duration_ms"));
}
