use jsonschema::JSONSchema;
use serde_json::Value;
use tspace_cli::{run, Outcome, EXIT_FAILED, EXIT_OK, EXIT_USAGE, SCHEMA};

fn tspace(args: &[&str]) -> Outcome {
    run(std::iter::once("tspace").chain(args.iter().copied()))
}

fn json_of(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = tspace(&full);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

/// Validates `doc` against one named definition of the published schema.
fn assert_valid(definition: &str, doc: &Value) {
    let mut schema: Value = serde_json::from_str(SCHEMA).unwrap();
    schema.as_object_mut().unwrap().remove("anyOf");
    schema["$ref"] = Value::String(format!("#/definitions/{definition}"));
    let compiled = JSONSchema::compile(&schema).unwrap();
    if let Err(errors) = compiled.validate(doc) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect();
        panic!("{definition} invalid: {msgs:#?}");
    }
    if definition != "polynomial" {
        let root: Value = serde_json::from_str(SCHEMA).unwrap();
        assert!(
            JSONSchema::compile(&root).unwrap().is_valid(doc),
            "{definition} fails the root schema"
        );
    }
}

#[test]
fn schema_is_valid_json_schema() {
    let root: Value = serde_json::from_str(SCHEMA).unwrap();
    JSONSchema::compile(&root).unwrap();
    let out = tspace(&["schema"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(serde_json::from_str::<Value>(&out.stdout).unwrap(), root);
}

#[test]
fn power_of_a_variable_reduces_to_zero_modulo_tg0() {
    let out = tspace(&["nf", "--p", "3", "--mod", "tg0", "x1^3"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "0\n"));
    let out = tspace(&["nf", "--p", "3", "--mod", "t3", "x1^3"]);
    assert_eq!(out.stdout, "x1^3\n");
}

#[test]
fn normal_form_json_matches_schema() {
    let doc = json_of(&["nf", "--mod", "t3", "x2*x1 + [[x1,x2],x3]"]);
    assert_valid("normal_form_report", &doc);
    assert_eq!(doc["text"], "x1*x2 + 2*[x1,x2]");
    assert_eq!(doc["input"]["p"], 3);
}

#[test]
fn polynomial_json_has_the_documented_shape() {
    let doc = json_of(&["nf", "2*x1*x2"]);
    assert_eq!(
        doc["input"],
        serde_json::json!({"p": 3, "mode": "nonunitary", "terms": [{"coef": 2, "word": [1, 2]}]})
    );
    assert_valid("polynomial", &doc["input"]);
}

#[test]
fn commutator_power_is_not_in_commutators_plus_tg0() {
    let out = tspace(&[
        "member",
        "--p",
        "3",
        "--space",
        "S2+TG0",
        "[x1,x2]*x1^2*x2^2",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(
        out.stdout.starts_with("not-member in S2+TG0"),
        "{}",
        out.stdout
    );

    let doc = json_of(&["member", "--space", "S2+TG0", "[x1,x2]*x1^2*x2^2"]);
    assert_valid("membership_report", &doc);
    assert_eq!(doc["verdict"], "not-member");
    assert_eq!(doc["exact"], true);
}

#[test]
fn membership_certificate_is_reported() {
    let doc = json_of(&[
        "member",
        "--space",
        "S2",
        "--coords",
        "words",
        "x1*x2 - x2*x1",
    ]);
    assert_valid("membership_report", &doc);
    assert_eq!(doc["verdict"], "member");
    assert!(!doc["certificate"].as_array().unwrap().is_empty());
}

#[test]
fn identity_exit_codes() {
    assert_eq!(
        tspace(&[
            "identity",
            "--algebra",
            "G",
            "--rank",
            "6",
            "--strategy",
            "exhaustive",
            "[[x1,x2],x3]"
        ])
        .code,
        EXIT_OK
    );
    let out = tspace(&[
        "identity",
        "--strategy",
        "exhaustive",
        "--rank",
        "4",
        "[x1,x2]",
    ]);
    assert_eq!(out.code, EXIT_FAILED);
    assert!(out.stdout.contains("witness"));
    assert_eq!(
        tspace(&["identity", "--strategy", "bogus", "x1"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        tspace(&["identity", "--strategy", "exhaustive", "x1^2"]).code,
        EXIT_USAGE
    );
}

#[test]
fn identity_and_central_json_match_schema() {
    let holds = json_of(&["identity", "--rank", "10", "--trials", "200", "x1^3"]);
    assert_valid("identity_report", &holds);
    assert_eq!(holds["verdict"], "holds");

    let mut full = vec![
        "--format",
        "json",
        "identity",
        "--algebra",
        "G",
        "--rank",
        "6",
        "x1^3",
    ];
    let fails = tspace(&full);
    assert_eq!(fails.code, EXIT_FAILED);
    let fails: Value = serde_json::from_str(&fails.stdout).unwrap();
    assert_valid("identity_report", &fails);
    assert_eq!(fails["verdict"], "fails");

    full = vec![
        "central",
        "--strategy",
        "exhaustive",
        "--rank",
        "6",
        "[x1,x2]",
    ];
    let doc = json_of(&full);
    assert_valid("central_report", &doc);
    assert_eq!(doc["central_polynomial"], true);
    assert_eq!(tspace(&["central", "--rank", "6", "x1"]).code, EXIT_FAILED);
}

#[test]
fn evaluation_matches_hand_computation() {
    let out = tspace(&[
        "eval",
        "--rank",
        "4",
        "--assign",
        "x1=e1+e2*e3",
        "--assign",
        "x2=e4",
        "[x1,x2]",
    ]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "2*e1*e4\n"));
    let doc = json_of(&[
        "eval",
        "--algebra",
        "G",
        "--rank",
        "2",
        "--assign",
        "x1=1+e1",
        "x1^3",
    ]);
    assert_valid("evaluation_report", &doc);
    assert_eq!(doc["value"], "1");
    assert_eq!(
        tspace(&["eval", "--rank", "2", "--assign", "y1=e1", "x1"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        tspace(&["eval", "--rank", "2", "--assign", "x1=e3", "x1"]).code,
        EXIT_USAGE
    );
}

#[test]
fn generators_print_and_validate() {
    let out = tspace(&["gen", "wm", "--m", "1"]);
    assert_eq!(out.stdout, "x1*x2*x1^2*x2^2 + 2*x2*x1^3*x2^2\n");
    let doc = json_of(&["gen", "W", "--m", "1", "--maxvar", "4"]);
    assert_valid("generation_report", &doc);
    assert_eq!(doc["polynomials"].as_array().unwrap().len(), 6);
    let doc = json_of(&["gen", "phiprime", "--m", "1", "--variant", "as_printed"]);
    assert_eq!(doc["text"][0], "x1^2*x2*x1*x2^2");
    assert_eq!(
        tspace(&["gen", "phiprime", "--variant", "sideways"]).code,
        EXIT_USAGE
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tspace(&["nf", "x1+"]).code, EXIT_USAGE);
    assert_eq!(tspace(&["nf", "1 + x1"]).code, EXIT_USAGE);
    assert_eq!(tspace(&["--p", "4", "nf", "x1"]).code, EXIT_USAGE);
    assert_eq!(tspace(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(tspace(&["verify", "no-such-suite"]).code, EXIT_USAGE);
    assert_eq!(tspace(&["verify"]).code, EXIT_USAGE);
    assert_eq!(tspace(&["member", "--space", "Q7", "x1"]).code, EXIT_USAGE);
    assert_eq!(tspace(&["--help"]).code, EXIT_OK);
}

#[test]
fn unitary_flag_admits_constants() {
    let out = tspace(&["--unitary", "nf", "1 + x1"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let doc = json_of(&["--unitary", "nf", "1"]);
    assert_eq!(doc["input"]["mode"], "unitary");
}

#[test]
fn exceeded_budget_exits_two() {
    let out = tspace(&[
        "--budget",
        "1",
        "member",
        "--space",
        "S2+TG0",
        "[x1,x2]*x1^2*x2^2",
    ]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("budget"), "{}", out.stderr);
    let out = tspace(&["--budget", "1", "verify", "chain"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn verify_list_names_every_suite() {
    let out = tspace(&["verify", "--list"]);
    for id in tspace_cli::suite_ids() {
        assert!(
            out.stdout.lines().any(|l| l.starts_with(id)),
            "{id} missing"
        );
    }
    let doc = json_of(&["verify", "--list"]);
    assert_eq!(doc.as_array().unwrap().len(), 10);
}

#[test]
fn verify_single_suite_text_and_json() {
    let out = tspace(&["verify", "kappa-sum", "--p", "5"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.starts_with("[PASS] kappa-sum"));
    let doc = json_of(&["verify", "kappa-product"]);
    assert_valid("verify_run", &doc);
    assert_eq!(doc["reports"][0]["parameters"]["p"], 3);
}

#[test]
fn verify_all_is_byte_identical_across_runs_and_thread_counts() {
    let a = tspace(&["--format", "json", "--threads", "1", "verify", "all"]);
    let b = tspace(&["--format", "json", "--threads", "3", "verify", "all"]);
    assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_valid("verify_run", &doc);
    let ids: Vec<&str> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, tspace_cli::suite_ids());
    assert!(!a.stdout.contains("duration_ms"));
}

#[test]
fn timings_add_durations() {
    let doc = json_of(&["--timings", "verify", "kappa-sum"]);
    assert!(doc["reports"][0]["duration_ms"].is_u64());
    assert_valid("verify_run", &doc);
}

#[test]
fn random_identity_checks_are_reproducible() {
    let args = [
        "--format",
        "json",
        "central",
        "--rank",
        "8",
        "--seed",
        "7",
        "[x1,x2]*x3",
    ];
    let a = tspace(&args);
    assert_eq!(a, tspace(&args));
    assert_eq!(a.code, EXIT_FAILED);
}
