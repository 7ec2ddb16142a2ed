use serde_json::Value;

fn schema(name: &str) -> jsonschema::Validator {
    let path = format!("{}/../../docs/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn output(args: &[&str]) -> Value {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ballspec").chain(args.iter().copied());
    assert_eq!(ballspec_cli::run(argv, &mut out, &mut err), 0, "{}", String::from_utf8_lossy(&err));
    serde_json::from_slice(&out).unwrap()
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let errors: Vec<String> = s.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn spectrum_validates() {
    for bc in ["dirichlet", "neumann"] {
        assert_valid("spectrum", &output(&["spectrum", "--d", "3", "--bc", bc, "--lambda-max", "100"]));
    }
}

#[test]
fn zeros_validates() {
    assert_valid("zeros", &output(&["zeros", "--kind", "bessel", "--nu", "5/2"]));
    assert_valid("zeros", &output(&["zeros", "--kind", "neumann", "--l", "0", "--d", "2"]));
}

#[test]
fn courant_validates() {
    assert_valid("courant", &output(&["courant", "--d", "2", "--bc", "neumann"]));
    assert_valid("courant", &output(&["courant", "--d", "4", "--bc", "dirichlet"]));
}

#[test]
fn pleijel_outputs_validate() {
    assert_valid("pleijel-table", &output(&["pleijel", "--table", "2", "30", "--format", "json"]));
    assert_valid("quotient-plot", &output(&["pleijel", "--quotient", "2", "94", "--format", "json"]));
    assert_valid("pleijel-bound", &output(&["pleijel", "--bound", "3", "--format", "json"]));
}

#[test]
fn certify_validates() {
    assert_valid("certify", &output(&["certify", "--d-min", "90", "--d-max", "100", "--format", "json"]));
}

#[test]
fn schemas_reject_malformed_documents() {
    let mut v = output(&["spectrum", "--d", "2", "--bc", "neumann", "--lambda-max", "10"]);
    v["bc"] = Value::from("robin");
    assert!(!schema("spectrum").is_valid(&v));
    let mut v = output(&["pleijel", "--bound", "3", "--format", "json"]);
    v["extra"] = Value::from(1);
    assert!(!schema("pleijel-bound").is_valid(&v));
}
