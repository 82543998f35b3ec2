use realslice_demo::{certify_empty_json, certify_system, critical_values_json, trace_curve_json};

#[test]
fn two_ovals_trace_as_two_closed_components() {
    // (x² − 1)² + y² = 1/4 splits into ovals around x = ±1.
    let v = trace_curve_json("vars: x y\n(x^2 - 1)^2 + y^2", 0.25, -2.0, 2.0, 64).unwrap();
    assert_eq!(v["components"], 2);
    assert_eq!(v["all_closed"], true);
}

#[test]
fn curve_needs_two_variables() {
    assert!(trace_curve_json("vars: x\nx^2", 1.0, -1.0, 1.0, 16).is_err());
    assert!(trace_curve_json("vars: x y\nx + y", 0.0, 1.0, -1.0, 16).is_err());
}

#[test]
fn double_well_critical_values() {
    let v = critical_values_json("vars: x\nx^4 - 2*x^2", -2.0, 2.0).unwrap();
    assert_eq!(v["verdict"], "certified");
    let enc: Vec<[f64; 2]> = serde_json::from_value(v["enclosures"].clone()).unwrap();
    assert!(enc.iter().any(|e| e[0] <= -1.0 && -1.0 <= e[1]));
    assert!(enc.iter().any(|e| e[0] <= 0.0 && 0.0 <= e[1]));
}

#[test]
fn systems_certify_or_produce_witnesses() {
    let v = certify_empty_json("vars: x y\ndomain: -2:2\nx^2 + y^2 + 1\n").unwrap();
    assert_eq!(v["verdict"], "certified");
    let v = certify_empty_json("vars: x y\ndomain: -1:1\n2*x - 1\ny\n").unwrap();
    assert_eq!(v["verdict"], "refuted-by-witness");
    assert!(certify_system("not a system").contains("error"));
}
