mod common;

use common::{assert_schema, fixture, golden_path, relsmooth, relsmooth_with_stdin};
use serde_json::Value;

fn golden_json(name: &str) -> Value {
    let text = std::fs::read_to_string(golden_path(name)).unwrap_or_else(|e| panic!("golden {name}: {e}"));
    serde_json::from_str(&text).expect("golden is JSON")
}

fn golden_text(name: &str) -> String {
    std::fs::read_to_string(golden_path(name)).unwrap_or_else(|e| panic!("golden {name}: {e}"))
}

/// Runs a JSON command, checks exit code, schema and golden file.
fn json_golden(args: &[&str], code: i32, def: &str, golden: &str) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let run = relsmooth(&full);
    assert_eq!(run.code, code, "exit code of {args:?}; stderr: {}", run.stderr);
    let out = run.json();
    assert_schema(def, &out);
    assert_eq!(out, golden_json(golden), "output of {args:?} differs from {golden}");
    out
}

#[test]
fn comb_passes_every_condition() {
    let out = json_golden(
        &["check", &fixture("comb3.json"), &fixture("gamma_111.json")],
        0,
        "check_output",
        "check_comb3.json",
    );
    assert_eq!(out["membership"]["is_k"], true);
    assert_eq!(out["membership"]["is_n"], false);
}

#[test]
fn degree_three_example_fails_balance_with_two_witnesses() {
    let out = json_golden(
        &["check", &fixture("degree3_unbalanced.json"), &fixture("gamma_111.json")],
        1,
        "check_output",
        "check_degree3.json",
    );
    let point = &out["report"]["points"][0];
    assert_eq!(point["status"]["evaluation"], "pass");
    assert_eq!(point["status"]["fiber"], "pass");
    assert_eq!(point["status"]["balance"], "fail");
    assert_eq!(point["balance"].as_array().unwrap().len(), 2);
}

#[test]
fn check_table_names_the_witnesses() {
    let run = relsmooth(&["check", &fixture("degree3_unbalanced.json"), "--gamma", "(1,1,1)@inf"]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("(3) FAIL"));
    assert!(run.stdout.contains("contracted {v1}: tangencies 2 vs ramification 1"));
    assert!(run.stdout.contains("mark p0 on v0: tangency 1 vs ramification 2"));
}

#[test]
fn recipe_for_two_three_star() {
    let out = json_golden(
        &["recipe", &fixture("star23.json"), "--point", "inf"],
        0,
        "recipe_output",
        "recipe_star23.json",
    );
    let c = &out["recipe"]["components"][0];
    assert_eq!(c["coefficient"], 6);
    let orders: Vec<u64> = c["nodes"].as_array().unwrap().iter().map(|n| n["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, vec![3, 2]);
    assert_eq!(out["intersections"]["components"][0]["total"], "0");
}

#[test]
fn recipe_for_comb_is_smooth() {
    let out = json_golden(
        &["recipe", &fixture("comb3.json"), "--point", "inf"],
        0,
        "recipe_output",
        "recipe_comb3.json",
    );
    let node = &out["recipe"]["components"][0]["nodes"][0];
    assert_eq!(node["order"], 1);
    assert_eq!(node["singularity"], "A_0");
    assert_eq!(out["recipe"]["components"][0]["coefficient"], 3);
}

#[test]
fn scaled_recipe_matches_the_substitution() {
    let out = json_golden(
        &["recipe", &fixture("star23.json"), "--point", "inf", "--scale", "1:2"],
        1,
        "recipe_output",
        "recipe_star23_scaled.json",
    );
    assert_eq!(out["recipe"]["components"][0]["coefficient"], 12);
    let ext: Vec<u64> =
        out["extension"]["multipliers"].as_array().unwrap().iter().map(|m| m["multiplier"].as_u64().unwrap()).collect();
    assert_eq!(ext, vec![6, 2]);
}

#[test]
fn unbalanced_recipe_reports_the_defect() {
    let out = json_golden(
        &["recipe", &fixture("star23_short.json"), "--point", "inf", "--unchecked"],
        1,
        "recipe_output",
        "recipe_star23_short.json",
    );
    assert_eq!(out["intersections"]["components"][0]["total"], "-1");
    assert_eq!(out["intersections"]["balance_identity_holds"], false);
}

#[test]
fn checked_recipe_refuses_failing_conditions() {
    let run = relsmooth(&["--json", "recipe", &fixture("star23_short.json"), "--point", "inf"]);
    assert_eq!(run.code, 1);
    let out = run.json();
    assert_schema("recipe_output", &out);
    assert_eq!(out["conditions"]["status"]["balance"], "fail");
}

#[test]
fn divisibility_targets_are_met() {
    let run = relsmooth(&["--json", "recipe", &fixture("star23.json"), "--point", "inf", "--multiples", "0:2,1:4"]);
    assert_eq!(run.code, 0);
    let out = run.json();
    assert_schema("recipe_output", &out);
    let orders: Vec<u64> = out["recipe"]["components"][0]["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["order"].as_u64().unwrap())
        .collect();
    assert_eq!(orders[0] % 2, 0);
    assert_eq!(orders[1] % 4, 0);
}

#[test]
fn hurwitz_cube_map() {
    let out = json_golden(
        &["hurwitz", "--degree", "3", "--profile", "0:3", "--profile", "inf:3"],
        0,
        "hurwitz_output",
        "hurwitz_33.json",
    );
    assert_eq!(out["count"], "1/3");
    assert_eq!(out["covers"], 1);
    assert_eq!(out["rh_extra_branch_points"], 0);
}

#[test]
fn hurwitz_parity_failure() {
    let run = relsmooth(&["--json", "hurwitz", "--degree", "2", "--profile", "a:2", "--profile", "b:2", "--profile", "c:2"]);
    assert_eq!(run.code, 1);
    let out = run.json();
    assert_schema("hurwitz_output", &out);
    assert_eq!(out["exists"], false);
}

#[test]
fn hurwitz_capacity_and_input_errors() {
    let run = relsmooth(&["--json", "hurwitz", "--degree", "8"]);
    assert_eq!(run.code, 3);
    assert_schema("error_output", &run.json());
    let run = relsmooth(&["hurwitz", "--degree", "8", "--max-degree", "8"]);
    assert_eq!(run.code, 0);
    assert!(run.stderr.contains("warning: degree limit raised"));
    let run = relsmooth(&["--json", "hurwitz", "--degree", "3", "--profile", "inf:2"]);
    assert_eq!(run.code, 2);
    assert_schema("error_output", &run.json());
}

#[test]
fn enumerate_golden_outputs() {
    let out = json_golden(
        &["enumerate", "--gamma", "(1,1)@inf", "--degree", "2"],
        0,
        "enumerate_output",
        "enumerate_11.json",
    );
    let mut dims: Vec<i64> = out["strata"].as_array().unwrap().iter().map(|s| s["dimension"].as_i64().unwrap()).collect();
    dims.sort_unstable();
    assert_eq!(dims, vec![1, 1, 2]);
    json_golden(&["enumerate", "--gamma", "(2)@inf", "--degree", "2"], 0, "enumerate_output", "enumerate_2.json");
    let run = relsmooth(&["enumerate", "--gamma", "(1,1)@inf", "--degree", "2"]);
    assert_eq!(run.stdout, golden_text("enumerate_11.txt"));
}

#[test]
fn enumerate_output_independent_of_jobs() {
    let base = relsmooth(&["--json", "--jobs", "1", "enumerate", "--gamma", "1 (2,1)@inf (3)@0", "--degree", "3"]);
    assert_eq!(base.code, 0);
    for jobs in ["2", "4", "0"] {
        let run = relsmooth(&["--json", "--jobs", jobs, "enumerate", "--gamma", "1 (2,1)@inf (3)@0", "--degree", "3"]);
        assert_eq!(run.stdout, base.stdout, "jobs = {jobs}");
    }
}

#[test]
fn enumerate_dot_bundle_and_wps() {
    let run = relsmooth(&["enumerate", "--gamma", "(1,1)@inf", "--degree", "2", "--format", "dot-bundle"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout.matches("graph dual_map {").count(), 3);
    let run = relsmooth(&["--json", "enumerate", "--gamma", "(2)@inf", "--degree", "2", "--wps", "4,6"]);
    assert_eq!(run.code, 0);
    let out = run.json();
    assert_schema("enumerate_output", &out);
    assert_eq!(out["target"]["generic_order"], 2);
}

#[test]
fn enumerate_rejects_inconsistent_gamma() {
    let run = relsmooth(&["--json", "enumerate", "--gamma", "(1)@inf", "--degree", "2"]);
    assert_eq!(run.code, 2);
    assert_schema("error_output", &run.json());
    let run = relsmooth(&["--json", "enumerate", "--gamma", "(7)@inf", "--degree", "7"]);
    assert_eq!(run.code, 3);
}

#[test]
fn elliptic_examples() {
    let out = json_golden(&["elliptic", &fixture("elliptic_smooth.json")], 0, "elliptic_output", "elliptic_smooth.json");
    assert_eq!(out["smoothable"], true);
    let out = json_golden(&["elliptic", &fixture("elliptic_comb.json")], 0, "elliptic_output", "elliptic_comb.json");
    assert_eq!(out["smoothable"], true);
    let out = json_golden(&["elliptic", &fixture("elliptic_comb_e1.json")], 1, "elliptic_output", "elliptic_comb_e1.json");
    assert_eq!(out["report"]["points"][0]["status"]["balance"], "fail");
}

#[test]
fn validate_verdicts_and_errors() {
    let run = relsmooth(&["--json", "validate", &fixture("comb3.json")]);
    assert_eq!(run.code, 0);
    assert_schema("validate_output", &run.json());

    let run = relsmooth(&["validate", &fixture("triangle.json")]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("not a tree"));

    let run = relsmooth(&["--json", "validate", &fixture("missing_degree.json")]);
    assert_eq!(run.code, 2);
    let out = run.json();
    assert_schema("error_output", &out);
    assert!(out["error"]["message"].as_str().unwrap().contains("vertices[0].degree"));

    let run = relsmooth(&["validate", "/nonexistent/graph.json"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.starts_with("error:"));
}

#[test]
fn syntax_errors_report_byte_offsets() {
    let run = relsmooth_with_stdin(&["validate", "-"], Some(b"{\"degree\": 1,\n  oops}"));
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("byte 16"), "{}", run.stderr);
}

#[test]
fn stdin_input() {
    let bytes = std::fs::read(fixture("comb3.json")).unwrap();
    let run = relsmooth_with_stdin(&["check", "-", "--gamma", "(1,1,1)@inf"], Some(&bytes));
    assert_eq!(run.code, 0);
}

#[test]
fn reduce_merges_chains() {
    let run = relsmooth(&["reduce", &fixture("chain.json")]);
    assert_eq!(run.code, 0);
    let out = run.json();
    assert_schema("graph", &out);
    let contracted = out["vertices"].as_array().unwrap().iter().filter(|v| v["role"] == "contracted").count();
    assert_eq!(contracted, 1);
    assert_eq!(out["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn dot_output() {
    let run = relsmooth(&["dot", &fixture("comb3.json")]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, golden_text("comb3.dot"));
    let run = relsmooth(&["--json", "dot", &fixture("comb3.json")]);
    assert_schema("dot_output", &run.json());
}

#[test]
fn target_output() {
    let run = relsmooth(&["--json", "target", "--wps", "4,6", "--relative", "j=inf"]);
    assert_eq!(run.code, 0);
    let out = run.json();
    assert_schema("target_output", &out);
    assert_eq!(out["coprime"]["k"], 2);
    let run = relsmooth(&["target", "--wps", "0,6"]);
    assert_eq!(run.code, 2);
}

#[test]
fn sample_is_seeded() {
    let a = relsmooth(&["--json", "--seed", "11", "sample", "--count", "3"]);
    let b = relsmooth(&["--json", "--seed", "11", "sample", "--count", "3"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stderr.contains("seed 11"));
    let out = a.json();
    assert_schema("sample_output", &out);
    let run = relsmooth(&["--json", "sample", "--kind", "star", "--unbalanced", "0.5", "--count", "2"]);
    assert!(run.stderr.contains("seed "));
    assert_schema("sample_output", &run.json());
}

#[test]
fn usage_errors_exit_with_input_code() {
    assert_eq!(relsmooth(&["check"]).code, 2);
    assert_eq!(relsmooth(&["frobnicate"]).code, 2);
    assert_eq!(relsmooth(&["--help"]).code, 0);
}
