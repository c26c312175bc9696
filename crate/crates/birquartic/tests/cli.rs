//! End-to-end checks of the command-line surface: wire formats, exit
//! codes, determinism, and conformance of every output against the JSON
//! schemas shipped in `schemas/`.

use std::path::{Path, PathBuf};

use serde_json::Value;

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("birquartic".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = birquartic::cli::run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn temp_file(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("birquartic-it-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

// --- Minimal JSON Schema checker (type / properties / required / items /
// --- enum), enough for the schemas shipped with the crate. ------------------

fn type_matches(ty: &str, v: &Value) -> bool {
    match ty {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        _ => false,
    }
}

fn check_schema(schema: &Value, instance: &Value, path: &str) -> Result<(), String> {
    if let Some(ty) = schema.get("type") {
        let ok = match ty {
            Value::String(s) => type_matches(s, instance),
            Value::Array(options) => options.iter().any(|t| {
                t.as_str()
                    .map(|s| type_matches(s, instance))
                    .unwrap_or(false)
            }),
            _ => return Err(format!("{path}: malformed schema type")),
        };
        if !ok {
            return Err(format!("{path}: type mismatch, got {instance}"));
        }
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(instance) {
            return Err(format!("{path}: {instance} not in enum"));
        }
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required {
            let key = key.as_str().unwrap();
            if instance.get(key).is_none() {
                return Err(format!("{path}: missing required key `{key}`"));
            }
        }
    }
    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        if let Some(obj) = instance.as_object() {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    check_schema(sub, v, &format!("{path}.{key}"))?;
                }
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(arr) = instance.as_array() {
            for (i, v) in arr.iter().enumerate() {
                check_schema(items, v, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

fn assert_schema(subcommand: &str, stdout: &str) -> Value {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{subcommand}.json"));
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(&schema_path).unwrap()).unwrap();
    let instance: Value = serde_json::from_str(stdout).unwrap_or_else(|e| {
        panic!("stdout of {subcommand} is not JSON: {e}\n{stdout}");
    });
    check_schema(&schema, &instance, "$")
        .unwrap_or_else(|e| panic!("{subcommand} output violates its schema: {e}"));
    instance
}

fn two_node_config() -> PathBuf {
    temp_file(
        "two-node.json",
        r#"{"points":[{"id":"P1","eckardt":false},{"id":"P2","eckardt":false}],
            "lines":[{"id":"L1","points":["P1","P2"],"eckardt":false}]}"#,
    )
}

#[test]
fn validate_conforms_and_reports() {
    let cfg = two_node_config();
    let (code, out, _) = run_cli(&["validate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc = assert_schema("validate", &out);
    assert_eq!(doc["result"]["violations"].as_array().unwrap().len(), 0);

    let bad = temp_file(
        "bad.json",
        r#"{"points":[{"id":"P1"},{"id":"P2"},{"id":"P3"},{"id":"P4"}],
            "lines":[{"id":"L1","points":["P1","P2","P3","P4"]}]}"#,
    );
    let (code, out, _) = run_cli(&["validate", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    let doc = assert_schema("validate", &out);
    assert!(doc["result"]["violations"][0]["rule"]
        .as_str()
        .unwrap()
        .contains("4 points"));
}

#[test]
fn apply_accepts_the_wire_formats() {
    let cfg = two_node_config();
    let vec = temp_file(
        "identity.json",
        r#"{"mu":"1","nu":{"P1":"0","P2":"0","L1":"0"}}"#,
    );
    let word = temp_file(
        "pair-word.json",
        r#"{"word":[{"type":"pair","ids":["P1","P2"],"line":"L1"}]}"#,
    );
    let (code, out, _) = run_cli(&[
        "apply",
        "--config",
        cfg.to_str().unwrap(),
        "--vector",
        vec.to_str().unwrap(),
        "--word",
        word.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    let doc = assert_schema("apply", &out);
    assert_eq!(doc["result"]["vector"]["mu"], "13");
    assert_eq!(doc["result"]["vector"]["nu"]["P1"], "14");
    assert_eq!(doc["result"]["vector"]["nu"]["L1"], "8");
}

#[test]
fn compose_emits_the_union_basis_matrix() {
    let cfg = two_node_config();
    let word = temp_file(
        "plp.json",
        r#"{"word":[{"type":"point","id":"P1"},{"type":"line","id":"L1"},{"type":"point","id":"P2"}]}"#,
    );
    let (code, out, _) = run_cli(&[
        "compose",
        "--config",
        cfg.to_str().unwrap(),
        "--word",
        word.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let doc = assert_schema("compose", &out);
    let basis: Vec<&str> = doc["result"]["matrix"]["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(basis, vec!["mu", "P1", "P2", "L1"]);
    assert_eq!(doc["result"]["matrix"]["rows"][0][0], "13");
}

#[test]
fn untwist_exit_codes_and_trace_file() {
    let cfg = two_node_config();
    let vec = temp_file(
        "pair-vec.json",
        r#"{"mu":"13","nu":{"P1":"14","P2":"14","L1":"8"}}"#,
    );
    let trace = std::env::temp_dir()
        .join(format!("birquartic-it-{}", std::process::id()))
        .join("trace.json");
    let (code, out, _) = run_cli(&[
        "untwist",
        "--config",
        cfg.to_str().unwrap(),
        "--vector",
        vec.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let doc = assert_schema("untwist", &out);
    assert_eq!(doc["result"]["steps"], 1);
    assert_eq!(doc["result"]["generators"][0]["type"], "pair");
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(written["status"]["status"], "complete");

    // A vector with a center but an unknown companion multiplicity: stuck.
    let stuck = temp_file("stuck-vec.json", r#"{"mu":"3","nu":{"P1":"4"}}"#);
    let (code, out, _) = run_cli(&[
        "untwist",
        "--config",
        cfg.to_str().unwrap(),
        "--vector",
        stuck.to_str().unwrap(),
    ]);
    assert_eq!(code, 3);
    let doc = assert_schema("untwist", &out);
    assert_eq!(doc["result"]["status"]["status"], "stuck");
}

#[test]
fn normalize_reports_the_cluster_element() {
    let cfg = temp_file(
        "one-node.json",
        r#"{"points":[{"id":"P1"}],"lines":[{"id":"L1","points":["P1"]}]}"#,
    );
    let word = temp_file(
        "pl.json",
        r#"{"word":[{"type":"point","id":"P1"},{"type":"line","id":"L1"}]}"#,
    );
    let (code, out, _) = run_cli(&[
        "normalize",
        "--config",
        cfg.to_str().unwrap(),
        "--word",
        word.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let doc = assert_schema("normalize", &out);
    assert_eq!(doc["result"]["cluster"]["parity"], 1);
    assert_eq!(doc["result"]["cluster"]["translation"][0], -3);
}

#[test]
fn eq_exit_codes_cover_all_three_verdicts() {
    let cfg3 = temp_file(
        "three-node.json",
        r#"{"points":[{"id":"P1"},{"id":"P2"},{"id":"P3"}],
            "lines":[{"id":"L1","points":["P1","P2","P3"]}]}"#,
    );
    let w_abc = temp_file(
        "abc.json",
        r#"{"word":[{"type":"point","id":"P1"},{"type":"point","id":"P2"},{"type":"point","id":"P3"}]}"#,
    );
    let w_cba = temp_file(
        "cba.json",
        r#"{"word":[{"type":"point","id":"P3"},{"type":"point","id":"P2"},{"type":"point","id":"P1"}]}"#,
    );
    let (code, out, _) = run_cli(&[
        "eq",
        "--config",
        cfg3.to_str().unwrap(),
        "--w1",
        w_abc.to_str().unwrap(),
        "--w2",
        w_cba.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_schema("eq", &out);

    let w_a = temp_file("a.json", r#"{"word":[{"type":"point","id":"P1"}]}"#);
    let (code, out, _) = run_cli(&[
        "eq",
        "--config",
        cfg3.to_str().unwrap(),
        "--w1",
        w_abc.to_str().unwrap(),
        "--w2",
        w_a.to_str().unwrap(),
    ]);
    assert_eq!(code, 4);
    assert_eq!(assert_schema("eq", &out)["result"]["verdict"], "distinct");

    // Line involutions of disjoint clusters do not commute: the degree
    // actions already differ (mu couples the two blocks).
    let cfg2 = temp_file(
        "disjoint.json",
        r#"{"points":[{"id":"P1"},{"id":"P2"}],
            "lines":[{"id":"L1","points":["P1"]},{"id":"L2","points":["P2"]}]}"#,
    );
    let w12 = temp_file(
        "l1l2.json",
        r#"{"word":[{"type":"line","id":"L1"},{"type":"line","id":"L2"}]}"#,
    );
    let w21 = temp_file(
        "l2l1.json",
        r#"{"word":[{"type":"line","id":"L2"},{"type":"line","id":"L1"}]}"#,
    );
    let (code, out, _) = run_cli(&[
        "eq",
        "--config",
        cfg2.to_str().unwrap(),
        "--w1",
        w12.to_str().unwrap(),
        "--w2",
        w21.to_str().unwrap(),
    ]);
    assert_eq!(code, 4);
    assert_eq!(assert_schema("eq", &out)["result"]["verdict"], "distinct");

    // A mixed-cluster pair equal through a triple relation is out of the
    // single-cluster oracle's reach: with a zero rewriting budget it stays
    // undecided, and a budget turns it equal (never the other way).
    let cfg_mixed = temp_file(
        "mixed.json",
        r#"{"points":[{"id":"P1"},{"id":"P2"},{"id":"P3"},{"id":"P4"}],
            "lines":[{"id":"L1","points":["P1","P2","P3"]},{"id":"L2","points":["P4"]}]}"#,
    );
    let w_abc_t = temp_file(
        "abct.json",
        r#"{"word":[{"type":"point","id":"P1"},{"type":"point","id":"P2"},
                    {"type":"point","id":"P3"},{"type":"line","id":"L2"}]}"#,
    );
    let w_cba_t = temp_file(
        "cbat.json",
        r#"{"word":[{"type":"point","id":"P3"},{"type":"point","id":"P2"},
                    {"type":"point","id":"P1"},{"type":"line","id":"L2"}]}"#,
    );
    let base = [
        "eq",
        "--config",
        cfg_mixed.to_str().unwrap(),
        "--w1",
        w_abc_t.to_str().unwrap(),
        "--w2",
        w_cba_t.to_str().unwrap(),
    ];
    let mut zero = base.to_vec();
    zero.extend(["--budget", "0"]);
    let (code, out, _) = run_cli(&zero);
    assert_eq!(code, 5, "{out}");
    assert_eq!(assert_schema("eq", &out)["result"]["verdict"], "undecided");
    let mut enough = base.to_vec();
    enough.extend(["--budget", "500"]);
    let (code, out, _) = run_cli(&enough);
    assert_eq!(code, 0, "{out}");
    assert_eq!(assert_schema("eq", &out)["result"]["verdict"], "equal");
}

#[test]
fn verify_relations_schema_and_failure_free() {
    let cfg = temp_file(
        "clusters.json",
        r#"{"points":[{"id":"P1"},{"id":"P2"},{"id":"P3"},{"id":"P4"},{"id":"P5"},{"id":"P6"}],
            "lines":[{"id":"L1","points":["P1"]},
                     {"id":"L2","points":["P2","P3"]},
                     {"id":"L3","points":["P4","P5","P6"]}]}"#,
    );
    let (code, out, _) = run_cli(&[
        "verify-relations",
        "--config",
        cfg.to_str().unwrap(),
        "--samples",
        "96",
        "--seed",
        "31",
        "--field",
        "10007",
    ]);
    assert_eq!(code, 0, "{out}");
    let doc = assert_schema("verify-relations", &out);
    assert_eq!(doc["result"]["all_passed"], true);
    // All three cluster shapes contribute checks.
    let checks = doc["result"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 4 + 2 + 2);
    assert_eq!(doc["manifest"]["seed"], 31);
}

#[test]
fn classify_and_check_star_via_files() {
    let d4 = temp_file(
        "d4.json",
        r#"{"vertices":[{"id":"c"},{"id":"l1"},{"id":"l2"},{"id":"l3"}],
            "edges":[["c","l1",1],["c","l2",1],["c","l3",1]]}"#,
    );
    let (code, out, _) = run_cli(&["classify-lattice", "--in", d4.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc = assert_schema("classify-lattice", &out);
    assert_eq!(doc["result"]["components"][0]["label"], "D4");
    assert_eq!(doc["result"]["definiteness"]["kind"], "negative_definite");

    let (code, out, _) = run_cli(&["check-star", "--in", d4.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        assert_schema("check-star", &out)["result"]["star"]["verdict"],
        "holds"
    );

    // Marked vertices that break a component: take an affine diagram plus a
    // chord and mark nothing.
    let bad = temp_file(
        "indef.json",
        r#"{"vertices":[{"id":"a"},{"id":"b"},{"id":"c"},{"id":"d"}],
            "edges":[["a","b",1],["b","c",1],["c","d",1],["d","a",1],["a","c",1]]}"#,
    );
    let (code, out, _) = run_cli(&["check-star", "--in", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    let doc = assert_schema("check-star", &out);
    assert_eq!(doc["result"]["star"]["verdict"], "fails");

    // Marking the chord endpoint repairs it.
    let (code, _, _) = run_cli(&["check-star", "--in", bad.to_str().unwrap(), "--marked", "a"]);
    assert_eq!(code, 0);
}

#[test]
fn duval_and_corollary_case_conform() {
    let (code, out, _) = run_cli(&["duval", "--kprime", "20"]);
    assert_eq!(code, 0);
    let doc = assert_schema("duval", &out);
    assert_eq!(doc["result"]["coefficients"][19], "20/21");

    let (code, out, _) = run_cli(&[
        "corollary-case",
        "--label",
        "2lines-irreducible-conic-through-P",
    ]);
    assert_eq!(code, 0);
    let doc = assert_schema("corollary-case", &out);
    assert_eq!(doc["result"]["cited"], "D5");
    assert_eq!(doc["result"]["matches"], true);
}

#[test]
fn analyze_quartic_end_to_end() {
    // w²(xy+zt) − (x³y + y⁴ + z⁴ + t⁴): three collinear nodes, the w-point
    // eckardt-flagged, the line through them an eckardt line.
    let equation = temp_file(
        "eckardt-quartic.json",
        r#"{"vars":["x","y","z","t","w"],
            "terms":[{"coef":"1","exps":[1,1,0,0,2]},
                     {"coef":"1","exps":[0,0,1,1,2]},
                     {"coef":"-1","exps":[3,1,0,0,0]},
                     {"coef":"-1","exps":[0,4,0,0,0]},
                     {"coef":"-1","exps":[0,0,4,0,0]},
                     {"coef":"-1","exps":[0,0,0,4,0]}]}"#,
    );
    let config = temp_file(
        "eckardt-config.json",
        r#"{"points":[{"id":"P","eckardt":true},{"id":"P1","eckardt":false},{"id":"P2","eckardt":false}],
            "lines":[{"id":"L","points":["P","P1","P2"],"eckardt":true}]}"#,
    );
    let coords = temp_file(
        "eckardt-coords.json",
        r#"{"P":  ["0","0","0","0","1"],
            "P1": ["1","0","0","0","1"],
            "P2": ["-1","0","0","0","1"],
            "L":  [["1","0","0","0","1"],["-1","0","0","0","1"]]}"#,
    );
    let (code, out, _) = run_cli(&[
        "analyze-quartic",
        "--equation",
        equation.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--coords",
        coords.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    let doc = assert_schema("analyze-quartic", &out);
    assert_eq!(doc["result"]["mismatches"].as_array().unwrap().len(), 0);

    // Mislabel the eckardt flag: one mismatch and exit 1.
    let wrong = temp_file(
        "wrong-config.json",
        r#"{"points":[{"id":"P","eckardt":false},{"id":"P1","eckardt":false},{"id":"P2","eckardt":false}],
            "lines":[{"id":"L","points":["P","P1","P2"],"eckardt":true}]}"#,
    );
    let (code, out, _) = run_cli(&[
        "analyze-quartic",
        "--equation",
        equation.to_str().unwrap(),
        "--config",
        wrong.to_str().unwrap(),
        "--coords",
        coords.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    let doc = assert_schema("analyze-quartic", &out);
    assert_eq!(doc["result"]["mismatches"][0]["check"], "eckardt-flag");
}

#[test]
fn error_outputs_conform_too() {
    let (code, out, _) = run_cli(&["classify-lattice", "--in", "/definitely/missing.json"]);
    assert_eq!(code, 2);
    assert_schema("error", &out);
}

#[test]
fn byte_identical_reruns() {
    let cfg = two_node_config();
    let args = [
        "verify-relations",
        "--config",
        cfg.to_str().unwrap(),
        "--samples",
        "128",
        "--seed",
        "4711",
    ];
    let (c1, out1, _) = run_cli(&args);
    let (c2, out2, _) = run_cli(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(out1, out2);
    // Jobs only change scheduling, never bytes.
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "1"]);
    let (c3, out3, _) = run_cli(&with_jobs);
    assert_eq!(c3, 0);
    assert_eq!(out1, out3);
}
