//! End-to-end tests of the command-line interface: documented example
//! invocations, exit codes, determinism, JSON schemas, and the
//! environment-variable cap override (exercised through the real binary
//! so the environment stays isolated per test).

use std::path::PathBuf;
use std::process::Command;

use tlgrowth_cli::{run_with_output, CAP_ENV_VAR};

/// Run the CLI in-process, capturing output and exit code.
fn run(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["tlgrowth"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let code = run_with_output(argv, &mut out);
    (code, String::from_utf8(out).expect("output is UTF-8"))
}

/// The non-`#` lines of an output: the payload contract.
fn payload(output: &str) -> Vec<&str> {
    output
        .lines()
        .filter(|line| !line.starts_with('#'))
        .collect()
}

fn data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

// ---------------------------------------------------------------------------
// Documented example invocations
// ---------------------------------------------------------------------------

#[test]
fn dim_of_the_rank_four_single_heavy_edge_path_is_83() {
    let (code, out) = run(&["dim", "--preset", "B", "4"]);
    assert_eq!(code, 0, "output:\n{out}");
    assert_eq!(payload(&out), ["83"]);
}

#[test]
fn growth_of_the_three_cycle_is_reported_linear() {
    let (code, out) = run(&["growth", "--preset", "tilde-A", "3"]);
    assert_eq!(code, 0, "output:\n{out}");
    assert_eq!(payload(&out), ["polynomial degree 1 (linear)"]);
}

#[test]
fn dim_of_a_single_vertex_graph_file_is_2() {
    let (code, out) = run(&["dim", "--graph", &data("single-vertex.json")]);
    assert_eq!(code, 0, "output:\n{out}");
    assert_eq!(payload(&out), ["2"]);
}

#[test]
fn dim_reports_infinite_for_a_linear_growth_diagram() {
    let (code, out) = run(&["dim", "--preset", "tilde-C", "2"]);
    assert_eq!(code, 0, "output:\n{out}");
    assert_eq!(payload(&out), ["infinite"]);
}

#[test]
fn headers_echo_the_resolved_configuration() {
    let (_, out) = run(&["dim", "--preset", "B", "4"]);
    assert!(out.starts_with("# tlgrowth dim\n"), "output:\n{out}");
    assert!(out.contains("# input: preset B 4 (4 vertices, 3 edges)"));
    assert!(out.contains("# order: degree-lexicographic"));
    assert!(out.contains("# cap: 10 (default"));
    assert!(out.contains("# parameters: symbolic"));
}

// ---------------------------------------------------------------------------
// Exit codes
// ---------------------------------------------------------------------------

#[test]
fn missing_input_is_a_usage_error() {
    let (code, out) = run(&["dim"]);
    assert_eq!(code, 2, "output:\n{out}");
    assert!(out.contains("exactly one of --preset or --graph"));
}

#[test]
fn preset_and_graph_together_are_rejected() {
    let (code, _) = run(&[
        "dim",
        "--preset",
        "A",
        "3",
        "--graph",
        &data("single-vertex.json"),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn unknown_preset_is_a_usage_error() {
    let (code, out) = run(&["dim", "--preset", "nosuch"]);
    assert_eq!(code, 2, "output:\n{out}");
    assert!(out.contains("error: "));
    assert!(out.contains("nosuch"));
}

#[test]
fn unreadable_graph_file_is_a_domain_error() {
    let (code, out) = run(&["dim", "--graph", "/no/such/file.json"]);
    assert_eq!(code, 1, "output:\n{out}");
    assert!(out.contains("cannot read"));
}

#[test]
fn malformed_json_reports_the_position() {
    let (code, out) = run(&["dim", "--graph", &data("not-json.json")]);
    assert_eq!(code, 1, "output:\n{out}");
    assert!(out.contains("line") && out.contains("column"), "output:\n{out}");
}

#[test]
fn out_of_range_edge_label_is_a_domain_error() {
    let (code, out) = run(&["dim", "--graph", &data("bad-label.json")]);
    assert_eq!(code, 1, "output:\n{out}");
    assert!(out.contains("label"), "output:\n{out}");
}

#[test]
fn capped_completion_fails_dim_with_advice() {
    let (code, out) = run(&["dim", "--preset", "star", "7", "--cap", "4"]);
    assert_eq!(code, 1, "output:\n{out}");
    assert!(out.contains("degree cap 4"), "output:\n{out}");
    assert!(out.contains("--cap"), "output:\n{out}");
}

#[test]
fn tiny_cap_flag_is_a_usage_error() {
    let (code, _) = run(&["dim", "--preset", "A", "3", "--cap", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn malformed_specialization_is_a_usage_error() {
    let (code, out) = run(&["dim", "--preset", "A", "3", "--specialize", "t"]);
    assert_eq!(code, 2, "output:\n{out}");
    assert!(out.contains("NAME=VALUE"));

    let (code, out) = run(&["dim", "--preset", "A", "3", "--specialize", "q=1/2"]);
    assert_eq!(code, 2, "output:\n{out}");
    assert!(out.contains("unknown parameter"));
}

#[test]
fn degenerate_specialization_is_a_domain_error_unless_overridden() {
    let (code, out) = run(&["dim", "--preset", "A", "2", "--specialize", "t=0"]);
    assert_eq!(code, 1, "output:\n{out}");
    assert!(out.contains("--allow-degenerate"), "output:\n{out}");

    let (code, _) = run(&[
        "gb",
        "--preset",
        "A",
        "2",
        "--specialize",
        "t=0",
        "--allow-degenerate",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("tlgrowth"));

    let (code, _) = run(&["--version"]);
    assert_eq!(code, 0);

    let (code, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
}

// ---------------------------------------------------------------------------
// Determinism
// ---------------------------------------------------------------------------

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["gb", "--preset", "tilde-A", "3"],
        vec!["dim", "--preset", "B", "3"],
        vec!["hilbert", "--preset", "A", "3", "--max-degree", "8"],
        vec!["growth", "--preset", "tilde-C", "2"],
        vec!["classify", "--preset", "A", "3", "--cross-check"],
    ] {
        let (code_a, out_a) = run(&args);
        let (code_b, out_b) = run(&args);
        assert_eq!(code_a, 0, "{args:?} failed:\n{out_a}");
        assert_eq!(code_a, code_b);
        assert_eq!(out_a, out_b, "non-deterministic output for {args:?}");
    }
}

// ---------------------------------------------------------------------------
// JSON output
// ---------------------------------------------------------------------------

#[test]
fn gb_json_round_trips_with_schema_and_rules() {
    let (code, out) = run(&["gb", "--preset", "tilde-A", "3", "--json"]);
    assert_eq!(code, 0, "output:\n{out}");
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(v["schema"], "tlgrowth.gb/1");
    assert_eq!(v["status"], "complete");
    assert_eq!(v["rule_count"], 9);
    let rules = v["rules"].as_array().expect("rules array");
    assert_eq!(rules.len(), 9);
    assert!(rules.iter().all(|r| r["lhs"].is_string() && r["rhs"].is_string()));
    assert_eq!(v["config"]["vertices"], 3);
}

#[test]
fn dim_json_carries_the_dimension_as_a_string() {
    let (code, out) = run(&["dim", "--preset", "B", "4", "--json"]);
    assert_eq!(code, 0, "output:\n{out}");
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(v["schema"], "tlgrowth.dim/1");
    assert_eq!(v["dimension"], "83");
    assert_eq!(v["infinite"], false);

    let (_, out) = run(&["dim", "--preset", "tilde-C", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(v["dimension"], serde_json::Value::Null);
    assert_eq!(v["infinite"], true);
}

#[test]
fn hilbert_json_counts_match_the_csv() {
    let (code, out) = run(&["hilbert", "--preset", "A", "3", "--max-degree", "6", "--json"]);
    assert_eq!(code, 0, "output:\n{out}");
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(v["schema"], "tlgrowth.hilbert/1");
    assert_eq!(v["max_degree"], 6);
    let counts: Vec<&str> = v["counts"]
        .as_array()
        .expect("counts array")
        .iter()
        .map(|c| c.as_str().expect("count is a string"))
        .collect();
    assert_eq!(counts, ["1", "3", "5", "4", "1", "0", "0"]);

    let (_, csv) = run(&["hilbert", "--preset", "A", "3", "--max-degree", "6"]);
    let lines = payload(&csv);
    assert_eq!(lines[0], "degree,count");
    assert_eq!(lines[1..], ["0,1", "1,3", "2,5", "3,4", "4,1", "5,0", "6,0"]);
}

#[test]
fn growth_json_names_the_class() {
    let (code, out) = run(&["growth", "--preset", "tilde-A", "4", "--json"]);
    assert_eq!(code, 0, "output:\n{out}");
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(v["schema"], "tlgrowth.growth/1");
    assert_eq!(v["class"]["kind"], "polynomial");
    assert_eq!(v["class"]["degree"], 1);
    assert_eq!(v["basis_status"], "complete");
}

#[test]
fn classify_json_reports_both_views_and_agreement() {
    let (code, out) = run(&["classify", "--preset", "B", "3", "--cross-check", "--json"]);
    assert_eq!(code, 0, "output:\n{out}");
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(v["schema"], "tlgrowth.classify/1");
    assert_eq!(v["computed"]["kind"], "finite-dimensional");
    assert_eq!(v["computed"]["dimension"], "24");
    assert_eq!(v["structural"]["family"], "B3");
    assert_eq!(v["structural"]["expected_dimension"], "24");
    assert_eq!(v["agreement"], "agree");
}

#[test]
fn witness_json_carries_the_certificate() {
    let (code, out) = run(&["witness", "--preset", "fig", "4.1", "--json"]);
    assert_eq!(code, 0, "output:\n{out}");
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(v["schema"], "tlgrowth.witness/1");
    assert_eq!(v["verified"], true);
    assert!(v["certificate"]["window"].is_number());
    assert!(v["certificate"]["checked"].is_number());
}

// ---------------------------------------------------------------------------
// Witness command
// ---------------------------------------------------------------------------

#[test]
fn witness_uses_the_bundled_pair_for_numbered_examples() {
    let (code, out) = run(&["witness", "--preset", "fig", "4.1"]);
    assert_eq!(code, 0, "output:\n{out}");
    let lines = payload(&out);
    assert_eq!(lines.len(), 1);
    assert!(lines[0].starts_with("verified: window "), "output:\n{out}");
}

#[test]
fn witness_accepts_explicit_words() {
    let (code, out) = run(&[
        "witness",
        "--preset",
        "star",
        "6",
        "--q1",
        "2,3,4,2,1,5",
        "--q2",
        "2,3,4,2,1,6",
    ]);
    assert_eq!(code, 0, "output:\n{out}");
    assert!(payload(&out)[0].starts_with("verified:"));
}

#[test]
fn witness_rejects_half_a_pair_and_bad_word_syntax() {
    let (code, out) = run(&["witness", "--preset", "star", "6", "--q1", "1,2"]);
    assert_eq!(code, 2, "output:\n{out}");
    assert!(out.contains("together"));

    let (code, out) = run(&[
        "witness", "--preset", "star", "6", "--q1", "1,x", "--q2", "2,1",
    ]);
    assert_eq!(code, 2, "output:\n{out}");

    let (code, out) = run(&["witness", "--preset", "A", "3"]);
    assert_eq!(code, 2, "output:\n{out}");
    assert!(out.contains("--q1"));
}

#[test]
fn witness_failure_is_a_domain_error() {
    // Two commuting generators in a path diagram never generate a free
    // subalgebra on two letters.
    let (code, out) = run(&[
        "witness", "--preset", "A", "4", "--q1", "1", "--q2", "3",
    ]);
    assert_eq!(code, 1, "output:\n{out}");
    assert!(out.contains("not verified"), "output:\n{out}");
}

// ---------------------------------------------------------------------------
// Growth-graph command
// ---------------------------------------------------------------------------

#[test]
fn growth_graph_prints_the_cycle_structure() {
    let (code, out) = run(&["growth-graph", "--preset", "tilde-A", "3"]);
    assert_eq!(code, 0, "output:\n{out}");
    assert!(out.contains("# vertices: 6"), "output:\n{out}");
    let lines = payload(&out);
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l.contains(" -> ")));
}

#[test]
fn growth_graph_export_writes_the_edge_list() {
    let dir = std::env::temp_dir().join(format!("tlgrowth-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("create temp dir");
    let path = dir.join("edges.txt");
    let path_str = path.to_string_lossy().into_owned();

    let (code, out) = run(&["growth-graph", "--preset", "tilde-A", "3", "--export", &path_str]);
    assert_eq!(code, 0, "output:\n{out}");
    assert!(out.contains("# exported: "), "output:\n{out}");
    assert!(payload(&out).is_empty(), "payload goes to the file:\n{out}");

    let exported = std::fs::read_to_string(&path).expect("exported file");
    assert_eq!(exported.lines().count(), 6);
    std::fs::remove_dir_all(&dir).ok();
}

// ---------------------------------------------------------------------------
// Preset command
// ---------------------------------------------------------------------------

#[test]
fn preset_list_names_every_family() {
    let (code, out) = run(&["preset", "list"]);
    assert_eq!(code, 0);
    for family in ["A n", "B n", "D n", "E n", "F n", "H n", "l2 p", "l3 s", "fig TAG"] {
        assert!(out.contains(family), "missing {family} in:\n{out}");
    }
}

#[test]
fn preset_show_emits_a_loadable_graph_file() {
    let (code, out) = run(&["preset", "show", "E", "7"]);
    assert_eq!(code, 0, "output:\n{out}");
    let body: String = payload(&out).join("\n");
    let v: serde_json::Value = serde_json::from_str(&body).expect("valid JSON");
    assert_eq!(v["version"], 1);
    assert_eq!(v["vertices"], 7);

    // The emitted text round-trips through --graph.
    let dir = std::env::temp_dir().join(format!("tlgrowth-cli-show-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("create temp dir");
    let path = dir.join("e7.json");
    std::fs::write(&path, &body).expect("write graph file");
    let (code, out) = run(&["dim", "--graph", &path.to_string_lossy(), "--cap", "16"]);
    assert_eq!(code, 0, "output:\n{out}");
    assert_eq!(payload(&out), ["2670"]);
    std::fs::remove_dir_all(&dir).ok();
}

// ---------------------------------------------------------------------------
// Sweep command
// ---------------------------------------------------------------------------

#[test]
fn sweep_streams_sorted_csv_with_a_summary() {
    let (code, out) = run(&["sweep", "--max-vertices", "2", "--labels", "3,4,5,6"]);
    assert_eq!(code, 0, "output:\n{out}");
    let lines = payload(&out);
    assert_eq!(
        lines[0],
        "vertices,edges,structural,families,computed,dimension,agreement"
    );
    // One single-vertex diagram plus one two-vertex diagram per label.
    assert_eq!(lines.len(), 6);
    let keys: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).expect("key column"))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted, "rows are sorted by graph key");
    assert!(
        out.contains("# summary: 5 diagrams, 0 disagreements, 0 inconclusive"),
        "output:\n{out}"
    );
}

#[test]
fn sweep_validates_its_arguments() {
    let (code, _) = run(&["sweep", "--max-vertices", "0"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["sweep", "--max-vertices", "7"]);
    assert_eq!(code, 2);
    let (code, out) = run(&["sweep", "--max-vertices", "2", "--labels", "2,3"]);
    assert_eq!(code, 2, "output:\n{out}");
}

// ---------------------------------------------------------------------------
// Specialization
// ---------------------------------------------------------------------------

#[test]
fn specialized_runs_echo_the_assignment_and_agree_on_leading_words() {
    let (code, symbolic) = run(&["gb", "--preset", "B", "3"]);
    assert_eq!(code, 0);
    let (code, special) = run(&["gb", "--preset", "B", "3", "--specialize", "t=1/2"]);
    assert_eq!(code, 0);
    assert!(special.contains("# parameters: t = 1/2"), "output:\n{special}");

    let leading = |text: &str| -> Vec<String> {
        payload(text)
            .iter()
            .map(|l| l.split(" -> ").next().expect("arrow").to_string())
            .collect()
    };
    assert_eq!(leading(&symbolic), leading(&special));
}

// ---------------------------------------------------------------------------
// The installed binary (environment isolation)
// ---------------------------------------------------------------------------

#[test]
fn binary_honors_the_cap_environment_variable() {
    let output = Command::new(env!("CARGO_BIN_EXE_tlgrowth"))
        .args(["dim", "--preset", "A", "3"])
        .env(CAP_ENV_VAR, "9")
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("# cap: 9 (TLGROWTH_DEGREE_CAP)"), "output:\n{text}");

    let output = Command::new(env!("CARGO_BIN_EXE_tlgrowth"))
        .args(["dim", "--preset", "A", "3", "--cap", "8"])
        .env(CAP_ENV_VAR, "9")
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("# cap: 8 (--cap)"), "--cap beats the variable:\n{text}");

    let output = Command::new(env!("CARGO_BIN_EXE_tlgrowth"))
        .args(["dim", "--preset", "A", "3"])
        .env(CAP_ENV_VAR, "abc")
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn binary_prints_payload_on_stdout_and_exits_cleanly() {
    let output = Command::new(env!("CARGO_BIN_EXE_tlgrowth"))
        .args(["dim", "--preset", "B", "4"])
        .env_remove(CAP_ENV_VAR)
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8_lossy(&output.stdout);
    assert_eq!(payload(&text), ["83"]);
}
