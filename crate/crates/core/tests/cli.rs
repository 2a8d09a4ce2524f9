use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn instance(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../instances");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run_with_stdin(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_colorsg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut input = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            input.write_all(text.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with_stdin(args, None)
}

/// Runs with `--json`, checks the command echo and returns the parsed report.
fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let r = run(&full);
    let v: Value = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout));
    assert_eq!(v["command"], args[0]);
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
    (r.code, v)
}

#[test]
fn solve_lists_and_labels_the_intro_solutions() {
    let r = run(&["solve", &instance("intro.json")]);
    assert_eq!(r.code, 0);
    for line in [
        "(6,1,0,0,0,0)  monochromatic",
        "(3,1,0,1,0,1)  chromatic, not colorful",
        "(0,1,0,2,0,2)  chromatic, colorful",
        "(0,0,2,0,4,0)  2-chromatic, not chromatic, colorful",
    ] {
        assert!(r.stdout.contains(line), "missing {line:?} in\n{}", r.stdout);
    }
    let (_, v) = run_json(&["solve", &instance("intro.json")]);
    let t = &v["targets"][0];
    assert_eq!(t["target"], serde_json::json!([70]));
    assert_eq!(t["count"].as_u64().unwrap() as usize, t["solutions"].as_array().unwrap().len());
    assert!(r.stdout.starts_with(&format!("b = (70): {} solution(s)", t["count"])));
}

#[test]
fn solve_respects_the_limit() {
    let (code, v) = run_json(&["solve", &instance("intro.json"), "--limit", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["targets"][0]["solutions"].as_array().unwrap().len(), 2);
    assert_eq!(v["targets"][0]["truncated"], true);
}

#[test]
fn classify_reports_colors_used() {
    let r = run(&["classify", &instance("intro.json"), "--solution", "3,1,0,1,0,1"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("colors used: 3 of 3 [red, green, blue]"));
    assert!(r.stdout.contains("chromatic, not colorful"));
    let (_, v) = run_json(&["classify", &instance("intro.json"), "--solution", "3,1,0,1,0,1"]);
    assert_eq!(v["b"], serde_json::json!([70]));
    assert_eq!(v["chromatic"], true);
    assert_eq!(v["colorful"], false);
    assert_eq!(v["chromatic_level"], 3);
}

#[test]
fn classify_rejects_a_wrong_length_solution() {
    let r = run(&["classify", &instance("intro.json"), "--solution", "1,2"]);
    assert_eq!(r.code, 2);
    assert!(!r.stderr.is_empty());
}

#[test]
fn member_exit_codes() {
    let r = run(&["member", &instance("three_five.json"), "--target", "15", "--k", "2"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("(15): not a member"));
    let r = run(&["member", &instance("three_five.json"), "--target", "16", "--k", "2"]);
    assert_eq!(r.code, 0);
    let r = run(&["member", &instance("three_five.json"), "--target", "7"]);
    assert_eq!(r.code, 1);
    let (code, v) = run_json(&["member", &instance("three_blocks.json"), "--k", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"][0]["member"], false);
    let (code, v) = run_json(&["member", &instance("three_blocks.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["member"], true);
}

#[test]
fn intersect_numerical_and_planar() {
    let doc = r#"{"dimension": 1, "colors": [{"name": "a", "generators": [[2]]}, {"name": "b", "generators": [[3]]}]}"#;
    let r = run_with_stdin(&["--json", "intersect", "-"], Some(doc));
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["generators"], serde_json::json!([[6]]));
    let doc = r#"{"dimension": 2, "colors": [{"name": "a", "generators": [[1, 0], [1, 2]]}, {"name": "b", "generators": [[1, 1]]}]}"#;
    let r = run_with_stdin(&["intersect", "-"], Some(doc));
    assert_eq!(r.stdout, "1 minimal generator(s): (2,2)\n");
}

#[test]
fn intersect_reports_the_three_block_generators() {
    let (code, v) = run_json(&["intersect", &instance("three_blocks.json")]);
    assert_eq!(code, 0);
    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 9);
    assert!(gens.contains(&serde_json::json!([3, 95, 98])));
}

#[test]
fn hilbert_basis_of_a_balance_equation() {
    let doc =
        r#"{"dimension": 1, "colors": [{"name": "a", "generators": [[1], [2]]}, {"name": "b", "generators": [[-3]]}]}"#;
    let r = run_with_stdin(&["--json", "hilbert", "-"], Some(doc));
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let mut basis: Vec<Vec<i64>> = serde_json::from_value(v["basis"].clone()).unwrap();
    basis.sort();
    assert_eq!(basis, vec![vec![0, 3, 2], vec![1, 1, 1], vec![3, 0, 1]]);
}

#[test]
fn helly_audit_sharpness_examples() {
    for (ex, n, members) in [("a", "3", 3), ("b", "2", 3), ("c", "2", 4)] {
        let (code, v) = run_json(&["helly-audit", "--example", ex, "--n", n]);
        assert_eq!(code, 0);
        assert_eq!(v["members"], members);
        assert_eq!(v["premise_below"]["holds"], true);
        assert_eq!(v["conclusion_holds"], false);
        assert_eq!(v["anomaly"], false);
        assert_eq!(v["seed"], 0);
    }
    let r = run(&["helly-audit", "--example", "b", "--n", "2"]);
    assert!(r.stdout.contains("N = 3"));
    assert!(r.stdout.contains("premise at 2: holds"));
    assert!(r.stdout.contains("full intersection: trivial"));
}

#[test]
fn helly_audit_on_an_instance() {
    let (code, v) =
        run_json(&["helly-audit", &instance("three_blocks.json"), "--case", "pointed-noncover", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["conclusion_holds"], true);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["cover"]["cover"], "not-covered");
    let r = run(&["helly-audit"]);
    assert_eq!(r.code, 2);
    let r = run(&["helly-audit", &instance("three_five.json"), "--case", "sideways"]);
    assert_eq!(r.code, 2);
}

#[test]
fn tverberg_partition_and_unmet_hypothesis() {
    let (code, v) = run_json(&["tverberg", &instance("plane_triple.json"), "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["point"], serde_json::json!([2, 2]));
    assert_eq!(v["hypothesis_met"], true);
    let doc = r#"{"dimension": 2, "colors": [{"name": "a", "generators": [[1, 0], [0, 1]]}]}"#;
    let r = run_with_stdin(&["tverberg", "-", "--r", "2"], Some(doc));
    assert_eq!(r.code, 1);
}

#[test]
fn caratheodory_finds_the_three_block_exception() {
    let (code, v) = run_json(&["caratheodory", &instance("three_blocks.json")]);
    assert_eq!(code, 0);
    let bs: Vec<Value> = v["exceptions"].as_array().unwrap().iter().map(|e| e["b"].clone()).collect();
    assert!(bs.contains(&serde_json::json!([3, 95, 98])));
    let r = run(&["caratheodory", &instance("three_five.json")]);
    assert!(r.stdout.contains("1 exception(s)"));
    assert!(r.stdout.contains("(15)  monochromatic: (5,0) (0,3)"));
}

#[test]
fn numerical_commands_agree_between_text_and_json() {
    let r = run(&["frobenius", &instance("three_five.json")]);
    assert_eq!(r.stdout, "F = 7\n");
    let (_, v) = run_json(&["frobenius", &instance("three_five_seven.json")]);
    assert_eq!(v["frobenius"], 4);

    let r = run(&["chromatic-frobenius", &instance("three_five.json"), "--k", "2"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("CF_2 = 15\nbounds: [7, 15]\n"));
    let (_, v) = run_json(&["chromatic-frobenius", &instance("three_five.json"), "--k", "2"]);
    assert_eq!((v["value"].as_i64(), v["lower"].as_i64(), v["upper"].as_i64()), (Some(15), Some(7), Some(15)));
    assert_eq!(v["bounds_hold"], true);

    let (_, v) = run_json(&["gaps", &instance("three_five.json")]);
    assert_eq!(v["gaps"], serde_json::json!([1, 2, 4, 7]));
    let (_, v) = run_json(&["gaps", &instance("three_five.json"), "--k", "2"]);
    assert_eq!(v["gaps"].as_array().unwrap().last().unwrap(), 15);

    let r = run(&["count", &instance("three_five.json"), "--k", "2"]);
    assert_eq!(r.stdout, "f_2(8) = 1\nf_2(23) = 2\nf_2(38) = 3\nf_2(53) = 4\n");
    let (_, v) = run_json(&["count", &instance("three_five.json"), "--k", "2"]);
    let counts: Vec<u64> = v["counts"].as_array().unwrap().iter().map(|c| c["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![1, 2, 3, 4]);
}

#[test]
fn numerical_commands_reject_planar_input() {
    for cmd in ["frobenius", "gaps"] {
        let r = run(&[cmd, &instance("plane_triple.json")]);
        assert_eq!(r.code, 2, "{cmd}");
    }
    let r = run(&["--json", "frobenius", &instance("plane_triple.json")]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["exit_code"], 2);
    assert!(v["error"].is_string());
}

#[test]
fn quasipoly_constituents_are_exact() {
    let (code, v) = run_json(&["quasipoly", &instance("three_five.json"), "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["period"], 15);
    assert_eq!(v["constituents"][8], serde_json::json!(["7/15", "1/15"]));
    assert_eq!(v["validated"], 30);
    let r = run(&["quasipoly", &instance("three_five.json"), "--k", "2"]);
    assert!(r.stdout.contains("b = 8 mod 15: (7/15)*b^0 + (1/15)*b^1"));
}

#[test]
fn cteg_table_and_verification() {
    let r = run(&["cteg", "--n", "2", "--verify"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "p = (3,5,8)\n\
         S_1: g = (0,1,2)  g' = (1,3,5)  g'' = (2,1,1)\n\
         S_2: g = (0,3,4)  g' = (1,5,7)  g'' = (2,-3,-3)\n\
         2 representations, all monochromatic\n"
    );
    let (_, v) = run_json(&["cteg", "--n", "4", "--verify"]);
    assert_eq!(v["verification"]["representations"].as_array().unwrap().len(), 4);
    assert_eq!(v["p"], serde_json::json!([3, 11, 14]));
}

#[test]
fn reduce_both_modes() {
    let r = run(&["reduce", &instance("three_five_seven.json"), "--k", "1", "--mode", "a"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("b = 11\n"));
    assert!(r.stdout.contains("CF_2 predicted 19, computed 19: match"));
    let (code, v) =
        run_json(&["reduce", &instance("three_five.json"), "--k", "2", "--mode", "b", "--b-choice", "explicit"]);
    assert_eq!(code, 0);
    assert_eq!(v["matches"], true);
    assert_eq!(v["mode"], "append");
    assert_eq!(v["predicted"], v["computed"]);
    let r = run(&["reduce", &instance("three_five.json"), "--k", "2", "--mode", "a"]);
    assert_eq!(r.code, 2);
    let r = run(&["reduce", &instance("three_five.json"), "--k", "1", "--mode", "z"]);
    assert_eq!(r.code, 2);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(run(&["bogus"]).code, 2);
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["frobenius", "/nonexistent/instance.json"]).code, 2);
    let r = run_with_stdin(&["frobenius", "-"], Some("{\"dimension\": 1,\n \"colors\": [}"));
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
    let r = run_with_stdin(
        &["frobenius", "-"],
        Some(r#"{"dimension": 1, "colors": [{"name": "a", "generators": [[4], [6]]}]}"#),
    );
    assert_eq!(r.code, 2);
}
