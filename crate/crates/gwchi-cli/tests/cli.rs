//! End-to-end tests against the compiled binary: documented example
//! outputs, exit-code conventions, JSON stability, round-tripping of
//! rendered elements, and batch mode.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwchi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gwchi"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout_line(output: &Output) -> String {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone())
        .expect("utf-8 output")
        .trim_end()
        .to_string()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn grassmann_chi_example() {
    let out = run(&["grassmann", "chi", "--d", "2", "--r", "4"]);
    assert_eq!(stdout_line(&out), "4⟨1⟩ + 2⟨-1⟩");
}

#[test]
fn trivial_torsion_element_renders_as_zero() {
    let out = run(&["power", "talpha", "--field", "Q", "--alpha", "1"]);
    assert_eq!(stdout_line(&out), "0");
    // fractions canonicalize up to squares: 8/2 = 4 is a square
    let out = run(&["power", "talpha", "--alpha", "8/2"]);
    assert_eq!(stdout_line(&out), "0");
}

#[test]
fn delpezzo_sym3_json_object() {
    let args = [
        "delpezzo", "sym3", "--alpha", "3", "--beta", "5", "--gamma", "7", "--json",
    ];
    let first = stdout_line(&run(&args));
    let parsed: serde_json::Value = serde_json::from_str(&first).expect("valid JSON");
    assert_eq!(parsed["equal"], serde_json::Value::Bool(true));
    assert!(parsed["computed"].as_str().expect("string").contains("⟨"));
    assert!(parsed["printed"].as_str().expect("string").contains("⟨"));
    // byte-identical across runs: no iteration-order leakage
    let second = stdout_line(&run(&args));
    assert_eq!(first, second);
}

#[test]
fn rendered_elements_reparse_to_equal_elements() {
    let product = stdout_line(&run(&["gw", "mul", "⟨1⟩ + ⟨2⟩", "⟨1⟩ + ⟨2⟩"]));
    let verdict = stdout_line(&run(&["gw", "eq", &product, "2⟨1⟩ + 2⟨2⟩"]));
    assert_eq!(verdict, "true");

    // a difference renders with a leading minus sign and still re-parses
    let difference = stdout_line(&run(&["gw", "add", "-⟨2⟩ - ⟨3⟩", "⟨3⟩"]));
    assert_eq!(difference, "-⟨2⟩");
    let verdict = stdout_line(&run(&["gw", "eq", &difference, "-⟨2⟩"]));
    assert_eq!(verdict, "true");

    let square = stdout_line(&run(&["k0", "mul", "Et(3) + A^1", "Et(3) + A^1"]));
    let chi_of_square = stdout_line(&run(&["k0", "chi", &square]));
    let expected = stdout_line(&run(&[
        "gw", "mul", "⟨2⟩ + ⟨6⟩ + ⟨-1⟩", "⟨2⟩ + ⟨6⟩ + ⟨-1⟩",
    ]));
    let verdict = stdout_line(&run(&["gw", "eq", &chi_of_square, &expected]));
    assert_eq!(verdict, "true");
}

#[test]
fn finite_field_equality() {
    let out = run(&[
        "--field", "Fp:7", "gw", "eq", "⟨1⟩ + ⟨1⟩", "⟨3⟩ + ⟨5⟩",
    ]);
    assert_eq!(stdout_line(&out), "true");
    let out = run(&[
        "--field", "Fp:7", "gw", "eq", "⟨1⟩ + ⟨1⟩", "⟨3⟩ + ⟨1⟩",
    ]);
    assert_eq!(stdout_line(&out), "false");
}

#[test]
fn invariants_json_fields() {
    let out = run(&["gw", "invariants", "⟨1⟩ + ⟨-6⟩ + ⟨10⟩", "--json"]);
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout_line(&out)).expect("valid JSON");
    assert_eq!(parsed["rank"], serde_json::json!(3));
    assert_eq!(parsed["signature"], serde_json::json!(1));
    assert_eq!(parsed["disc"], serde_json::json!("-15"));
    let hasse: Vec<&str> = parsed["hasse"]
        .as_array()
        .expect("array")
        .iter()
        .map(|v| v.as_str().expect("string"))
        .collect();
    assert_eq!(hasse, ["inf:1", "2:1", "3:1", "5:1"]);
}

#[test]
fn closed_forms_and_series() {
    let out = run(&[
        "power", "closed", "--shape", "basic", "--m", "3", "--i", "1", "--n", "2",
    ]);
    assert_eq!(stdout_line(&out), "6⟨1⟩");
    // one copy of -H: the inverse series is a degree-2 polynomial
    let out = run(&[
        "power", "closed", "--shape", "hyperbolic", "--m", "-1", "--n", "3",
    ]);
    assert_eq!(stdout_line(&out), "0");
    let out = run(&["zeta", "geom", "--order", "3", "⟨1⟩"]);
    assert_eq!(stdout_line(&out), "1 + t + t^2 + t^3 + O(t^4)");
}

#[test]
fn parse_errors_exit_2_domain_errors_exit_1() {
    let out = run(&["gw", "eq", "⟨1⟩", "garbage"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Parse"));

    let out = run(&["gw", "invariants", "⟨0⟩"]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("ZeroInput"));

    let out = run(&["--field", "Fp:9", "gw", "add", "⟨1⟩", "⟨2⟩"]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("BadPrime"));

    let out = run(&["--field", "nope", "gw", "add", "⟨1⟩", "⟨2⟩"]);
    assert_eq!(exit_code(&out), 2);

    let out = run(&["k0", "sym", "--n", "99", "Et(3)"]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("SizeLimit"));
}

#[test]
fn batch_mode_answers_each_line() {
    let input = concat!(
        r#"{"cmd":"gw eq","args":{"x":"⟨1⟩ + ⟨1⟩","y":"⟨2⟩ + ⟨2⟩"}}"#,
        "\n",
        r#"{"cmd":"grassmann chi","args":{"d":2,"r":4}}"#,
        "\n",
        r#"{"cmd":"power an","args":{"n":2,"q":"⟨1⟩ + ⟨-1⟩","field":"Fp:7"}}"#,
        "\n",
        "this is not json\n",
        r#"{"cmd":"gw invariants","args":{"x":"⟨0⟩"}}"#,
        "\n",
    );
    let out = run_with_stdin(&["--batch"], input);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8(out.stdout).expect("utf-8");
    let lines: Vec<serde_json::Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON response"))
        .collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0]["status"], "ok");
    assert_eq!(lines[0]["result"]["equal"], serde_json::Value::Bool(true));
    assert_eq!(lines[1]["status"], "ok");
    assert_eq!(lines[1]["result"]["value"], "4⟨1⟩ + 2⟨-1⟩");
    assert_eq!(lines[2]["status"], "ok");
    assert_eq!(lines[3]["status"], "error");
    assert_eq!(lines[4]["status"], "error");
    let diag = lines[4]["diagnostics"][0].as_str().expect("string");
    assert!(diag.contains("ZeroInput"), "diagnostic names the error case");
}

#[test]
fn selftest_passes_and_reports() {
    let out = run(&["selftest"]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8(out.stdout).expect("utf-8");
    assert_eq!(stdout.lines().count(), 9);
    for (i, line) in stdout.lines().enumerate() {
        assert!(line.starts_with(&format!("check {}", i + 1)), "{line}");
        assert!(line.ends_with("pass"), "{line}");
    }

    let out = run(&["selftest", "--criteria", "8,9", "--report"]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8(out.stdout).expect("utf-8");
    assert!(stdout.contains("check 8"));
    assert!(stdout.contains("DIFFERS"), "per-instance verdicts present");
    assert!(stdout.contains("equals"));
}

#[test]
fn selftest_json_shape() {
    let out = run(&["selftest", "--criteria", "8", "--json"]);
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout_line(&out)).expect("valid JSON");
    assert_eq!(parsed["all_passed"], serde_json::Value::Bool(true));
    let checks = parsed["checks"].as_array().expect("array");
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["id"], serde_json::json!(8));
    assert_eq!(checks[0]["passed"], serde_json::Value::Bool(true));
}
