use std::path::PathBuf;
use std::process::{Command, Output};

use invgrass_cli::problem::parse_problem;
use invgrass_cli::report::{Report, TaskStatus};
use invgrass_cli::suite::BUILTIN;

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invgrass")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Report, String, i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("report does not parse: {e}\n{text}"));
    (report, text, out.status.code().unwrap())
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), contents).unwrap();
    f
}

#[test]
fn builtin_suite_passes() {
    let (report, _, code) = json(&["verify-paper"]);
    assert_eq!(code, 0);
    assert!(report.results.len() > 20);
    for r in &report.results {
        assert_eq!(r.status, TaskStatus::Ok, "{}: {:?}", r.task, r.error);
    }
}

#[test]
fn builtin_problems_parse_and_round_trip() {
    for (name, src) in BUILTIN {
        let p = parse_problem(src).unwrap_or_else(|e| panic!("{name}: {e}"));
        let again = parse_problem(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(serde_json::to_value(&p).unwrap(), serde_json::to_value(&again).unwrap());
        assert!(p.load().is_ok(), "{name} does not load");
    }
}

#[test]
fn lambda_a_reports_grid_provenance() {
    let path = problem("vlambda2.json");
    let (report, _, code) = json(&["lambda-a", "--problem", path.to_str().unwrap(), "--m", "2"]);
    assert_eq!(code, 0);
    let result = report.results[0].result.as_ref().unwrap();
    assert_eq!(result["dim"], 4);
    assert_eq!(result["provenance"]["kind"], "exact_chart_grid");
}

#[test]
fn check_invariant_of_mprime() {
    let path = problem("vlambda2.json");
    let (report, _, code) = json(&["check-invariant", "--problem", path.to_str().unwrap(), "--subspace", "Mprime"]);
    assert_eq!(code, 0);
    assert_eq!(report.results[0].result.as_ref().unwrap()["invariant"], true);
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let path = problem("vlambda2.json");
    let p = path.to_str().unwrap();
    for args in [
        vec!["check-h", "--problem", p, "--subspace", "Mprime", "--route", "sampled", "--seed", "7"],
        vec!["lambda-a", "--problem", p, "--m", "2", "--route", "sampled"],
        vec!["verify-paper"],
    ] {
        let (report, first, _) = json(&args);
        let (_, second, _) = json(&args);
        assert_eq!(first, second, "{args:?} is not deterministic");
        assert_eq!(format!("{}\n", report.to_json()), first, "{args:?} does not round-trip");
    }
}

#[test]
fn text_and_json_agree() {
    let path = problem("vlambda2.json");
    let args = ["tangent", "--problem", path.to_str().unwrap(), "--subspace", "E12"];
    let (report, _, _) = json(&args);
    let text = String::from_utf8(run(&args).stdout).unwrap();
    assert_eq!(text, report.to_text());
}

#[test]
fn sampled_negative_exits_3() {
    let path = problem("vlambda2.json");
    let (report, _, code) = json(&["check-generated", "--problem", path.to_str().unwrap(), "--subspace", "Mprime", "--route", "sampled"]);
    assert_eq!(code, 3);
    assert_eq!(report.results[0].status, TaskStatus::SampledNegative);
    assert_eq!(report.results[0].result.as_ref().unwrap()["possible_false_negative"], true);
}

#[test]
fn invalid_phi_exits_2() {
    let f = write_temp(
        r#"{"schema": 1, "field": {"levels": [["r", "r^3 - 2"]]}, "two_sided": true,
            "phi": [[["0", "1"], ["1", "0"]]]}"#,
    );
    let (report, _, code) = json(&["classify", "--problem", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(report.results[0].status, TaskStatus::Invalid);
}

#[test]
fn failed_expectation_exits_2() {
    let f = write_temp(
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": [[["1", "0"], ["0", "1"]]],
            "tasks": [{"command": "oracle-ff", "m": 1, "expect": {"total": 4}}]}"#,
    );
    let (report, _, code) = json(&["verify-paper", "--problem", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(report.results[0].status, TaskStatus::ExpectationFailed);
    assert!(report.results[0].error.as_ref().unwrap().contains("total"));
}

#[test]
fn malformed_input_exits_4() {
    let f = write_temp(r#"{"schema": 1, "field": {"levels": [["r", "r^3 - 2"]]}, "algebra": [[["0", "r"], ["1", "r +"]]]}"#);
    let (report, _, code) = json(&["check-invariant", "--problem", f.path().to_str().unwrap(), "--subspace", "M"]);
    assert_eq!(code, 4);
    assert!(report.results[0].error.as_ref().unwrap().contains("algebra[0][1][1]"));

    let f = write_temp(r#"{"schema": 1, "field": {"levels": [["r", "r^3 - 2"]]}, "algebra": [[["1"]]], "subspaces": {"M": {"basis": 3}}}"#);
    let (report, _, code) = json(&["check-invariant", "--problem", f.path().to_str().unwrap(), "--subspace", "M"]);
    assert_eq!(code, 4);
    assert!(report.results[0].error.as_ref().unwrap().contains("subspaces.M.basis"), "{:?}", report.results[0].error);

    let (_, _, code) = json(&["check-invariant", "--subspace", "M"]);
    assert_eq!(code, 4);
    assert_eq!(run(&["no-such-command"]).status.code(), Some(4));
}

#[test]
fn separate_and_charts() {
    let path = problem("vlambda2.json");
    let p = path.to_str().unwrap();
    let (report, _, code) = json(&["separate", "--problem", p, "--embeddings", "lambda,lambda2", "--multiset", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(report.results[0].result.as_ref().unwrap()["separates"], true);
    let (report, _, _) = json(&["charts", "--problem", p]);
    assert_eq!(report.results[0].result.as_ref().unwrap()["parameters_per_chart"], 2);
    let (report, _, _) = json(&["charts", "--problem", p, "--subspace", "E34"]);
    assert_eq!(report.results[0].result.as_ref().unwrap()["chart"], 2);
}

#[test]
fn timings_only_on_request() {
    let (report, _, _) = json(&["verify-paper"]);
    assert!(report.results.iter().all(|r| r.elapsed_us.is_none()));
    let (report, _, _) = json(&["verify-paper", "--timings"]);
    assert!(report.results.iter().all(|r| r.elapsed_us.is_some()));
}
