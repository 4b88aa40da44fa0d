use std::io::Write;
use std::process::{Command, Output, Stdio};

fn nzflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nzflow"))
        .args(args)
        .env_remove("NZFLOW_TIMEOUT_SECS")
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nzflow"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn petersen_is_negative_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("p.json");
    let out = nzflow(&["flow", "search", "petersen", "--certificate", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    let text = std::fs::read_to_string(&cert).unwrap();
    let parsed = nzflow::certificate::Certificate::from_json(&text).unwrap();
    assert_eq!(parsed.payload.kind(), "no-flow-for-any-matching");
}

#[test]
fn positive_search_writes_a_valid_certificate_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("k33.json");
    let dot = dir.path().join("k33.dot");
    let out = nzflow(&[
        "flow",
        "search",
        "k33",
        "--certificate",
        cert.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let parsed = nzflow::certificate::Certificate::from_json(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(parsed.payload.kind(), "flow-found");
    let drawing = std::fs::read_to_string(&dot).unwrap();
    assert!(drawing.starts_with("graph"));
    assert_eq!(drawing.matches(" -- ").count(), 9);
}

#[test]
fn chi_n_of_the_bridged_graph_is_seven() {
    let out = nzflow(&["chi-n", "fig3", "--max", "7"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("chi_N = 7"));
    let out = nzflow(&["chi-n", "fig3", "--max", "6"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn generated_family_member_piped_into_search() {
    let gen = nzflow(&["gen", "counterexample", "--l", "1"]);
    assert_eq!(code(&gen), 0);
    let line = stdout(&gen);
    assert_eq!(line.lines().count(), 1);
    let out = with_stdin(&["flow", "search", "-"], line.as_bytes());
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("matchings searched: 96"));
}

#[test]
fn graph_arguments_in_every_form() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k4.g6");
    std::fs::write(&file, "# a comment\nC~\n").unwrap();
    for arg in ["k4", "C~", file.to_str().unwrap()] {
        assert_eq!(code(&nzflow(&["chi-n", arg])), 0, "{arg}");
    }
    assert_eq!(code(&nzflow(&["flow", "search", "prism:n=5"])), 0);
    let json = nzflow(&["gen", "petersen", "--format", "json"]);
    let out = with_stdin(&["chi-n", "-"], &json.stdout);
    assert!(stdout(&out).starts_with("chi_N = 5"));
}

#[test]
fn constructions() {
    let out = nzflow(&["flow", "search", "ring:k=3", "--construct", "clawfree", "--matching", "edge=2"]);
    assert_eq!(code(&out), 0);
    let out = nzflow(&["flow", "search", "petersen", "--construct", "twocycle"]);
    assert_eq!(code(&out), 1);
    let out = nzflow(&["flow", "search", "prism:n=4", "--matching", "0"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn hcolor_and_thomassen() {
    let out = nzflow(&["hcolor", "k33", "k4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&nzflow(&["hcolor", "petersen", "k4"])), 1);
    let out = nzflow(&["thomassen", "complete:n=6"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("first:"));
}

#[test]
fn normal_verify_reads_a_colouring() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"k": 3, "colors": [1, 2, 3, 3, 2, 1]}"#).unwrap();
    assert_eq!(code(&nzflow(&["normal", "verify", "k4", good.to_str().unwrap()])), 0);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"k": 3, "colors": [1, 1, 3, 3, 2, 1]}"#).unwrap();
    assert_ne!(code(&nzflow(&["normal", "verify", "k4", bad.to_str().unwrap()])), 0);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&nzflow(&["flow", "search", "k4", "--no-such-flag"])), 2);
    assert_eq!(code(&nzflow(&["flow", "search", "not-a-graph!!"])), 2);
    assert_eq!(code(&nzflow(&["chi-n", "/definitely/missing/file"])), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_nzflow"))
        .args(["chi-n", "k4"])
        .env("NZFLOW_TIMEOUT_SECS", "soon")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn zero_timeout_exits_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_nzflow"))
        .args(["chi-n", "fig3"])
        .env("NZFLOW_TIMEOUT_SECS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn batch_report_is_deterministic_and_keeps_bad_lines() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.txt");
    let lines: Vec<String> = ["k4", "k33", "petersen", "prism:n=5"]
        .iter()
        .map(|g| stdout(&nzflow(&["gen", g.split(':').next().unwrap(), "--n", "5"])).trim().to_string())
        .collect();
    std::fs::write(&corpus, format!("{}\n# comment\nnonsense\n", lines.join("\n"))).unwrap();
    let mut reports = Vec::new();
    for jobs in ["1", "8"] {
        let report = dir.path().join(format!("r{jobs}.json"));
        let out = nzflow(&[
            "batch",
            corpus.to_str().unwrap(),
            "--mode",
            "nonconflicting",
            "--jobs",
            jobs,
            "--report",
            report.to_str().unwrap(),
        ]);
        assert!(code(&out) <= 1, "{}", String::from_utf8_lossy(&out.stderr));
        reports.push(std::fs::read_to_string(report).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let parsed: serde_json::Value = serde_json::from_str(&reports[0]).unwrap();
    let rows = parsed["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4]["verdict"], "error");
    assert_eq!(rows[4]["id"], 6);
    assert_eq!(parsed["summary"]["findings"], 1);
}

#[test]
fn unknown_batch_mode_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.txt");
    std::fs::write(&corpus, "C~\n").unwrap();
    assert_eq!(code(&nzflow(&["batch", corpus.to_str().unwrap(), "--mode", "fastest"])), 2);
}
