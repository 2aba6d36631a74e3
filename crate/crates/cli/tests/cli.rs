use std::io::Write;
use std::process::{Command, Output, Stdio};

fn cqe(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cqe"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn example_config() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# running example\n[kb]\na\nc\n[ak]\n[sec]\nc").unwrap();
    f
}

#[test]
fn run_inline_queries_reports_properties() {
    let cfg = example_config();
    let out = cqe(
        &[
            "run",
            cfg.path().to_str().unwrap(),
            "--censor",
            "truthful-min",
            "--queries",
            "a; b; c",
        ],
        "",
    );
    let text = stdout(&out);
    let answers: Vec<&str> = text
        .lines()
        .take(3)
        .map(|l| l.rsplit(' ').next().unwrap())
        .collect();
    assert_eq!(answers, ["t", "u", "r"], "{text}");
    assert!(text.contains("property=effective verdict=holds witness=-"));
    assert!(text.contains("property=repudiating verdict=violated"));
    // repudiation fails, so the run is a property violation
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn run_query_file() {
    let cfg = example_config();
    let mut queries = tempfile::NamedTempFile::new().unwrap();
    writeln!(queries, "a\n# comment\nb").unwrap();
    let out = cqe(
        &[
            "run",
            cfg.path().to_str().unwrap(),
            "--censor",
            "lying",
            "--queries",
            queries.path().to_str().unwrap(),
        ],
        "",
    );
    let text = stdout(&out);
    assert_eq!(
        text.lines().filter(|l| l.starts_with("  ")).count(),
        2,
        "{text}"
    );
}

#[test]
fn input_errors_exit_2() {
    let cfg = example_config();
    let path = cfg.path().to_str().unwrap();
    assert_eq!(
        cqe(&["run", path, "--censor", "nope", "--queries", "a"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cqe(&["run", path, "--queries", "a &"], "").status.code(),
        Some(2)
    );
    assert_eq!(
        cqe(&["check", "/nonexistent.cfg"], "").status.code(),
        Some(2)
    );
    assert_eq!(cqe(&["demo", "nogo3"], "").status.code(), Some(2));
    assert_eq!(
        cqe(&["fuzz", "--instances", "0"], "").status.code(),
        Some(2)
    );
}

#[test]
fn repl_answers_and_quits() {
    let cfg = example_config();
    let out = cqe(
        &[
            "repl",
            cfg.path().to_str().unwrap(),
            "--censor",
            "truthful-min",
            "--unicode",
        ],
        "a\nb\n:content\n:quit\n",
    );
    let text = stdout(&out);
    assert!(text.contains("cqe> t"), "{text}");
    assert!(text.contains("cqe> u"), "{text}");
    assert!(text.contains("¬□b"), "{text}");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unicode_transcript() {
    let cfg = example_config();
    let out = cqe(
        &[
            "--unicode",
            "run",
            cfg.path().to_str().unwrap(),
            "--queries",
            "a -> c",
        ],
        "",
    );
    assert!(stdout(&out).contains("a → c"), "{}", stdout(&out));
}
