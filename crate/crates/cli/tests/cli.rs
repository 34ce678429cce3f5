use std::process::{Command, Output};

fn pgfusion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgfusion"))
        .args(args)
        .env_remove("PGFUSION_CAPS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn build_and_invariants() {
    let o = pgfusion(&["build", "D:4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order 16"));
    let o = pgfusion(&["invariants", "group M { gens x:8, y:2; conj x^y = x^5 }"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("involutions=3"));
}

#[test]
fn aut_reports_odd_orders() {
    let o = pgfusion(&["aut", "suz"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("odd orders [3, 5]"));
}

#[test]
fn classify_prints_one_record() {
    let o = pgfusion(&["classify", "QC:3,3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    assert!(out.contains(r#""kind":"matched""#));
}

#[test]
fn fusion_enumerate_and_check() {
    let o = pgfusion(&["fusion", "enumerate", "wr:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4 saturated fusion systems"));
    let o = pgfusion(&["fusion", "check", "D:4", "--essential", "t, r^4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PGL2(q)"));
    let o = pgfusion(&["fusion", "check", "Cnm:2,2", "--essential", "x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not saturated"));
}

#[test]
fn gl4scan_passes() {
    let o = pgfusion(&["gl4scan"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("elements 20160"));
}

#[test]
fn verify_paper_only_filter_and_caps() {
    let o = pgfusion(&["verify-paper", "--only", "fusion-counts", "--caps", "order=32"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let checks: Vec<&str> = out.lines().filter(|l| l.contains("[1] fusion-counts")).collect();
    assert_eq!(checks.len(), 8);
    assert!(checks.iter().any(|l| l.starts_with("SKIPPED")));
}

#[test]
fn verify_paper_full_run_exits_one_on_the_known_failure() {
    let o = pgfusion(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let failed: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0].contains("control QD:3,3 has none"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pgfusion(&["build", "group G { gens x:6 }"]).status.code(), Some(2));
    assert_eq!(pgfusion(&["build", "Nope:3"]).status.code(), Some(2));
    let inconsistent = "group G { gens x:4, y:2; rel x^y = x^-1 }";
    assert_eq!(pgfusion(&["build", inconsistent]).status.code(), Some(2));
    assert_eq!(pgfusion(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pgfusion(&["build", "D:4", "--caps", "order=lots"]).status.code(), Some(2));
    assert_eq!(pgfusion(&["corpus", "run", "/nonexistent/corpus.txt"]).status.code(), Some(2));
}

#[test]
fn corpus_run_writes_report_and_timing_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.txt");
    std::fs::write(&corpus, "family D:4\nfamily QC:3,2 label \"row\" expect order=32\n").unwrap();
    let report = dir.path().join("out.jsonl");
    let o = pgfusion(&["corpus", "run", corpus.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text, stdout(&o));
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().contains(r#""label":"row""#));
    let timing = std::fs::read_to_string(dir.path().join("out.jsonl.timing")).unwrap();
    assert_eq!(timing.lines().count(), 2);
    assert!(timing.starts_with("0\tD:4\t"));
}

#[test]
fn corpus_run_with_failing_entry_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.txt");
    std::fs::write(&corpus, "family D:4 expect order=8\n").unwrap();
    let o = pgfusion(&["corpus", "run", corpus.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn empty_corpus_is_fine() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("empty.txt");
    std::fs::write(&corpus, "# nothing\n").unwrap();
    let o = pgfusion(&["corpus", "run", corpus.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}
