use pgfusion::corpus::{parse, parse_lenient, BUNDLED};
use pgfusion::records::{render_records, render_timing, run_corpus, run_corpus_text, ResultRecord, RunOptions, Verdict};
use pgfusion::{Caps, Error};

fn run(text: &str) -> Vec<ResultRecord> {
    run_corpus_text(text, &Caps::default(), RunOptions::default())
        .into_iter()
        .map(|(r, _)| r)
        .collect()
}

#[test]
fn bundled_corpus_is_all_successes() {
    let recs = run(BUNDLED);
    assert_eq!(recs.len(), parse(BUNDLED).unwrap().len());
    let bad: Vec<_> = recs.iter().filter(|r| !r.is_success()).map(|r| (&r.label, &r.verdict)).collect();
    assert!(bad.is_empty(), "{bad:?}");
    for (i, r) in recs.iter().enumerate() {
        assert_eq!(r.index, i);
    }
}

#[test]
fn output_is_deterministic_and_free_of_timings() {
    let caps = Caps::default();
    let a = run_corpus_text(BUNDLED, &caps, RunOptions::default());
    let b = run_corpus_text(BUNDLED, &caps, RunOptions::default());
    assert_eq!(render_records(&a), render_records(&b));
    let line = render_records(&a).lines().next().unwrap().to_string();
    assert!(!line.contains("millis") && !line.contains("elapsed"));
    assert_eq!(render_timing(&a).lines().count(), a.len());
}

#[test]
fn table_rows_of_order_16_and_32_match() {
    let text = "family Cnm:2,2\nfamily QC:3,1\nfamily QC:3,2\nfamily QCstar:3,2\nfamily QDstar:3,3\n";
    let recs = run(text);
    assert_eq!(recs.len(), 5);
    for (r, want) in recs.iter().zip(["Cnm:2,2", "QC:3,1", "QC:3,2", "QCstar:3,2", "QDstar:3,3"]) {
        match &r.verdict {
            Verdict::Matched { family, .. } => assert_eq!(family, want),
            v => panic!("{}: {v:?}", r.label),
        }
    }
}

#[test]
fn worked_entries() {
    let recs = run(concat!(
        "group Q8xC8 { gens a:4, b:2, c:8; pow b: a^2; conj a^b = a^-1 }\n",
        "family D:5\n",
        "family suz\n",
    ));
    match &recs[0].verdict {
        Verdict::Matched { family, odd_orders, witness } => {
            assert_eq!((family.as_str(), odd_orders.as_slice()), ("QC:3,3", &[3][..]));
            assert!(!witness.is_empty());
        }
        v => panic!("{v:?}"),
    }
    assert!(matches!(recs[1].verdict, Verdict::NoOddAutomorphism { .. }));
    assert!(recs[1].aut.as_ref().unwrap().odd_orders.is_empty());
    match &recs[2].verdict {
        Verdict::Matched { family, odd_orders, .. } => {
            assert_eq!((family.as_str(), odd_orders.as_slice()), ("suz", &[3, 5][..]));
        }
        v => panic!("{v:?}"),
    }
    let aut = recs[2].aut.as_ref().unwrap();
    assert_eq!(aut.witnesses.iter().map(|w| w.0).collect::<Vec<_>>(), [3, 5]);
}

#[test]
fn records_round_trip_through_json() {
    for r in run(BUNDLED) {
        let line = r.to_json();
        assert!(!line.contains('\n'));
        assert_eq!(ResultRecord::from_json(&line).unwrap(), r);
    }
    let r = &run("family D:5\n")[0];
    assert!(r.to_json().contains(r#""kind":"no-odd-automorphism""#));
}

#[test]
fn broken_entries_become_error_records_without_stopping_the_run() {
    let text = "family D:4\ngroup Bad { gens x:6 }\nfamily Nope:3\nfamily Q:4\n";
    assert_eq!(parse_lenient(text).len(), 4);
    let recs = run(text);
    assert_eq!(recs.len(), 4);
    assert!(recs[0].is_success() && recs[3].is_success());
    assert!(matches!(recs[1].verdict, Verdict::Error { .. }));
    assert!(matches!(recs[2].verdict, Verdict::Error { .. }));
}

#[test]
fn unmet_expectations_are_reported() {
    let r = &run("family D:4 expect order=32, involutions=9\n")[0];
    assert_eq!(r.expectation_mismatches, [("order".to_string(), 32, 16)]);
    assert!(!r.is_success());
}

#[test]
fn fusion_summaries_on_request() {
    let recs = run_corpus_text("family D:4\nfamily X:7\n", &Caps::default(), RunOptions { fusion: true });
    assert_eq!(recs[0].0.fusion.as_ref().map(Vec::len), Some(3));
    // beyond the fusion cap the summary is left out
    assert!(recs[1].0.fusion.is_none());
}

#[test]
fn empty_corpus_and_missing_file() {
    assert!(run("# nothing here\n\n").is_empty());
    let err = run_corpus(std::path::Path::new("/nonexistent/corpus.txt"), &Caps::default(), RunOptions::default());
    assert!(matches!(err, Err(Error::Io(_))));
}
