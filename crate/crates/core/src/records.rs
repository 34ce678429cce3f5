//! Classification of corpus entries into line-delimited JSON records.

use crate::autos::{find_odd_automorphism, is_isomorphic, AutReport, PrimeVerdict};
use crate::caps::Caps;
use crate::corpus::{parse_lenient, CorpusEntry};
use crate::error::{Error, Result};
use crate::families::{build, catalogue, expected_fingerprint};
use crate::fusion::{enumerate_saturated, summarize, FusionSummary};
use crate::group::Group;
use crate::invariants::fingerprint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::time::Instant;

pub const ENGINE_VERSION: &str = concat!("pgfusion ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutSummary {
    pub aut_order: Option<u64>,
    pub odd_orders: Vec<u32>,
    pub undecided: Vec<u32>,
    /// `(q, images)` for each order `q` found.
    pub witnesses: Vec<(u32, String)>,
    pub transitive_on_maximals: Option<bool>,
}

impl AutSummary {
    pub fn of(r: &AutReport) -> Self {
        AutSummary {
            aut_order: r.aut_order,
            odd_orders: r.odd_orders(),
            undecided: r.undecided(),
            witnesses: r
                .primes
                .iter()
                .filter_map(|(q, v)| match v {
                    PrimeVerdict::Found(w) => Some((*q, w.to_string())),
                    _ => None,
                })
                .collect(),
            transitive_on_maximals: r.transitive_on_maximals,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    /// Isomorphic to a listed family member; `witness` maps the entry's
    /// generators into the family group.
    Matched {
        family: String,
        odd_orders: Vec<u32>,
        witness: String,
    },
    /// No odd-order automorphism, and no listed group of this order is
    /// isomorphic to the entry (`compared` candidates checked).
    NoOddAutomorphism { compared: usize },
    NotApplicable { reason: String },
    Undecided { budget: u64, reason: String },
    /// Odd-order automorphisms present but no listed group matches, or the
    /// entry matches a listed group with different odd orders.
    Contradiction { detail: String },
    Error { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub index: usize,
    pub label: String,
    pub entry: Option<String>,
    pub fingerprint: Option<String>,
    pub aut: Option<AutSummary>,
    pub verdict: Verdict,
    /// `(field, expected, actual)` for annotations that disagree.
    pub expectation_mismatches: Vec<(String, u64, u64)>,
    pub fusion: Option<Vec<FusionSummary>>,
    pub engine: String,
    pub caps: Caps,
}

impl ResultRecord {
    fn bare(index: usize, label: String, caps: &Caps, verdict: Verdict) -> Self {
        ResultRecord {
            index,
            label,
            entry: None,
            fingerprint: None,
            aut: None,
            verdict,
            expectation_mismatches: Vec::new(),
            fusion: None,
            engine: ENGINE_VERSION.into(),
            caps: *caps,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_json(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Semantic(format!("bad record: {e}")))
    }

    /// Whether the record confirms its entry: a match or a consistent
    /// absence, with all annotations met.
    pub fn is_success(&self) -> bool {
        self.expectation_mismatches.is_empty()
            && matches!(
                self.verdict,
                Verdict::Matched { .. } | Verdict::NoOddAutomorphism { .. } | Verdict::NotApplicable { .. }
            )
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Also enumerate saturated fusion systems when the order allows.
    pub fusion: bool,
}

fn undecided(e: &Error, caps: &Caps) -> Option<Verdict> {
    match e {
        Error::CapExceeded { .. } | Error::UnsupportedOrder { .. } => Some(Verdict::Undecided {
            budget: caps.budget,
            reason: e.to_string(),
        }),
        Error::BudgetExhausted { budget } => Some(Verdict::Undecided {
            budget: *budget,
            reason: e.to_string(),
        }),
        _ => None,
    }
}

/// Groups on the odd-automorphism lists of the given order.
fn listed(order: usize, caps: &Caps) -> Vec<(String, Vec<u32>, Group)> {
    let Some(log) = order.checked_ilog2().filter(|&k| 1usize << k == order) else {
        return Vec::new();
    };
    catalogue(log)
        .into_iter()
        .filter(|s| s.order() == order as u64)
        .filter_map(|s| {
            let odd = expected_fingerprint(&s).ok()?.odd_orders;
            if odd.is_empty() {
                return None;
            }
            Some((s.to_string(), odd, build(&s, caps.order).ok()?))
        })
        .collect()
}

/// Classifies one entry by its odd-order automorphisms.
pub fn classify_entry(index: usize, e: &CorpusEntry, caps: &Caps, opts: RunOptions) -> ResultRecord {
    let mut rec = ResultRecord::bare(index, e.name(), caps, Verdict::NotApplicable { reason: String::new() });
    rec.entry = Some(e.to_string());
    let g = match e.build(caps.order) {
        Ok(g) => g,
        Err(err) => {
            rec.verdict = undecided(&err, caps).unwrap_or(Verdict::Error {
                message: err.to_string(),
            });
            return rec;
        }
    };
    let fp = fingerprint(&g);
    rec.fingerprint = Some(fp.to_string());
    rec.expectation_mismatches = e.mismatches(&fp);
    if opts.fusion && g.order() > 1 && g.order() <= caps.fusion {
        rec.fusion = enumerate_saturated(&g, caps)
            .ok()
            .map(|fs| fs.iter().map(|f| summarize(f, caps)).collect());
    }
    rec.verdict = match verdict(&g, caps, &mut rec) {
        Ok(v) => v,
        Err(err) => undecided(&err, caps).unwrap_or(Verdict::Error {
            message: err.to_string(),
        }),
    };
    rec
}

fn verdict(g: &Group, caps: &Caps, rec: &mut ResultRecord) -> Result<Verdict> {
    if g.prime() != Some(2) {
        return Ok(Verdict::NotApplicable {
            reason: "not a nontrivial 2-group".into(),
        });
    }
    let fp = fingerprint(g);
    if fp.p_rank != 2 {
        return Ok(Verdict::NotApplicable {
            reason: format!("2-rank {}", fp.p_rank),
        });
    }
    let report = find_odd_automorphism(g, caps)?;
    let aut = AutSummary::of(&report);
    rec.aut = Some(aut.clone());
    if !aut.undecided.is_empty() {
        return Ok(Verdict::Undecided {
            budget: caps.budget,
            reason: format!("search for orders {:?} ran out of budget", aut.undecided),
        });
    }
    let candidates: Vec<_> = listed(g.order(), caps)
        .into_iter()
        .filter(|(_, _, h)| fingerprint(h) == fp)
        .collect();
    let compared = candidates.len();
    for (name, odd, h) in candidates {
        if let Some(w) = is_isomorphic(g, &h, caps)? {
            if aut.odd_orders.is_empty() || odd != aut.odd_orders {
                return Ok(Verdict::Contradiction {
                    detail: format!("isomorphic to {name} with odd orders {odd:?}, found {:?}", aut.odd_orders),
                });
            }
            return Ok(Verdict::Matched {
                family: name,
                odd_orders: aut.odd_orders,
                witness: w.to_string(),
            });
        }
    }
    if aut.odd_orders.is_empty() {
        Ok(Verdict::NoOddAutomorphism { compared })
    } else {
        Ok(Verdict::Contradiction {
            detail: format!("odd orders {:?} but no listed group matches", aut.odd_orders),
        })
    }
}

/// Records for every entry of `text`, in input order; entries that fail to
/// parse yield error records.
pub fn run_corpus_text(text: &str, caps: &Caps, opts: RunOptions) -> Vec<(ResultRecord, u128)> {
    let parsed = parse_lenient(text);
    parsed
        .par_iter()
        .enumerate()
        .map(|(i, r)| {
            let start = Instant::now();
            let rec = match r {
                Ok(e) => classify_entry(i, e, caps, opts),
                Err(err) => ResultRecord::bare(
                    i,
                    format!("entry {}", i + 1),
                    caps,
                    Verdict::Error {
                        message: err.to_string(),
                    },
                ),
            };
            (rec, start.elapsed().as_millis())
        })
        .collect()
}

pub fn run_corpus(path: &Path, caps: &Caps, opts: RunOptions) -> Result<Vec<(ResultRecord, u128)>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(run_corpus_text(&text, caps, opts))
}

/// One JSON record per line.
pub fn render_records(records: &[(ResultRecord, u128)]) -> String {
    records.iter().map(|(r, _)| r.to_json() + "\n").collect()
}

/// Timing sidecar: `index<TAB>label<TAB>milliseconds` per line.
pub fn render_timing(records: &[(ResultRecord, u128)]) -> String {
    records
        .iter()
        .map(|(r, ms)| format!("{}\t{}\t{}\n", r.index, r.label, ms))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_entry;

    fn classify(text: &str) -> ResultRecord {
        classify_entry(0, &parse_entry(text).unwrap(), &Caps::default(), RunOptions::default())
    }

    #[test]
    fn q8_times_c8_matches() {
        let r = classify("group G { gens a:4, b:2, c:8; pow b: a^2; conj a^b = a^-1 }");
        match &r.verdict {
            Verdict::Matched { family, odd_orders, .. } => {
                assert_eq!(family, "QC:3,3");
                assert_eq!(odd_orders, &[3]);
            }
            v => panic!("{v:?}"),
        }
        assert_eq!(r.aut.as_ref().unwrap().witnesses.len(), 1);
    }

    #[test]
    fn dihedral_has_none() {
        let r = classify("family D:5");
        assert!(matches!(r.verdict, Verdict::NoOddAutomorphism { .. }), "{:?}", r.verdict);
        assert!(r.is_success());
    }

    #[test]
    fn suz_matches_with_three_and_five() {
        let r = classify("family suz");
        assert!(matches!(&r.verdict, Verdict::Matched { odd_orders, .. } if odd_orders == &[3, 5]));
    }

    #[test]
    fn rank_other_than_two_is_not_applicable() {
        let r = classify("family C:3");
        assert!(matches!(r.verdict, Verdict::NotApplicable { .. }));
        let r = classify("family QD:3,2");
        assert!(matches!(r.verdict, Verdict::NotApplicable { .. }), "{:?}", r.verdict);
    }

    #[test]
    fn over_cap_is_undecided() {
        let e = parse_entry("family X:7").unwrap();
        let caps = Caps::parse("order=64").unwrap();
        let r = classify_entry(0, &e, &caps, RunOptions::default());
        assert!(matches!(r.verdict, Verdict::Undecided { budget, .. } if budget == caps.budget));
    }

    #[test]
    fn corpus_runs_are_isolated_and_ordered() {
        let caps = Caps::default();
        let rs = run_corpus_text("family D:4\ngroup G { gens x:6 }\nfamily Q:3\n", &caps, RunOptions::default());
        assert_eq!(rs.len(), 3);
        assert!(matches!(rs[1].0.verdict, Verdict::Error { .. }));
        assert_eq!(rs.iter().map(|r| r.0.index).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(run_corpus_text("", &caps, RunOptions::default()).is_empty());
    }

    #[test]
    fn table_rows_match() {
        let text = "family Cnm:2,2\nfamily QC:3,1\nfamily QC:3,2\nfamily QCstar:3,2\nfamily QCstar:3,3\n";
        let rs = run_corpus_text(text, &Caps::default(), RunOptions::default());
        assert_eq!(rs.len(), 5);
        for (r, _) in &rs {
            assert!(matches!(r.verdict, Verdict::Matched { .. }), "{}: {:?}", r.label, r.verdict);
        }
    }

    #[test]
    fn records_are_deterministic_and_round_trip() {
        let caps = Caps::default();
        let opts = RunOptions { fusion: true };
        let a = render_records(&run_corpus_text("family D:4\nfamily Q:4\n", &caps, opts));
        let b = render_records(&run_corpus_text("family D:4\nfamily Q:4\n", &caps, opts));
        assert_eq!(a, b);
        for line in a.lines() {
            assert_eq!(ResultRecord::from_json(line).unwrap().to_json(), line);
        }
        assert!(a.contains("PSL2(q)"));
    }
}
