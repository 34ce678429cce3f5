use clap::{Args, Parser, Subcommand};
use pgfusion::autos::{automorphism_group, find_odd_automorphism, gl4_fixed_point_scan, PrimeVerdict};
use pgfusion::corpus::{parse, parse_entry, CorpusEntry};
use pgfusion::fusion::{enumerate_saturated, is_saturated, summarize, FusionSystem};
use pgfusion::harness::verify_paper;
use pgfusion::invariants::{fingerprint, higman_check, is_metacyclic, special_check};
use pgfusion::records::{classify_entry, render_records, render_timing, run_corpus, RunOptions};
use pgfusion::{Caps, Error, Group, Subgroup};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Finite 2-groups, their odd-order automorphisms and saturated fusion systems.
#[derive(Parser)]
#[command(name = "pgfusion", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Cap overrides such as `order=1024,fusion=32`; defaults come from
    /// PGFUSION_CAPS when set.
    #[arg(long, global = true)]
    caps: Option<String>,
    /// Worker threads for parallel stages.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Node budget for backtracking searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a group and list its generators.
    Build {
        target: String,
        /// Print the multiplication table.
        #[arg(long)]
        table: bool,
    },
    /// Invariant fingerprint and structural checks.
    Invariants { target: String },
    /// Automorphism group order and odd-order automorphisms.
    Aut { target: String },
    /// Classify one entry as a JSON record.
    Classify {
        target: String,
        #[arg(long)]
        fusion: bool,
    },
    /// Saturated fusion systems.
    #[command(subcommand)]
    Fusion(FusionCmd),
    /// Scan GL(4,2) for fixed points of elements of order 3 and 5.
    Gl4scan,
    /// Run the verification suite.
    VerifyPaper {
        /// Restrict to a tag, criterion number or check-name prefix.
        #[arg(long)]
        only: Vec<String>,
    },
    /// Corpus files.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand)]
enum FusionCmd {
    /// Every saturated fusion system up to conjugation by Aut(P).
    Enumerate { target: String },
    /// Saturation of the system generated by Inn(P) and the full
    /// automorphism groups of the given subgroups.
    Check {
        target: String,
        /// Generators of a subgroup, comma separated words such as `t, r^2`.
        #[arg(long)]
        essential: Vec<String>,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// One JSON record per entry, in input order.
    Run {
        path: PathBuf,
        #[arg(long)]
        fusion: bool,
        /// Timing sidecar; defaults to the report path with `.timing` appended.
        #[arg(long)]
        timing: Option<PathBuf>,
    },
}

/// Exit status 2 for input errors, 1 for failed checks.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::Semantic(_)
            | Error::ParamOutOfRange(_)
            | Error::InconsistentPresentation(_)
            | Error::Io(_) => Failure::Usage(e.to_string()),
            e => Failure::Check(e.to_string()),
        }
    }
}

type CmdResult = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut caps = Caps::from_env();
    if let Some(s) = &cli.global.caps {
        caps = match caps.with_overrides(s) {
            Ok(c) => c,
            Err(e) => return fail(Failure::Usage(e.to_string())),
        };
    }
    if let Some(b) = cli.global.budget {
        caps.budget = b;
    }
    if let Some(j) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            return fail(Failure::Usage(e.to_string()));
        }
    }
    match run(&cli, &caps) {
        Ok((text, ok)) => {
            print!("{text}");
            if let Some(p) = &cli.global.report {
                if let Err(e) = std::fs::write(p, &text) {
                    return fail(Failure::Usage(format!("{}: {e}", p.display())));
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> ExitCode {
    match f {
        Failure::Usage(m) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Failure::Check(m) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

/// A target is a family spec (`D:4`), a single corpus entry, or a file
/// holding exactly one entry.
fn load(target: &str) -> Result<CorpusEntry, Failure> {
    let t = target.trim_start();
    if t.starts_with("group ") || t.starts_with("family ") {
        return Ok(parse_entry(t)?);
    }
    let path = Path::new(target);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{target}: {e}")))?;
        let mut es = parse(&text)?;
        if es.len() != 1 {
            return Err(Failure::Usage(format!("{target}: expected one entry, found {}", es.len())));
        }
        return Ok(es.remove(0));
    }
    Ok(parse_entry(&format!("family {t}"))?)
}

fn build_group(target: &str, caps: &Caps) -> Result<Group, Failure> {
    Ok(load(target)?.build(caps.order)?)
}

fn run(cli: &Cli, caps: &Caps) -> CmdResult {
    match &cli.cmd {
        Cmd::Build { target, table } => cmd_build(target, *table, caps),
        Cmd::Invariants { target } => cmd_invariants(target, caps),
        Cmd::Aut { target } => cmd_aut(target, caps),
        Cmd::Classify { target, fusion } => {
            let e = load(target)?;
            let r = classify_entry(0, &e, caps, RunOptions { fusion: *fusion });
            let ok = r.is_success();
            Ok((r.to_json() + "\n", ok))
        }
        Cmd::Fusion(FusionCmd::Enumerate { target }) => {
            let g = build_group(target, caps)?;
            let fs = enumerate_saturated(&g, caps)?;
            let mut s = format!("{}: {} saturated fusion systems\n", g.label(), fs.len());
            for (i, f) in fs.iter().enumerate() {
                writeln!(s, "{i}: {}", summarize(f, caps)).unwrap();
            }
            Ok((s, true))
        }
        Cmd::Fusion(FusionCmd::Check { target, essential }) => cmd_fusion_check(target, essential, caps),
        Cmd::Gl4scan => {
            let s = gl4_fixed_point_scan();
            let text = format!(
                "elements {}\norder 3: {} (fixed-point-free {}, fixing a plane {})\norder 5: {} (fixed-point-free {})\nexceptions {}\n{}\n",
                s.elements,
                s.order3,
                s.order3_fixed_free,
                s.order3_fixing_plane,
                s.order5,
                s.order5_fixed_free,
                s.exceptions.len(),
                if s.passed() { "PASS" } else { "FAIL" }
            );
            Ok((text, s.passed()))
        }
        Cmd::VerifyPaper { only } => {
            let r = verify_paper(caps, only);
            Ok((r.render(), r.passed()))
        }
        Cmd::Corpus(CorpusCmd::Run { path, fusion, timing }) => {
            let recs = run_corpus(path, caps, RunOptions { fusion: *fusion })?;
            let sidecar = timing
                .clone()
                .or_else(|| cli.global.report.as_ref().map(|p| PathBuf::from(format!("{}.timing", p.display()))));
            if let Some(t) = sidecar {
                std::fs::write(&t, render_timing(&recs)).map_err(|e| Failure::Usage(format!("{}: {e}", t.display())))?;
            }
            let ok = recs.iter().all(|(r, _)| r.is_success());
            Ok((render_records(&recs), ok))
        }
    }
}

fn cmd_build(target: &str, table: bool, caps: &Caps) -> CmdResult {
    let g = build_group(target, caps)?;
    let mut s = format!("{}\norder {}\n", g.label(), g.order());
    for (name, x) in g.gens() {
        writeln!(s, "generator {name} = element {x} of order {}", g.elt_order(*x)).unwrap();
    }
    if table {
        for x in g.elements() {
            let row: Vec<String> = g.elements().map(|y| g.mul(x, y).to_string()).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
    }
    Ok((s, true))
}

fn cmd_invariants(target: &str, caps: &Caps) -> CmdResult {
    let g = build_group(target, caps)?;
    let fp = fingerprint(&g);
    let s = format!(
        "{}\n{fp}\nhigman {}\nspecial {}\nmetacyclic {}\n",
        g.label(),
        higman_check(&g),
        special_check(&g),
        is_metacyclic(&g)
    );
    Ok((s, true))
}

fn cmd_aut(target: &str, caps: &Caps) -> CmdResult {
    let g = build_group(target, caps)?;
    let mut s = format!("{}\n", g.label());
    match automorphism_group(&g, caps) {
        Ok(a) => writeln!(s, "|Aut| = {} ({} generators)", a.order, a.gens.len()).unwrap(),
        Err(e) => writeln!(s, "|Aut| not computed: {e}").unwrap(),
    }
    let r = find_odd_automorphism(&g, caps)?;
    for (q, v) in &r.primes {
        match v {
            PrimeVerdict::Found(w) => writeln!(s, "order {q}: found, witness {w}").unwrap(),
            PrimeVerdict::Absent => writeln!(s, "order {q}: none").unwrap(),
            PrimeVerdict::Undecided { budget } => writeln!(s, "order {q}: undecided after {budget} nodes").unwrap(),
        }
    }
    if let Some(t) = r.transitive_on_maximals {
        writeln!(s, "transitive on maximal subgroups {t}").unwrap();
    }
    writeln!(s, "odd orders {:?}", r.odd_orders()).unwrap();
    Ok((s, r.undecided().is_empty()))
}

/// Evaluates a word such as `r^2 t` in the named generators.
fn element(g: &Group, word: &str) -> Result<usize, Failure> {
    let mut x = g.identity();
    for f in word.split_whitespace() {
        let (name, e) = match f.split_once('^') {
            Some((n, e)) => (n, e.parse::<i64>().map_err(|_| Failure::Usage(format!("bad exponent in `{f}`")))?),
            None => (f, 1),
        };
        if name == "1" {
            continue;
        }
        let y = g
            .gen(name)
            .ok_or_else(|| Failure::Usage(format!("unknown generator `{name}` in {}", g.label())))?;
        x = g.mul(x, g.pow(y, e));
    }
    Ok(x)
}

fn cmd_fusion_check(target: &str, essential: &[String], caps: &Caps) -> CmdResult {
    let g = build_group(target, caps)?;
    let mut subs = Vec::new();
    for gens in essential {
        let xs = gens.split(',').map(|w| element(&g, w)).collect::<Result<Vec<_>, _>>()?;
        subs.push(Subgroup::generated(&g, &xs));
    }
    let f = FusionSystem::with_full_automizers(&g, &subs, caps)?;
    let v = is_saturated(&f);
    let mut s = format!("{}\n{}\n", g.label(), v);
    if v.saturated {
        writeln!(s, "{}", summarize(&f, caps)).unwrap();
    }
    Ok((s, v.saturated))
}
